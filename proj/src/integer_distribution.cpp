#include "phasemet/integer_distribution.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phasemet/angles.hpp"

namespace phasemet {

namespace {
constexpr double sum_tolerance = 1e-12;
constexpr double max_truncation = 1e-9;
constexpr double tail_budget_per_side = 4e-13;
}  // namespace

IntegerDistribution::IntegerDistribution(long offset, std::vector<double> probs,
                                         double truncation_mass)
    : offset_(offset), probs_(std::move(probs)), truncation_mass_(truncation_mass) {
    if (probs_.empty()) throw std::invalid_argument("IntegerDistribution: empty support");
    for (double p : probs_) {
        if (!(p >= 0.0))
            throw std::invalid_argument("IntegerDistribution: negative probability");
    }
    if (!(truncation_mass_ >= 0.0) || truncation_mass_ > max_truncation)
        throw std::invalid_argument("IntegerDistribution: truncation_mass outside [0, 1e-9]");
    const double total = stable_sum(probs_) + truncation_mass_;
    if (std::abs(total - 1.0) > sum_tolerance)
        throw std::invalid_argument("IntegerDistribution: mass " + std::to_string(total) +
                                    " not 1 within 1e-12");
}

double IntegerDistribution::prob_at(long value) const {
    const long idx = value - offset_;
    if (idx < 0 || idx >= static_cast<long>(probs_.size())) return 0.0;
    return probs_[static_cast<std::size_t>(idx)];
}

double IntegerDistribution::mean() const {
    double m = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        const double x = probs_[i] * static_cast<double>(offset_ + static_cast<long>(i));
        const double y = x - comp;
        const double t = m + y;
        comp = (t - m) - y;
        m = t;
    }
    return m;
}

double IntegerDistribution::variance() const {
    const double m = mean();
    double v = 0.0, comp = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        const double d = static_cast<double>(offset_ + static_cast<long>(i)) - m;
        const double x = probs_[i] * d * d;
        const double y = x - comp;
        const double t = v + y;
        comp = (t - v) - y;
        v = t;
    }
    return v;
}

IntegerDistribution IntegerDistribution::point_mass(long value) {
    return IntegerDistribution(value, {1.0}, 0.0);
}

IntegerDistribution IntegerDistribution::poisson(double lambda) {
    if (!(lambda >= 0.0)) throw std::invalid_argument("poisson: lambda must be >= 0");
    if (lambda == 0.0) return point_mass(0);

    const double spread = 10.0 * std::sqrt(lambda) + 45.0;
    const long lo = std::max(0L, static_cast<long>(std::floor(lambda - spread)));
    const long hi = static_cast<long>(std::ceil(lambda + spread));
    const double log_lambda = std::log(lambda);

    std::vector<double> p(static_cast<std::size_t>(hi - lo + 1));
    for (long m = lo; m <= hi; ++m) {
        const double log_p = -lambda + static_cast<double>(m) * log_lambda -
                             std::lgamma(static_cast<double>(m) + 1.0);
        p[static_cast<std::size_t>(m - lo)] = std::exp(log_p);
    }

    // Trim each tail while the running discarded mass stays inside budget.
    std::size_t first = 0, last = p.size() - 1;
    double cut_low = 0.0, cut_high = 0.0;
    while (first < last && cut_low + p[first] <= tail_budget_per_side) cut_low += p[first++];
    while (last > first && cut_high + p[last] <= tail_budget_per_side) cut_high += p[last--];

    std::vector<double> kept(p.begin() + static_cast<long>(first),
                             p.begin() + static_cast<long>(last) + 1);
    double sum = stable_sum(kept);
    double trunc = 1.0 - sum;
    if (trunc < 0.0) {
        for (double& v : kept) v /= sum;
        trunc = 0.0;
    }
    return IntegerDistribution(lo + static_cast<long>(first), std::move(kept), trunc);
}

IntegerDistribution convolve(const IntegerDistribution& a, const IntegerDistribution& b,
                             long eigenvalue_ceiling) {
    const long offset = a.offset() + b.offset();
    const long length = static_cast<long>(a.size() + b.size()) - 1;
    if (length > eigenvalue_ceiling || offset + length - 1 > eigenvalue_ceiling)
        throw std::invalid_argument("convolve: support exceeds eigenvalue ceiling " +
                                    std::to_string(eigenvalue_ceiling));

    std::vector<double> out(static_cast<std::size_t>(length), 0.0);
    const auto& pa = a.probs();
    const auto& pb = b.probs();
    for (std::size_t i = 0; i < pa.size(); ++i) {
        if (pa[i] == 0.0) continue;
        for (std::size_t j = 0; j < pb.size(); ++j) out[i + j] += pa[i] * pb[j];
    }
    double sum = stable_sum(out);
    double trunc = 1.0 - sum;
    if (trunc < 0.0) {
        for (double& v : out) v /= sum;
        trunc = 0.0;
    }
    return IntegerDistribution(offset, std::move(out), trunc);
}

IntegerDistribution power_relabel(const IntegerDistribution& d, int power,
                                  long eigenvalue_ceiling) {
    if (power < 1) throw std::invalid_argument("power_relabel: power must be >= 1");
    if (power == 1) return d;
    if (d.min_value() < 0)
        throw std::invalid_argument("power_relabel: negative eigenvalues are not relabelable");

    auto powl = [power](long m) {
        long r = 1;
        for (int k = 0; k < power; ++k) {
            if (m != 0 && r > default_eigenvalue_ceiling * 1000L)
                throw std::invalid_argument("power_relabel: eigenvalue overflow");
            r *= m;
        }
        return r;
    };
    const long lo = powl(d.min_value());
    const long hi = powl(d.max_value());
    if (hi - lo + 1 > eigenvalue_ceiling || hi > eigenvalue_ceiling)
        throw std::invalid_argument("power_relabel: support exceeds eigenvalue ceiling");

    std::vector<double> out(static_cast<std::size_t>(hi - lo + 1), 0.0);
    for (long m = d.min_value(); m <= d.max_value(); ++m)
        out[static_cast<std::size_t>(powl(m) - lo)] += d.prob_at(m);
    return IntegerDistribution(lo, std::move(out), d.truncation_mass());
}

}  // namespace phasemet
