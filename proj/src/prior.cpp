#include "phasemet/prior.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

#include "phasemet/angles.hpp"

namespace phasemet {

namespace {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

PriorDistribution PriorDistribution::uniform(double center, double width) {
    if (!(width > 0.0) || width > two_pi + 1e-12)
        throw std::invalid_argument("uniform prior: width must lie in (0, 2pi]");
    PriorDistribution p;
    p.kind_ = Kind::Uniform;
    p.center_ = center;
    p.width_ = std::min(width, two_pi);
    return p;
}

PriorDistribution PriorDistribution::uniform_full() {
    return uniform(0.5 * two_pi, two_pi);
}

PriorDistribution PriorDistribution::delta(double phi0) {
    PriorDistribution p;
    p.kind_ = Kind::Delta;
    p.center_ = phi0;
    p.width_ = 0.0;
    return p;
}

PriorDistribution PriorDistribution::tabulated(std::vector<double> densities) {
    if (densities.size() < 2) throw std::invalid_argument("tabulated prior: need >= 2 samples");
    double sum = 0.0;
    for (double v : densities) {
        if (!(v >= 0.0)) throw std::invalid_argument("tabulated prior: negative density");
        sum += v;
    }
    if (!(sum > 0.0)) throw std::invalid_argument("tabulated prior: zero density");
    // Periodic grid: the trapezoid weights are all equal to the step.
    const double step = two_pi / static_cast<double>(densities.size());
    for (double& v : densities) v /= sum * step;
    PriorDistribution p;
    p.kind_ = Kind::Tabulated;
    p.center_ = 0.5 * two_pi;
    p.width_ = two_pi;
    p.table_ = std::move(densities);
    return p;
}

double PriorDistribution::entropy() const {
    switch (kind_) {
        case Kind::Uniform:
            return std::log(width_);
        case Kind::Delta:
            return -std::numeric_limits<double>::infinity();
        case Kind::Tabulated: {
            const double step = two_pi / static_cast<double>(table_.size());
            double h = 0.0;
            for (double v : table_)
                if (v > 0.0) h -= step * v * std::log(v);
            return h;
        }
    }
    throw std::logic_error("prior entropy: unknown kind");
}

double PriorDistribution::density(double phi) const {
    switch (kind_) {
        case Kind::Uniform: {
            const double d = wrap_symmetric(phi - center_);
            return std::abs(d) <= 0.5 * width_ ? 1.0 / width_ : 0.0;
        }
        case Kind::Delta:
            return phi == center_ ? std::numeric_limits<double>::infinity() : 0.0;
        case Kind::Tabulated: {
            const double step = two_pi / static_cast<double>(table_.size());
            const std::size_t k =
                static_cast<std::size_t>(wrap_positive(phi) / step) % table_.size();
            return table_[k];
        }
    }
    throw std::logic_error("prior density: unknown kind");
}

double PriorDistribution::sample(RandomStream& stream) const {
    switch (kind_) {
        case Kind::Uniform:
            return center_ - 0.5 * width_ + width_ * stream.next_double();
        case Kind::Delta:
            return center_;
        case Kind::Tabulated: {
            const double step = two_pi / static_cast<double>(table_.size());
            const double u = stream.next_double();
            double cum = 0.0;
            for (std::size_t k = 0; k < table_.size(); ++k) {
                const double w = table_[k] * step;
                if (u < cum + w || k + 1 == table_.size()) {
                    const double frac = w > 0.0 ? (u - cum) / w : 0.0;
                    return (static_cast<double>(k) + std::min(frac, 1.0)) * step;
                }
                cum += w;
            }
            return 0.0;
        }
    }
    throw std::logic_error("prior sample: unknown kind");
}

std::vector<double> PriorDistribution::grid_midpoints(int count) const {
    if (count < 1) throw std::invalid_argument("grid_midpoints: count must be >= 1");
    if (kind_ == Kind::Delta) return {center_};
    std::vector<double> grid(static_cast<std::size_t>(count));
    const double lo = center_ - 0.5 * width_;
    const double step = width_ / static_cast<double>(count);
    for (int i = 0; i < count; ++i)
        grid[static_cast<std::size_t>(i)] = lo + (static_cast<double>(i) + 0.5) * step;
    return grid;
}

std::vector<double> PriorDistribution::grid_weights(int count) const {
    if (count < 1) throw std::invalid_argument("grid_weights: count must be >= 1");
    if (kind_ == Kind::Delta) return {1.0};
    const auto mid = grid_midpoints(count);
    std::vector<double> w(mid.size());
    double sum = 0.0;
    for (std::size_t i = 0; i < mid.size(); ++i) {
        w[i] = density(mid[i]);
        sum += w[i];
    }
    for (double& v : w) v /= sum;
    return w;
}

PriorDistribution parse_prior(std::string_view spec) {
    auto strip = [](std::string_view s) {
        while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
        while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
        return s;
    };
    auto to_double = [](std::string_view text) {
        const std::string s(text);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("prior: bad number '" + s + "'");
        }
        if (used != s.size()) throw std::invalid_argument("prior: bad number '" + s + "'");
        return v;
    };

    const auto s = strip(spec);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("prior: missing ':' in '" + std::string(s) + "'");
    const auto tag = s.substr(0, colon);
    auto body = s.substr(colon + 1);

    if (tag == "delta") {
        const auto b = strip(body);
        if (b.substr(0, 5) != "phi0=")
            throw std::invalid_argument("delta prior: expected 'phi0=<value>'");
        return PriorDistribution::delta(to_double(b.substr(5)));
    }
    if (tag == "uniform") {
        bool have_center = false, have_width = false;
        double center = 0.5 * two_pi, width = 0.0;
        while (!body.empty()) {
            const auto comma = body.find(',');
            const auto item = strip(comma == std::string_view::npos ? body : body.substr(0, comma));
            body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
            if (item.substr(0, 7) == "center=") {
                center = to_double(item.substr(7));
                have_center = true;
            } else if (item.substr(0, 6) == "width=") {
                width = to_double(item.substr(6));
                have_width = true;
            } else {
                throw std::invalid_argument("uniform prior: unknown field '" + std::string(item) +
                                            "'");
            }
        }
        if (!have_width) throw std::invalid_argument("uniform prior: width is required");
        (void)have_center;
        return PriorDistribution::uniform(center, width);
    }
    throw std::invalid_argument("prior: unknown tag '" + std::string(tag) + "'");
}

std::string to_spec_string(const PriorDistribution& prior) {
    switch (prior.kind()) {
        case PriorDistribution::Kind::Uniform:
            return "uniform:center=" + format_number(prior.center()) +
                   ",width=" + format_number(prior.width());
        case PriorDistribution::Kind::Delta:
            return "delta:phi0=" + format_number(prior.center());
        case PriorDistribution::Kind::Tabulated:
            return "tabulated";
    }
    throw std::logic_error("to_spec_string: unknown prior kind");
}

}  // namespace phasemet
