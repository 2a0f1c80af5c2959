#include "phasemet/phase_distribution.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace phasemet {

namespace {

constexpr double negative_dust_floor = -1e-12;
constexpr double clamped_mass_limit = 1e-10;
constexpr double integral_tolerance = 1e-10;

// In-place radix-2 forward transform: a[j] <- sum_m a[m] e^{-2 pi i j m / n}.
void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -two_pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const auto u = a[i + k];
                const auto v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

}  // namespace

int grid_size_for_degree(int degree) {
    if (degree < 0) throw std::invalid_argument("grid_size_for_degree: negative degree");
    const unsigned need = static_cast<unsigned>(2 * degree + 2);
    return static_cast<int>(std::max(512u, std::bit_ceil(need)));
}

PhaseDistribution::PhaseDistribution(std::vector<double> values, int degree)
    : values_(std::move(values)), degree_(degree) {
    if (values_.size() < 2) throw std::invalid_argument("PhaseDistribution: grid too small");
    if (static_cast<int>(values_.size()) < 2 * degree_ + 2)
        throw std::invalid_argument("PhaseDistribution: grid under-resolves the stated degree");

    double clamped = 0.0;
    for (double& v : values_) {
        if (v < 0.0) {
            if (v < negative_dust_floor)
                throw std::invalid_argument("PhaseDistribution: negative density");
            clamped -= v;
            v = 0.0;
        }
    }
    if (clamped > clamped_mass_limit)
        throw std::invalid_argument("PhaseDistribution: clamped mass too large");

    const double total = integral();
    if (std::abs(total - 1.0) > integral_tolerance)
        throw std::invalid_argument("PhaseDistribution: integral " + std::to_string(total) +
                                    " not 1 within 1e-10");
    if (clamped > 0.0)
        for (double& v : values_) v /= total;
}

double PhaseDistribution::integral() const {
    return grid_step() * stable_sum(values_);
}

AmplitudeVector::AmplitudeVector(std::vector<std::complex<double>> coefficients)
    : coeff_(std::move(coefficients)) {
    if (coeff_.empty()) throw std::invalid_argument("AmplitudeVector: empty");
    double norm2 = 0.0;
    for (const auto& c : coeff_) norm2 += std::norm(c);
    if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9)
        throw std::invalid_argument("AmplitudeVector: not unit norm");
    // Scrub the residual norm error so downstream quadrature is exact.
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& c : coeff_) c *= scale;
}

std::vector<double> coherent_amplitudes(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("coherent_amplitudes: alpha must be > 0");
    const double a2 = alpha * alpha;
    const long hi = IntegerDistribution::poisson(a2).max_value();
    const double log_alpha = std::log(alpha);
    std::vector<double> amps(static_cast<std::size_t>(hi) + 1);
    for (long m = 0; m <= hi; ++m)
        amps[static_cast<std::size_t>(m)] = std::exp(
            -0.5 * a2 + static_cast<double>(m) * log_alpha -
            0.5 * std::lgamma(static_cast<double>(m) + 1.0));
    return amps;
}

PhaseDistribution canonical_phase(const AmplitudeVector& amplitudes) {
    const int degree = static_cast<int>(amplitudes.size()) - 1;
    const std::size_t grid = static_cast<std::size_t>(grid_size_for_degree(degree));

    std::vector<std::complex<double>> work(grid, std::complex<double>(0.0, 0.0));
    std::copy(amplitudes.coefficients().begin(), amplitudes.coefficients().end(), work.begin());
    fft_inplace(work);

    std::vector<double> density(grid);
    for (std::size_t j = 0; j < grid; ++j) density[j] = std::norm(work[j]) / two_pi;
    return PhaseDistribution(std::move(density), degree);
}

PhaseDistribution ecs_relative_phase(double alpha, double phi) {
    if (!(alpha > 0.0)) throw std::invalid_argument("ecs_relative_phase: alpha must be > 0");
    const double a2 = alpha * alpha;
    const int degree = static_cast<int>(IntegerDistribution::poisson(a2).max_value());
    const std::size_t grid = static_cast<std::size_t>(grid_size_for_degree(degree));
    const double norm = two_pi * (1.0 + std::exp(-a2));

    std::vector<double> density(grid);
    const double step = two_pi / static_cast<double>(grid);
    for (std::size_t j = 0; j < grid; ++j) {
        const double d = step * static_cast<double>(j) - phi;
        density[j] =
            (1.0 + std::exp(-a2 * (1.0 - std::cos(d))) * std::cos(a2 * std::sin(d))) / norm;
    }
    return PhaseDistribution(std::move(density), degree);
}

PhaseDistribution relative_phase_bruteforce(double alpha, double phi) {
    if (!(alpha > 0.0)) throw std::invalid_argument("relative_phase_bruteforce: alpha must be > 0");
    if (alpha > 6.0)
        throw std::invalid_argument("relative_phase_bruteforce: alpha > 6 refused on cost");

    using cplx = std::complex<double>;
    const std::vector<double> amp = coherent_amplitudes(alpha);
    const std::size_t modes = amp.size();
    const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-alpha * alpha)));

    // Fock table of e^{-i N2 phi} (|a>|0> + |0>|a>) / sqrt(2(1+e^{-a^2})).
    std::vector<std::vector<cplx>> table(modes, std::vector<cplx>(modes, cplx(0.0, 0.0)));
    for (std::size_t m1 = 0; m1 < modes; ++m1) table[m1][0] += norm * amp[m1];
    for (std::size_t m2 = 0; m2 < modes; ++m2)
        table[0][m2] += norm * amp[m2] *
                        std::polar(1.0, -static_cast<double>(m2) * phi);

    // Integrating the joint canonical density over the mean phase kills every
    // pair of index pairs with different total photon number; each surviving
    // total contributes one canonical-type term in the relative angle.
    const int degree = static_cast<int>(modes) - 1;
    const std::size_t grid = static_cast<std::size_t>(grid_size_for_degree(degree));
    const double step = two_pi / static_cast<double>(grid);
    std::vector<double> density(grid, 0.0);
    for (std::size_t total = 0; total <= 2 * (modes - 1); ++total) {
        const std::size_t m1_lo = total >= modes ? total - modes + 1 : 0;
        const std::size_t m1_hi = std::min(total, modes - 1);
        bool nonzero = false;
        for (std::size_t m1 = m1_lo; m1 <= m1_hi; ++m1)
            if (table[m1][total - m1] != cplx(0.0, 0.0)) nonzero = true;
        if (!nonzero) continue;
        for (std::size_t j = 0; j < grid; ++j) {
            const double r = step * static_cast<double>(j);
            cplx sum(0.0, 0.0);
            for (std::size_t m1 = m1_lo; m1 <= m1_hi; ++m1)
                sum += table[m1][total - m1] * std::polar(1.0, -static_cast<double>(m1) * r);
            density[j] += std::norm(sum) / two_pi;
        }
    }
    return PhaseDistribution(std::move(density), degree);
}

double overlap(const ProbeState& state, Generator generator, double phi) {
    const IntegerDistribution dist = generator_distribution(state, generator);
    double re = 0.0, im = 0.0;
    for (long m = dist.min_value(); m <= dist.max_value(); ++m) {
        const double p = dist.prob_at(m);
        if (p == 0.0) continue;
        re += p * std::cos(static_cast<double>(m) * phi);
        im -= p * std::sin(static_cast<double>(m) * phi);
    }
    return re * re + im * im;
}

PhaseSampler::PhaseSampler(const PhaseDistribution& dist) : step_(dist.grid_step()) {
    cdf_.resize(dist.grid_size());
    double cum = 0.0;
    const double total = stable_sum(dist.values());
    for (std::size_t j = 0; j < dist.grid_size(); ++j) {
        cum += dist.values()[j] / total;
        cdf_[j] = cum;
    }
    cdf_.back() = 1.0;
}

double PhaseSampler::operator()(RandomStream& stream) const {
    const double u = stream.next_double();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - cdf_.begin());
    const double lo = k == 0 ? 0.0 : cdf_[k - 1];
    const double mass = cdf_[k] - lo;
    const double frac = mass > 0.0 ? (u - lo) / mass : 0.5;
    // Cells are centered on the grid points, so the piecewise-constant
    // density reproduces the grid values without a half-cell shift.
    return wrap_positive((static_cast<double>(k) + frac - 0.5) * step_);
}

double sample_phase(const PhaseDistribution& dist, RandomStream& stream) {
    return PhaseSampler(dist)(stream);
}

double phase_mean_about(const PhaseDistribution& dist, double center) {
    double acc = 0.0;
    for (std::size_t j = 0; j < dist.grid_size(); ++j)
        acc += dist.values()[j] * wrap_into(dist.theta(j), center);
    return acc * dist.grid_step();
}

double phase_variance_about(const PhaseDistribution& dist, double center) {
    const double mean = phase_mean_about(dist, center);
    double acc = 0.0;
    for (std::size_t j = 0; j < dist.grid_size(); ++j) {
        const double d = wrap_into(dist.theta(j), center) - mean;
        acc += dist.values()[j] * d * d;
    }
    return acc * dist.grid_step();
}

double total_variation(const PhaseDistribution& a, const PhaseDistribution& b) {
    if (a.grid_size() != b.grid_size())
        throw std::invalid_argument("total_variation: grid sizes differ");
    double acc = 0.0;
    for (std::size_t j = 0; j < a.grid_size(); ++j)
        acc += std::abs(a.values()[j] - b.values()[j]);
    return 0.5 * acc * a.grid_step();
}

double sup_distance(const PhaseDistribution& a, const PhaseDistribution& b) {
    if (a.grid_size() != b.grid_size())
        throw std::invalid_argument("sup_distance: grid sizes differ");
    double worst = 0.0;
    for (std::size_t j = 0; j < a.grid_size(); ++j)
        worst = std::max(worst, std::abs(a.values()[j] - b.values()[j]));
    return worst;
}

PhaseDistribution wrapped_gaussian(double mean, double variance, int grid_size) {
    if (!(variance > 0.0)) throw std::invalid_argument("wrapped_gaussian: variance must be > 0");
    if (grid_size < 2) throw std::invalid_argument("wrapped_gaussian: grid too small");
    const double sigma = std::sqrt(variance);
    const int images = static_cast<int>(std::ceil(6.0 * sigma / two_pi)) + 1;
    const double inv_norm = 1.0 / (sigma * std::sqrt(two_pi));

    std::vector<double> density(static_cast<std::size_t>(grid_size), 0.0);
    const double step = two_pi / static_cast<double>(grid_size);
    for (int j = 0; j < grid_size; ++j) {
        const double d = wrap_symmetric(step * static_cast<double>(j) - mean);
        double v = 0.0;
        for (int k = -images; k <= images; ++k) {
            const double x = d + two_pi * static_cast<double>(k);
            v += inv_norm * std::exp(-0.5 * x * x / variance);
        }
        density[static_cast<std::size_t>(j)] = v;
    }
    const double total = stable_sum(density) * step;
    for (double& v : density) v /= total;
    return PhaseDistribution(std::move(density), grid_size / 2 - 1);
}

PhaseDistribution mix(const PhaseDistribution& a, double weight_a, const PhaseDistribution& b,
                      double weight_b) {
    if (a.grid_size() != b.grid_size()) throw std::invalid_argument("mix: grid sizes differ");
    if (std::abs(weight_a + weight_b - 1.0) > 1e-12)
        throw std::invalid_argument("mix: weights must sum to 1");
    std::vector<double> density(a.grid_size());
    for (std::size_t j = 0; j < a.grid_size(); ++j)
        density[j] = weight_a * a.values()[j] + weight_b * b.values()[j];
    return PhaseDistribution(std::move(density), std::max(a.degree(), b.degree()));
}

}  // namespace phasemet
