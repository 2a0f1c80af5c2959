#include "phasemet/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "phasemet/infotheory.hpp"
#include "phasemet/probe_state.hpp"

namespace phasemet {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();
const double e_const = std::numbers::e;
}  // namespace

double helstrom_holevo_bound(double delta_g) {
    if (!(delta_g >= 0.0)) throw std::invalid_argument("helstrom_holevo_bound: delta_g < 0");
    if (delta_g == 0.0) return inf;
    return 1.0 / (2.0 * delta_g);
}

double helstrom_biased_bound(double bias, double bias_slope, double delta_g) {
    if (!(delta_g > 0.0)) throw std::invalid_argument("helstrom_biased_bound: delta_g must be > 0");
    const double second = bias_slope / (2.0 * delta_g);
    return std::sqrt(bias * bias + second * second);
}

double entropic_bound(double prior_entropy_nats, double entropy_g_nats) {
    if (entropy_g_nats < -1e-12)
        throw std::invalid_argument("entropic_bound: negative generator entropy");
    entropy_g_nats = std::max(entropy_g_nats, 0.0);
    // exp(-inf) = 0, so a point prior collapses the bound.
    return std::exp(prior_entropy_nats) * std::exp(-entropy_g_nats) /
           std::sqrt(two_pi * e_const);
}

double variance_entropic_bound(double delta_g) {
    if (!(delta_g >= 0.0)) throw std::invalid_argument("variance_entropic_bound: delta_g < 0");
    return 1.0 / std::sqrt(two_pi * e_const * (delta_g * delta_g + 1.0 / 12.0));
}

double nonlinear_heisenberg_bound(double mean_n, double prior_entropy_nats) {
    if (!(mean_n >= 0.0)) throw std::invalid_argument("nonlinear_heisenberg_bound: mean_n < 0");
    return std::exp(prior_entropy_nats) /
           (std::sqrt(two_pi * e_const * e_const * e_const) * (mean_n + 1.0));
}

double asymptotic_bound(BoundFamily family, double n, double prior_entropy_nats) {
    const double eh = std::exp(prior_entropy_nats);
    switch (family) {
        case BoundFamily::Ecs:
            if (!(n > 0.0)) throw std::invalid_argument("asymptotic_bound: n must be > 0");
            return eh / (2.0 * std::pow(two_pi * e_const, 0.75) * std::pow(n, 0.25));
        case BoundFamily::Coh:
            if (!(n > 0.0)) throw std::invalid_argument("asymptotic_bound: n must be > 0");
            return eh / (std::numbers::pi * e_const * std::sqrt(2.0 * n));
        case BoundFamily::Noon:
            return eh / std::sqrt(8.0 * std::numbers::pi * e_const);
    }
    throw std::logic_error("asymptotic_bound: unknown family");
}

double cramer_rao_from_fisher(double fisher) {
    if (!(fisher >= 0.0)) throw std::invalid_argument("cramer_rao_from_fisher: fisher < 0");
    if (fisher == 0.0) return inf;
    return 1.0 / std::sqrt(fisher);
}

double ecs_alpha_for_mean_photons(double n) {
    if (!(n > 0.0)) throw std::invalid_argument("ecs_alpha_for_mean_photons: n must be > 0");
    auto mean = [](double alpha) {
        const double a2 = alpha * alpha;
        return a2 / (1.0 + std::exp(-a2));
    };
    double lo = min_alpha;
    double hi = std::sqrt(n) + 1.0;
    if (mean(lo) > n)
        throw std::invalid_argument("ecs_alpha_for_mean_photons: n below the minimum amplitude");
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (mean(mid) < n ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

std::string family_label(BoundFamily family) {
    switch (family) {
        case BoundFamily::Ecs:
            return "ecs";
        case BoundFamily::Coh:
            return "coh";
        case BoundFamily::Noon:
            return "noon";
    }
    throw std::logic_error("family_label: unknown family");
}

BoundReport compute_bound_report(BoundFamily family, double n, double prior_entropy_nats) {
    if (!(n > 0.0)) throw std::invalid_argument("compute_bound_report: n must be > 0");
    BoundReport row;
    row.family = family;
    row.n = n;
    row.prior_entropy_nats = prior_entropy_nats;

    switch (family) {
        case BoundFamily::Ecs: {
            row.alpha = ecs_alpha_for_mean_photons(n);
            const auto dist = generator_distribution(ProbeState::ecs(row.alpha), Generator::N2);
            row.delta_g = std::sqrt(dist.variance());
            row.entropy_g_nats = shannon_entropy(dist);
            break;
        }
        case BoundFamily::Coh: {
            row.alpha = coherent_pair_alpha_for_mean_photons(n);
            const auto dist =
                generator_distribution(ProbeState::coherent_pair(row.alpha), Generator::N2);
            row.delta_g = std::sqrt(dist.variance());
            row.entropy_g_nats = shannon_entropy(dist);
            break;
        }
        case BoundFamily::Noon: {
            row.alpha = std::numeric_limits<double>::quiet_NaN();
            row.delta_g = 0.5 * n;
            row.entropy_g_nats = std::log(2.0);
            break;
        }
    }
    row.cr_bound = helstrom_holevo_bound(row.delta_g);
    row.entropic_bound = entropic_bound(prior_entropy_nats, row.entropy_g_nats);
    row.variance_entropic_bound = variance_entropic_bound(row.delta_g);
    row.asymptotic_bound = asymptotic_bound(family, n, prior_entropy_nats);
    return row;
}

}  // namespace phasemet
