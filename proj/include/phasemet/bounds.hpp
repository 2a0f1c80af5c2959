#pragma once

#include <cmath>
#include <string>

#include "phasemet/angles.hpp"

namespace phasemet {

/// RMSE_phi >= 1/(2 dG) for locally unbiased estimates. dG = 0 yields an
/// infinite sentinel (a zero-spread generator carries no phase information).
double helstrom_holevo_bound(double delta_g);

/// Bias-aware form: sqrt(bias^2 + slope^2 / (4 dG^2)) with
/// bias = <est>_phi - phi and slope = d<est>_phi/dphi.
double helstrom_biased_bound(double bias, double bias_slope, double delta_g);

/// Average-error bound (2 pi e)^{-1/2} e^{H(phi)} e^{-H(G)}; a -inf prior
/// entropy gives 0.
double entropic_bound(double prior_entropy_nats, double entropy_g_nats);

/// Variance form at the uniform-2pi-prior normalization:
/// 1 / sqrt(2 pi e [dG^2 + 1/12]).
double variance_entropic_bound(double delta_g);

/// e^{H(phi)} / (sqrt(2 pi e^3) (mean_n + 1)); caps every nonlinear
/// generator scheme at Heisenberg scaling of the average error.
double nonlinear_heisenberg_bound(double mean_n, double prior_entropy_nats);

enum class BoundFamily { Ecs, Coh, Noon };

/// Large-n closed forms of the entropic bound:
///   Ecs:  e^H / (2 (2 pi e)^{3/4} n^{1/4})   (~0.060 e^H / n^{1/4})
///   Coh:  e^H / (pi e sqrt(2 n))             (~0.083 e^H / sqrt(n))
///   Noon: e^H / sqrt(8 pi e)                 (~0.121 e^H, n-independent)
double asymptotic_bound(BoundFamily family, double n, double prior_entropy_nats);

/// 1/sqrt(F); F = 0 yields the infinite sentinel.
double cramer_rao_from_fisher(double fisher);

/// Inverts n = alpha^2 / (1 + e^{-alpha^2}) by bisection on
/// alpha in [1e-3, sqrt(n) + 1] to 1e-12.
double ecs_alpha_for_mean_photons(double n);

inline double coherent_pair_alpha_for_mean_photons(double n) { return std::sqrt(0.5 * n); }

/// One row of a bound table: state summaries plus every bound evaluated at
/// the same mean photon number. `alpha` is NaN for the Noon family.
struct BoundReport {
    BoundFamily family = BoundFamily::Ecs;
    double n = 0.0;
    double alpha = 0.0;
    double delta_g = 0.0;
    double entropy_g_nats = 0.0;
    double cr_bound = 0.0;
    double entropic_bound = 0.0;
    double variance_entropic_bound = 0.0;
    double asymptotic_bound = 0.0;
    double prior_entropy_nats = 0.0;
};

std::string family_label(BoundFamily family);

/// Evaluates every bound for the family at total mean photon number n, using
/// the exact generator PMF (N2) and the exact n <-> alpha inversion.
BoundReport compute_bound_report(BoundFamily family, double n,
                                 double prior_entropy_nats = std::log(two_pi));

}  // namespace phasemet
