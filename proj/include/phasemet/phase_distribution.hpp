#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "phasemet/angles.hpp"
#include "phasemet/probe_state.hpp"
#include "phasemet/random.hpp"

namespace phasemet {

/// Grid size used for a trigonometric polynomial of the given degree:
/// the next power of two at or above 2*degree + 2, with a floor of 512 for
/// sampling resolution. At this size the rectangle rule integrates the
/// density exactly.
int grid_size_for_degree(int degree);

/// Density on the uniform grid theta_j = 2*pi*j/J over [0, 2pi). The density
/// is a trig polynomial of the stated degree and J >= 2*degree + 2, so the
/// rectangle-rule integral is exact and must equal 1 within 1e-10. Negative
/// numerical dust below 1e-12 is clamped at construction; anything larger is
/// rejected.
class PhaseDistribution {
  public:
    PhaseDistribution(std::vector<double> values, int degree);

    std::size_t grid_size() const { return values_.size(); }
    int degree() const { return degree_; }
    double grid_step() const { return two_pi / static_cast<double>(values_.size()); }
    double theta(std::size_t j) const { return grid_step() * static_cast<double>(j); }
    const std::vector<double>& values() const { return values_; }

    double integral() const;

  private:
    std::vector<double> values_;
    int degree_ = 0;
};

/// Unit-norm Fock-basis coefficients <m|psi>, m = 0, 1, ...
class AmplitudeVector {
  public:
    explicit AmplitudeVector(std::vector<std::complex<double>> coefficients);
    const std::vector<std::complex<double>>& coefficients() const { return coeff_; }
    std::size_t size() const { return coeff_.size(); }

  private:
    std::vector<std::complex<double>> coeff_;
};

/// Real Fock amplitudes of |alpha>, truncated where the remaining photon
/// number mass drops below ~1e-12.
std::vector<double> coherent_amplitudes(double alpha);

/// Canonical phase density p(theta) = (1/2pi) |sum_m c_m e^{-i m theta}|^2.
PhaseDistribution canonical_phase(const AmplitudeVector& amplitudes);

/// Relative phase density of the phase-shifted two-mode superposition of
/// coherent states, peaked at phi:
///   p(r) = [1 + e^{-a^2 (1 - cos(r-phi))} cos(a^2 sin(r-phi))]
///          / (2 pi (1 + e^{-a^2})).
PhaseDistribution ecs_relative_phase(double alpha, double phi);

/// Same distribution built from first principles: the two-mode Fock
/// amplitude table of the shifted state is marginalized over the mean phase
/// analytically (only equal-total-photon-number index pairs survive the
/// integration). Test/verification oracle; rejects alpha > 6 on cost.
PhaseDistribution relative_phase_bruteforce(double alpha, double phi);

/// |<psi| e^{-i G phi} |psi>|^2 for a pure probe state. Depends only on the
/// generator PMF: it is the squared modulus of the PMF characteristic
/// function, 1 - phi^2 (dG)^2 + O(phi^4) for small phi.
double overlap(const ProbeState& state, Generator generator, double phi);

/// Inverse-CDF draw from the grid density (uniform within each cell),
/// result in [0, 2pi).
double sample_phase(const PhaseDistribution& dist, RandomStream& stream);

/// Precomputed-CDF sampler for tight loops.
class PhaseSampler {
  public:
    explicit PhaseSampler(const PhaseDistribution& dist);
    double operator()(RandomStream& stream) const;

  private:
    std::vector<double> cdf_;
    double step_ = 0.0;
};

// Quadrature helpers over the grid density.
double phase_mean_about(const PhaseDistribution& dist, double center);
double phase_variance_about(const PhaseDistribution& dist, double center);
double total_variation(const PhaseDistribution& a, const PhaseDistribution& b);
double sup_distance(const PhaseDistribution& a, const PhaseDistribution& b);

/// Wrapped normal density on the standard grid.
PhaseDistribution wrapped_gaussian(double mean, double variance, int grid_size);
/// Convex mixture of two densities on identical grids.
PhaseDistribution mix(const PhaseDistribution& a, double weight_a, const PhaseDistribution& b,
                      double weight_b);

}  // namespace phasemet
