#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "phasemet/phase_distribution.hpp"
#include "phasemet/prior.hpp"
#include "phasemet/probe_state.hpp"

namespace phasemet {

/// Outcome of a Monte Carlo estimation experiment.
///
/// Local curves are indexed by phi_grid: bias <est>_phi - phi, local RMSE,
/// and the local precision (RMSE of the slope-rescaled estimate). The
/// average RMSE comes from an independent pass that draws phi from the
/// prior, so rmse_average^2 agrees with the prior-weighted mean of
/// rmse_local_curve^2 only up to Monte Carlo noise -- that agreement is a
/// real consistency check, not an identity.
struct EstimationReport {
    std::vector<double> phi_grid;
    std::vector<double> prior_weights;
    std::vector<double> bias_curve;
    std::vector<double> rmse_local_curve;
    std::vector<double> precision_curve;

    double rmse_average = 0.0;
    double rmse_average_stderr = 0.0;
    double mutual_info_nats = 0.0;
    long trials_per_phi = 0;
    double total_resources_n = 0.0;
    std::uint64_t seed = 0;

    // Iterative-scheme extras; NaN when not applicable.
    int bits = 0;
    int copies = 0;
    double target_resolution = std::numeric_limits<double>::quiet_NaN();
    double resolution_reference = std::numeric_limits<double>::quiet_NaN();
    double resolution_ratio = std::numeric_limits<double>::quiet_NaN();
    double rmse_boot_upper95 = std::numeric_limits<double>::quiet_NaN();
};

/// Distribution of a single canonical phase measurement on the shifted
/// state, peaked at phi. Two-mode superpositions (Noon, Ecs) measure the
/// relative phase; coherent probes measure the canonical phase of the
/// shifted mode against a perfect reference.
PhaseDistribution measurement_distribution(const ProbeState& state, double phi);

/// Period of the measurement density in phi: 2pi/n for Noon, else 2pi.
double measurement_period(const ProbeState& state);

struct SingleShotOptions {
    long trials = 100000;  // per grid point, and total for the averaging pass
    int grid_size = 64;
    int mi_bins_phi = 64;
    int mi_bins_est = 64;
    std::uint64_t seed = 20250801;
};

/// Single-shot estimation: the raw measured phase is the estimate. Local
/// statistics wrap errors to the interval centered at the true phase; the
/// averaging pass wraps to (-pi, pi]. Supports Noon, Ecs and CoherentPair
/// probes; requires trials >= 1000.
EstimationReport run_single_shot(const ProbeState& state, const PriorDistribution& prior,
                                 const SingleShotOptions& options = {});

/// Classical Fisher information of the measurement outcome at phi, by
/// central differences of the grid density; delta must lie in [1e-4, 1e-2].
/// Grid points with density below 1e-14 are skipped.
double fisher_information(const ProbeState& state, double phi, double delta);

struct PhaseInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
    double width() const { return empty ? 0.0 : hi - lo; }
};

/// Maximal interval around phi0 on which |d<est>/dphi - 1| <= tolerance for
/// the curve sampled at `phi` (slopes by central differences). Used directly
/// by tests with synthetic estimator curves.
PhaseInterval unbiased_region_from_curve(std::span<const double> phi,
                                         std::span<const double> mean_estimate, double phi0,
                                         double tolerance);

/// Same region for the canonical measurement of `state`, with estimates
/// resolved modulo the measurement period into the window centered at phi0
/// and the expected-estimate curve computed by exact quadrature.
PhaseInterval locally_unbiased_region(const ProbeState& state, double phi0, double tolerance);

enum class IterativeFamily { Coh, Noon, Ecs };

struct IterativeOptions {
    int bits = 5;        // in [1, 10]
    int copies = 8;      // in [1, 64]
    long trials = 4000;  // independent runs of the full scheme
    std::uint64_t seed = 20250801;
    int mi_bins = 64;
};

/// Bit-by-bit estimation under a uniform 2pi prior. Stage j probes with
///   Coh:  CoherentPair, n_j = 4^{j-1}  (alpha_j = 2^{j-1}/sqrt(2))
///   Noon: Noon,         n_j = 2^{j-1}
///   Ecs:  Ecs matched to the Coh ladder, n_j = 4^{j-1}
/// and halves the candidate window on the circular median of `copies`
/// outcomes resolved about the window center (modulo the measurement
/// period). Wrong bits are never revisited; their cost shows up in the
/// measured error. The final estimate is the last window's center.
EstimationReport run_iterative(IterativeFamily family, const IterativeOptions& options = {});

/// Exact Shannon entropy of the summed-photon-number PMF of the full
/// multicomponent Coh probe (convolution of all stages and copies). Close to
/// (1/2) ln(2 pi e n) once n is large.
double iterative_generator_entropy(IterativeFamily family, int bits, int copies);

/// 95th percentile of the bootstrap RMSE distribution (resampling the
/// per-trial squared errors).
double bootstrap_rmse_upper95(std::span<const double> squared_errors, int resamples,
                              RandomStream& stream);

}  // namespace phasemet
