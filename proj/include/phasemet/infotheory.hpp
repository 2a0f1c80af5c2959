#pragma once

#include <cstdint>
#include <vector>

#include "phasemet/integer_distribution.hpp"

namespace phasemet {

/// -sum p ln p in nats, with 0 ln 0 := 0. A discarded tail of mass t
/// perturbs the result by at most ~60 t nats for supports below 10^6, far
/// under every tolerance used here given t <= 1e-9.
double shannon_entropy(const IntegerDistribution& dist);

/// Largest entropy an integer-supported PMF of variance v can have:
/// (1/2) ln(2 pi e (v + 1/12)). Follows from smoothing the PMF with a unit
/// uniform and applying the Gaussian maximum-entropy property.
double max_entropy_bound(double variance);

/// Empirical joint counts of (phase bin, estimate bin).
struct JointHistogram {
    int bins_phi = 0;
    int bins_est = 0;
    std::vector<std::uint64_t> counts;  // row-major, bins_phi x bins_est
    std::uint64_t total = 0;

    JointHistogram(int bins_phi_, int bins_est_);
    void add(int phi_bin, int est_bin);
    std::uint64_t at(int phi_bin, int est_bin) const;
};

/// Plug-in mutual information estimate in nats. Degenerate histograms
/// (a single row or column) give 0. The plug-in estimator carries a positive
/// bias of roughly (bins_phi-1)(bins_est-1)/(2 total) nats.
double mutual_information(const JointHistogram& hist);

}  // namespace phasemet
