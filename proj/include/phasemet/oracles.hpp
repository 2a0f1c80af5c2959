#pragma once

#include "phasemet/integer_distribution.hpp"

namespace phasemet::oracles {

/// Mode-2 photon number PMF of the two-mode coherent superposition, obtained
/// by squaring the explicit two-mode Fock amplitude table and summing over
/// mode 1. Independent of the closed-form construction; used by tests and by
/// the `verify` command.
IntegerDistribution ecs_mode2_pmf_fock(double alpha);

/// Mean of N1 + N2 from the same amplitude table.
double ecs_mean_total_photons_fock(double alpha);

}  // namespace phasemet::oracles
