#pragma once

#include <iosfwd>
#include <span>
#include <string>

#include "phasemet/bounds.hpp"
#include "phasemet/phase_distribution.hpp"
#include "phasemet/simulate.hpp"

namespace phasemet {

/// 12 significant digits, the interchange precision of every CSV/JSON value.
std::string format_g12(double value);

/// Columns: family,n,alpha,delta_g,entropy_g_nats,cr_bound,entropic_bound,
/// asymptotic_bound. Infinite sentinels print as "inf"; the Noon family has
/// no alpha and leaves the cell empty.
void write_bounds_csv(std::ostream& out, std::span<const BoundReport> rows);

/// Columns: phi,bias,rmse_local,precision.
void write_report_csv(std::ostream& out, const EstimationReport& report);

void write_report_json(std::ostream& out, const EstimationReport& report,
                       const std::string& state_spec, const std::string& prior_spec);

/// Columns: theta,density.
void write_phase_csv(std::ostream& out, const PhaseDistribution& dist);

}  // namespace phasemet
