#include "phasemet/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace phasemet {

std::string format_g12(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

void write_bounds_csv(std::ostream& out, std::span<const BoundReport> rows) {
    out << "family,n,alpha,delta_g,entropy_g_nats,cr_bound,entropic_bound,asymptotic_bound\n";
    for (const BoundReport& row : rows) {
        out << family_label(row.family) << ',' << format_g12(row.n) << ','
            << (std::isnan(row.alpha) ? std::string() : format_g12(row.alpha)) << ','
            << format_g12(row.delta_g) << ',' << format_g12(row.entropy_g_nats) << ','
            << format_g12(row.cr_bound) << ',' << format_g12(row.entropic_bound) << ','
            << format_g12(row.asymptotic_bound) << '\n';
    }
}

void write_report_csv(std::ostream& out, const EstimationReport& report) {
    out << "phi,bias,rmse_local,precision\n";
    for (std::size_t i = 0; i < report.phi_grid.size(); ++i) {
        out << format_g12(report.phi_grid[i]) << ',' << format_g12(report.bias_curve[i]) << ','
            << format_g12(report.rmse_local_curve[i]) << ','
            << format_g12(report.precision_curve[i]) << '\n';
    }
}

void write_report_json(std::ostream& out, const EstimationReport& report,
                       const std::string& state_spec, const std::string& prior_spec) {
    nlohmann::json j;
    if (!state_spec.empty()) j["state"] = state_spec;
    if (!prior_spec.empty()) j["prior"] = prior_spec;
    j["phi_grid"] = report.phi_grid;
    j["prior_weights"] = report.prior_weights;
    j["bias_curve"] = report.bias_curve;
    j["rmse_local_curve"] = report.rmse_local_curve;
    j["precision_curve"] = report.precision_curve;
    j["rmse_average"] = report.rmse_average;
    j["rmse_average_stderr"] = report.rmse_average_stderr;
    j["mutual_info_nats"] = report.mutual_info_nats;
    j["trials_per_phi"] = report.trials_per_phi;
    j["total_resources_n"] = report.total_resources_n;
    j["seed"] = report.seed;
    if (report.bits > 0) {
        j["bits"] = report.bits;
        j["copies"] = report.copies;
        j["target_resolution"] = report.target_resolution;
        if (!std::isnan(report.resolution_reference)) {
            j["resolution_reference"] = report.resolution_reference;
            j["resolution_ratio"] = report.resolution_ratio;
        }
        j["rmse_boot_upper95"] = report.rmse_boot_upper95;
    }
    out << j.dump(2) << '\n';
}

void write_phase_csv(std::ostream& out, const PhaseDistribution& dist) {
    out << "theta,density\n";
    for (std::size_t j = 0; j < dist.grid_size(); ++j)
        out << format_g12(dist.theta(j)) << ',' << format_g12(dist.values()[j]) << '\n';
}

}  // namespace phasemet
