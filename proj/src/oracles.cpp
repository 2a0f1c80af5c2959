#include "phasemet/oracles.hpp"

#include <cmath>
#include <vector>

#include "phasemet/angles.hpp"
#include "phasemet/phase_distribution.hpp"

namespace phasemet::oracles {

namespace {

// Dense two-mode amplitude table of (|a>|0> + |0>|a>)/sqrt(2(1+e^{-a^2})).
std::vector<std::vector<double>> ecs_amplitude_table(double alpha) {
    const std::vector<double> amp = coherent_amplitudes(alpha);
    const std::size_t modes = amp.size();
    const double norm = 1.0 / std::sqrt(2.0 * (1.0 + std::exp(-alpha * alpha)));
    std::vector<std::vector<double>> table(modes, std::vector<double>(modes, 0.0));
    for (std::size_t m1 = 0; m1 < modes; ++m1) table[m1][0] += norm * amp[m1];
    for (std::size_t m2 = 0; m2 < modes; ++m2) table[0][m2] += norm * amp[m2];
    return table;
}

}  // namespace

IntegerDistribution ecs_mode2_pmf_fock(double alpha) {
    const auto table = ecs_amplitude_table(alpha);
    const std::size_t modes = table.size();
    std::vector<double> pmf(modes, 0.0);
    for (std::size_t m2 = 0; m2 < modes; ++m2)
        for (std::size_t m1 = 0; m1 < modes; ++m1) pmf[m2] += table[m1][m2] * table[m1][m2];
    double trunc = 1.0 - stable_sum(pmf);
    if (trunc < 0.0) trunc = 0.0;
    return IntegerDistribution(0, std::move(pmf), trunc);
}

double ecs_mean_total_photons_fock(double alpha) {
    const auto table = ecs_amplitude_table(alpha);
    const std::size_t modes = table.size();
    std::vector<double> terms;
    terms.reserve(modes * modes);
    for (std::size_t m1 = 0; m1 < modes; ++m1)
        for (std::size_t m2 = 0; m2 < modes; ++m2)
            terms.push_back(static_cast<double>(m1 + m2) * table[m1][m2] * table[m1][m2]);
    return stable_sum(terms);
}

}  // namespace phasemet::oracles
