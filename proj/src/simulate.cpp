#include "phasemet/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "phasemet/bounds.hpp"
#include "phasemet/infotheory.hpp"

namespace phasemet {

namespace {

int clamp_bin(double frac, int bins) {
    int idx = static_cast<int>(frac * static_cast<double>(bins));
    return std::clamp(idx, 0, bins - 1);
}

double median_inplace(std::vector<double>& values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return 0.5 * (values[(n - 1) / 2] + values[n / 2]);
}

}  // namespace

PhaseDistribution measurement_distribution(const ProbeState& state, double phi) {
    using cplx = std::complex<double>;
    switch (state.kind()) {
        case ProbeState::Kind::Noon: {
            const int n = state.noon_n();
            std::vector<cplx> coeff(static_cast<std::size_t>(n) + 1, cplx(0.0, 0.0));
            const double r = 1.0 / std::sqrt(2.0);
            coeff.front() = r * std::polar(1.0, -static_cast<double>(n) * phi);
            coeff.back() = cplx(r, 0.0);
            return canonical_phase(AmplitudeVector(std::move(coeff)));
        }
        case ProbeState::Kind::Ecs:
            return ecs_relative_phase(state.alpha(), phi);
        case ProbeState::Kind::CoherentPair:
        case ProbeState::Kind::SingleCoherent: {
            const std::vector<double> amps = coherent_amplitudes(state.alpha());
            std::vector<cplx> coeff(amps.size());
            for (std::size_t m = 0; m < amps.size(); ++m)
                coeff[m] = amps[m] * std::polar(1.0, static_cast<double>(m) * phi);
            return canonical_phase(AmplitudeVector(std::move(coeff)));
        }
        case ProbeState::Kind::Multicomponent:
            throw std::invalid_argument(
                "measurement_distribution: no single measurement for multicomponent states");
    }
    throw std::logic_error("measurement_distribution: unknown state kind");
}

double measurement_period(const ProbeState& state) {
    if (state.kind() == ProbeState::Kind::Multicomponent)
        throw std::invalid_argument("measurement_period: multicomponent states unsupported");
    if (state.kind() == ProbeState::Kind::Noon)
        return two_pi / static_cast<double>(state.noon_n());
    return two_pi;
}

EstimationReport run_single_shot(const ProbeState& state, const PriorDistribution& prior,
                                 const SingleShotOptions& options) {
    const auto kind = state.kind();
    if (kind != ProbeState::Kind::Noon && kind != ProbeState::Kind::Ecs &&
        kind != ProbeState::Kind::CoherentPair)
        throw std::invalid_argument("run_single_shot: state must be noon, ecs or cohpair");
    if (options.trials < 1000) throw std::invalid_argument("run_single_shot: trials < 1000");
    if (options.grid_size < 1 || options.mi_bins_phi < 1 || options.mi_bins_est < 1)
        throw std::invalid_argument("run_single_shot: bad grid/bin counts");

    // The measurement density is covariant in phi, so one sampler built at
    // phi = 0 serves every grid point: a draw for phase phi is the phi-shifted
    // draw from the base density.
    const PhaseDistribution base = measurement_distribution(state, 0.0);
    const PhaseSampler sampler(base);

    EstimationReport report;
    report.seed = options.seed;
    report.trials_per_phi = options.trials;
    report.total_resources_n = mean_total_photons(state);
    report.phi_grid = prior.grid_midpoints(options.grid_size);
    report.prior_weights = prior.grid_weights(options.grid_size);

    const std::size_t grid = report.phi_grid.size();
    const double trials = static_cast<double>(options.trials);
    std::vector<double> mean_est(grid, 0.0);
    std::vector<double> sum_e2(grid, 0.0);

    for (std::size_t i = 0; i < grid; ++i) {
        const double phi = report.phi_grid[i];
        RandomStream stream(options.seed, static_cast<std::uint64_t>(i) + 1);
        double se = 0.0, se2 = 0.0;
        for (long t = 0; t < options.trials; ++t) {
            const double theta = wrap_positive(sampler(stream) + phi);
            const double e = wrap_symmetric(theta - phi);
            se += e;
            se2 += e * e;
        }
        const double bias = se / trials;
        report.bias_curve.push_back(bias);
        report.rmse_local_curve.push_back(std::sqrt(se2 / trials));
        mean_est[i] = phi + bias;
        sum_e2[i] = se2;
    }

    // Local precision: RMSE of the slope-rescaled estimate, slope from the
    // measured mean-estimate curve.
    report.precision_curve.resize(grid, 0.0);
    for (std::size_t i = 0; i < grid; ++i) {
        double slope = 1.0;
        if (grid >= 2) {
            const std::size_t lo = i == 0 ? 0 : i - 1;
            const std::size_t hi = i + 1 == grid ? i : i + 1;
            slope = (mean_est[hi] - mean_est[lo]) / (report.phi_grid[hi] - report.phi_grid[lo]);
        }
        const double k = std::abs(slope);
        if (k < 1e-9) {
            report.precision_curve[i] = std::numeric_limits<double>::infinity();
            continue;
        }
        // E[(est/k - phi)^2] with est = phi + e:
        //   e/k + phi (1-k)/k, so the moments of e suffice.
        const double phi = report.phi_grid[i];
        const double m2 = sum_e2[i] / trials;
        const double c = phi * (1.0 - k) / k;
        report.precision_curve[i] =
            std::sqrt(std::max(0.0, m2 / (k * k) + 2.0 * c * report.bias_curve[i] / k + c * c));
    }

    // Independent averaging pass: phi drawn from the prior, errors wrapped to
    // (-pi, pi]. Feeds the average RMSE and the information histogram.
    const int bins_phi = prior.kind() == PriorDistribution::Kind::Delta ? 1 : options.mi_bins_phi;
    JointHistogram hist(bins_phi, options.mi_bins_est);
    const double support_lo = prior.center() - 0.5 * prior.width();
    const double support_width = prior.width() > 0.0 ? prior.width() : 1.0;

    RandomStream stream(options.seed, 0);
    double se2 = 0.0, se4 = 0.0;
    for (long t = 0; t < options.trials; ++t) {
        const double phi = prior.sample(stream);
        const double theta = wrap_positive(sampler(stream) + phi);
        const double e = wrap_symmetric(theta - phi);
        se2 += e * e;
        se4 += e * e * e * e;
        const int pbin =
            bins_phi == 1 ? 0 : clamp_bin((phi - support_lo) / support_width, bins_phi);
        hist.add(pbin, clamp_bin(theta / two_pi, options.mi_bins_est));
    }
    const double m2 = se2 / trials;
    const double var_m2 = std::max(0.0, se4 / trials - m2 * m2);
    report.rmse_average = std::sqrt(m2);
    report.rmse_average_stderr =
        report.rmse_average > 0.0 ? std::sqrt(var_m2 / trials) / (2.0 * report.rmse_average) : 0.0;
    report.mutual_info_nats = mutual_information(hist);
    return report;
}

double fisher_information(const ProbeState& state, double phi, double delta) {
    if (!(delta >= 1e-4 && delta <= 1e-2))
        throw std::invalid_argument("fisher_information: delta outside [1e-4, 1e-2]");
    const PhaseDistribution at = measurement_distribution(state, phi);
    const PhaseDistribution up = measurement_distribution(state, phi + delta);
    const PhaseDistribution down = measurement_distribution(state, phi - delta);

    const double step = at.grid_step();
    double fisher = 0.0;
    for (std::size_t j = 0; j < at.grid_size(); ++j) {
        const double p = at.values()[j];
        if (p < 1e-14) continue;
        const double dp = (up.values()[j] - down.values()[j]) / (2.0 * delta);
        fisher += step * dp * dp / p;
    }
    return fisher;
}

PhaseInterval unbiased_region_from_curve(std::span<const double> phi,
                                         std::span<const double> mean_estimate, double phi0,
                                         double tolerance) {
    if (phi.size() != mean_estimate.size() || phi.size() < 3)
        throw std::invalid_argument("unbiased_region_from_curve: need >= 3 samples");

    const std::size_t n = phi.size();
    std::vector<double> slope(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == n ? i : i + 1;
        slope[i] = (mean_estimate[hi] - mean_estimate[lo]) / (phi[hi] - phi[lo]);
    }

    std::size_t center = 0;
    double best = std::abs(phi[0] - phi0);
    for (std::size_t i = 1; i < n; ++i) {
        const double d = std::abs(phi[i] - phi0);
        if (d < best) {
            best = d;
            center = i;
        }
    }

    PhaseInterval region;
    if (std::abs(slope[center] - 1.0) > tolerance) return region;

    std::size_t lo = center, hi = center;
    while (lo > 0 && std::abs(slope[lo - 1] - 1.0) <= tolerance) --lo;
    while (hi + 1 < n && std::abs(slope[hi + 1] - 1.0) <= tolerance) ++hi;
    region.empty = false;
    region.lo = lo == 0 ? phi[0] : 0.5 * (phi[lo - 1] + phi[lo]);
    region.hi = hi + 1 == n ? phi[n - 1] : 0.5 * (phi[hi] + phi[hi + 1]);
    return region;
}

PhaseInterval locally_unbiased_region(const ProbeState& state, double phi0, double tolerance) {
    if (!(tolerance > 0.0)) throw std::invalid_argument("locally_unbiased_region: tolerance <= 0");
    const double period = measurement_period(state);
    const double span = 0.5 * period;

    // Expected estimate with outcomes resolved modulo the measurement period
    // into the window centered at phi0, by exact quadrature of the grid
    // density. The reference window stays fixed while phi scans.
    const int points = 513;
    std::vector<double> phis(points), means(points);
    for (int i = 0; i < points; ++i) {
        const double phi =
            phi0 - span + 2.0 * span * static_cast<double>(i) / static_cast<double>(points - 1);
        const PhaseDistribution dist = measurement_distribution(state, phi);
        double acc = 0.0;
        for (std::size_t j = 0; j < dist.grid_size(); ++j)
            acc += dist.values()[j] * wrap_into(dist.theta(j), phi0, period);
        phis[static_cast<std::size_t>(i)] = phi;
        means[static_cast<std::size_t>(i)] = acc * dist.grid_step();
    }
    return unbiased_region_from_curve(phis, means, phi0, tolerance);
}

EstimationReport run_iterative(IterativeFamily family, const IterativeOptions& options) {
    if (options.bits < 1 || options.bits > 10)
        throw std::invalid_argument("run_iterative: bits outside [1, 10]");
    if (options.copies < 1 || options.copies > 64)
        throw std::invalid_argument("run_iterative: copies outside [1, 64]");
    if (options.trials < 1) throw std::invalid_argument("run_iterative: trials < 1");

    const int m = options.bits;
    const int copies = options.copies;

    struct Stage {
        double n = 0.0;
        double period = 0.0;
        PhaseSampler sampler;
    };
    std::vector<Stage> stages;
    stages.reserve(static_cast<std::size_t>(m));
    double total_n = 0.0;
    for (int j = 1; j <= m; ++j) {
        ProbeState probe = [&]() {
            switch (family) {
                case IterativeFamily::Coh:
                    return ProbeState::coherent_pair(std::pow(2.0, j - 1) / std::sqrt(2.0));
                case IterativeFamily::Noon:
                    return ProbeState::noon(1 << (j - 1));
                case IterativeFamily::Ecs:
                    return ProbeState::ecs(ecs_alpha_for_mean_photons(std::pow(4.0, j - 1)));
            }
            throw std::logic_error("run_iterative: unknown family");
        }();
        const double n_j =
            family == IterativeFamily::Noon ? std::pow(2.0, j - 1) : std::pow(4.0, j - 1);
        total_n += static_cast<double>(copies) * n_j;
        stages.push_back(
            {n_j, measurement_period(probe), PhaseSampler(measurement_distribution(probe, 0.0))});
    }

    EstimationReport report;
    report.seed = options.seed;
    report.trials_per_phi = options.trials;
    report.bits = m;
    report.copies = copies;
    report.total_resources_n = total_n;
    report.target_resolution = two_pi / std::pow(2.0, m + 1);
    if (family == IterativeFamily::Coh)
        report.resolution_reference =
            std::numbers::pi * std::sqrt(static_cast<double>(copies) / (3.0 * total_n));

    JointHistogram hist(options.mi_bins, options.mi_bins);
    std::vector<double> squared_errors(static_cast<std::size_t>(options.trials));
    std::vector<double> outcomes(static_cast<std::size_t>(copies));

    for (long t = 0; t < options.trials; ++t) {
        RandomStream stream(options.seed, static_cast<std::uint64_t>(t) + 1);
        const double phi = two_pi * stream.next_double();
        double lo = 0.0;
        double width = two_pi;
        for (int j = 0; j < m; ++j) {
            const Stage& stage = stages[static_cast<std::size_t>(j)];
            const double c = lo + 0.5 * width;
            // Outcomes resolved modulo the stage's phase period about the
            // window center; the window then halves on the median.
            for (int k = 0; k < copies; ++k) {
                const double theta = wrap_positive(stage.sampler(stream) + phi);
                outcomes[static_cast<std::size_t>(k)] = wrap_into(theta, c, stage.period);
            }
            const double med = median_inplace(outcomes);
            if (med >= c) lo = c;
            width *= 0.5;
        }
        const double estimate = lo + 0.5 * width;
        const double e = wrap_symmetric(estimate - phi);
        squared_errors[static_cast<std::size_t>(t)] = e * e;
        hist.add(clamp_bin(phi / two_pi, options.mi_bins),
                 clamp_bin(wrap_positive(estimate) / two_pi, options.mi_bins));
    }

    const double trials = static_cast<double>(options.trials);
    double se2 = 0.0, se4 = 0.0;
    for (double s : squared_errors) {
        se2 += s;
        se4 += s * s;
    }
    const double m2 = se2 / trials;
    const double var_m2 = std::max(0.0, se4 / trials - m2 * m2);
    report.rmse_average = std::sqrt(m2);
    report.rmse_average_stderr =
        report.rmse_average > 0.0 ? std::sqrt(var_m2 / trials) / (2.0 * report.rmse_average) : 0.0;
    report.mutual_info_nats = mutual_information(hist);
    if (!std::isnan(report.resolution_reference))
        report.resolution_ratio = report.rmse_average / report.resolution_reference;

    RandomStream boot_stream(options.seed, 0);
    report.rmse_boot_upper95 = bootstrap_rmse_upper95(squared_errors, 200, boot_stream);
    return report;
}

double iterative_generator_entropy(IterativeFamily family, int bits, int copies) {
    if (family != IterativeFamily::Coh)
        throw std::invalid_argument("iterative_generator_entropy: coh family only");
    if (bits < 1 || bits > 10 || copies < 1 || copies > 64)
        throw std::invalid_argument("iterative_generator_entropy: bad ladder parameters");
    std::vector<ProbeState::Part> parts;
    for (int j = 1; j <= bits; ++j)
        parts.push_back(
            {ProbeState::coherent_pair(std::pow(2.0, j - 1) / std::sqrt(2.0)), copies});
    const ProbeState probe = ProbeState::multicomponent(std::move(parts));
    return shannon_entropy(generator_distribution(probe, Generator::NTotal));
}

double bootstrap_rmse_upper95(std::span<const double> squared_errors, int resamples,
                              RandomStream& stream) {
    if (squared_errors.empty() || resamples < 1)
        throw std::invalid_argument("bootstrap_rmse_upper95: empty input");
    const std::size_t n = squared_errors.size();
    std::vector<double> rmse(static_cast<std::size_t>(resamples));
    for (int r = 0; r < resamples; ++r) {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t pick =
                static_cast<std::size_t>(stream.next_double() * static_cast<double>(n));
            acc += squared_errors[std::min(pick, n - 1)];
        }
        rmse[static_cast<std::size_t>(r)] = std::sqrt(acc / static_cast<double>(n));
    }
    std::sort(rmse.begin(), rmse.end());
    const std::size_t idx = static_cast<std::size_t>(
        std::ceil(0.95 * static_cast<double>(resamples))) - 1;
    return rmse[std::min(idx, rmse.size() - 1)];
}

}  // namespace phasemet
