#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phasemet/bounds.hpp"
#include "phasemet/infotheory.hpp"
#include "phasemet/simulate.hpp"

using namespace phasemet;

TEST_CASE("random substreams are reproducible and distinct") {
    RandomStream a(42, 7), b(42, 7), c(42, 8);
    bool equal = true, differ = false;
    for (int i = 0; i < 64; ++i) {
        const auto va = a.next_u64();
        if (va != b.next_u64()) equal = false;
        if (va != c.next_u64()) differ = true;
    }
    CHECK(equal);
    CHECK(differ);

    RandomStream d(1, 0);
    double mean = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) mean += d.next_double();
    mean /= n;
    CHECK(std::abs(mean - 0.5) < 0.005);
}

TEST_CASE("measurement distribution shapes") {
    const double phi = 0.8;
    const auto noon3 = measurement_distribution(ProbeState::noon(3), phi);
    for (std::size_t j = 0; j < noon3.grid_size(); j += 7) {
        const double expected = (1.0 + std::cos(3.0 * (noon3.theta(j) - phi))) / two_pi;
        CHECK(std::abs(noon3.values()[j] - expected) <= 1e-12);
    }
    CHECK(measurement_period(ProbeState::noon(8)) == doctest::Approx(two_pi / 8.0));
    CHECK(measurement_period(ProbeState::ecs(2.0)) == doctest::Approx(two_pi));
    CHECK_THROWS_AS(measurement_distribution(
                        ProbeState::multicomponent({{ProbeState::noon(1), 2}}), 0.0),
                    std::invalid_argument);
}

TEST_CASE("single-shot runs are deterministic") {
    SingleShotOptions options;
    options.trials = 2000;
    options.grid_size = 16;
    options.seed = 99;
    const auto prior = PriorDistribution::uniform_full();
    const auto a = run_single_shot(ProbeState::noon(2), prior, options);
    const auto b = run_single_shot(ProbeState::noon(2), prior, options);
    CHECK(a.rmse_average == b.rmse_average);
    CHECK(a.mutual_info_nats == b.mutual_info_nats);
    CHECK(a.bias_curve == b.bias_curve);
    CHECK(a.rmse_local_curve == b.rmse_local_curve);
    CHECK(a.precision_curve == b.precision_curve);

    SingleShotOptions other = options;
    other.seed = 100;
    const auto c = run_single_shot(ProbeState::noon(2), prior, other);
    CHECK(a.rmse_average != c.rmse_average);
}

TEST_CASE("single-shot validation") {
    const auto prior = PriorDistribution::uniform_full();
    SingleShotOptions options;
    options.trials = 100;
    CHECK_THROWS_AS(run_single_shot(ProbeState::noon(1), prior, options), std::invalid_argument);
    options.trials = 2000;
    CHECK_THROWS_AS(run_single_shot(ProbeState::single_coherent(1.0), prior, options),
                    std::invalid_argument);
}

TEST_CASE("average error matches the prior-weighted local curve") {
    SingleShotOptions options;
    options.trials = 40000;
    options.grid_size = 32;
    options.seed = 2024;
    const auto report =
        run_single_shot(ProbeState::coherent_pair(2.0), PriorDistribution::uniform_full(), options);

    double weighted = 0.0;
    for (std::size_t i = 0; i < report.phi_grid.size(); ++i)
        weighted +=
            report.prior_weights[i] * report.rmse_local_curve[i] * report.rmse_local_curve[i];
    const double avg_sq = report.rmse_average * report.rmse_average;
    const double se_m2 = 2.0 * report.rmse_average * report.rmse_average_stderr;
    CHECK(std::abs(avg_sq - weighted) <= 3.0 * std::sqrt(2.0) * se_m2 + 1e-12);
}

TEST_CASE("information and error bounds hold in simulation") {
    SingleShotOptions options;
    options.trials = 20000;
    options.grid_size = 24;
    options.mi_bins_phi = 16;
    options.mi_bins_est = 16;
    options.seed = 31;
    const auto prior = PriorDistribution::uniform_full();

    const std::vector<ProbeState> states = {ProbeState::noon(1), ProbeState::noon(4),
                                            ProbeState::ecs(2.0), ProbeState::coherent_pair(2.0)};
    for (const auto& state : states) {
        const auto report = run_single_shot(state, prior, options);
        const auto dist = generator_distribution(state, Generator::N2);
        const double entropy_g = shannon_entropy(dist);

        CHECK(report.mutual_info_nats <= entropy_g + 0.02);
        const double floor = entropic_bound(prior.entropy(), entropy_g);
        CHECK(report.rmse_average >= floor - 3.0 * report.rmse_average_stderr);
        CHECK(report.total_resources_n == doctest::Approx(mean_total_photons(state)));
    }
}

TEST_CASE("noon information is capped at one bit") {
    SingleShotOptions options;
    options.trials = 20000;
    options.grid_size = 16;
    options.mi_bins_phi = 16;
    options.mi_bins_est = 16;
    options.seed = 8;
    const auto report =
        run_single_shot(ProbeState::noon(1), PriorDistribution::uniform_full(), options);
    CHECK(report.mutual_info_nats >= 0.0);
    CHECK(report.mutual_info_nats <= std::numbers::ln2 + 0.02);
}

TEST_CASE("local curve obeys the helstrom bound where nearly unbiased") {
    SingleShotOptions options;
    options.trials = 20000;
    options.grid_size = 24;
    options.seed = 5;
    const ProbeState state = ProbeState::coherent_pair(4.0);
    const auto report = run_single_shot(state, PriorDistribution::uniform_full(), options);
    const double dg = std::sqrt(generator_variance(state, Generator::N2));

    int tested = 0;
    for (std::size_t i = 1; i + 1 < report.phi_grid.size(); ++i) {
        const double slope = (report.bias_curve[i + 1] + report.phi_grid[i + 1] -
                              report.bias_curve[i - 1] - report.phi_grid[i - 1]) /
                             (report.phi_grid[i + 1] - report.phi_grid[i - 1]);
        if (std::abs(slope - 1.0) <= 0.05 && std::abs(report.bias_curve[i]) <= 0.01) {
            CHECK(report.rmse_local_curve[i] >= 0.95 / (2.0 * dg));
            ++tested;
        }
    }
    CHECK(tested > 0);
}

TEST_CASE("delta prior: perfect knowledge, no information") {
    SingleShotOptions options;
    options.trials = 5000;
    options.seed = 17;
    const auto report =
        run_single_shot(ProbeState::coherent_pair(2.0), PriorDistribution::delta(1.0), options);
    CHECK(report.phi_grid.size() == 1);
    CHECK(report.mutual_info_nats == 0.0);
    // entropic floor vanishes for a point prior, any error is consistent
    CHECK(entropic_bound(PriorDistribution::delta(1.0).entropy(), 1.0) == 0.0);
}

TEST_CASE("fisher information ceiling and saturation") {
    for (const auto& state : {ProbeState::noon(1), ProbeState::noon(8), ProbeState::ecs(10.0),
                              ProbeState::coherent_pair(std::sqrt(50.0))}) {
        const double cap = 4.0 * generator_variance(state, Generator::N2);
        CHECK(fisher_information(state, 0.3, 1e-3) <= cap * (1.0 + 1e-3));
    }
    const double f4 = fisher_information(ProbeState::coherent_pair(4.0), 0.3, 1e-3);
    CHECK(std::abs(f4 - 64.0) / 64.0 <= 0.10);

    // a sub-threshold amplitude carries essentially no phase signal
    CHECK(fisher_information(ProbeState::single_coherent(1e-3), 0.3, 1e-3) <= 1e-5);

    CHECK_THROWS_AS(fisher_information(ProbeState::noon(1), 0.0, 1e-5), std::invalid_argument);
    CHECK_THROWS_AS(fisher_information(ProbeState::noon(1), 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("locally unbiased regions shrink with the interference order") {
    const auto r8 = locally_unbiased_region(ProbeState::noon(8), 1.0, 0.1);
    const auto r16 = locally_unbiased_region(ProbeState::noon(16), 1.0, 0.1);
    CHECK_FALSE(r8.empty);
    CHECK_FALSE(r16.empty);
    CHECK(r16.width() < r8.width());
    // on the order of one period over the interference order
    CHECK(r8.width() > 0.05);
    CHECK(r8.width() < two_pi / 8.0);

    const auto wide = locally_unbiased_region(ProbeState::coherent_pair(4.0), 1.0, 0.1);
    CHECK(wide.width() > std::numbers::pi / 2.0);
}

TEST_CASE("synthetic estimator curves") {
    std::vector<double> phi, flat, tilted;
    for (int i = 0; i <= 64; ++i) {
        const double x = -1.0 + 2.0 * i / 64.0;
        phi.push_back(x);
        flat.push_back(0.25);       // constant guess: slope 0 everywhere
        tilted.push_back(0.5 * x);  // uniform slope 1/2
    }
    CHECK(unbiased_region_from_curve(phi, flat, 0.0, 0.1).empty);
    CHECK(unbiased_region_from_curve(phi, tilted, 0.0, 0.1).empty);

    std::vector<double> ident = phi;
    const auto full = unbiased_region_from_curve(phi, ident, 0.0, 0.1);
    CHECK_FALSE(full.empty);
    CHECK(full.width() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("iterative scheme bookkeeping") {
    IterativeOptions options;
    options.bits = 3;
    options.copies = 4;
    options.trials = 500;
    options.seed = 3;
    const auto report = run_iterative(IterativeFamily::Coh, options);
    CHECK(report.total_resources_n == 84.0);
    CHECK(report.target_resolution == doctest::Approx(std::numbers::pi / 8.0).epsilon(1e-14));
    CHECK(report.resolution_reference ==
          doctest::Approx(std::numbers::pi * std::sqrt(4.0 / (3.0 * 84.0))).epsilon(1e-14));
    CHECK(report.rmse_boot_upper95 > report.rmse_average * 0.8);

    const auto again = run_iterative(IterativeFamily::Coh, options);
    CHECK(report.rmse_average == again.rmse_average);
    CHECK(report.rmse_boot_upper95 == again.rmse_boot_upper95);

    options.copies = 8;
    const auto noon = run_iterative(IterativeFamily::Noon, options);
    CHECK(noon.total_resources_n == 8.0 * 7.0);
    CHECK(std::isnan(noon.resolution_reference));

    IterativeOptions bad = options;
    bad.bits = 11;
    CHECK_THROWS_AS(run_iterative(IterativeFamily::Coh, bad), std::invalid_argument);
    bad.bits = 3;
    bad.copies = 65;
    CHECK_THROWS_AS(run_iterative(IterativeFamily::Coh, bad), std::invalid_argument);
}

TEST_CASE("vacuum background makes the entangled ladder noisier") {
    IterativeOptions options;
    options.bits = 3;
    options.copies = 8;
    options.trials = 2000;
    options.seed = 11;
    const auto coh = run_iterative(IterativeFamily::Coh, options);
    const auto ecs = run_iterative(IterativeFamily::Ecs, options);
    CHECK(ecs.total_resources_n == doctest::Approx(coh.total_resources_n).epsilon(1e-9));
    CHECK(ecs.rmse_average > coh.rmse_average);
    // regression: the gap is large, roughly a factor of five at this seed
    CHECK(ecs.rmse_average / coh.rmse_average > 2.0);
}

TEST_CASE("iterative generator entropy approaches the gaussian value") {
    const double exact = iterative_generator_entropy(IterativeFamily::Coh, 4, 4);
    const double n = 4.0 * (std::pow(4.0, 4) - 1.0) / 3.0;
    CHECK(n == 340.0);
    const double gauss = 0.5 * std::log(two_pi * std::numbers::e * n);
    CHECK(std::abs(exact - gauss) / gauss <= 0.02);

    // single pair: the summed-photon distribution is a plain Poisson
    const double smoke = iterative_generator_entropy(IterativeFamily::Coh, 1, 1);
    CHECK(smoke == doctest::Approx(shannon_entropy(IntegerDistribution::poisson(1.0))).epsilon(1e-12));

    // one more bit multiplies the resources by ~4, adding ~ln 2 of entropy
    const double h4 = iterative_generator_entropy(IterativeFamily::Coh, 4, 4);
    const double h5 = iterative_generator_entropy(IterativeFamily::Coh, 5, 4);
    CHECK(std::abs((h5 - h4) - std::numbers::ln2) / std::numbers::ln2 <= 0.05);

    CHECK_THROWS_AS(iterative_generator_entropy(IterativeFamily::Noon, 3, 4),
                    std::invalid_argument);
}

TEST_CASE("bootstrap percentile is deterministic and ordered") {
    std::vector<double> sq(500);
    RandomStream gen(21, 4);
    for (double& v : sq) {
        const double x = gen.next_double();
        v = x * x;
    }
    RandomStream b1(5, 0), b2(5, 0);
    const double u1 = bootstrap_rmse_upper95(sq, 200, b1);
    const double u2 = bootstrap_rmse_upper95(sq, 200, b2);
    CHECK(u1 == u2);

    double mean = 0.0;
    for (double v : sq) mean += v;
    const double rmse = std::sqrt(mean / static_cast<double>(sq.size()));
    CHECK(u1 >= rmse * 0.95);
    CHECK(u1 <= rmse * 1.2);
}
