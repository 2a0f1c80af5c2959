#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "phasemet/angles.hpp"
#include "phasemet/infotheory.hpp"
#include "phasemet/prior.hpp"
#include "phasemet/probe_state.hpp"
#include "phasemet/random.hpp"

using namespace phasemet;

TEST_CASE("shannon entropy of simple and large distributions") {
    CHECK(shannon_entropy(IntegerDistribution(0, {0.5, 0.5})) ==
          doctest::Approx(std::numbers::ln2).epsilon(1e-15));
    CHECK(shannon_entropy(IntegerDistribution::point_mass(7)) == 0.0);

    // near-gaussian regime
    const double poisson100 = shannon_entropy(IntegerDistribution::poisson(100.0));
    const double gauss100 = 0.5 * std::log(two_pi * std::numbers::e * 100.0);
    CHECK(std::abs(poisson100 - gauss100) / gauss100 <= 0.01);

    const double ecs10 =
        shannon_entropy(generator_distribution(ProbeState::ecs(10.0), Generator::N2));
    const double mixture = 0.25 * std::log(two_pi * std::numbers::e * 100.0) + std::numbers::ln2;
    CHECK(std::abs(ecs10 - mixture) / mixture <= 0.02);
}

TEST_CASE("prior entropies") {
    CHECK(PriorDistribution::uniform_full().entropy() ==
          doctest::Approx(std::log(two_pi)).epsilon(1e-15));
    CHECK(PriorDistribution::uniform(0.0, std::numbers::pi / 8.0).entropy() ==
          doctest::Approx(std::log(std::numbers::pi / 8.0)).epsilon(1e-14));

    const double h = PriorDistribution::delta(1.0).entropy();
    CHECK(std::isinf(h));
    CHECK(h < 0.0);
    CHECK(std::exp(h) == 0.0);

    const PriorDistribution flat = PriorDistribution::tabulated(std::vector<double>(64, 3.0));
    CHECK(flat.entropy() == doctest::Approx(std::log(two_pi)).epsilon(1e-12));
    CHECK(flat.density(1.0) == doctest::Approx(1.0 / two_pi).epsilon(1e-12));
}

TEST_CASE("mutual information of exact histograms") {
    JointHistogram uniform(16, 16);
    for (int i = 0; i < 16; ++i)
        for (int j = 0; j < 16; ++j)
            for (int k = 0; k < 3; ++k) uniform.add(i, j);
    CHECK(mutual_information(uniform) == doctest::Approx(0.0).epsilon(1e-14));

    JointHistogram diag(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int k = 0; k < 5; ++k) diag.add(i, i);
    CHECK(mutual_information(diag) == doctest::Approx(std::log(8.0)).epsilon(1e-14));

    JointHistogram row(1, 32);
    for (int j = 0; j < 32; ++j) row.add(0, j);
    CHECK(mutual_information(row) == 0.0);
    JointHistogram col(32, 1);
    for (int i = 0; i < 32; ++i) col.add(i, 0);
    CHECK(mutual_information(col) == 0.0);
}

TEST_CASE("mutual information stays within its range on random histograms") {
    RandomStream stream(99, 0);
    for (int round = 0; round < 20; ++round) {
        const int rows = 2 + static_cast<int>(stream.next_double() * 6);
        const int cols = 2 + static_cast<int>(stream.next_double() * 6);
        JointHistogram hist(rows, cols);
        const int draws = 50 + static_cast<int>(stream.next_double() * 500);
        for (int k = 0; k < draws; ++k)
            hist.add(static_cast<int>(stream.next_double() * rows) % rows,
                     static_cast<int>(stream.next_double() * cols) % cols);
        const double info = mutual_information(hist);
        CHECK(info >= 0.0);
        CHECK(info <= std::min(std::log(static_cast<double>(rows)),
                               std::log(static_cast<double>(cols))) +
                          1e-12);
    }
}

TEST_CASE("max-entropy bound values and property") {
    const double at_zero = max_entropy_bound(0.0);
    CHECK(at_zero == doctest::Approx(0.5 * std::log(two_pi * std::numbers::e / 12.0)).epsilon(1e-15));
    CHECK(at_zero == doctest::Approx(0.1765).epsilon(3e-4));
    CHECK(max_entropy_bound(100.0) ==
          doctest::Approx(0.5 * std::log(two_pi * std::numbers::e * (100.0 + 1.0 / 12.0)))
              .epsilon(1e-15));

    const std::vector<ProbeState> states = {
        ProbeState::noon(1),           ProbeState::noon(16),
        ProbeState::ecs(0.5),          ProbeState::ecs(3.0),
        ProbeState::ecs(10.0),         ProbeState::coherent_pair(0.7),
        ProbeState::coherent_pair(6.0), ProbeState::single_coherent(2.0),
        ProbeState::multicomponent({{ProbeState::coherent_pair(1.0), 4}})};
    for (const auto& state : states) {
        for (const Generator gen : {Generator::N2, Generator::NTotal}) {
            const auto dist = generator_distribution(state, gen);
            CHECK(shannon_entropy(dist) <= max_entropy_bound(dist.variance()) + 1e-12);
        }
    }
}

TEST_CASE("entropy is invariant under eigenvalue relabeling") {
    for (const double lambda : {0.5, 4.0, 25.0}) {
        const auto base = IntegerDistribution::poisson(lambda);
        for (const int power : {2, 3}) {
            if (std::pow(static_cast<double>(base.max_value()), power) > 1e6) continue;
            CHECK(shannon_entropy(power_relabel(base, power)) ==
                  doctest::Approx(shannon_entropy(base)).epsilon(1e-12));
        }
    }
}

TEST_CASE("prior parsing round trips") {
    const PriorDistribution full = parse_prior("uniform:width=6.283185307179586");
    CHECK(full.width() == doctest::Approx(two_pi).epsilon(1e-15));
    CHECK(full.center() == doctest::Approx(std::numbers::pi).epsilon(1e-15));

    const PriorDistribution window = parse_prior("uniform:center=0,width=0.7854");
    CHECK(window.center() == 0.0);
    CHECK(window.width() == doctest::Approx(0.7854).epsilon(1e-15));
    CHECK(to_spec_string(parse_prior(to_spec_string(window))) == to_spec_string(window));

    const PriorDistribution point = parse_prior("delta:phi0=1.0");
    CHECK(point.kind() == PriorDistribution::Kind::Delta);
    CHECK(to_spec_string(point) == "delta:phi0=1");

    CHECK_THROWS_AS(parse_prior("uniform:center=1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prior("uniform:width=7"), std::invalid_argument);
    CHECK_THROWS_AS(parse_prior("gauss:sigma=1"), std::invalid_argument);
}

TEST_CASE("prior grids and sampling") {
    const PriorDistribution prior = PriorDistribution::uniform(1.0, 0.5);
    const auto mid = prior.grid_midpoints(4);
    const auto w = prior.grid_weights(4);
    REQUIRE(mid.size() == 4);
    CHECK(mid.front() == doctest::Approx(1.0 - 0.25 + 0.0625).epsilon(1e-14));
    CHECK(stable_sum(w) == doctest::Approx(1.0).epsilon(1e-14));

    RandomStream stream(7, 3);
    for (int i = 0; i < 1000; ++i) {
        const double phi = prior.sample(stream);
        CHECK(phi >= 0.75);
        CHECK(phi <= 1.25);
    }

    const auto single = PriorDistribution::delta(2.0).grid_midpoints(16);
    REQUIRE(single.size() == 1);
    CHECK(single[0] == 2.0);
}
