#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phasemet/integer_distribution.hpp"

namespace phasemet {

/// Smallest accepted coherent amplitude. Below this the two-mode
/// superposition degenerates and the large-amplitude approximations used
/// throughout are void.
inline constexpr double min_alpha = 1e-3;

/// Phase-shift generator acting on a probe state: the photon number of the
/// shifted mode (N2) or the total photon number over all modes (NTotal).
/// The choice is always explicit; single-component analyses use N2 while
/// multicomponent schemes sum the number operators of every component.
enum class Generator { N2, NTotal };

/// Symbolic probe-state descriptor.
///
///   Noon(n)           (|n>|0> + |0>|n>)/sqrt(2)
///   Ecs(alpha)        (|a>|0> + |0>|a>)/sqrt(2(1+e^{-a^2}))
///   CoherentPair(a)   |a>|a>
///   SingleCoherent(a) |a>
///   Multicomponent    ordered list of (state, copies); one level only
class ProbeState {
  public:
    enum class Kind { Noon, Ecs, CoherentPair, SingleCoherent, Multicomponent };
    struct Part;

    static ProbeState noon(int n);
    static ProbeState ecs(double alpha);
    static ProbeState coherent_pair(double alpha);
    static ProbeState single_coherent(double alpha);
    static ProbeState multicomponent(std::vector<Part> parts);

    Kind kind() const { return kind_; }
    int noon_n() const;
    double alpha() const;
    const std::vector<Part>& parts() const;

  private:
    ProbeState() = default;
    Kind kind_ = Kind::Noon;
    int n_ = 1;
    double alpha_ = 0.0;
    std::vector<Part> parts_;
};

struct ProbeState::Part {
    ProbeState state;
    int copies = 1;
};

/// Parses the compact CLI syntax:
///   noon:n=5   ecs:alpha=2.0   cohpair:alpha=2.0   single:alpha=1.5
///   multi:[cohpair:alpha=0.5 x4, cohpair:alpha=1.0 x4]
ProbeState parse_probe_state(std::string_view spec);

/// Canonical text form; parse_probe_state(to_spec_string(s)) round-trips.
std::string to_spec_string(const ProbeState& state);

/// Exact PMF of the generator for the probe state, truncated per the
/// IntegerDistribution policy. Multicomponent states convolve their parts
/// (copies-fold per part). `power` relabels eigenvalues m -> m^power for
/// nonlinear generators.
IntegerDistribution generator_distribution(const ProbeState& state, Generator generator,
                                           int power = 1,
                                           long eigenvalue_ceiling = default_eigenvalue_ceiling);

/// Mean of N1 + ... + Nk over all modes of the state.
double mean_total_photons(const ProbeState& state);

/// Variance of the generator. Multicomponent states use additivity of the
/// variance over independent parts.
double generator_variance(const ProbeState& state, Generator generator);

}  // namespace phasemet
