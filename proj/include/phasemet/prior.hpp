#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "phasemet/random.hpp"

namespace phasemet {

/// Prior density for the applied phase shift.
///
/// Differential entropy conventions (nats): a width-W uniform window has
/// entropy ln W; a point prior carries -inf, so exp(entropy) = 0 and every
/// entropy-scaled error bound collapses to zero for a perfectly known phase.
class PriorDistribution {
  public:
    enum class Kind { Uniform, Delta, Tabulated };

    static PriorDistribution uniform(double center, double width);  // width in (0, 2pi]
    static PriorDistribution uniform_full();                        // 1/(2pi) on [0, 2pi)
    static PriorDistribution delta(double phi0);
    /// Density samples on the uniform grid theta_k = 2*pi*k/K over [0, 2pi),
    /// normalized by the (periodic) trapezoid rule.
    static PriorDistribution tabulated(std::vector<double> densities);

    Kind kind() const { return kind_; }
    double center() const { return center_; }
    double width() const { return width_; }  // 0 for Delta, 2pi for Tabulated

    double entropy() const;  // nats; -infinity for Delta
    double density(double phi) const;
    double sample(RandomStream& stream) const;

    /// Midpoints of a `count`-cell partition of the support (Delta: the
    /// single point) and the prior mass carried by each cell (sums to 1).
    std::vector<double> grid_midpoints(int count) const;
    std::vector<double> grid_weights(int count) const;

  private:
    PriorDistribution() = default;
    Kind kind_ = Kind::Uniform;
    double center_ = 0.0;
    double width_ = 0.0;
    std::vector<double> table_;  // Tabulated only
};

/// Parses CLI syntax: uniform:width=6.283185 | uniform:center=0,width=0.7854
/// | delta:phi0=1.0. A uniform prior without a center is centered at pi so
/// that the full-width window is [0, 2pi).
PriorDistribution parse_prior(std::string_view spec);

std::string to_spec_string(const PriorDistribution& prior);

}  // namespace phasemet
