#pragma once

#include <cstddef>
#include <vector>

namespace phasemet {

inline constexpr long default_eigenvalue_ceiling = 1'000'000;

/// Probability mass function over the integer eigenvalues
/// [offset, offset + size). `truncation_mass` records the probability
/// discarded by tail cutoffs; kept probabilities plus the discarded mass
/// account for 1 within 1e-12 (enforced at construction).
class IntegerDistribution {
  public:
    IntegerDistribution(long offset, std::vector<double> probs, double truncation_mass = 0.0);

    long offset() const { return offset_; }
    long min_value() const { return offset_; }
    long max_value() const { return offset_ + static_cast<long>(probs_.size()) - 1; }
    std::size_t size() const { return probs_.size(); }
    const std::vector<double>& probs() const { return probs_; }
    double truncation_mass() const { return truncation_mass_; }

    /// Probability of eigenvalue `value`; 0 outside the stored range.
    double prob_at(long value) const;

    double mean() const;
    double variance() const;

    static IntegerDistribution point_mass(long value);

    /// Poisson PMF with the tails cut so that the discarded mass stays
    /// below 1e-12; the cut is recorded in truncation_mass.
    static IntegerDistribution poisson(double lambda);

  private:
    long offset_ = 0;
    std::vector<double> probs_;
    double truncation_mass_ = 0.0;
};

/// PMF of the sum of two independent integer variables.
IntegerDistribution convolve(const IntegerDistribution& a, const IntegerDistribution& b,
                             long eigenvalue_ceiling = default_eigenvalue_ceiling);

/// Relabels eigenvalue m -> m^power (requires m >= 0). The probabilities are
/// carried over unchanged, so the Shannon entropy is invariant under the map
/// while moments are not.
IntegerDistribution power_relabel(const IntegerDistribution& d, int power,
                                  long eigenvalue_ceiling = default_eigenvalue_ceiling);

}  // namespace phasemet
