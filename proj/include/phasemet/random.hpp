#pragma once

#include <array>
#include <cstdint>

namespace phasemet {

/// Counter-addressed random substream. Distinct (master_seed, stream_index)
/// pairs give statistically independent sequences; identical pairs reproduce
/// identical draws. xoshiro256** state seeded through splitmix64.
class RandomStream {
  public:
    RandomStream(std::uint64_t master_seed, std::uint64_t stream_index);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1), 53-bit resolution.
    double next_double();

    std::uint64_t master_seed() const { return master_seed_; }
    std::uint64_t stream_index() const { return stream_index_; }

  private:
    std::uint64_t master_seed_ = 0;
    std::uint64_t stream_index_ = 0;
    std::array<std::uint64_t, 4> state_{};
};

}  // namespace phasemet
