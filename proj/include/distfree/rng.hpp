#pragma once

#include <array>
#include <cstdint>

namespace distfree {

/// Philox4x32-10 block function.
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

/// Counter-based stream: the key is the experiment seed and the counter
/// carries (block index, replication index), so every (seed, rep) pair maps
/// to the same draws on every platform and no state is shared between
/// replications.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t rep);

  std::uint64_t next_u64();
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t seed() const { return seed_; }
  std::uint64_t rep() const { return rep_; }

 private:
  std::uint64_t seed_;
  std::uint64_t rep_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int buffered_ = 0;
};

inline RandomStream seeded_stream(std::uint64_t seed, std::uint64_t rep_index) { return {seed, rep_index}; }

}  // namespace distfree
