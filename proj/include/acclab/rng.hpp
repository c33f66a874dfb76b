#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace acclab {

// Identifies one independent random stream: the key of the counter-based
// generator is exactly (master_seed, stream_index), so any (seed, index)
// pair can be opened at any time on any thread with no shared state.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_index = 0;
};

// Philox 4x64 with 10 rounds. The key is taken from the SeedSpec verbatim;
// the third counter word carries a substream id so one logical stream can
// hand out disjoint sub-generators (data draws, one per permutation, ...).
// Output sequence matches numpy's Philox bit generator for the same key and
// counter (the counter is incremented before each block is produced).
class RandomStream {
 public:
  explicit RandomStream(SeedSpec seed, std::uint64_t substream = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  // Uniform on the open interval (0, 1): ((x >> 11) + 0.5) * 2^-53.
  double next_uniform() noexcept;

  // Standard normal via Box-Muller; the second value of each pair is cached.
  double next_gaussian() noexcept;
  void fill_gaussian(double* out, std::size_t n) noexcept;

  // Unbiased integer in [0, bound) by rejection; bound must be >= 1.
  std::uint64_t next_below(std::uint64_t bound) noexcept;

  // Fisher-Yates shuffle.
  template <typename T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(next_below(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // One raw 4-word block for the given key/counter (test hook).
  static std::array<std::uint64_t, 4> block(
      const std::array<std::uint64_t, 2>& key,
      const std::array<std::uint64_t, 4>& counter) noexcept;

 private:
  void refill() noexcept;

  std::array<std::uint64_t, 2> key_;
  std::array<std::uint64_t, 4> counter_;
  std::array<std::uint64_t, 4> buffer_{};
  unsigned buffer_pos_ = 4;  // empty
  double gauss_cache_ = 0.0;
  bool has_gauss_cache_ = false;
};

}  // namespace acclab
