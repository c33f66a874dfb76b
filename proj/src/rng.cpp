#include "acclab/rng.hpp"

#include <cmath>

namespace acclab {

namespace {

constexpr std::uint64_t kMul0 = 0xD2E7470EE14C6C93ULL;
constexpr std::uint64_t kMul1 = 0xCA5A826395121157ULL;
constexpr std::uint64_t kWeyl0 = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kWeyl1 = 0xBB67AE8584CAA73BULL;

inline void mulhilo(std::uint64_t a, std::uint64_t b, std::uint64_t& hi,
                    std::uint64_t& lo) noexcept {
  const unsigned __int128 p =
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b);
  hi = static_cast<std::uint64_t>(p >> 64);
  lo = static_cast<std::uint64_t>(p);
}

inline void round_once(std::array<std::uint64_t, 4>& c,
                       const std::array<std::uint64_t, 2>& k) noexcept {
  std::uint64_t hi0, lo0, hi1, lo1;
  mulhilo(kMul0, c[0], hi0, lo0);
  mulhilo(kMul1, c[2], hi1, lo1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint64_t, 4> RandomStream::block(
    const std::array<std::uint64_t, 2>& key,
    const std::array<std::uint64_t, 4>& counter) noexcept {
  std::array<std::uint64_t, 4> c = counter;
  std::array<std::uint64_t, 2> k = key;
  for (int r = 0; r < 10; ++r) {
    round_once(c, k);
    k[0] += kWeyl0;
    k[1] += kWeyl1;
  }
  return c;
}

RandomStream::RandomStream(SeedSpec seed, std::uint64_t substream) noexcept
    : key_{seed.master_seed, seed.stream_index},
      counter_{0, 0, substream, 0} {}

void RandomStream::refill() noexcept {
  if (++counter_[0] == 0) ++counter_[1];  // carry; words 2..3 stay fixed
  buffer_ = block(key_, counter_);
  buffer_pos_ = 0;
}

std::uint64_t RandomStream::next_u64() noexcept {
  if (buffer_pos_ >= 4) refill();
  return buffer_[buffer_pos_++];
}

double RandomStream::next_uniform() noexcept {
  return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

double RandomStream::next_gaussian() noexcept {
  if (has_gauss_cache_) {
    has_gauss_cache_ = false;
    return gauss_cache_;
  }
  const double r = std::sqrt(-2.0 * std::log(next_uniform()));
  const double theta = 6.283185307179586476925286766559 * next_uniform();
  gauss_cache_ = r * std::sin(theta);
  has_gauss_cache_ = true;
  return r * std::cos(theta);
}

void RandomStream::fill_gaussian(double* out, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) out[i] = next_gaussian();
}

std::uint64_t RandomStream::next_below(std::uint64_t bound) noexcept {
  const std::uint64_t limit = ~0ULL / bound * bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x >= limit);
  return x % bound;
}

}  // namespace acclab
