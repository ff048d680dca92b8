#pragma once

#include <cstdint>
#include <random>

namespace lexvec {

/// SplitMix64 finalizer. Used to derive independent seeds from structured keys.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed for one unit of work, e.g. (epoch, sentence index) under a stream tag.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream,
                                    std::uint64_t a, std::uint64_t b = 0) {
  return mix64(mix64(mix64(base ^ mix64(stream)) ^ a) ^ mix64(b + 0x632be59bd9b4e019ULL));
}

// Stream tags keep subsampling and training draws independent.
inline constexpr std::uint64_t kSubsampleStream = 0x5355425341ULL;
inline constexpr std::uint64_t kTrainStream = 0x545241494eULL;
inline constexpr std::uint64_t kInitStream = 0x494e4954ULL;
inline constexpr std::uint64_t kSvdStream = 0x535644ULL;
inline constexpr std::uint64_t kLossStream = 0x4c4f5353ULL;

/// Per-worker random state. The integer-to-real conversions are written out
/// so sequences are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, n). n must be nonzero.
  std::uint64_t below(std::uint64_t n) {
    // Lemire's multiply-shift with rejection; unbiased.
    std::uint64_t x = engine_();
    unsigned __int128 m = static_cast<unsigned __int128>(x) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        x = engine_();
        m = static_cast<unsigned __int128>(x) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace lexvec
