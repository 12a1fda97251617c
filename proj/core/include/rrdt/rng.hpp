#pragma once

#include <cstdint>
#include <string_view>

namespace rrdt {

/// SplitMix64 finalizer. Bijective on 64-bit words.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// FNV-1a over the bytes of a string, then mixed.
std::uint64_t hash_string(std::string_view s) noexcept;

/// Order-sensitive combination of two 64-bit words.
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value) noexcept;

/// Portable counter-based random stream.
///
/// Output i of a stream with key k is mix64(k + (i + 1) * 0x9E3779B97F4A7C15),
/// i.e. SplitMix64 evaluated at an explicit counter. Every derived quantity
/// (uniforms, normals, gamma/beta variates) is built only from these words and
/// IEEE arithmetic, so a stream replays identically on any platform and can be
/// reimplemented bit-for-bit in another language. `split(tag)` derives an
/// independent child stream without advancing the parent.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = 0) noexcept;

  std::uint64_t next_u64() noexcept;

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() noexcept;
  double uniform(double lo, double hi) noexcept;

  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  /// Standard normal via the Box-Muller transform (one variate per call).
  double normal() noexcept;

  /// Gamma(shape, 1) via Marsaglia-Tsang, with the U^(1/a) boost for shape < 1.
  double gamma(double shape) noexcept;

  /// Beta(a, b) as a ratio of gamma variates.
  double beta(double a, double b) noexcept;

  RandomStream split(std::uint64_t tag) const noexcept;

  std::uint64_t key() const noexcept { return key_; }
  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace rrdt
