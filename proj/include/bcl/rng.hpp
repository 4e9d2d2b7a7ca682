#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace bcl {

/// Counter-based generator: output i is a bijective hash of (key, i), and the
/// key is derived from a seed plus any number of stream coordinates. Streams
/// keyed by (seed, anchor, sample) give identical draws whether anchors run
/// serially or in parallel.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  /// Standard normal via Box-Muller (one variate per pair of uniforms, no cache).
  double normal();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Stateless seed derivation with the same mixing as CounterRng.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

}  // namespace bcl
