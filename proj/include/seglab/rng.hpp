#ifndef SEGLAB_RNG_HPP
#define SEGLAB_RNG_HPP

#include <cstdint>
#include <vector>

namespace seglab {

/// splitmix64 finalizer; stateless 64-bit mixer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent stream seed from a master seed and a stream index.
/// Used for per-instance, per-trial, and per-run generators:
/// seed_k = mix64(master ^ mix64(k + 0x632be59bd9b4e019)).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

/// xoshiro256++ generator seeded through splitmix64.
///
/// The stream layout is fixed and platform independent:
///   - uniform():  top 53 bits of one output word, scaled by 2^-53, in [0, 1)
///   - normal():   Box-Muller cosine branch, consuming two uniforms per call
///   - below(n):   unbiased rejection sampling on the raw 64-bit stream
/// Equal seeds therefore produce equal draws on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform on [0, 1) with 53-bit resolution.
  double uniform();
  /// Uniform on [lo, hi).
  double uniform(double lo, double hi);
  /// Standard normal variate.
  double normal();
  /// Uniform integer in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_[4];
};

/// Uniform random permutation of {0, ..., n-1} via Fisher-Yates over the
/// given stream. std::shuffle is implementation-defined, so it is not used.
std::vector<int> sample_permutation(Rng& rng, int n);

}  // namespace seglab

#endif  // SEGLAB_RNG_HPP
