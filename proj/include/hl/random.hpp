#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace hl {

/// 64-bit Mersenne Twister with portable draw helpers. The standard
/// distributions are implementation-defined, so uniform reals and bounded
/// integers are derived here to keep outputs identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer on [0, n); n must be positive.
  std::size_t below(std::size_t n);

  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

/// Stream seed for one replica: splitmix64(splitmix64(master) + (index + 1) *
/// 0x9E3779B97F4A7C15). Equal pairs give equal streams.
std::uint64_t stream_seed(std::uint64_t master_seed, std::uint64_t run_index);

/// Independent generator for run `run_index` of an experiment.
inline Rng seed_for_run(std::uint64_t master_seed, std::uint64_t run_index) {
  return Rng(stream_seed(master_seed, run_index));
}

}  // namespace hl
