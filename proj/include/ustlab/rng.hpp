#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace ustlab {

// Deterministic RNG used throughout the library. All variate generation is
// hand-rolled on top of the raw mt19937_64 stream so that results are
// bit-reproducible across platforms and standard-library versions
// (std::uniform_int_distribution et al. are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased integer in [0, n) via rejection sampling.
  std::uint64_t below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = engine_();
    while (x >= limit) x = engine_();
    return x % n;
  }

  // Fair coin, one engine draw.
  bool half() { return (engine_() >> 63) != 0; }

  // Uniform double in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Exponential with unit rate; uniform01() < 1 keeps the log finite.
  double exponential() { return -std::log1p(-uniform01()); }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

 private:
  std::mt19937_64 engine_;
};

// Documented seed-splitting function: replica/stream k of a master seed gets
// an independent-looking stream via SplitMix64 finalization. Used everywhere
// a run fans out into per-replica RNGs, so any row of an experiment can be
// regenerated in isolation from (master_seed, stream index).
inline std::uint64_t split_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ustlab
