#pragma once

#include <cstdint>
#include <random>

#include "lincvx/cpoint.hpp"

namespace lincvx {

using Rng = std::mt19937_64;

// splitmix64 finalizer; decorrelates (seed, stream) pairs.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Generator for one trial of a sampled check. Seeding per trial rather than
// per worker keeps results independent of the worker count.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial) { return Rng(mix_seed(seed, trial)); }

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Uniform on the unit sphere of R^{2n}.
inline CPoint random_unit(Rng& rng, std::size_t n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  for (;;) {
    CPoint p(n);
    for (std::size_t j = 0; j < n; ++j) p[j] = {normal(rng), normal(rng)};
    const double r = p.norm();
    if (r > 1e-12) return p / r;
  }
}

// Uniform in the box [-half, half]^{2n} around `center`.
inline CPoint random_in_box(Rng& rng, const CPoint& center, double half) {
  CPoint p = center;
  for (std::size_t j = 0; j < center.dim(); ++j) p[j] += Complex(uniform(rng, -half, half), uniform(rng, -half, half));
  return p;
}

}  // namespace lincvx
