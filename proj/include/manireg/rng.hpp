#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace manireg {

/// All randomness in the library flows through std::mt19937_64 with explicit
/// seeding. The raw engine is fully specified by the C++ standard, and the
/// value mappings below avoid std::<distribution> classes (whose output is
/// implementation-defined), so a seed reproduces bit-identically everywhere.
using Rng = std::mt19937_64;

/// Uniform double in [0, 1) from the top 53 bits of one engine draw.
inline double uniform_double(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform_double(rng);
}

/// Standard normal via Box-Muller; consumes exactly two engine draws.
inline double gaussian_sample(Rng& rng) {
  const double u1 = 1.0 - uniform_double(rng);  // (0, 1]
  const double u2 = uniform_double(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
}

/// Uniform integer in [0, n) by rejection; unbiased for any n >= 1.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t rem = (~std::uint64_t{0} % n + 1) % n;  // 2^64 mod n
  for (;;) {
    const std::uint64_t v = rng();
    if (rem == 0 || v <= ~std::uint64_t{0} - rem) return v % n;
  }
}

}  // namespace manireg
