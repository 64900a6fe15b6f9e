#pragma once

// Deterministic RNG plumbing. splitmix64 streams keep artifacts byte-stable
// across runs and standard-library versions.

#include <cstdint>
#include <cmath>
#include <string_view>

#include "fracsmooth/fft.hpp"

namespace fracsmooth {

struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Box-Muller
  double gaussian() {
    double u1 = uniform01(), u2 = uniform01();
    if (u1 < 1e-300) u1 = 1e-300;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(two_pi * u2);
  }

  cplx gaussian_cplx() {
    const double g1 = gaussian(), g2 = gaussian();
    return cplx(g1, g2);
  }
};

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  SplitMix64 s(a ^ (b * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL));
  return s.next();
}

inline std::uint64_t fnv1a(std::string_view text, std::uint64_t seed = 1469598103934665603ULL) {
  std::uint64_t h = seed;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace fracsmooth
