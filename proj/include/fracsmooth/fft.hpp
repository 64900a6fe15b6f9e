#pragma once

// Radix-2 complex FFT on power-of-two grids.

#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace fracsmooth {

using cplx = std::complex<double>;

inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double pi = std::numbers::pi;

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline std::size_t next_power_of_two(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// In-place Cooley-Tukey. sign = -1 is the forward transform
// X[k] = sum_j x[j] e^{-2 pi i jk/N}; sign = +1 is the unscaled inverse.
inline void fft_radix2(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  if (!is_power_of_two(n)) throw std::invalid_argument("fft_radix2: size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * two_pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        // resync the twiddle recurrence periodically to keep rounding flat
        if ((j & 31u) == 0 && j != 0)
          w = cplx(std::cos(ang * static_cast<double>(j)), std::sin(ang * static_cast<double>(j)));
        const cplx u = a[i + j];
        const cplx v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

inline std::vector<cplx> dft_forward(std::vector<cplx> v) {
  fft_radix2(v, -1);
  return v;
}

inline std::vector<cplx> dft_inverse_unscaled(std::vector<cplx> v) {
  fft_radix2(v, +1);
  return v;
}

}  // namespace fracsmooth
