#pragma once

// L_p quasi-norms and distances on the torus, 0 < p < infinity, via
// breakpoint-aware composite midpoint quadrature with doubling refinement.
// Piecewise-linear specs short-circuit to the closed-form integral; the
// midpoint rule never evaluates at a panel endpoint, so jump locations are
// never sampled.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "fracsmooth/periodic.hpp"

namespace fracsmooth {

struct QuadratureSpec {
  int base_size = 4096;            // panels before breakpoint splitting, >= 16
  bool split_at_breakpoints = true;
  int refinement_levels = 3;       // doubling passes available to reach tol
  double tol = 1e-7;               // relative tolerance target
};

struct LpResult {
  double value = 0;
  double error_estimate = 0;
  bool converged = true;
  bool exact = false;
};

namespace detail {

// Integral mean (1/2pi) int |f|^p on a fixed panel decomposition, midpoint rule,
// with each panel cut into `sub` equal pieces.
inline double panel_midpoint_pass(const FunctionSpec& f, double p, const std::vector<double>& cuts,
                                  int sub) {
  double acc = 0;
  const std::size_t m = cuts.size();
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = cuts[i];
    const double hi = (i + 1 < m) ? cuts[i + 1] : two_pi;
    const double len = (hi - lo) / sub;
    if (len <= 0) continue;
    for (int s = 0; s < sub; ++s) {
      const double mid = lo + (s + 0.5) * len;
      acc += std::pow(std::abs(f.evaluator(mid)), p) * len;
    }
  }
  return acc / two_pi;
}

// Same quantity for a band-limited spec on a uniform 2^k grid via FFT synthesis.
inline double uniform_fft_pass(const TrigPolynomial& t, double p, std::size_t N) {
  const std::vector<cplx> v = t.synthesize(N, pi / static_cast<double>(N));
  double acc = 0;
  for (const cplx& z : v) acc += std::pow(std::abs(z), p);
  return acc / static_cast<double>(N);
}

}  // namespace detail

inline LpResult lp_norm_detail(const FunctionSpec& f, double p, const QuadratureSpec& q = {}) {
  if (!(p > 0)) throw std::invalid_argument("lp_norm: p must be positive");
  if (q.base_size < 16) throw std::invalid_argument("lp_norm: base_size must be >= 16");
  if (!(q.tol > 0)) throw std::invalid_argument("lp_norm: tol must be positive");

  LpResult out;

  if (f.pw) {
    out.value = std::pow(lp_integral_mean(*f.pw, p), 1.0 / p);
    out.exact = true;
    return out;
  }

  double prev = 0, cur = 0, delta = 0;
  bool have_delta = false, converged = false;

  auto refine = [&](auto&& pass) {
    for (int level = 0; level <= q.refinement_levels; ++level) {
      cur = pass(level);
      if (level > 0) {
        delta = std::abs(cur - prev);
        have_delta = true;
        if (delta <= q.tol * std::max(cur, 1e-300)) {
          converged = true;
          return;
        }
      }
      prev = cur;
    }
  };

  if (f.poly && f.breakpoints.empty()) {
    const std::size_t N = next_power_of_two(std::max<std::size_t>(
        static_cast<std::size_t>(q.base_size), f.poly->coeffs().size() + 1));
    refine([&](int level) { return detail::uniform_fft_pass(*f.poly, p, N << level); });
  } else {
    std::vector<double> cuts;
    cuts.reserve(static_cast<std::size_t>(q.base_size) + f.breakpoints.size());
    for (int i = 0; i < q.base_size; ++i) cuts.push_back(two_pi * i / q.base_size);
    if (q.split_at_breakpoints) cuts.insert(cuts.end(), f.breakpoints.begin(), f.breakpoints.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(),
                           [](double a, double b) { return b - a < 1e-13; }),
               cuts.end());
    refine([&](int level) { return detail::panel_midpoint_pass(f, p, cuts, 1 << level); });
  }

  out.converged = converged;
  if (!have_delta) delta = cur;
  out.value = std::pow(cur, 1.0 / p);
  // first-order propagation of the integral error through the 1/p power
  out.error_estimate = (cur > 0) ? 2.0 * out.value * delta / (p * cur) : 0.0;
  return out;
}

inline double lp_norm(const FunctionSpec& f, double p, const QuadratureSpec& q = {}) {
  return lp_norm_detail(f, p, q).value;
}

inline LpResult lp_distance_detail(const FunctionSpec& f, const FunctionSpec& g, double p,
                                   const QuadratureSpec& q = {}) {
  return lp_norm_detail(combine_specs({{cplx(1.0), f}, {cplx(-1.0), g}}, "difference"), p, q);
}

inline double lp_distance(const FunctionSpec& f, const FunctionSpec& g, double p,
                          const QuadratureSpec& q = {}) {
  return lp_distance_detail(f, g, p, q).value;
}

// Diagnostic sup-norm surrogate (max over a grid); not part of the L_p lane.
inline double sup_norm_grid(const FunctionSpec& f, std::size_t N = 4096) { return sup_abs_on_grid(f, N); }

}  // namespace fracsmooth
