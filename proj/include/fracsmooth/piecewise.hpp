#pragma once

// Real piecewise-linear functions on the torus with closed-form L_p integrals.
// These back the step/ramp members of the function corpus so that quasi-norm
// evaluations on them carry no quadrature error at all.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fracsmooth/fft.hpp"

namespace fracsmooth {

inline double reduce_angle(double x) {
  double r = std::fmod(x, two_pi);
  if (r < 0) r += two_pi;
  if (r >= two_pi) r = 0.0;
  return r;
}

// Arcs [knots[i], knots[i+1]) cyclically on [0, 2pi); knots[0] == 0 always.
// On arc i the value is value0[i] + slope[i] * (x - knots[i]).
struct PiecewiseLinear {
  std::vector<double> knots;
  std::vector<double> value0;
  std::vector<double> slope;

  std::size_t arcs() const { return knots.size(); }

  double arc_length(std::size_t i) const {
    const double hi = (i + 1 < knots.size()) ? knots[i + 1] : two_pi;
    return hi - knots[i];
  }

  std::size_t arc_index(double x) const {
    auto it = std::upper_bound(knots.begin(), knots.end(), x);
    return static_cast<std::size_t>(it - knots.begin()) - 1;
  }

  double eval(double x) const {
    const double xr = reduce_angle(x);
    const std::size_t i = arc_index(xr);
    return value0[i] + slope[i] * (xr - knots[i]);
  }

  double slope_at(double x) const { return slope[arc_index(reduce_angle(x))]; }

  double mean() const {
    double s = 0;
    for (std::size_t i = 0; i < arcs(); ++i) {
      const double len = arc_length(i);
      s += value0[i] * len + 0.5 * slope[i] * len * len;
    }
    return s / two_pi;
  }

  bool is_piecewise_constant(double tol = 1e-14) const {
    for (double b : slope)
      if (std::abs(b) > tol) return false;
    return true;
  }

  static PiecewiseLinear constant(double c) { return {{0.0}, {c}, {0.0}}; }
};

namespace detail {

// Exact integral of |a + b t|^p over [0, L] when a + b t does not change sign.
inline double abs_linear_segment(double a, double b, double L, double p) {
  const double s0 = a, s1 = a + b * L;
  const double m = std::max({std::abs(s0), std::abs(s1), 1e-300});
  if (std::abs(s1 - s0) <= 1e-9 * m) {
    const double mid = 0.5 * (s0 + s1);
    return std::pow(std::abs(mid), p) * L;
  }
  const double sgn = (s0 + s1 >= 0) ? 1.0 : -1.0;
  const double num = std::pow(std::abs(s1), p + 1.0) - std::pow(std::abs(s0), p + 1.0);
  return num / (b * (p + 1.0) * sgn);
}

// Exact integral of |a + b t|^p over [0, L], splitting at the zero crossing.
inline double abs_linear_lp(double a, double b, double L, double p) {
  if (L <= 0) return 0.0;
  const double s1 = a + b * L;
  if (a == 0.0 && s1 == 0.0) return 0.0;
  if (a * s1 < 0) {
    const double t0 = -a / b;  // interior crossing
    return abs_linear_segment(a, b, t0, p) + abs_linear_segment(0.0, b, L - t0, p);
  }
  return abs_linear_segment(a, b, L, p);
}

}  // namespace detail

// (1/2pi) \int_0^{2pi} |f|^p dx, exact per arc.
inline double lp_integral_mean(const PiecewiseLinear& f, double p) {
  if (p <= 0) throw std::invalid_argument("lp_integral_mean: p must be positive");
  double acc = 0;
  for (std::size_t i = 0; i < f.arcs(); ++i)
    acc += detail::abs_linear_lp(f.value0[i], f.slope[i], f.arc_length(i), p);
  return acc / two_pi;
}

namespace detail {

inline std::vector<double> merge_knots(std::vector<double> k) {
  std::sort(k.begin(), k.end());
  std::vector<double> out;
  out.reserve(k.size() + 1);
  out.push_back(0.0);
  for (double x : k) {
    if (x <= out.back() + 1e-13) continue;
    if (x >= two_pi - 1e-13) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace detail

inline PiecewiseLinear shift_pw(const PiecewiseLinear& f, double s) {
  // g(x) = f(x - s)
  std::vector<double> raw;
  raw.reserve(f.arcs());
  for (double k : f.knots) raw.push_back(reduce_angle(k + s));
  PiecewiseLinear g;
  g.knots = detail::merge_knots(raw);
  g.value0.resize(g.knots.size());
  g.slope.resize(g.knots.size());
  for (std::size_t i = 0; i < g.knots.size(); ++i) {
    const double len = g.arc_length(i);
    const double mid = g.knots[i] + 0.5 * len;
    const double b = f.slope_at(mid - s);
    g.slope[i] = b;
    g.value0[i] = f.eval(mid - s) - b * (mid - g.knots[i]);
  }
  return g;
}

// sum_i coeff_i * f_i, exact. All sources share the torus; knot sets are merged.
inline PiecewiseLinear combine_pw(const std::vector<std::pair<double, const PiecewiseLinear*>>& terms) {
  std::vector<double> raw;
  for (const auto& [c, f] : terms) {
    (void)c;
    raw.insert(raw.end(), f->knots.begin(), f->knots.end());
  }
  PiecewiseLinear g;
  g.knots = detail::merge_knots(raw);
  g.value0.resize(g.knots.size());
  g.slope.resize(g.knots.size());
  for (std::size_t i = 0; i < g.knots.size(); ++i) {
    const double len = g.arc_length(i);
    const double mid = g.knots[i] + 0.5 * len;
    double b = 0, v = 0;
    for (const auto& [c, f] : terms) {
      b += c * f->slope_at(mid);
      v += c * f->eval(mid);
    }
    g.slope[i] = b;
    g.value0[i] = v - b * (mid - g.knots[i]);
  }
  return g;
}

// Periodic antiderivative of a piecewise-constant function, normalized to mean
// zero. The source mean is removed first so the primitive closes up.
inline PiecewiseLinear pc_antiderivative_zero_mean(const PiecewiseLinear& f) {
  if (!f.is_piecewise_constant())
    throw std::invalid_argument("pc_antiderivative_zero_mean: source must be piecewise constant");
  const double mu = f.mean();
  PiecewiseLinear g;
  g.knots = f.knots;
  g.value0.resize(g.knots.size());
  g.slope.resize(g.knots.size());
  double acc = 0;
  for (std::size_t i = 0; i < f.arcs(); ++i) {
    g.value0[i] = acc;
    g.slope[i] = f.value0[i] - mu;
    acc += g.slope[i] * f.arc_length(i);
  }
  const double m = g.mean();
  for (double& v : g.value0) v -= m;
  return g;
}

}  // namespace fracsmooth
