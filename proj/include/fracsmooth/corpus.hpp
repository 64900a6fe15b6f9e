#pragma once

// Test-function constructions with known analytic structure: the square wave,
// general jump functions, the staircase family f_r / g_{n,r} / phi_{n,r},
// primitives of jump functions, and smooth exemplars. Each carries whatever
// exact machinery it admits: Fourier rules, jump locations, piecewise-linear
// payloads, and closed-form first-order moduli.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracsmooth/fractional.hpp"
#include "fracsmooth/periodic.hpp"
#include "fracsmooth/piecewise.hpp"
#include "fracsmooth/rng.hpp"

namespace fracsmooth {

// f(x) = sign sin x, jumps at 0 and pi, f(jump) = 0.
inline FunctionSpec make_sign_sin() {
  FunctionSpec f;
  f.kind = "sign_sin";
  f.evaluator = [](double x) {
    if (x == 0.0 || x == pi) return cplx(0.0);
    return cplx(x < pi ? 1.0 : -1.0, 0.0);
  };
  f.breakpoints = {0.0, pi};
  f.pw = std::make_shared<const PiecewiseLinear>(PiecewiseLinear{{0.0, pi}, {1.0, -1.0}, {0.0, 0.0}});
  f.fourier = [](long k) {
    if (k == 0 || k % 2 == 0) return cplx(0.0);
    return cplx(0.0, -2.0 / (pi * static_cast<double>(k)));
  };
  // omega_1(f, h)_p = 2 (min(h,pi)/pi)^{1/p}
  f.closed_omega1 = [](double h, double p) {
    return 2.0 * std::pow(std::min(h, pi) / pi, 1.0 / p);
  };
  return f;
}

struct Jump {
  double x = 0;  // location in [0, 2pi)
  double d = 0;  // height
};

// f(x) = d0 + sum_{x_k < x} d_k. Right-continuous arcs; the evaluator follows
// the defining sum literally (so the value AT x_k excludes d_k).
inline FunctionSpec make_jump(double d0, std::vector<Jump> jumps) {
  std::sort(jumps.begin(), jumps.end(), [](const Jump& a, const Jump& b) { return a.x < b.x; });
  for (std::size_t i = 0; i + 1 < jumps.size(); ++i)
    if (!(jumps[i].x < jumps[i + 1].x - 1e-13))
      throw std::invalid_argument("make_jump: jump locations must be pairwise distinct");
  for (const Jump& j : jumps)
    if (j.x < 0 || j.x >= two_pi) throw std::invalid_argument("make_jump: locations must lie in [0, 2pi)");

  FunctionSpec f;
  f.kind = "jump";
  auto shared = std::make_shared<const std::vector<Jump>>(jumps);
  f.evaluator = [d0, shared](double x) {
    double v = d0;
    for (const Jump& j : *shared) {
      if (j.x < x) v += j.d;
    }
    return cplx(v, 0.0);
  };
  f.breakpoints.push_back(0.0);
  for (const Jump& j : jumps)
    if (j.x > 1e-13) f.breakpoints.push_back(j.x);
  std::sort(f.breakpoints.begin(), f.breakpoints.end());

  {
    PiecewiseLinear pw;
    pw.knots = f.breakpoints;
    pw.value0.resize(pw.knots.size());
    pw.slope.assign(pw.knots.size(), 0.0);
    for (std::size_t i = 0; i < pw.knots.size(); ++i) {
      const double len = pw.arc_length(i);
      const double mid = pw.knots[i] + 0.5 * len;
      double v = d0;
      for (const Jump& j : jumps)
        if (j.x < mid) v += j.d;
      pw.value0[i] = v;
    }
    f.pw = std::make_shared<const PiecewiseLinear>(std::move(pw));
  }

  // each step h_eta contributes (e^{-ik eta} - 1)/(2 pi i k); the mean matches
  // the evaluator, which removes the gauge freedom from round-trip tests
  f.fourier = [d0, shared](long k) {
    if (k == 0) {
      double m = d0;
      for (const Jump& j : *shared) m += j.d * (two_pi - j.x) / two_pi;
      return cplx(m, 0.0);
    }
    cplx acc(0.0);
    const cplx den = cplx(0.0, two_pi * static_cast<double>(k));
    for (const Jump& j : *shared)
      acc += j.d * (std::polar(1.0, -static_cast<double>(k) * j.x) - 1.0) / den;
    return acc;
  };

  // separated-jump measure computation, valid below half the minimal gap
  {
    std::vector<double> locs;
    locs.push_back(0.0);
    for (const Jump& j : jumps)
      if (j.x > 1e-13) locs.push_back(j.x);
    double gap = two_pi;
    for (std::size_t i = 0; i < locs.size(); ++i) {
      const double next = (i + 1 < locs.size()) ? locs[i + 1] : two_pi;
      gap = std::min(gap, next - locs[i]);
    }
    double dsum = 0;
    for (const Jump& j : jumps) dsum += j.d;
    auto heights = std::make_shared<std::vector<double>>();
    for (const Jump& j : jumps) heights->push_back(std::abs(j.d));
    if (std::abs(dsum) > 1e-14) heights->push_back(std::abs(dsum));  // wrap-around jump at 0
    f.closed_omega1 = [heights, gap](double h, double p) {
      if (!(h < gap / 2)) return std::numeric_limits<double>::quiet_NaN();
      double acc = 0;
      for (double d : *heights) acc += std::pow(d, p);
      return std::pow(acc * h / two_pi, 1.0 / p);
    };
  }
  return f;
}

// f_r(x) = x^r on [0, pi), (2pi - x)^r on [pi, 2pi).
inline FunctionSpec make_f_r(int r) {
  if (r < 1) throw std::invalid_argument("make_f_r: r must be >= 1");
  FunctionSpec f;
  f.kind = "f_r(r=" + std::to_string(r) + ")";
  f.evaluator = [r](double x) {
    return cplx(x < pi ? std::pow(x, r) : std::pow(two_pi - x, r), 0.0);
  };
  f.breakpoints = {0.0, pi};
  if (r == 1) {
    f.pw = std::make_shared<const PiecewiseLinear>(
        PiecewiseLinear{{0.0, pi}, {0.0, pi}, {1.0, -1.0}});
    // even triangular wave: mean pi/2, cosine coefficients -2/(pi k^2) on odd k
    f.fourier = [](long k) {
      if (k == 0) return cplx(pi / 2.0, 0.0);
      if (k % 2 == 0) return cplx(0.0);
      return cplx(-2.0 / (pi * static_cast<double>(k) * static_cast<double>(k)), 0.0);
    };
  }
  return f;
}

namespace detail {

// the staircase display on [0, 2]: n flat pieces with steep ramps of width
// n^{-(r+1)}, reflected on (1, 2]
inline double g_nr_value(double u, int n, int r) {
  u = u - 2.0 * std::floor(u / 2.0);
  if (u > 1.0) return 1.0 - g_nr_value(u - 1.0, n, r);
  // u = 1 falls through to the last ramp: left-continuity at the splice
  const double w = std::pow(static_cast<double>(n), -(r + 1.0));
  int k = static_cast<int>(std::floor(u * n));
  if (k > n - 1) k = n - 1;
  const double piece_end = static_cast<double>(k + 1) / n;
  const double base = (static_cast<double>(k) / n) * std::pow(u, r - 1.0);
  if (u < piece_end - w) return base;
  return base + std::pow(u, r - 1.0) * (u - piece_end + w) * n;
}

}  // namespace detail

inline FunctionSpec make_g_nr(int n, int r) {
  if (n < 1 || r < 1) throw std::invalid_argument("make_g_nr: n, r must be >= 1");
  FunctionSpec f;
  f.kind = "g_nr(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
  // lives on [0,2] conceptually; expose it on the torus via u = x / pi
  f.evaluator = [n, r](double x) { return cplx(detail::g_nr_value(x / pi, n, r), 0.0); };
  const double w = std::pow(static_cast<double>(n), -(r + 1.0));
  for (int k = 0; k < n; ++k) {
    const double e = static_cast<double>(k + 1) / n;
    f.breakpoints.push_back(pi * (e - w));
    f.breakpoints.push_back(pi * e);
    f.breakpoints.push_back(pi * (1.0 + e - w));
    f.breakpoints.push_back(pi * (1.0 + e));
  }
  f.breakpoints.push_back(0.0);
  std::sort(f.breakpoints.begin(), f.breakpoints.end());
  f.breakpoints.erase(std::unique(f.breakpoints.begin(), f.breakpoints.end(),
                                  [](double a, double b) { return b - a < 1e-13; }),
                      f.breakpoints.end());
  while (!f.breakpoints.empty() && f.breakpoints.back() >= two_pi) f.breakpoints.pop_back();
  return f;
}

// phi_{n,r}(x) = pi g_{n,r}(x / pi) on [0, 2pi).
inline FunctionSpec make_phi_nr(int n, int r) {
  FunctionSpec base = make_g_nr(n, r);
  FunctionSpec f;
  f.kind = "phi_nr(n=" + std::to_string(n) + ",r=" + std::to_string(r) + ")";
  auto ev = base.evaluator;
  f.evaluator = [ev](double x) { return pi * ev(x); };
  f.breakpoints = base.breakpoints;
  if (r == 1) {
    // piecewise linear: flats at pi k/n and ramps of slope n (reflected half mirrored)
    PiecewiseLinear pw;
    const double w = std::pow(static_cast<double>(n), -2.0);
    std::vector<double> knots;
    std::vector<double> vals;  // value at knot (from the right)
    std::vector<double> slopes;
    for (int k = 0; k < n; ++k) {
      const double flat_start = pi * (static_cast<double>(k) / n);
      const double ramp_start = pi * ((k + 1.0) / n - w);
      knots.push_back(flat_start);
      vals.push_back(pi * (static_cast<double>(k) / n));
      slopes.push_back(0.0);
      knots.push_back(ramp_start);
      vals.push_back(pi * (static_cast<double>(k) / n));
      slopes.push_back(static_cast<double>(n));
    }
    const std::size_t half = knots.size();
    for (std::size_t i = 0; i < half; ++i) {
      knots.push_back(knots[i] + pi);
      vals.push_back(pi - vals[i]);
      slopes.push_back(-slopes[i]);
    }
    pw.knots = std::move(knots);
    pw.value0 = std::move(vals);
    pw.slope = std::move(slopes);
    f.pw = std::make_shared<const PiecewiseLinear>(std::move(pw));
  }
  return f;
}

struct KrotovResult {
  FunctionSpec fn;
  double coeff_tail_l1 = 0;
  bool cutoff_ok = true;
};

// Primitive with g^{(beta-1)} = the given jump function: coefficients
// rule(k) (ik)^{-(beta-1)}, decaying like |k|^{-beta}. Natural beta = 2 is
// built exactly as the piecewise-linear antiderivative; other orders use the
// spectral construction with cutoff K.
inline KrotovResult make_krotov_primitive(const FunctionSpec& jump, double beta, int K = 2048,
                                          double tail_threshold = 1e-6) {
  if (!(beta > 1.0 - 1e-12)) throw std::invalid_argument("make_krotov_primitive: beta must be > 1");
  if (!jump.fourier) throw std::invalid_argument("make_krotov_primitive: jump needs an exact fourier rule");

  KrotovResult out;
  const std::string kind = "krotov(beta=" + std::to_string(beta) + ",of=" + jump.kind + ")";

  if (std::abs(beta - 1.0) < 1e-12) {
    out.fn = jump;  // zero-order integral
    return out;
  }

  if (std::abs(beta - 2.0) < 1e-12 && jump.pw && jump.pw->is_piecewise_constant()) {
    // exact route: periodic antiderivative of the mean-free jump function
    PiecewiseLinear prim = pc_antiderivative_zero_mean(*jump.pw);
    const double mean = jump.fourier(0).real();
    for (double& v : prim.value0) v += mean;
    out.fn.kind = kind;
    auto shared = std::make_shared<const PiecewiseLinear>(std::move(prim));
    out.fn.pw = shared;
    out.fn.evaluator = [shared](double x) { return cplx(shared->eval(x), 0.0); };
    out.fn.breakpoints = jump.breakpoints;  // kink locations
    auto rule = jump.fourier;
    out.fn.fourier = [rule](long k) {
      if (k == 0) return rule(0);
      return rule(k) * weyl_multiplier(-1.0, k);
    };
    return out;
  }

  WeylOfSpecResult w = weyl_of_spec(jump, -(beta - 1.0), K, 0, tail_threshold);
  out.fn = std::move(w.fn);
  out.fn.kind = kind;
  // carry the jump's mean so beta -> 1 degenerates to the jump itself
  {
    auto rule = jump.fourier;
    const double b = beta;
    TrigPolynomial t = *out.fn.poly;
    t.at(0) = rule(0);
    out.fn = make_poly_spec(std::move(t), kind);
    out.fn.fourier = [rule, b](long k) {
      if (k == 0) return rule(0);
      return rule(k) * weyl_multiplier(-(b - 1.0), k);
    };
  }
  out.coeff_tail_l1 = w.coeff_tail_l1;
  out.cutoff_ok = w.cutoff_ok;
  return out;
}

// Smooth exemplars: classical kernels, random real-valued polynomials, and
// single waves.
inline FunctionSpec make_smooth(const std::string& kind_name, int n, std::uint64_t seed = 0) {
  if (kind_name == "dirichlet") return make_poly_spec(dirichlet_kernel(n), "dirichlet(n=" + std::to_string(n) + ")");
  if (kind_name == "fejer") return make_poly_spec(fejer_kernel(n), "fejer(n=" + std::to_string(n) + ")");
  if (kind_name == "jackson")
    return make_poly_spec(jackson_kernel(n / 2), "jackson(n=" + std::to_string(2 * (n / 2)) + ")");
  if (kind_name == "exp") {
    TrigPolynomial t(std::abs(n));
    t.at(n) = 1.0;
    return make_poly_spec(std::move(t), "exp(k=" + std::to_string(n) + ")");
  }
  if (kind_name == "random_poly") {
    SplitMix64 rng(mix_seed(0xc0ffee, seed));
    TrigPolynomial t(n);
    t.at(0) = 2.0 * rng.uniform01() - 1.0;
    for (int k = 1; k <= n; ++k) {
      const cplx c = rng.gaussian_cplx() / std::sqrt(2.0);
      t.at(k) = c / (1.0 + k);
      t.at(-k) = std::conj(c) / (1.0 + k);
    }
    return make_poly_spec(std::move(t),
                          "random_poly(n=" + std::to_string(n) + ",seed=" + std::to_string(seed) + ")");
  }
  throw std::invalid_argument("make_smooth: unknown kind " + kind_name);
}

}  // namespace fracsmooth
