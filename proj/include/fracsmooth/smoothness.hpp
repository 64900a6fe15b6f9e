#pragma once

// Fractional moduli of smoothness, the realization functional (the working
// substitute for the K-functional when p < 1), and the discrete
// integral/tail-sum functionals that appear on the right-hand sides of the
// direct and inverse inequalities.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fracsmooth/best_approx.hpp"
#include "fracsmooth/fractional.hpp"
#include "fracsmooth/quadrature.hpp"

namespace fracsmooth {

struct ModulusCurve {
  std::vector<std::pair<double, double>> entries;  // (h, omega), h strictly increasing
  bool all_converged = true;
};

inline void curve_to_csv(const ModulusCurve& c, std::string& out) {
  out += "h,value\n";
  char buf[64];
  for (const auto& [h, v] : c.entries) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", h, v);
    out += buf;
  }
}

inline void etable_to_csv(const ETable& t, std::string& out) {
  out += "n,value\n";
  char buf[64];
  for (std::size_t n = 0; n < t.values.size(); ++n) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g\n", n, t.values[n]);
    out += buf;
  }
}

// Admissibility of the order for a given p: natural alpha, or alpha beyond
// 1/min(p,1) - 1 where the absolute binomial series is p-summable.
inline bool modulus_order_admissible(double alpha, double p) {
  if (!(alpha > 0)) return false;
  if (is_natural(alpha)) return true;
  const double p1 = std::min(p, 1.0);
  return alpha > 1.0 / p1 - 1.0 + 1e-12;
}

struct ModulusDetail {
  double value = 0;
  double arg_delta = 0;
  bool all_converged = true;
};

// omega_alpha(f, h)_p = sup_{|delta| < h} || Delta_delta^alpha f ||_p,
// approximated on a symmetric closed grid containing +-h, with one refinement
// pass around the argmax. Ties break toward smaller |delta|, then negative.
inline ModulusDetail modulus_detail(const FunctionSpec& f, double alpha, double h, double p,
                                    const QuadratureSpec& quad = {}, int scan = 33,
                                    const TruncationPolicy& policy = {}) {
  if (!(h > 0)) throw std::invalid_argument("modulus: h must be positive");
  if (!modulus_order_admissible(alpha, p))
    throw std::invalid_argument("modulus: alpha must lie in N or beyond 1/min(p,1)-1");
  if (scan < 3) throw std::invalid_argument("modulus: scan must be at least 3");

  ModulusDetail out;
  auto eval_at = [&](double delta) {
    const FracDiffResult d = frac_difference(f, alpha, delta, policy);
    const LpResult r = lp_norm_detail(d.fn, p, quad);
    out.all_converged = out.all_converged && d.converged && (r.converged || r.exact);
    return r.value;
  };
  auto better = [&](double v, double delta, double vbest, double dbest) {
    if (v > vbest * (1.0 + 1e-14) + 1e-300) return true;
    if (v < vbest * (1.0 - 1e-14)) return false;
    if (std::abs(delta) < std::abs(dbest) - 1e-15) return true;
    if (std::abs(delta) > std::abs(dbest) + 1e-15) return false;
    return delta < dbest;
  };

  const int m = std::max(1, (scan - 1) / 2);
  double vbest = -1, dbest = 0;
  for (int i = m; i >= 1; --i) {
    for (double sgn : {-1.0, 1.0}) {
      const double delta = sgn * h * static_cast<double>(i) / static_cast<double>(m);
      const double v = eval_at(delta);
      if (vbest < 0 || better(v, delta, vbest, dbest)) {
        vbest = v;
        dbest = delta;
      }
    }
  }
  // one refinement pass around the argmax
  const double step = h / static_cast<double>(m);
  for (int j = -4; j <= 4; ++j) {
    if (j == 0) continue;
    const double delta = dbest + step * static_cast<double>(j) / 4.0;
    if (delta == 0.0 || std::abs(delta) > h) continue;
    const double v = eval_at(delta);
    if (better(v, delta, vbest, dbest)) {
      vbest = v;
      dbest = delta;
    }
  }
  out.value = std::max(vbest, 0.0);
  out.arg_delta = dbest;
  return out;
}

inline double modulus(const FunctionSpec& f, double alpha, double h, double p,
                      const QuadratureSpec& quad = {}, int scan = 33,
                      const TruncationPolicy& policy = {}) {
  return modulus_detail(f, alpha, h, p, quad, scan, policy).value;
}

inline ModulusCurve modulus_curve(const FunctionSpec& f, double alpha, double p,
                                  const std::vector<double>& h_list, const QuadratureSpec& quad = {},
                                  int scan = 33, const TruncationPolicy& policy = {}) {
  for (std::size_t i = 0; i + 1 < h_list.size(); ++i)
    if (!(h_list[i] < h_list[i + 1]))
      throw std::invalid_argument("modulus_curve: h_list must be strictly increasing");
  ModulusCurve out;
  for (double h : h_list) {
    const ModulusDetail d = modulus_detail(f, alpha, h, p, quad, scan, policy);
    out.all_converged = out.all_converged && d.all_converged;
    out.entries.emplace_back(h, d.value);
  }
  return out;
}

struct RealizationResult {
  double value = 0;
  TrigPolynomial minimizer;
  double distance_part = 0;
  double derivative_part = 0;  // delta^alpha * ||T^(alpha)||_p
  SolveStatus status = SolveStatus::converged;
};

// R_alpha(f, delta)_p = inf over T of degree <= floor(1/delta) of
// ||f - T||_p + delta^alpha ||T^(alpha)||_p, attacked with the best_approx
// IRLS machinery and the penalty folded into the smoothed objective. The
// returned value is an upper bound on the infimum.
inline RealizationResult realization(const FunctionSpec& f, double alpha, double delta, double p,
                                     const SolverOptions& opts = {}, const QuadratureSpec& quad = {}) {
  if (!(alpha > 0)) throw std::invalid_argument("realization: alpha must be positive");
  if (!(delta > 0.0) || delta > 1.0) throw std::invalid_argument("realization: delta must be in (0, 1]");
  if (!(p > 0)) throw std::invalid_argument("realization: p must be positive");
  validate(opts);

  const int n = std::max(1, static_cast<int>(std::floor(1.0 / delta)));
  detail::IrlsGrid grid = detail::make_grid(f, n, p, quad);
  grid.pen_weight = std::pow(delta, alpha * p);
  grid.pen_mult.resize(static_cast<std::size_t>(2 * n + 1));
  for (int k = -n; k <= n; ++k)
    grid.pen_mult[static_cast<std::size_t>(k + n)] = weyl_multiplier(alpha, k);

  RealizationResult result;
  result.minimizer = TrigPolynomial(n);
  if (grid.scale == 0.0) return result;

  std::vector<cplx> proj(static_cast<std::size_t>(2 * n + 1));
  {
    const std::vector<cplx> tau = detail::weight_spectrum(grid.fvals, n, grid.N);
    for (int k = -n; k <= n; ++k) proj[static_cast<std::size_t>(k + n)] = tau[static_cast<std::size_t>(k + 2 * n)];
  }

  std::vector<std::vector<cplx>> cands;
  cands.push_back(proj);
  cands.push_back(detail::taper_projection(proj, n));
  cands.push_back(std::vector<cplx>(static_cast<std::size_t>(2 * n + 1), cplx(0.0)));
  {
    int idx = 0;
    while (static_cast<int>(cands.size()) < std::max(3, opts.restarts)) {
      SplitMix64 rng(mix_seed(opts.seed, 0x5ea1ULL + static_cast<std::uint64_t>(idx)));
      std::vector<cplx> c = cands[idx % 2];
      const double sigma = 0.25 * grid.scale / std::sqrt(static_cast<double>(2 * n + 1));
      for (auto& ck : c) ck += sigma * rng.gaussian_cplx();
      cands.push_back(std::move(c));
      ++idx;
    }
  }

  struct Outcome {
    double value = 0, dist = 0, dpart = 0;
    TrigPolynomial poly;
    bool cap_hit = false;
  };
  std::vector<Outcome> outcomes(cands.size());
  const unsigned jobs = opts.jobs ? opts.jobs : default_jobs();
  parallel_for(cands.size(), jobs, [&](std::size_t i) {
    detail::PolishOutcome po = detail::polish(grid, cands[i], opts);
    TrigPolynomial t(n, po.coeffs);
    Outcome& o = outcomes[i];
    o.dist = lp_distance(f, make_poly_spec(t), p, quad);
    o.dpart = std::pow(delta, alpha) * lp_norm(make_poly_spec(weyl(t, alpha)), p, quad);
    o.value = o.dist + o.dpart;
    o.poly = std::move(t);
    o.cap_hit = po.cap_hit;
  });

  std::size_t winner = 0;
  for (std::size_t i = 1; i < outcomes.size(); ++i)
    if (outcomes[i].value < outcomes[winner].value - 1e-10) winner = i;

  result.value = outcomes[winner].value;
  result.distance_part = outcomes[winner].dist;
  result.derivative_part = outcomes[winner].dpart;
  result.minimizer = outcomes[winner].poly;
  result.status = outcomes[winner].cap_hit ? SolveStatus::iteration_cap : SolveStatus::converged;
  return result;
}

struct WeightedIntegral {
  double value = 0;       // ( int_0^delta omega(t)^p t^{-w} dt )^{1/p}, head included
  double head = 0;        // extrapolated contribution of (0, t_min]
  bool divergent = false; // fitted power law makes the integrand non-integrable
  double fitted_slope = 0;
};

// ( int_0^delta omega(t)^p t^{-weight_exponent} dt )^{1/p} from a sampled
// curve. Within the sampled span each segment integrates its own local power
// law (exact on pure power curves); the unresolved head is extrapolated from
// the power law fitted on the smallest sampled steps.
inline WeightedIntegral weighted_modulus_integral(const ModulusCurve& curve, double p,
                                                  double weight_exponent, double delta) {
  if (!(p > 0)) throw std::invalid_argument("weighted_modulus_integral: p must be positive");
  if (!(delta > 0)) throw std::invalid_argument("weighted_modulus_integral: delta must be positive");

  std::vector<std::pair<double, double>> pts;
  for (const auto& [t, v] : curve.entries)
    if (t <= delta * (1.0 + 1e-12)) pts.emplace_back(t, v);
  if (pts.size() < 4)
    throw std::invalid_argument("weighted_modulus_integral: curve must cover (t_min, delta] with >= 4 points");

  WeightedIntegral out;
  bool all_zero = true;
  for (const auto& [t, v] : pts) all_zero = all_zero && v <= 0;
  if (all_zero) return out;

  // local power law of omega near zero from the smallest positive entries
  {
    std::vector<std::pair<double, double>> head_pts;
    for (const auto& [t, v] : pts) {
      if (v > 0) head_pts.emplace_back(t, v);
      if (head_pts.size() == 4) break;
    }
    if (head_pts.size() >= 2) {
      double sx = 0, sy = 0, sxx = 0, sxy = 0;
      for (const auto& [t, v] : head_pts) {
        const double lx = std::log(t), ly = std::log(v);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
      }
      const double m = static_cast<double>(head_pts.size());
      out.fitted_slope = (m * sxy - sx * sy) / std::max(m * sxx - sx * sx, 1e-300);
    }
  }
  const double head_exponent = p * out.fitted_slope - weight_exponent;  // integrand ~ t^{head_exponent}
  out.divergent = head_exponent <= -1.0 + 1e-9;

  double integral = 0;
  // segment-wise local power law on the sampled span
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const auto [t0, v0] = pts[i];
    auto [t1, v1] = pts[i + 1];
    if (t1 > delta) t1 = delta;  // clip (entries are sorted)
    if (!(t1 > t0)) continue;
    const double g0 = std::pow(std::max(v0, 0.0), p) * std::pow(t0, -weight_exponent);
    const double g1 = std::pow(std::max(v1, 0.0), p) * std::pow(t1, -weight_exponent);
    if (g0 <= 0 || g1 <= 0) {
      integral += 0.5 * (g0 + g1) * (t1 - t0);
      continue;
    }
    const double q = std::log(g1 / g0) / std::log(t1 / t0);
    if (std::abs(q + 1.0) < 1e-9) {
      integral += g0 * t0 * std::log(t1 / t0);
    } else {
      integral += g0 * t0 * (std::pow(t1 / t0, q + 1.0) - 1.0) / (q + 1.0);
    }
  }
  // extrapolated head over (0, t_min]
  if (!out.divergent) {
    const auto [t0, v0] = pts.front();
    if (v0 > 0) {
      const double g0 = std::pow(v0, p) * std::pow(t0, -weight_exponent);
      out.head = g0 * t0 / (head_exponent + 1.0);
      integral += out.head;
    }
  }
  out.value = std::pow(std::max(integral, 0.0), 1.0 / p);
  out.head = (integral > 0 && out.head > 0)
                 ? out.value - std::pow(std::max(integral - out.head, 0.0), 1.0 / p)
                 : 0.0;
  return out;
}

struct TailSum {
  double value = 0;              // ( sum_{nu > n} w(nu) E_nu^p )^{1/p}
  double last_term_fraction = 0; // truncation indicator
  bool horizon_limited = false;  // last term exceeds 1% of the sum
};

template <class WeightFn>
inline TailSum tail_sum_weighted(const ETable& table, double p, WeightFn&& weight, int n_start) {
  if (!(p > 0)) throw std::invalid_argument("tail_sum: p must be positive");
  const int n_max = static_cast<int>(table.values.size()) - 1;
  if (n_start >= n_max) throw std::invalid_argument("tail_sum: n must be below the table horizon");
  double sum = 0, last = 0;
  for (int nu = n_start + 1; nu <= n_max; ++nu) {
    const double term = weight(nu) * std::pow(table.values[static_cast<std::size_t>(nu)], p);
    sum += term;
    last = term;
  }
  TailSum out;
  out.value = std::pow(sum, 1.0 / p);
  out.last_term_fraction = (sum > 0) ? last / sum : 0.0;
  out.horizon_limited = out.last_term_fraction > 0.01;
  return out;
}

inline TailSum tail_sum(const ETable& table, double p, double exponent, int n_start) {
  return tail_sum_weighted(
      table, p, [exponent](int nu) { return std::pow(static_cast<double>(nu), exponent); }, n_start);
}

// finite head sum ( sum_{nu=0}^{n} w(nu) E_nu^p )^{1/p}
template <class WeightFn>
inline double head_sum_weighted(const ETable& table, double p, WeightFn&& weight, int n_end) {
  if (!(p > 0)) throw std::invalid_argument("head_sum: p must be positive");
  if (n_end < 0 || n_end >= static_cast<int>(table.values.size()))
    throw std::invalid_argument("head_sum: n out of range");
  double sum = 0;
  for (int nu = 0; nu <= n_end; ++nu)
    sum += weight(nu) * std::pow(table.values[static_cast<std::size_t>(nu)], p);
  return std::pow(sum, 1.0 / p);
}

// Piecewise growth rates governing the fractional Bernstein-type losses.
// Natural alpha always lands in the first branch.
inline double sigma_rate(int n, double alpha, double p) {
  if (n < 1) throw std::invalid_argument("sigma_rate: n must be >= 1");
  if (!(alpha > 0)) throw std::invalid_argument("sigma_rate: alpha must be positive");
  const double crit = 1.0 / p - 1.0;
  if (is_natural(alpha) || alpha > crit + 1e-12) return std::pow(n, alpha);
  if (std::abs(alpha - crit) <= 1e-12)
    return std::pow(n, crit) * std::pow(std::log(static_cast<double>(n + 1)), 1.0 / p);
  return std::pow(n, crit);
}

inline double rho_rate(int n, double alpha, double p) {
  if (n < 1) throw std::invalid_argument("rho_rate: n must be >= 1");
  if (!(alpha > 0)) throw std::invalid_argument("rho_rate: alpha must be positive");
  const double crit = 1.0 / p - 1.0;
  if (is_natural(alpha) || alpha > crit + 1e-12) return 1.0;
  if (std::abs(alpha - crit) <= 1e-12)
    return std::pow(std::log(static_cast<double>(n + 1)), 1.0 / p);
  return std::pow(n, crit - alpha);
}

}  // namespace fracsmooth
