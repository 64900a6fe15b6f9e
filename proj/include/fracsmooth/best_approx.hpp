#pragma once

// Best trigonometric approximation E_n(f)_p for all 0 < p < infinity.
//
// For p >= 1 the problem is convex and smoothed IRLS converges to the global
// optimum. For p < 1 it is not: the solver runs several initializations
// (Fourier projection, a de la Vallee Poussin style tapered projection, and
// seeded random perturbations of both), polishes each with iteratively
// reweighted least squares under an epsilon-continuation schedule, and keeps
// the best exact value. Reported values are therefore upper bounds on the
// true infimum; a grid-search certificate at toy sizes lives in the tests.
//
// The weighted normal equations on a uniform midpoint grid have a Toeplitz
// Gram matrix whose entries are Fourier coefficients of the weight vector, so
// each iteration costs a few FFTs plus one dense Hermitian solve of size 2n+1.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracsmooth/fractional.hpp"
#include "fracsmooth/parallel.hpp"
#include "fracsmooth/periodic.hpp"
#include "fracsmooth/quadrature.hpp"
#include "fracsmooth/rng.hpp"

namespace fracsmooth {

struct SolverOptions {
  int restarts = 8;
  // epsilon-continuation levels, relative to the data scale, strictly decreasing
  std::vector<double> eps_schedule = {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8};
  int max_iters = 40;      // per stage
  double step_tol = 1e-12; // relative objective decrease that ends a stage
  std::uint64_t seed = 0;
  unsigned jobs = 0;       // 0 = default_jobs()
};

enum class SolveStatus { converged, iteration_cap, stagnated };

inline const char* to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::converged: return "converged";
    case SolveStatus::iteration_cap: return "iteration-cap";
    default: return "stagnated";
  }
}

struct StageTrace {
  double eps = 0;
  std::vector<double> objective;  // nonincreasing within the stage
};

struct BestApproxResult {
  double value = 0;
  TrigPolynomial polynomial;
  SolveStatus status = SolveStatus::converged;
  std::vector<StageTrace> trace;  // winning restart
  int best_restart = 0;
};

struct ETable {
  std::vector<double> values;  // E[n], n = 0..n_max, nonincreasing
};

namespace detail {

struct IrlsGrid {
  std::size_t N = 0;
  std::vector<cplx> fvals;      // f at midpoints x_j = (j + 1/2) 2pi / N
  double scale = 0;             // max |f_j|
  int degree = 0;
  double p = 0.5;
  double pen_weight = 0;        // delta^{alpha p} for the realization objective
  std::vector<cplx> pen_mult;   // (ik)^alpha, k = -n..n
};

inline std::vector<cplx> synth_mid(const std::vector<cplx>& coeffs, int n, std::size_t N) {
  std::vector<cplx> bins(N, cplx(0.0));
  const double x0 = pi / static_cast<double>(N);
  for (int k = -n; k <= n; ++k) {
    const cplx c = coeffs[static_cast<std::size_t>(k + n)] * std::polar(1.0, k * x0);
    bins[static_cast<std::size_t>((k % static_cast<int>(N) + static_cast<int>(N)) % static_cast<int>(N))] += c;
  }
  fft_radix2(bins, +1);
  return bins;
}

// tau_m = (1/N) sum_j w_j e^{-im x_j} for |m| <= 2n, from one forward FFT.
inline std::vector<cplx> weight_spectrum(const std::vector<cplx>& w, int n, std::size_t N) {
  std::vector<cplx> bins = w;
  fft_radix2(bins, -1);
  const double x0 = pi / static_cast<double>(N);
  std::vector<cplx> tau(static_cast<std::size_t>(4 * n + 1));
  for (int m = -2 * n; m <= 2 * n; ++m) {
    const cplx b = bins[static_cast<std::size_t>((m % static_cast<int>(N) + static_cast<int>(N)) %
                                                 static_cast<int>(N))];
    tau[static_cast<std::size_t>(m + 2 * n)] = b / static_cast<double>(N) * std::polar(1.0, -m * x0);
  }
  return tau;
}

inline double smoothed_objective(const IrlsGrid& g, const std::vector<cplx>& coeffs, double eps) {
  const std::vector<cplx> tv = synth_mid(coeffs, g.degree, g.N);
  const double e2 = eps * eps;
  double acc = 0;
  for (std::size_t j = 0; j < g.N; ++j) acc += std::pow(std::norm(g.fvals[j] - tv[j]) + e2, g.p / 2.0);
  double obj = acc / static_cast<double>(g.N);
  if (g.pen_weight > 0) {
    std::vector<cplx> dc(coeffs.size());
    for (int k = -g.degree; k <= g.degree; ++k) {
      const std::size_t i = static_cast<std::size_t>(k + g.degree);
      dc[i] = coeffs[i] * g.pen_mult[i];
    }
    const std::vector<cplx> dv = synth_mid(dc, g.degree, g.N);
    double pacc = 0;
    for (std::size_t j = 0; j < g.N; ++j) pacc += std::pow(std::norm(dv[j]) + e2, g.p / 2.0);
    obj += g.pen_weight * pacc / static_cast<double>(g.N);
  }
  return obj;
}

// One reweighted least-squares step: returns the minimizer of the weighted
// quadratic model around `coeffs`.
inline std::vector<cplx> irls_step(const IrlsGrid& g, const std::vector<cplx>& coeffs, double eps) {
  const int n = g.degree;
  const std::size_t m = static_cast<std::size_t>(2 * n + 1);
  const double e2 = eps * eps;
  const std::vector<cplx> tv = synth_mid(coeffs, n, g.N);

  std::vector<cplx> u(g.N), uf(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    const double w = std::pow(std::norm(g.fvals[j] - tv[j]) + e2, g.p / 2.0 - 1.0);
    u[j] = w;
    uf[j] = w * g.fvals[j];
  }
  const std::vector<cplx> tau = weight_spectrum(u, n, g.N);
  const std::vector<cplx> rhs_spec = weight_spectrum(uf, n, g.N);

  Eigen::MatrixXcd G(m, m);
  Eigen::VectorXcd b(m);
  for (int k = -n; k <= n; ++k) {
    b(k + n) = rhs_spec[static_cast<std::size_t>(k + 2 * n)];
    for (int l = -n; l <= n; ++l) G(k + n, l + n) = tau[static_cast<std::size_t>((k - l) + 2 * n)];
  }

  if (g.pen_weight > 0) {
    std::vector<cplx> dc(coeffs.size());
    for (int k = -n; k <= n; ++k) {
      const std::size_t i = static_cast<std::size_t>(k + n);
      dc[i] = coeffs[i] * g.pen_mult[i];
    }
    const std::vector<cplx> dv = synth_mid(dc, n, g.N);
    std::vector<cplx> v(g.N);
    for (std::size_t j = 0; j < g.N; ++j)
      v[j] = g.pen_weight * std::pow(std::norm(dv[j]) + e2, g.p / 2.0 - 1.0);
    const std::vector<cplx> tau2 = weight_spectrum(v, n, g.N);
    for (int k = -n; k <= n; ++k)
      for (int l = -n; l <= n; ++l)
        G(k + n, l + n) += std::conj(g.pen_mult[static_cast<std::size_t>(k + n)]) *
                           g.pen_mult[static_cast<std::size_t>(l + n)] *
                           tau2[static_cast<std::size_t>((k - l) + 2 * n)];
  }

  const double ridge = 1e-14 * std::abs(G.trace()) / static_cast<double>(m) + 1e-300;
  for (std::size_t i = 0; i < m; ++i) G(i, i) += ridge;

  Eigen::VectorXcd c = G.ldlt().solve(b);
  std::vector<cplx> out(m);
  for (std::size_t i = 0; i < m; ++i) out[i] = c(i);
  return out;
}

struct PolishOutcome {
  std::vector<cplx> coeffs;
  std::vector<StageTrace> trace;
  bool cap_hit = false;
};

inline PolishOutcome polish(const IrlsGrid& g, std::vector<cplx> coeffs, const SolverOptions& opts) {
  PolishOutcome out;
  for (double eps_rel : opts.eps_schedule) {
    const double eps = eps_rel * std::max(g.scale, 1e-300);
    StageTrace st;
    st.eps = eps;
    double F = smoothed_objective(g, coeffs, eps);
    st.objective.push_back(F);
    int iter = 0;
    for (; iter < opts.max_iters; ++iter) {
      const std::vector<cplx> prop = irls_step(g, coeffs, eps);
      // monotone safeguard: halve the step until the smoothed objective drops
      double t = 1.0;
      double Fnew = 0;
      bool accepted = false;
      for (int half = 0; half < 24; ++half, t *= 0.5) {
        std::vector<cplx> trial(coeffs.size());
        for (std::size_t i = 0; i < coeffs.size(); ++i)
          trial[i] = coeffs[i] + t * (prop[i] - coeffs[i]);
        Fnew = smoothed_objective(g, trial, eps);
        if (Fnew < F) {
          coeffs = std::move(trial);
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
      st.objective.push_back(Fnew);
      const double drop = F - Fnew;
      F = Fnew;
      if (drop <= opts.step_tol * std::max(F, 1e-300)) break;
    }
    if (iter == opts.max_iters) out.cap_hit = true;
    out.trace.push_back(std::move(st));
  }
  out.coeffs = std::move(coeffs);
  return out;
}

inline std::vector<cplx> taper_projection(const std::vector<cplx>& proj, int n) {
  // de la Vallee Poussin style: keep the lower half, taper linearly to zero
  std::vector<cplx> out = proj;
  const int m = n / 2;
  for (int k = -n; k <= n; ++k) {
    const int a = std::abs(k);
    if (a <= m) continue;
    const double w = static_cast<double>(n + 1 - a) / static_cast<double>(n + 1 - m);
    out[static_cast<std::size_t>(k + n)] *= w;
  }
  return out;
}

inline std::size_t solver_grid_size(const QuadratureSpec& quad, int n) {
  return next_power_of_two(std::max<std::size_t>(static_cast<std::size_t>(quad.base_size),
                                                 static_cast<std::size_t>(4 * n + 8)));
}

inline IrlsGrid make_grid(const FunctionSpec& f, int n, double p, const QuadratureSpec& quad) {
  IrlsGrid g;
  g.N = solver_grid_size(quad, n);
  g.degree = n;
  g.p = p;
  g.fvals.resize(g.N);
  for (std::size_t j = 0; j < g.N; ++j) {
    const double x = two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(g.N);
    g.fvals[j] = f.evaluator(x);
    g.scale = std::max(g.scale, std::abs(g.fvals[j]));
  }
  return g;
}

}  // namespace detail

inline void validate(const SolverOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("SolverOptions: restarts must be positive");
  if (opts.eps_schedule.empty() || opts.eps_schedule.back() <= 0)
    throw std::invalid_argument("SolverOptions: eps_schedule must end positive");
  for (std::size_t i = 0; i + 1 < opts.eps_schedule.size(); ++i)
    if (!(opts.eps_schedule[i] > opts.eps_schedule[i + 1]))
      throw std::invalid_argument("SolverOptions: eps_schedule must be strictly decreasing");
  if (opts.max_iters < 1) throw std::invalid_argument("SolverOptions: max_iters must be positive");
}

inline BestApproxResult best_approx(const FunctionSpec& f, int n, double p,
                                    const SolverOptions& opts = {}, const QuadratureSpec& quad = {},
                                    const std::vector<TrigPolynomial>& extra_inits = {}) {
  if (!(p > 0)) throw std::invalid_argument("best_approx: p must be positive");
  if (n < 0) throw std::invalid_argument("best_approx: degree must be nonnegative");
  validate(opts);

  detail::IrlsGrid grid = detail::make_grid(f, n, p, quad);

  BestApproxResult result;
  result.polynomial = TrigPolynomial(n);
  if (grid.scale == 0.0) return result;  // identically zero input

  // discrete projection onto T_n with respect to the solver grid
  std::vector<cplx> proj(static_cast<std::size_t>(2 * n + 1));
  {
    const std::vector<cplx> tau = detail::weight_spectrum(grid.fvals, (n == 0 ? 1 : n), grid.N);
    const int nn = (n == 0 ? 1 : n);
    for (int k = -n; k <= n; ++k) proj[static_cast<std::size_t>(k + n)] = tau[static_cast<std::size_t>(k + 2 * nn)];
  }

  struct Candidate {
    std::vector<cplx> coeffs;
    bool polish = true;
  };
  std::vector<Candidate> cands;
  cands.push_back({proj, false});  // raw projection: evaluation-only upper bound
  cands.push_back({proj, true});
  cands.push_back({detail::taper_projection(proj, n), true});
  for (const auto& t : extra_inits) {
    std::vector<cplx> c(static_cast<std::size_t>(2 * n + 1));
    for (int k = -n; k <= n; ++k) c[static_cast<std::size_t>(k + n)] = t.coeff(k);
    cands.push_back({std::move(c), true});
  }
  {
    int idx = 0;
    while (static_cast<int>(cands.size()) < opts.restarts + 1) {
      SplitMix64 rng(mix_seed(opts.seed, 0x9d2c5680ULL + static_cast<std::uint64_t>(idx)));
      const std::vector<cplx>& base = (idx % 2 == 0) ? proj : cands[2].coeffs;
      double rms = 0;
      for (const auto& c : base) rms += std::norm(c);
      rms = std::sqrt(rms / static_cast<double>(base.size()));
      const double sigma = 0.5 * rms + 0.25 * grid.scale / std::sqrt(static_cast<double>(2 * n + 1));
      std::vector<cplx> c = base;
      for (auto& ck : c) ck += sigma * rng.gaussian_cplx();
      cands.push_back({std::move(c), true});
      ++idx;
    }
  }

  struct Outcome {
    double value = 0;
    TrigPolynomial poly;
    std::vector<StageTrace> trace;
    bool cap_hit = false;
  };
  std::vector<Outcome> outcomes(cands.size());
  const unsigned jobs = opts.jobs ? opts.jobs : default_jobs();
  parallel_for(cands.size(), jobs, [&](std::size_t i) {
    detail::PolishOutcome po;
    if (cands[i].polish) {
      po = detail::polish(grid, cands[i].coeffs, opts);
    } else {
      po.coeffs = cands[i].coeffs;
    }
    TrigPolynomial t(n, po.coeffs);
    Outcome& o = outcomes[i];
    o.value = lp_distance(f, make_poly_spec(t), p, quad);
    o.poly = std::move(t);
    o.trace = std::move(po.trace);
    o.cap_hit = po.cap_hit;
  });

  double vbest = outcomes[0].value;
  double polished_best = outcomes.size() > 1 ? outcomes[1].value : outcomes[0].value;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    vbest = std::min(vbest, outcomes[i].value);
    if (i >= 1) polished_best = std::min(polished_best, outcomes[i].value);
  }
  std::size_t winner = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    if (outcomes[i].value <= vbest + 1e-10) {  // ties go to the lowest restart index
      winner = i;
      break;
    }
  }

  result.value = outcomes[winner].value;
  result.polynomial = outcomes[winner].poly;
  result.trace = outcomes[winner].trace;
  result.best_restart = static_cast<int>(winner);
  if (polished_best > outcomes[0].value + 1e-12)
    result.status = SolveStatus::stagnated;  // every polish ended above the plain projection
  else if (outcomes[winner].cap_hit)
    result.status = SolveStatus::iteration_cap;
  else
    result.status = SolveStatus::converged;
  return result;
}

inline ETable best_approx_table(const FunctionSpec& f, int n_max, double p,
                                const SolverOptions& opts = {}, const QuadratureSpec& quad = {},
                                std::vector<TrigPolynomial>* minimizers = nullptr) {
  if (n_max < 0) throw std::invalid_argument("best_approx_table: n_max must be nonnegative");
  ETable table;
  table.values.reserve(static_cast<std::size_t>(n_max) + 1);
  if (minimizers) minimizers->clear();
  TrigPolynomial prev;
  double prev_value = 0;
  for (int n = 0; n <= n_max; ++n) {
    SolverOptions o = opts;
    o.seed = mix_seed(opts.seed, static_cast<std::uint64_t>(n));
    std::vector<TrigPolynomial> warm;
    if (n > 0) {
      o.restarts = std::max(2, opts.restarts / 2);  // warm chain needs fewer fresh starts
      warm.push_back(prev);
    }
    BestApproxResult r = best_approx(f, n, p, o, quad, warm);
    if (n > 0 && prev_value < r.value) {
      // running minimum: the previous minimizer still lies in T_n
      r.value = prev_value;
      r.polynomial = prev.truncated(n);
    }
    table.values.push_back(r.value);
    prev = r.polynomial.truncated(n);
    prev_value = r.value;
    if (minimizers) minimizers->push_back(r.polynomial);
  }
  return table;
}

// || f^(alpha) - T_n^(alpha) ||_p with the exact derivative companion supplied
// by the corpus.
inline double simultaneous_deriv_error(const FunctionSpec& f_alpha, const TrigPolynomial& t_n,
                                       double alpha, double p, const QuadratureSpec& quad = {}) {
  return lp_distance(f_alpha, make_poly_spec(weyl(t_n, alpha)), p, quad);
}

struct BernsteinDetail {
  double best = 0;
  double exp_ratio = 0;
  double dirichlet_ratio = 0;
  double fejer_ratio = 0;
  double best_random = 0;
};

// Lower bound on sup { ||T^(alpha)||_p : T in T_n, ||T||_p <= 1 } over a
// structured candidate set plus seeded random draws, with one coordinate-ascent
// polish of the leader.
inline BernsteinDetail bernstein_sup_detail(int n, double alpha, double p,
                                            const SolverOptions& opts = {}) {
  if (n < 1) throw std::invalid_argument("bernstein_sup: n must be >= 1");
  QuadratureSpec q;
  q.base_size = static_cast<int>(next_power_of_two(std::max(512, 8 * n)));
  q.refinement_levels = 2;
  q.tol = 1e-6;

  auto ratio = [&](const TrigPolynomial& t) {
    const double den = lp_norm(make_poly_spec(t), p, q);
    if (den == 0) return 0.0;
    return lp_norm(make_poly_spec(weyl(t, alpha)), p, q) / den;
  };

  BernsteinDetail out;
  TrigPolynomial wave(n);
  wave.at(n) = 1.0;
  out.exp_ratio = ratio(wave);
  out.dirichlet_ratio = ratio(dirichlet_kernel(n));
  out.fejer_ratio = ratio(fejer_kernel(n));

  TrigPolynomial leader = wave;
  double best = out.exp_ratio;
  auto consider = [&](const TrigPolynomial& t, double r) {
    if (r > best) {
      best = r;
      leader = t;
    }
  };
  consider(dirichlet_kernel(n), out.dirichlet_ratio);
  consider(fejer_kernel(n), out.fejer_ratio);

  const int draws = std::max(2, opts.restarts / 2);
  for (int d = 0; d < draws; ++d) {
    SplitMix64 rng(mix_seed(opts.seed, 0xbe57ULL + static_cast<std::uint64_t>(d)));
    TrigPolynomial t(n);
    for (int k = -n; k <= n; ++k) t.at(k) = rng.gaussian_cplx();
    const double r = ratio(t);
    out.best_random = std::max(out.best_random, r);
    consider(t, r);
  }

  // local coordinate ascent on the leader
  double step = 0.4 * leader.max_abs_coeff();
  for (int sweep = 0; sweep < 2; ++sweep, step *= 0.3) {
    for (int k = -n; k <= n; ++k) {
      for (int comp = 0; comp < 2; ++comp) {
        for (double sgn : {1.0, -1.0}) {
          TrigPolynomial trial = leader;
          trial.at(k) += (comp == 0) ? cplx(sgn * step, 0.0) : cplx(0.0, sgn * step);
          const double r = ratio(trial);
          if (r > best * (1.0 + 1e-12)) {
            best = r;
            leader = trial;
          }
        }
      }
    }
  }
  out.best = best;
  return out;
}

inline double bernstein_sup(int n, double alpha, double p, const SolverOptions& opts = {}) {
  return bernstein_sup_detail(n, alpha, p, opts).best;
}

}  // namespace fracsmooth
