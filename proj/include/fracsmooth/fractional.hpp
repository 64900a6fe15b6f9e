#pragma once

// Fractional difference and Weyl derivative machinery.
//
// The difference operator on e^{ikx} has eigenvalue (1 - e^{-ik delta})^alpha
// (principal branch), which is what the band-limited fast path applies. The
// series route sums binom(alpha,nu)(-1)^nu z^nu directly; its tail is summed
// by repeated Abel transformation so that the two routes can be compared at
// tight tolerance without ever trusting one to check the other.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "fracsmooth/periodic.hpp"
#include "fracsmooth/quadrature.hpp"

namespace fracsmooth {

struct TruncationPolicy {
  double tail_tol = 1e-8;
  long max_terms = 2'000'000;
};

inline bool is_natural(double alpha, double tol = 1e-12) {
  const double r = std::round(alpha);
  return r >= 1.0 && std::abs(alpha - r) < tol;
}

// binom(alpha, nu) by the downward recurrence; binom(alpha, 0) = 1.
inline double gbinom(double alpha, long nu) {
  if (nu < 0) throw std::invalid_argument("gbinom: nu must be nonnegative");
  double b = 1.0;
  for (long j = 1; j <= nu; ++j) b *= (alpha - static_cast<double>(j - 1)) / static_cast<double>(j);
  return b;
}

// Iterates s_nu = (-1)^nu binom(alpha, nu). For nu > alpha + 1 the terms share
// one sign and |s_nu| = O(nu^{-alpha-1}).
class GBinomSignedSeq {
 public:
  explicit GBinomSignedSeq(double alpha) : alpha_(alpha) {}
  double value() const { return cur_; }
  long index() const { return nu_; }
  void next() {
    ++nu_;
    cur_ *= (static_cast<double>(nu_ - 1) - alpha_) / static_cast<double>(nu_);
  }

 private:
  double alpha_;
  long nu_ = 0;
  double cur_ = 1.0;
};

// (ik)^alpha = |k|^alpha e^{i alpha pi/2 sign k}; zero frequency maps to zero.
inline cplx weyl_multiplier(double alpha, long k) {
  if (k == 0) return cplx(0.0);
  const double s = (k > 0) ? 1.0 : -1.0;
  return std::polar(std::pow(std::abs(static_cast<double>(k)), alpha), alpha * pi / 2.0 * s);
}

inline TrigPolynomial weyl(const TrigPolynomial& t, double alpha) {
  TrigPolynomial out(t.degree());
  for (int k = -t.degree(); k <= t.degree(); ++k) out.at(k) = weyl_multiplier(alpha, k) * t.coeff(k);
  return out;
}

inline FunctionSpec weyl_spec(const FunctionSpec& f, double alpha) {
  if (!f.poly) throw std::invalid_argument("weyl_spec: band-limited input required");
  return make_poly_spec(weyl(*f.poly, alpha), f.kind + "^(" + std::to_string(alpha) + ")");
}

// (1 - e^{-i k delta})^alpha, principal branch; k delta = 0 (mod 2pi) maps to 0.
inline cplx difference_multiplier(double alpha, long k, double delta) {
  const double theta = std::remainder(static_cast<double>(k) * delta, two_pi);
  if (std::abs(theta) < 1e-13) return cplx(0.0);
  const double sh = std::sin(theta / 2.0);
  const cplx w = 2.0 * sh * cplx(sh, std::cos(theta / 2.0));
  return std::pow(w, alpha);
}

struct SeriesValue {
  cplx value{0.0};
  double tail_bound = 0;
  bool converged = true;
  long terms = 0;
};

// sum_nu binom(alpha,nu)(-1)^nu z^nu with z = e^{-ik delta}, summed directly
// with a J-fold Abel tail. Pascal's rule gives the forward differences of the
// signed binomial sequence in closed form,
//   (Delta^j c)_N = c_N * prod_{m=1..j} ( -(alpha+m)/(N+m) ),
// so the transformed tail is free of subtractive cancellation and stays
// usable even when k delta sits near a multiple of 2pi. Exact and finite for
// natural alpha.
inline SeriesValue difference_multiplier_series(double alpha, long k, double delta,
                                                const TruncationPolicy& policy = {}) {
  if (!(alpha > 0)) throw std::invalid_argument("difference_multiplier_series: alpha must be positive");
  SeriesValue out;
  const double theta = std::remainder(static_cast<double>(k) * delta, two_pi);
  if (std::abs(theta) < 1e-13) return out;  // full series sums to (1-1)^alpha = 0

  const cplx z = std::polar(1.0, -theta);
  const cplx one_minus_z = 1.0 - z;
  constexpr int J = 8;

  GBinomSignedSeq seq(alpha);
  cplx partial(0.0), comp(0.0);  // Kahan-compensated partial sum
  cplx zpow(1.0);
  long nu = 0;
  long stage_end = 256;

  while (true) {
    for (; nu < stage_end; ++nu) {
      if ((nu & 255) == 0) zpow = std::polar(1.0, -theta * static_cast<double>(nu));
      const cplx term = seq.value() * zpow - comp;
      const cplx sum = partial + term;
      comp = (sum - partial) - term;
      partial = sum;
      if (seq.value() == 0.0) {  // natural alpha: the series terminates
        out.value = partial;
        out.terms = nu;
        return out;
      }
      seq.next();
      zpow *= z;
    }

    // Abel tail from N = stage_end with analytic differences
    const double N = static_cast<double>(nu);
    cplx tail(0.0);
    cplx factor = std::polar(1.0, -theta * N) / one_minus_z;
    double d = seq.value();  // (Delta^0 c)_N
    for (int i = 0; i < J; ++i) {
      tail += d * factor;
      factor *= z / one_minus_z;
      d *= -(alpha + static_cast<double>(i + 1)) / (N + static_cast<double>(i + 1));
    }
    const double rem = 4.0 * std::abs(d) * (N + J) / (alpha + J) /
                       std::pow(std::abs(one_minus_z), J);
    if (rem <= policy.tail_tol || nu >= policy.max_terms) {
      out.value = partial + tail;
      out.tail_bound = rem;
      out.converged = rem <= policy.tail_tol;
      out.terms = nu;
      return out;
    }
    stage_end = std::min(policy.max_terms, stage_end * 8);
  }
}

struct FracDiffResult {
  FunctionSpec fn;
  long terms = 0;
  double tail_bound = 0;
  bool converged = true;
};

namespace detail {

inline FunctionSpec diagonal_difference(const FunctionSpec& f, double alpha, double delta,
                                        const std::string& kind) {
  TrigPolynomial t(f.poly->degree());
  for (int k = -t.degree(); k <= t.degree(); ++k)
    t.at(k) = difference_multiplier(alpha, k, delta) * f.poly->coeff(k);
  FunctionSpec out = make_poly_spec(std::move(t), kind);
  return out;
}

}  // namespace detail

// Delta_delta^alpha f(x) = sum_nu binom(alpha,nu)(-1)^nu f(x - nu delta).
// Natural alpha: the finite sum, exactly. Band-limited f: the diagonal form.
// Otherwise: a truncated series evaluator; M is the first index whose running
// absolute binomial tail drops below tail_tol, capped (and flagged) at
// max_terms. The truncated sum is taken against the function's mean, which the
// full series annihilates, so constants are killed exactly at any truncation.
inline FracDiffResult frac_difference(const FunctionSpec& f, double alpha, double delta,
                                      const TruncationPolicy& policy = {}) {
  if (!(alpha > 0)) throw std::invalid_argument("frac_difference: alpha must be positive");
  if (delta == 0.0) throw std::invalid_argument("frac_difference: delta must be nonzero");

  const std::string kind = "diff(" + f.kind + ")";
  FracDiffResult out;

  if (is_natural(alpha)) {
    const long m = static_cast<long>(std::llround(alpha));
    std::vector<std::pair<cplx, FunctionSpec>> terms;
    terms.reserve(static_cast<std::size_t>(m) + 1);
    double c = 1.0;  // (-1)^nu binom(m, nu)
    for (long nu = 0; nu <= m; ++nu) {
      terms.emplace_back(cplx(c), shift_spec(f, static_cast<double>(nu) * delta));
      c *= -static_cast<double>(m - nu) / static_cast<double>(nu + 1);
    }
    out.fn = combine_specs(terms, kind);
    out.terms = m + 1;
    return out;
  }

  if (f.poly) {
    out.fn = detail::diagonal_difference(f, alpha, delta, kind);
    out.terms = f.poly->degree() * 2 + 1;
    return out;
  }

  // choose the truncation index from the running absolute tail
  GBinomSignedSeq seq(alpha);
  long M = 0;
  double tail = 0;
  for (long nu = 1; nu <= policy.max_terms; ++nu) {
    seq.next();
    M = nu;
    tail = std::abs(seq.value()) * static_cast<double>(nu) / alpha;  // ~ sum_{mu>nu} |binom|
    if (tail <= policy.tail_tol) break;
  }
  out.terms = M;
  out.tail_bound = tail;
  out.converged = tail <= policy.tail_tol;

  auto coeffs = std::make_shared<std::vector<double>>();
  coeffs->reserve(static_cast<std::size_t>(M) + 1);
  {
    GBinomSignedSeq s(alpha);
    for (long nu = 0; nu <= M; ++nu) {
      coeffs->push_back(s.value());
      s.next();
    }
  }
  const cplx mean = mean_estimate(f);
  auto ev = f.evaluator;
  const double d = delta;
  out.fn.kind = kind;
  out.fn.evaluator = [coeffs, ev, d, mean](double x) {
    cplx acc(0.0);
    double shift = x;
    for (double c : *coeffs) {
      acc += c * (ev(reduce_angle(shift)) - mean);
      shift -= d;
    }
    return acc;
  };
  if (f.fourier) {
    auto rule = f.fourier;
    const double a = alpha;
    out.fn.fourier = [rule, a, d](long k) { return difference_multiplier(a, k, d) * rule(k); };
  }
  // carry shifted jump locations while the panel count stays sane
  if (!f.breakpoints.empty()) {
    const long cap = std::min<long>(M, 4096 / static_cast<long>(f.breakpoints.size()) + 1);
    std::vector<double> bp;
    for (long nu = 0; nu <= cap; ++nu)
      for (double b : f.breakpoints) bp.push_back(reduce_angle(b + static_cast<double>(nu) * d));
    std::sort(bp.begin(), bp.end());
    for (double b : bp)
      if (out.fn.breakpoints.empty() || b > out.fn.breakpoints.back() + 1e-14)
        out.fn.breakpoints.push_back(b);
  }
  return out;
}

struct WeylOfSpecResult {
  FunctionSpec fn;
  double coeff_tail_l1 = 0;
  bool cutoff_ok = true;
};

// Weyl derivative (alpha > 0) or fractional integral (alpha < 0) applied to the
// degree-K spectral content of f. Positive orders demand an exact Fourier rule
// or a band-limited input; plain projection is allowed only when the
// multiplier decays.
inline WeylOfSpecResult weyl_of_spec(const FunctionSpec& f, double alpha, int K, std::size_t N = 0,
                                     double tail_threshold = 1e-6) {
  WeylOfSpecResult out;
  if (std::abs(alpha) < 1e-15 && f.poly) {
    out.fn = f;
    return out;
  }
  if (alpha > 0 && !(f.fourier || f.poly))
    throw std::invalid_argument(
        "weyl_of_spec: positive order requires an exact fourier rule or band-limited input");

  std::string kind = "weyl(" + f.kind + "," + std::to_string(alpha) + ")";
  if (f.poly) {
    const int deg = std::min(K, f.poly->degree());
    out.fn = make_poly_spec(weyl(f.poly->truncated(deg), alpha), kind);
    if (f.poly->degree() > deg) {
      for (int k = deg + 1; k <= f.poly->degree(); ++k)
        out.coeff_tail_l1 += std::abs(weyl_multiplier(alpha, k) * f.poly->coeff(k)) +
                             std::abs(weyl_multiplier(alpha, -k) * f.poly->coeff(-k));
      out.cutoff_ok = out.coeff_tail_l1 <= tail_threshold;
    }
    return out;
  }

  TrigPolynomial src(K);
  if (f.fourier) {
    for (int k = -K; k <= K; ++k) src.at(k) = f.fourier(k);
  } else {
    if (N == 0) N = std::max<std::size_t>(default_grid_size(f, K), next_power_of_two(2 * K + 2));
    src = analyze(sample(f, N), K);
  }
  TrigPolynomial t = weyl(src, alpha);
  if (std::abs(alpha) < 1e-15) t.at(0) = src.coeff(0);  // zero-order operator keeps the mean
  out.fn = make_poly_spec(std::move(t), kind);

  if (f.fourier) {
    auto rule = f.fourier;
    const double a = alpha;
    out.fn.fourier = [rule, a](long k) {
      if (k == 0) return std::abs(a) < 1e-15 ? rule(0) : cplx(0.0);
      return weyl_multiplier(a, k) * rule(k);
    };
    // geometric continuation of the coefficient tail beyond the cutoff
    double t1 = 0, t2 = 0;
    for (int k = K + 1; k <= 2 * K; ++k)
      t1 += std::abs(out.fn.fourier(k)) + std::abs(out.fn.fourier(-k));
    for (int k = 2 * K + 1; k <= 4 * K; ++k)
      t2 += std::abs(out.fn.fourier(k)) + std::abs(out.fn.fourier(-k));
    const double rho = (t1 > 0) ? std::min(t2 / t1, 0.999) : 0.0;
    out.coeff_tail_l1 = (t1 > 0) ? t1 / (1.0 - rho) : 0.0;
    out.cutoff_ok = out.coeff_tail_l1 <= tail_threshold;
  }
  return out;
}

struct ResidualCurve {
  std::vector<std::pair<double, double>> entries;  // (h, residual), h decreasing as given
  bool all_converged = true;
};

// || Delta_h^alpha f / h^alpha - g ||_p along a decreasing h schedule.
inline ResidualCurve grunwald_residual(const FunctionSpec& f, const FunctionSpec& g, double alpha,
                                       double p, const std::vector<double>& h_schedule,
                                       const TruncationPolicy& policy = {},
                                       const QuadratureSpec& quad = {}) {
  if (!(alpha > 0)) throw std::invalid_argument("grunwald_residual: alpha must be positive");
  for (std::size_t i = 0; i + 1 < h_schedule.size(); ++i)
    if (!(h_schedule[i] > h_schedule[i + 1]) || !(h_schedule[i + 1] > 0))
      throw std::invalid_argument("grunwald_residual: h_schedule must be strictly decreasing, positive");
  ResidualCurve out;
  for (double h : h_schedule) {
    FracDiffResult d = frac_difference(f, alpha, h, policy);
    out.all_converged = out.all_converged && d.converged;
    const FunctionSpec resid = combine_specs(
        {{cplx(std::pow(h, -alpha)), d.fn}, {cplx(-1.0), g}}, "grunwald_residual");
    const LpResult r = lp_norm_detail(resid, p, quad);
    out.all_converged = out.all_converged && (r.converged || r.exact);
    out.entries.emplace_back(h, r.value);
  }
  return out;
}

}  // namespace fracsmooth
