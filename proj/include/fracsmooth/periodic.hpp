#pragma once

// Representations of 2pi-periodic functions: trigonometric polynomials with
// complex coefficients c_k (|k| <= n), uniform sample grids, and
// evaluator-backed function specs with optional exact structure attached.

#include <complex>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracsmooth/fft.hpp"
#include "fracsmooth/piecewise.hpp"

namespace fracsmooth {

class TrigPolynomial {
 public:
  TrigPolynomial() : degree_(0), coeffs_(1, cplx(0.0)) {}

  explicit TrigPolynomial(int degree) : degree_(degree), coeffs_(2 * degree + 1, cplx(0.0)) {
    if (degree < 0) throw std::invalid_argument("TrigPolynomial: degree must be nonnegative");
  }

  TrigPolynomial(int degree, std::vector<cplx> coeffs) : degree_(degree), coeffs_(std::move(coeffs)) {
    if (degree < 0) throw std::invalid_argument("TrigPolynomial: degree must be nonnegative");
    if (coeffs_.size() != static_cast<std::size_t>(2 * degree + 1))
      throw std::invalid_argument("TrigPolynomial: coefficient array must have length 2n+1");
  }

  int degree() const { return degree_; }
  const std::vector<cplx>& coeffs() const { return coeffs_; }

  cplx coeff(int k) const {
    if (k < -degree_ || k > degree_) return cplx(0.0);
    return coeffs_[static_cast<std::size_t>(k + degree_)];
  }

  cplx& at(int k) {
    if (k < -degree_ || k > degree_) throw std::out_of_range("TrigPolynomial::at");
    return coeffs_[static_cast<std::size_t>(k + degree_)];
  }

  // Horner in z = e^{ix}: sum c_k z^k = z^{-n} sum_m c_{m-n} z^m.
  cplx eval(double x) const {
    const cplx z = std::polar(1.0, x);
    cplx acc(0.0);
    for (std::size_t m = coeffs_.size(); m-- > 0;) acc = acc * z + coeffs_[m];
    return acc * std::polar(1.0, -static_cast<double>(degree_) * x);
  }

  // Values at x0 + 2pi j / N, j = 0..N-1, via inverse FFT. Needs N >= 2n+1.
  std::vector<cplx> synthesize(std::size_t N, double x0 = 0.0) const {
    if (!is_power_of_two(N)) throw std::invalid_argument("synthesize: N must be a power of two");
    if (N < coeffs_.size()) throw std::invalid_argument("synthesize: N must be at least 2n+1");
    std::vector<cplx> bins(N, cplx(0.0));
    for (int k = -degree_; k <= degree_; ++k) {
      const cplx c = coeff(k) * std::polar(1.0, static_cast<double>(k) * x0);
      const std::size_t bin = static_cast<std::size_t>((k % static_cast<int>(N) + static_cast<int>(N)) %
                                                       static_cast<int>(N));
      bins[bin] += c;
    }
    fft_radix2(bins, +1);
    return bins;
  }

  TrigPolynomial truncated(int m) const {
    TrigPolynomial out(m);
    for (int k = -std::min(m, degree_); k <= std::min(m, degree_); ++k) out.at(k) = coeff(k);
    return out;
  }

  TrigPolynomial scaled(cplx a) const {
    TrigPolynomial out = *this;
    for (auto& c : out.coeffs_) c *= a;
    return out;
  }

  static TrigPolynomial sum(const std::vector<std::pair<cplx, TrigPolynomial>>& terms) {
    int n = 0;
    for (const auto& [a, t] : terms) {
      (void)a;
      n = std::max(n, t.degree());
    }
    TrigPolynomial out(n);
    for (const auto& [a, t] : terms)
      for (int k = -t.degree(); k <= t.degree(); ++k) out.at(k) += a * t.coeff(k);
    return out;
  }

  double max_abs_coeff() const {
    double m = 0;
    for (const auto& c : coeffs_) m = std::max(m, std::abs(c));
    return m;
  }

 private:
  int degree_;
  std::vector<cplx> coeffs_;
};

struct SampleGrid {
  std::size_t size = 0;
  std::vector<cplx> values;  // values at x_j = 2pi j / size
};

inline TrigPolynomial dirichlet_kernel(int n) {
  TrigPolynomial t(n);
  for (int k = -n; k <= n; ++k) t.at(k) = 1.0;
  return t;
}

inline TrigPolynomial fejer_kernel(int n) {
  TrigPolynomial t(n);
  for (int k = -n; k <= n; ++k) t.at(k) = 1.0 - std::abs(k) / static_cast<double>(n + 1);
  return t;
}

// Normalized square of the Fejer kernel: nonnegative, unit mean, degree 2m.
// The classical concentrated kernel; near-extremal for the different-metrics
// polynomial inequality.
inline TrigPolynomial jackson_kernel(int m) {
  const TrigPolynomial f = fejer_kernel(m);
  TrigPolynomial t(2 * m);
  for (int k = -2 * m; k <= 2 * m; ++k) {
    cplx acc(0.0);
    for (int j = -m; j <= m; ++j) acc += f.coeff(j) * f.coeff(k - j);
    t.at(k) = acc;
  }
  const cplx c0 = t.coeff(0);
  for (int k = -2 * m; k <= 2 * m; ++k) t.at(k) /= c0;
  return t;
}

// A 2pi-periodic function given by a total evaluator on [0, 2pi), plus
// whatever exact structure is known: a Fourier-coefficient rule, jump
// locations, a band-limited form, or a piecewise-linear form.
struct FunctionSpec {
  std::string kind = "anonymous";
  std::function<cplx(double)> evaluator;
  std::function<cplx(long)> fourier;            // exact rule, may be empty
  std::vector<double> breakpoints;              // sorted, in [0, 2pi)
  std::shared_ptr<const TrigPolynomial> poly;   // exact band-limited form
  std::shared_ptr<const PiecewiseLinear> pw;    // exact piecewise-linear form (real-valued)
  std::function<double(double, double)> closed_omega1;  // (h, p) -> omega_1(f,h)_p where known

  cplx operator()(double x) const { return evaluator(reduce_angle(x)); }
};

inline FunctionSpec make_poly_spec(TrigPolynomial t, std::string kind = "trig_poly") {
  FunctionSpec f;
  f.kind = std::move(kind);
  auto shared = std::make_shared<const TrigPolynomial>(std::move(t));
  f.poly = shared;
  f.evaluator = [shared](double x) { return shared->eval(x); };
  f.fourier = [shared](long k) {
    if (k < -shared->degree() || k > shared->degree()) return cplx(0.0);
    return shared->coeff(static_cast<int>(k));
  };
  return f;
}

inline FunctionSpec make_constant_spec(cplx c) {
  FunctionSpec f;
  f.kind = "constant";
  f.evaluator = [c](double) { return c; };
  f.fourier = [c](long k) { return k == 0 ? c : cplx(0.0); };
  if (c.imag() == 0.0) f.pw = std::make_shared<const PiecewiseLinear>(PiecewiseLinear::constant(c.real()));
  return f;
}

// g(x) = f(x - s).
inline FunctionSpec shift_spec(const FunctionSpec& f, double s) {
  FunctionSpec g;
  g.kind = f.kind;
  auto ev = f.evaluator;
  g.evaluator = [ev, s](double x) { return ev(reduce_angle(x - s)); };
  if (f.fourier) {
    auto rule = f.fourier;
    g.fourier = [rule, s](long k) { return rule(k) * std::polar(1.0, -static_cast<double>(k) * s); };
  }
  g.breakpoints.reserve(f.breakpoints.size());
  for (double b : f.breakpoints) g.breakpoints.push_back(reduce_angle(b + s));
  std::sort(g.breakpoints.begin(), g.breakpoints.end());
  if (f.poly) {
    TrigPolynomial t(f.poly->degree());
    for (int k = -t.degree(); k <= t.degree(); ++k)
      t.at(k) = f.poly->coeff(k) * std::polar(1.0, -static_cast<double>(k) * s);
    g.poly = std::make_shared<const TrigPolynomial>(std::move(t));
  }
  if (f.pw) g.pw = std::make_shared<const PiecewiseLinear>(shift_pw(*f.pw, s));
  return g;
}

// sum_i a_i f_i. Exact payloads survive when every term carries them.
inline FunctionSpec combine_specs(const std::vector<std::pair<cplx, FunctionSpec>>& terms,
                                  std::string kind = "combination") {
  if (terms.empty()) throw std::invalid_argument("combine_specs: nothing to combine");
  FunctionSpec g;
  g.kind = std::move(kind);

  auto shared_terms = std::make_shared<std::vector<std::pair<cplx, FunctionSpec>>>(terms);
  g.evaluator = [shared_terms](double x) {
    cplx acc(0.0);
    for (const auto& [a, f] : *shared_terms) acc += a * f.evaluator(reduce_angle(x));
    return acc;
  };

  bool all_fourier = true, all_poly = true, all_pw = true, real_coeffs = true;
  for (const auto& [a, f] : terms) {
    all_fourier = all_fourier && static_cast<bool>(f.fourier);
    all_poly = all_poly && static_cast<bool>(f.poly);
    all_pw = all_pw && static_cast<bool>(f.pw);
    real_coeffs = real_coeffs && std::abs(a.imag()) < 1e-15;
  }

  if (all_fourier) {
    g.fourier = [shared_terms](long k) {
      cplx acc(0.0);
      for (const auto& [a, f] : *shared_terms) acc += a * f.fourier(k);
      return acc;
    };
  }

  std::vector<double> bp;
  for (const auto& [a, f] : terms) {
    (void)a;
    bp.insert(bp.end(), f.breakpoints.begin(), f.breakpoints.end());
  }
  std::sort(bp.begin(), bp.end());
  for (double b : bp)
    if (g.breakpoints.empty() || b > g.breakpoints.back() + 1e-14) g.breakpoints.push_back(b);

  if (all_poly) {
    std::vector<std::pair<cplx, TrigPolynomial>> polys;
    polys.reserve(terms.size());
    for (const auto& [a, f] : terms) polys.emplace_back(a, *f.poly);
    g.poly = std::make_shared<const TrigPolynomial>(TrigPolynomial::sum(polys));
  }

  if (all_pw && real_coeffs) {
    std::size_t total_knots = 0;
    for (const auto& [a, f] : terms) {
      (void)a;
      total_knots += f.pw->arcs();
    }
    if (total_knots <= 2'000'000) {
      std::vector<std::pair<double, const PiecewiseLinear*>> pws;
      pws.reserve(terms.size());
      for (const auto& [a, f] : terms) pws.emplace_back(a.real(), f.pw.get());
      g.pw = std::make_shared<const PiecewiseLinear>(combine_pw(pws));
    }
  }
  return g;
}

inline FunctionSpec scale_spec(const FunctionSpec& f, cplx a) { return combine_specs({{a, f}}, f.kind); }

// --- sampling and analysis ---------------------------------------------------

inline SampleGrid sample(const FunctionSpec& f, std::size_t N) {
  if (!is_power_of_two(N) || N < 4)
    throw std::invalid_argument("sample: N must be a power of two, N >= 4");
  SampleGrid g;
  g.size = N;
  if (f.poly && N >= f.poly->coeffs().size()) {
    g.values = f.poly->synthesize(N);
    return g;
  }
  g.values.resize(N);
  for (std::size_t j = 0; j < N; ++j)
    g.values[j] = f.evaluator(two_pi * static_cast<double>(j) / static_cast<double>(N));
  return g;
}

// Discrete Fourier coefficients c_k = (1/N) sum_j values[j] e^{-ik x_j}, |k| <= n.
inline TrigPolynomial analyze(const SampleGrid& g, int n) {
  if (n < 0) throw std::invalid_argument("analyze: degree must be nonnegative");
  if (static_cast<std::size_t>(2 * n + 1) > g.size)
    throw std::invalid_argument("analyze: degree too large for grid (need 2n+1 <= N)");
  std::vector<cplx> bins = g.values;
  fft_radix2(bins, -1);
  TrigPolynomial t(n);
  const int N = static_cast<int>(g.size);
  for (int k = -n; k <= n; ++k) t.at(k) = bins[static_cast<std::size_t>((k % N + N) % N)] / static_cast<double>(N);
  return t;
}

// Fourier projection S_n f, the default starting candidate for best approximation.
inline TrigPolynomial partial_sum(const FunctionSpec& f, int n, std::size_t N) {
  if (f.poly) return f.poly->truncated(n);
  return analyze(sample(f, N), n);
}

// Grid-size policy: jumps get a dense fixed grid, polynomial work scales with degree.
inline std::size_t default_grid_size(const FunctionSpec& f, int n = 0) {
  if (!f.breakpoints.empty()) return 4096;
  return std::max<std::size_t>(512, next_power_of_two(static_cast<std::size_t>(8 * std::max(1, n))));
}

inline double sup_abs_on_grid(const FunctionSpec& f, std::size_t N = 1024) {
  double m = 0;
  for (std::size_t j = 0; j < N; ++j)
    m = std::max(m, std::abs(f.evaluator(two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(N))));
  return m;
}

inline cplx mean_estimate(const FunctionSpec& f, std::size_t N = 1024) {
  if (f.fourier) return f.fourier(0);
  cplx acc(0.0);
  for (std::size_t j = 0; j < N; ++j)
    acc += f.evaluator(two_pi * (static_cast<double>(j) + 0.5) / static_cast<double>(N));
  return acc / static_cast<double>(N);
}

}  // namespace fracsmooth
