#include "fracsmooth/fractional.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace fracsmooth;

namespace {

FunctionSpec sign_sin_pc() {
  FunctionSpec f;
  f.kind = "sign_sin_pc";
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
  return f;
}

uint64_t splitmix(uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
double uniform01(uint64_t& s) { return (splitmix(s) >> 11) * 0x1.0p-53; }

TrigPolynomial random_poly(int n, uint64_t seed) {
  TrigPolynomial t(n);
  for (int k = -n; k <= n; ++k)
    t.at(k) = cplx(2.0 * uniform01(seed) - 1.0, 2.0 * uniform01(seed) - 1.0) / (1.0 + std::abs(k));
  return t;
}

FunctionSpec sine_spec() {
  TrigPolynomial t(1);
  t.at(1) = cplx(0.0, -0.5);
  t.at(-1) = cplx(0.0, 0.5);
  return make_poly_spec(t, "sin");
}

FunctionSpec cosine_spec() {
  TrigPolynomial t(1);
  t.at(1) = 0.5;
  t.at(-1) = 0.5;
  return make_poly_spec(t, "cos");
}

}  // namespace

TEST_CASE("gbinom values and recurrence") {
  for (double a : {-1.3, 0.0, 0.5, 2.0, 7.7}) CHECK(gbinom(a, 0) == 1.0);
  CHECK(gbinom(2.0, 3) == 0.0);  // terminates for integer alpha
  CHECK(gbinom(0.5, 2) == Catch::Approx(-0.125).margin(1e-15));  // two recurrence steps by hand
  GBinomSignedSeq seq(0.5);
  for (long nu = 0; nu <= 10; ++nu) {
    CHECK(seq.value() == Catch::Approx(std::pow(-1.0, nu) * gbinom(0.5, nu)).margin(1e-15));
    seq.next();
  }
}

TEST_CASE("gbinom tail decay O(nu^{-alpha-1})") {
  for (double a : {0.3, 0.5, 1.5}) {
    GBinomSignedSeq seq(a);
    double sup = 0;
    for (long nu = 0; nu <= 100000; ++nu) {
      if (nu >= 10) sup = std::max(sup, std::abs(seq.value()) * std::pow(nu, a + 1.0));
      seq.next();
    }
    CHECK(sup < 1.0);
    CHECK(sup > 0.0);
  }
}

TEST_CASE("series multiplier matches the principal-branch closed form") {
  TruncationPolicy tight;
  tight.tail_tol = 1e-10;
  for (double alpha : {0.3, 0.5, 1.0, 1.7, 2.0}) {
    for (long k : {1L, 3L, 17L, 32L, -5L}) {
      for (double delta : {0.01, 0.37, 1.0, pi / 2, pi}) {
        const SeriesValue s = difference_multiplier_series(alpha, k, delta, tight);
        const cplx closed = difference_multiplier(alpha, k, delta);
        INFO("alpha=" << alpha << " k=" << k << " delta=" << delta << " terms=" << s.terms);
        CHECK(std::abs(s.value - closed) < s.tail_bound + 1e-9);
        CHECK(std::abs(s.value - closed) < 1e-9);
      }
    }
  }
  // delta = pi, k even: k delta is a multiple of 2pi, mapped to 0
  CHECK(std::abs(difference_multiplier(0.5, 2, pi)) == 0.0);
  CHECK(std::abs(difference_multiplier_series(0.5, 2, pi).value) == 0.0);
}

TEST_CASE("integer-order differences are exact finite sums") {
  const TrigPolynomial t = random_poly(5, 11);
  const FunctionSpec f = make_poly_spec(t);
  const double delta = 0.31;
  const FracDiffResult d = frac_difference(f, 1.0, delta);
  CHECK(d.terms == 2);
  CHECK(d.converged);
  for (double x : {0.1, 2.0, 4.4})
    CHECK(std::abs(d.fn.evaluator(x) - (t.eval(x) - t.eval(x - delta))) < 1e-12);
}

TEST_CASE("fractional difference of e^{ix}") {
  TrigPolynomial w(1);
  w.at(1) = 1.0;
  const FracDiffResult d = frac_difference(make_poly_spec(w), 0.5, pi);
  // closed form: (1 - e^{-i pi})^{1/2} e^{ix} = sqrt(2) e^{ix}
  for (double x : {0.0, 1.0, 3.0})
    CHECK(std::abs(d.fn.evaluator(x) - std::sqrt(2.0) * std::polar(1.0, x)) < 1e-12);
}

TEST_CASE("fractional difference annihilates constants") {
  QuadratureSpec q;
  q.base_size = 64;  // the difference is identically zero; keep the scan cheap
  for (double alpha : {0.5, 1.3, 2.7}) {
    for (double delta : {0.05, 1.0, -0.4}) {
      TruncationPolicy pol;
      pol.tail_tol = 1e-6;
      pol.max_terms = 3000;  // centering kills constants at any truncation depth
      const FracDiffResult d = frac_difference(make_constant_spec(cplx(2.0, -1.0)), alpha, delta, pol);
      for (double p : {0.5, 1.0})
        CHECK(lp_norm(d.fn, p, q) <= pol.tail_tol);
    }
  }
}

TEST_CASE("series evaluator path agrees with the diagonal route") {
  // strip the payloads so the pointwise truncated series is exercised
  FunctionSpec raw;
  raw.kind = "exp3_raw";
  raw.evaluator = [](double x) { return std::polar(1.0, 3.0 * x); };
  TruncationPolicy pol;
  pol.tail_tol = 1e-3;
  pol.max_terms = 60000;
  const double alpha = 0.6, delta = 0.4;
  const FracDiffResult d = frac_difference(raw, alpha, delta, pol);
  CHECK(d.converged);
  const cplx mult = difference_multiplier(alpha, 3, delta);
  for (double x : {0.2, 1.7}) {
    CHECK(std::abs(d.fn.evaluator(x) - mult * std::polar(1.0, 3.0 * x)) < 5.0 * pol.tail_tol);
  }
}

TEST_CASE("weyl operator on polynomials") {
  TrigPolynomial c0(0);
  c0.at(0) = 3.0;
  const TrigPolynomial z = weyl(c0, 0.5);
  CHECK(std::abs(z.coeff(0)) == 0.0);  // the sum defining f^(alpha) excludes k = 0

  const TrigPolynomial dsin = weyl(*sine_spec().poly, 1.0);
  CHECK(std::abs(dsin.coeff(1) - cplx(0.5)) < 1e-15);
  CHECK(std::abs(dsin.coeff(-1) - cplx(0.5)) < 1e-15);  // cos

  const TrigPolynomial hcos = weyl(*cosine_spec().poly, 0.5);
  for (double x : {0.0, 0.9, 2.5})
    CHECK(std::abs(hcos.eval(x) - std::cos(x + pi / 4.0)) < 1e-14);
}

TEST_CASE("weyl semigroup and inversion") {
  uint64_t seed = 2024;
  for (int trial = 0; trial < 4; ++trial) {
    const TrigPolynomial t = random_poly(8, splitmix(seed));
    for (double a : {-2.0, -0.7, 0.5, 1.0, 3.0}) {
      for (double b : {-1.0, 0.3, 2.0}) {
        const TrigPolynomial lhs = weyl(weyl(t, a), b);
        const TrigPolynomial rhs = weyl(t, a + b);
        for (int k = -8; k <= 8; ++k) CHECK(std::abs(lhs.coeff(k) - rhs.coeff(k)) < 1e-10);
      }
      const TrigPolynomial inv = weyl(weyl(t, a), -a);
      for (int k = -8; k <= 8; ++k) {
        const cplx expect = (k == 0) ? cplx(0.0) : t.coeff(k);
        CHECK(std::abs(inv.coeff(k) - expect) < 1e-10);
      }
    }
  }
}

TEST_CASE("quasi-norm boundedness of the difference") {
  const QuadratureSpec q;
  const double p = 0.5;
  // integer order on the square wave (exact route)
  {
    const FunctionSpec f = sign_sin_pc();
    double csum = 0;
    for (long nu = 0; nu <= 2; ++nu) csum += std::pow(std::abs(gbinom(2.0, nu)), p);
    const double bound = csum * std::pow(lp_norm(f, p, q), p);
    for (double delta : {0.1, 0.9, 2.5}) {
      const FracDiffResult d = frac_difference(f, 2.0, delta);
      CHECK(std::pow(lp_norm(d.fn, p, q), p) <= bound + 1e-9);
    }
  }
  // fractional order above 1/p - 1 on a polynomial (diagonal route)
  {
    const double alpha = 1.5;
    const FunctionSpec f = make_poly_spec(random_poly(6, 7));
    GBinomSignedSeq seq(alpha);
    double csum = 0;
    for (long nu = 0; nu <= 400000; ++nu) {
      csum += std::pow(std::abs(seq.value()), p);
      seq.next();
    }
    const double bound = csum * std::pow(lp_norm(f, p, q), p);
    for (double delta : {0.07, 1.2}) {
      const FracDiffResult d = frac_difference(f, alpha, delta);
      CHECK(std::pow(lp_norm(d.fn, p, q), p) <= bound + 1e-7);
    }
  }
}

TEST_CASE("weyl_of_spec integrates the square wave to the triangular primitive") {
  const FunctionSpec f = sign_sin_pc();
  const WeylOfSpecResult r = weyl_of_spec(f, -1.0, 512);
  // coefficients -2/(pi k^2) on odd k
  for (long k : {1L, 3L, 7L}) {
    CHECK(std::abs(r.fn.poly->coeff(k) - cplx(-2.0 / (pi * k * k))) < 1e-13);
    CHECK(std::abs(r.fn.poly->coeff(-k) - cplx(-2.0 / (pi * k * k))) < 1e-13);
  }
  // pointwise against the closed-form zero-mean primitive
  auto primitive = [](double x) { return (x < pi ? x : two_pi - x) - pi / 2.0; };
  for (double x : {0.5, 1.5, 2.5, 4.0, 5.5})
    CHECK(std::abs(r.fn.evaluator(x) - cplx(primitive(x))) < 5e-3);

  // zero-order operator returns the spectral content unchanged
  const WeylOfSpecResult id = weyl_of_spec(f, 0.0, 64);
  for (long k : {0L, 1L, 5L}) CHECK(std::abs(id.fn.poly->coeff(k) - f.fourier(k)) < 1e-14);

  // positive order without a rule is rejected
  FunctionSpec bare;
  bare.kind = "bare";
  bare.evaluator = [](double x) { return cplx(std::cos(x), 0.0); };
  CHECK_THROWS_AS(weyl_of_spec(bare, 0.5, 16), std::invalid_argument);
}

TEST_CASE("grunwald residual on polynomials and the square wave") {
  const QuadratureSpec q;
  // polynomial: Delta_h^alpha T / h^alpha -> weyl(T, alpha)
  {
    const TrigPolynomial t = random_poly(4, 3);
    const FunctionSpec f = make_poly_spec(t);
    const FunctionSpec g = make_poly_spec(weyl(t, 0.8));
    const std::vector<double> hs = {0.5, 0.25, pi / 16.0, 0.05, 0.01};
    const ResidualCurve c = grunwald_residual(f, g, 0.8, 0.5, hs, {}, q);
    const double gnorm = lp_norm(g, 0.5, q);
    CHECK(c.entries.back().second < 0.1 * gnorm);
    // residual at h = pi/(4n) already below half the derivative norm
    CHECK(c.entries[2].second < 0.5 * gnorm);
    for (std::size_t i = 0; i + 1 < c.entries.size(); ++i)
      CHECK(c.entries[i + 1].second < c.entries[i].second + 1e-12);
  }
  // square wave, alpha = 1: residual = 2 h / pi^2 at p = 1/2, constant 2/pi at p = 1
  {
    const FunctionSpec f = sign_sin_pc();
    const FunctionSpec zero = make_constant_spec(0.0);
    const std::vector<double> hs = {0.25, 0.125, 0.0625, 0.03125};
    const ResidualCurve half = grunwald_residual(f, zero, 1.0, 0.5, hs);
    for (const auto& [h, v] : half.entries)
      CHECK(v == Catch::Approx(2.0 * h / (pi * pi)).epsilon(1e-10));
    const ResidualCurve one = grunwald_residual(f, zero, 1.0, 1.0, hs);
    for (const auto& [h, v] : one.entries)
      CHECK(v == Catch::Approx(2.0 / pi).epsilon(1e-10));
  }
}
