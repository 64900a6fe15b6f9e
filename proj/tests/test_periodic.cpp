#include "fracsmooth/periodic.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <vector>

using namespace fracsmooth;

namespace {

// Independent oracle: plain O(n) summation of c_k e^{ikx}, no Horner, no FFT.
cplx direct_sum(const TrigPolynomial& t, double x) {
  cplx acc(0.0);
  for (int k = -t.degree(); k <= t.degree(); ++k)
    acc += t.coeff(k) * std::polar(1.0, static_cast<double>(k) * x);
  return acc;
}

TrigPolynomial sine_poly() {
  TrigPolynomial t(1);
  t.at(1) = cplx(0.0, -0.5);
  t.at(-1) = cplx(0.0, 0.5);
  return t;
}

FunctionSpec sign_sin_evaluator_only() {
  // piecewise definition; sign(0) = 0 at the jumps themselves
  FunctionSpec f;
  f.kind = "sign_sin_raw";
  f.evaluator = [](double x) {
    if (x == 0.0 || x == pi) return cplx(0.0);
    return cplx(x < pi ? 1.0 : -1.0, 0.0);
  };
  f.breakpoints = {0.0, pi};
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

}  // namespace

TEST_CASE("eval matches direct summation") {
  TrigPolynomial c0(0);
  c0.at(0) = 1.0;
  CHECK(std::abs(c0.eval(0.37) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(c0.eval(5.1) - cplx(1.0)) < 1e-15);

  TrigPolynomial cosine(1);
  cosine.at(1) = 0.5;
  cosine.at(-1) = 0.5;
  CHECK(std::abs(cosine.eval(0.0) - cplx(1.0)) < 1e-15);

  // frozen from the direct-summation oracle: sin(pi/2) = 1
  const TrigPolynomial s = sine_poly();
  CHECK(std::abs(s.eval(pi / 2) - cplx(1.0)) < 1e-14);
  CHECK(std::abs(s.eval(pi / 2) - direct_sum(s, pi / 2)) < 1e-14);

  uint64_t seed = 12345;
  for (int trial = 0; trial < 20; ++trial) {
    const TrigPolynomial t = random_poly(8, splitmix(seed));
    const double x = two_pi * uniform01(seed);
    CHECK(std::abs(t.eval(x) - direct_sum(t, x)) < 1e-12);
  }
}

TEST_CASE("sample hits the stated grid values") {
  FunctionSpec one = make_constant_spec(1.0);
  SampleGrid g = sample(one, 8);
  REQUIRE(g.values.size() == 8);
  for (const auto& v : g.values) CHECK(std::abs(v - cplx(1.0)) < 1e-15);

  // sign sin at N = 4: the evaluator's own convention at the jumps is kept
  SampleGrid gs = sample(sign_sin_evaluator_only(), 4);
  CHECK(std::abs(gs.values[0]) < 1e-15);
  CHECK(std::abs(gs.values[1] - cplx(1.0)) < 1e-15);
  CHECK(std::abs(gs.values[2]) < 1e-12);
  CHECK(std::abs(gs.values[3] - cplx(-1.0)) < 1e-15);

  TrigPolynomial w(1);
  w.at(1) = 1.0;
  SampleGrid ge = sample(make_poly_spec(w), 8);
  for (int j = 0; j < 8; ++j)
    CHECK(std::abs(ge.values[j] - std::polar(1.0, two_pi * j / 8.0)) < 1e-13);

  CHECK_THROWS_AS(sample(one, 6), std::invalid_argument);
  CHECK_THROWS_AS(sample(one, 2), std::invalid_argument);
}

TEST_CASE("analyze recovers coefficients") {
  TrigPolynomial cosine(2);
  cosine.at(1) = 0.5;
  cosine.at(-1) = 0.5;
  const TrigPolynomial got = analyze(sample(make_poly_spec(cosine), 16), 2);
  CHECK(std::abs(got.coeff(1) - cplx(0.5)) < 1e-13);
  CHECK(std::abs(got.coeff(-1) - cplx(0.5)) < 1e-13);
  CHECK(std::abs(got.coeff(0)) < 1e-13);
  CHECK(std::abs(got.coeff(2)) < 1e-13);

  CHECK_THROWS_AS(analyze(sample(make_poly_spec(cosine), 16), 8), std::invalid_argument);
}

TEST_CASE("round trip is Nyquist-exact") {
  uint64_t seed = 777;
  for (int n : {1, 3, 8, 17}) {
    const TrigPolynomial t = random_poly(n, splitmix(seed));
    const std::size_t N = next_power_of_two(static_cast<std::size_t>(2 * n + 2));
    const TrigPolynomial back = analyze(sample(make_poly_spec(t), N), n);
    for (int k = -n; k <= n; ++k) CHECK(std::abs(back.coeff(k) - t.coeff(k)) < 1e-10);
  }
}

TEST_CASE("analyze is linear and conjugate-symmetric on real samples") {
  uint64_t seed = 31;
  const TrigPolynomial t1 = random_poly(5, splitmix(seed));
  const TrigPolynomial t2 = random_poly(5, splitmix(seed));
  SampleGrid g1 = sample(make_poly_spec(t1), 32);
  SampleGrid g2 = sample(make_poly_spec(t2), 32);
  const cplx a(1.25, -0.5), b(-0.75, 2.0);
  SampleGrid mix;
  mix.size = 32;
  mix.values.resize(32);
  for (std::size_t j = 0; j < 32; ++j) mix.values[j] = a * g1.values[j] + b * g2.values[j];
  const TrigPolynomial am = analyze(mix, 5), a1 = analyze(g1, 5), a2 = analyze(g2, 5);
  for (int k = -5; k <= 5; ++k)
    CHECK(std::abs(am.coeff(k) - (a * a1.coeff(k) + b * a2.coeff(k))) < 1e-13);

  SampleGrid real_grid;
  real_grid.size = 64;
  real_grid.values.resize(64);
  for (std::size_t j = 0; j < 64; ++j) {
    uint64_t s = seed + j;
    real_grid.values[j] = cplx(2.0 * uniform01(s) - 1.0, 0.0);
  }
  const TrigPolynomial ar = analyze(real_grid, 10);
  for (int k = 1; k <= 10; ++k)
    CHECK(std::abs(ar.coeff(-k) - std::conj(ar.coeff(k))) < 1e-12);
}

TEST_CASE("square wave spectrum from dense sampling") {
  // analytic Fourier integral of the square wave: c_{+-1} = -+ 2i/pi
  const TrigPolynomial c = analyze(sample(sign_sin_evaluator_only(), 4096), 1);
  CHECK(std::abs(c.coeff(1) - cplx(0.0, -2.0 / pi)) < 1e-4);
  CHECK(std::abs(c.coeff(-1) - cplx(0.0, 2.0 / pi)) < 1e-4);
}

TEST_CASE("partial_sum") {
  const TrigPolynomial t = random_poly(4, 99);
  const TrigPolynomial s = partial_sum(make_poly_spec(t), 4, 64);
  for (int k = -4; k <= 4; ++k) CHECK(std::abs(s.coeff(k) - t.coeff(k)) < 1e-15);

  const TrigPolynomial s1 = partial_sum(sign_sin_evaluator_only(), 1, 4096);
  // (4/pi) sin x as a real polynomial
  CHECK(std::abs(s1.coeff(1) - cplx(0.0, -2.0 / pi)) < 1e-4);
  CHECK(std::abs(s1.coeff(-1) - cplx(0.0, 2.0 / pi)) < 1e-4);
  CHECK(std::abs(s1.coeff(0)) < 1e-12);

  const TrigPolynomial z = partial_sum(make_constant_spec(0.0), 3, 64);
  for (int k = -3; k <= 3; ++k) CHECK(std::abs(z.coeff(k)) < 1e-15);
}

TEST_CASE("shift and combine preserve exact payloads") {
  const TrigPolynomial t = random_poly(6, 5);
  FunctionSpec f = make_poly_spec(t);
  FunctionSpec g = shift_spec(f, 0.7);
  for (double x : {0.0, 1.0, 3.5, 6.0})
    CHECK(std::abs(g.evaluator(x) - t.eval(reduce_angle(x - 0.7))) < 1e-12);
  REQUIRE(g.poly);
  CHECK(std::abs(g.poly->eval(1.3) - t.eval(1.3 - 0.7)) < 1e-12);

  FunctionSpec sum = combine_specs({{cplx(2.0), f}, {cplx(-1.0), g}});
  REQUIRE(sum.poly);
  for (double x : {0.2, 2.2, 5.9})
    CHECK(std::abs(sum.evaluator(x) - (2.0 * t.eval(x) - t.eval(x - 0.7))) < 1e-12);
}
