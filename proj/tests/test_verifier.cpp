#include "fracsmooth/verifier.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

using namespace fracsmooth;

TEST_CASE("fit_rate") {
  std::vector<std::pair<double, double>> quad;
  for (double x : {1.0, 2.0, 4.0, 8.0, 16.0}) quad.emplace_back(x, x * x);
  const SlopeFit f = fit_rate(quad);
  CHECK(f.slope == Catch::Approx(2.0).margin(1e-12));
  CHECK(f.r2 == Catch::Approx(1.0).margin(1e-12));

  std::vector<std::pair<double, double>> flat;
  for (double x : {1.0, 3.0, 9.0, 27.0}) flat.emplace_back(x, 5.0);
  CHECK(fit_rate(flat).slope == Catch::Approx(0.0).margin(1e-12));

  // y = x^{-2} with 5% multiplicative noise, seed 1
  SplitMix64 rng(1);
  std::vector<std::pair<double, double>> noisy;
  for (double x : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0, 256.0})
    noisy.emplace_back(x, std::pow(x, -2.0) * (1.0 + 0.05 * (2.0 * rng.uniform01() - 1.0)));
  CHECK(fit_rate(noisy).slope == Catch::Approx(-2.0).margin(0.1));

  CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {2.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(fit_rate({{1.0, 1.0}, {2.0, -1.0}, {3.0, 1.0}, {4.0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("registry enumerates and gates") {
  CHECK(registry_ids().size() == 21);
  CHECK(registry_find("TH-DIRECT") != nullptr);
  CHECK(registry_find("NOPE") == nullptr);

  VerifierEnv env;
  env.horizon = 16;
  // TH-INVERSE requires alpha in N or beyond 1/p-1
  TheoremCase bad;
  bad.id = "TH-INVERSE";
  bad.f = make_sign_sin();
  bad.f_alpha = make_constant_spec(0.0);
  bad.p = 0.5;
  bad.alpha = 0.5;
  bad.n = 4;
  CHECK_THROWS_AS(check_inequality(bad, env), std::invalid_argument);

  // missing derivative companion
  TheoremCase nod;
  nod.id = "TH-DIRECT";
  nod.f = make_sign_sin();
  nod.p = 0.5;
  nod.alpha = 1.0;
  nod.n = 4;
  CHECK_THROWS_AS(check_inequality(nod, env), std::invalid_argument);

  // p out of range
  TheoremCase badp;
  badp.id = "JACKSON";
  badp.f = make_sign_sin();
  badp.p = 1.5;
  badp.beta = 1.0;
  badp.n = 4;
  CHECK_THROWS_AS(check_inequality(badp, env), std::invalid_argument);
}

TEST_CASE("degenerate ratio conventions") {
  VerifierEnv env;
  env.horizon = 10;
  env.solver.restarts = 2;
  // polynomial input: both sides of TH-DIRECT vanish for n >= degree, ratio 0
  const FunctionSpec t = make_smooth("random_poly", 3, 1);
  TheoremCase c;
  c.id = "TH-DIRECT";
  c.f = t;
  c.f_alpha = make_poly_spec(weyl(*t.poly, 1.0), "deriv_rp3");
  c.p = 0.5;
  c.alpha = 1.0;
  c.n = 5;
  const InequalityReport r = check_inequality(c, env);
  CHECK(r.lhs < 1e-8);
  CHECK(r.ratio == 0.0);

  // constant input for MOD-LAMBDA: 0/0 handled as ratio 0
  TheoremCase cm;
  cm.id = "MOD-LAMBDA";
  cm.f = make_constant_spec(1.0);
  cm.p = 0.5;
  cm.beta = 1.0;
  cm.h = 0.01;
  cm.lambda = 2.0;
  const InequalityReport rm = check_inequality(cm, env);
  CHECK(rm.lhs < 1e-12);
  CHECK(rm.ratio == 0.0);
}

TEST_CASE("JACKSON single case on the square wave") {
  VerifierEnv env;
  env.horizon = 20;
  env.solver.restarts = 6;
  env.solver.seed = 5;
  TheoremCase c;
  c.id = "JACKSON";
  c.f = make_sign_sin();
  c.p = 0.5;
  c.beta = 3.0;
  c.n = 16;
  const InequalityReport r = check_inequality(c, env);
  CHECK(r.lhs > 0);
  CHECK(r.rhs > 0);
  CHECK(std::isfinite(r.ratio));
  // the empirical constant is recorded; it is moderate, not astronomically off
  CHECK(r.ratio > 0.01);
  CHECK(r.ratio < 100.0);
}

TEST_CASE("sweep mechanics: MOD-LAMBDA and NIKOLSKII") {
  VerifierEnv env;
  env.solver.seed = 9;
  {
    const SweepResult s = sweep("MOD-LAMBDA", env);
    CHECK(!s.reports.empty());
    CHECK(s.summary.max_ratio <= 1.0 + 1e-9);  // the scaling constant is below one here
    CHECK(s.summary.stability < 2.0);
    // deterministic ordering: keys sorted
    for (std::size_t i = 0; i + 1 < s.reports.size(); ++i) {
      CHECK(s.reports[i].id == "MOD-LAMBDA");
    }
  }
  {
    const SweepResult s = sweep("NIKOLSKII", env);
    CHECK(s.summary.min_ratio > 0.0);
    CHECK(s.summary.stability < 2.0);
    CHECK_FALSE(s.summary.any_flagged);
  }
  CHECK_THROWS_AS(sweep_cases("JACKSON", std::vector<TheoremCase>{}, env), std::invalid_argument);
}

TEST_CASE("CSV and summary serialization are deterministic") {
  VerifierEnv env;
  env.solver.seed = 123;
  const SweepResult a = sweep("GRUNWALD-ZERO", env);
  const SweepResult b = sweep("GRUNWALD-ZERO", env);
  const std::string csv_a = reports_to_csv(a.reports);
  const std::string csv_b = reports_to_csv(b.reports);
  CHECK(csv_a == csv_b);
  CHECK(csv_a.substr(0, csv_a.find('\n')) ==
        "theorem_id,function_kind,p,alpha,beta,n,h,lhs,rhs,ratio,status,flags,seed");
  CHECK(summary_to_json(a.summary).dump() == summary_to_json(b.summary).dump());

  // the square-wave residual slopes: 1 at p = 1/2, 0 at p = 1
  double s_half = 0, s_one = 0;
  for (const auto& [label, fit] : a.summary.extra_fits) {
    if (label == "p=0.5") s_half = fit.slope;
    if (label == "p=1") s_one = fit.slope;
  }
  CHECK(s_half == Catch::Approx(1.0).margin(0.05));
  CHECK(s_one == Catch::Approx(0.0).margin(0.05));
  // ratios against the closed law are unity
  for (const auto& r : a.reports) CHECK(r.ratio == Catch::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("KROTOV-SLOPE sweep fits the cubic law") {
  VerifierEnv env;
  env.solver.seed = 3;
  const SweepResult s = sweep("KROTOV-SLOPE", env);
  REQUIRE(s.summary.has_fit);
  CHECK(s.summary.fit.slope == Catch::Approx(3.0).margin(0.1));
  CHECK(s.summary.fit.r2 > 0.999);
}
