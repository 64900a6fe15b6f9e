#pragma once

// The FunctionSpec wire schema used by the CLI and by sweep configs:
// a tagged record {"kind": ..., ...} covering every corpus construction.

#include <json.hpp>
#include <string>

#include "fracsmooth/corpus.hpp"

namespace fracsmooth {

inline FunctionSpec parse_function(const nlohmann::json& j);

namespace detail {

inline TrigPolynomial parse_coeffs(const nlohmann::json& arr) {
  if (!arr.is_array() || arr.size() % 2 == 0)
    throw std::invalid_argument("trig_poly: coeffs must be an odd-length array of [re, im] pairs");
  const int n = static_cast<int>(arr.size() / 2);
  TrigPolynomial t(n);
  for (int k = -n; k <= n; ++k) {
    const auto& e = arr[static_cast<std::size_t>(k + n)];
    if (e.is_number()) {
      t.at(k) = cplx(e.get<double>(), 0.0);
    } else if (e.is_array() && e.size() == 2) {
      t.at(k) = cplx(e[0].get<double>(), e[1].get<double>());
    } else {
      throw std::invalid_argument("trig_poly: coefficient entries are numbers or [re, im] pairs");
    }
  }
  return t;
}

}  // namespace detail

inline FunctionSpec parse_function(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind"))
    throw std::invalid_argument("function spec: expected an object with a \"kind\" tag");
  const std::string kind = j.at("kind").get<std::string>();

  if (kind == "sign_sin") return make_sign_sin();
  if (kind == "constant") {
    const auto& v = j.at("value");
    if (v.is_array()) return make_constant_spec(cplx(v[0].get<double>(), v[1].get<double>()));
    return make_constant_spec(cplx(v.get<double>(), 0.0));
  }
  if (kind == "jump") {
    std::vector<Jump> jumps;
    if (j.contains("jumps"))
      for (const auto& e : j.at("jumps")) jumps.push_back({e.at("x").get<double>(), e.at("d").get<double>()});
    return make_jump(j.value("d0", 0.0), std::move(jumps));
  }
  if (kind == "trig_poly") return make_poly_spec(detail::parse_coeffs(j.at("coeffs")));
  if (kind == "f_r") return make_f_r(j.at("r").get<int>());
  if (kind == "g_nr") return make_g_nr(j.at("n").get<int>(), j.at("r").get<int>());
  if (kind == "phi_nr") return make_phi_nr(j.at("n").get<int>(), j.at("r").get<int>());
  if (kind == "krotov") {
    const FunctionSpec base = j.contains("of") ? parse_function(j.at("of")) : make_sign_sin();
    KrotovResult kr = make_krotov_primitive(base, j.at("beta").get<double>(), j.value("K", 2048));
    return kr.fn;
  }
  if (kind == "frac_integral") {
    const FunctionSpec base = parse_function(j.at("of"));
    const double alpha = j.at("alpha").get<double>();
    WeylOfSpecResult w = weyl_of_spec(base, -alpha, j.value("K", 2048));
    w.fn.kind = "frac_integral(alpha=" + std::to_string(alpha) + ",of=" + base.kind + ")";
    return w.fn;
  }
  if (kind == "dirichlet" || kind == "fejer" || kind == "jackson")
    return make_smooth(kind, j.at("n").get<int>());
  if (kind == "exp") return make_smooth("exp", j.at("k").get<int>());
  if (kind == "random_poly")
    return make_smooth("random_poly", j.at("n").get<int>(), j.value("seed", 0ULL));

  throw std::invalid_argument("function spec: unknown kind \"" + kind + "\"");
}

inline FunctionSpec parse_function(const std::string& text) {
  return parse_function(nlohmann::json::parse(text));
}

}  // namespace fracsmooth
