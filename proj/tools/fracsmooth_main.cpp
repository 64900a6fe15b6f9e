// Command-line front end: parse a config, dispatch to the library, and emit
// CSV/JSON artifacts. Exit code 0 on success, 1 on usage errors, 2 when
// numerical flags were raised (results are still written).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "fracsmooth/fracsmooth.hpp"
#include "fracsmooth/function_json.hpp"

using namespace fracsmooth;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  int grid_size = 0;    // 0 = quadrature default
  int restarts = 0;     // 0 = solver default
  int horizon = 64;
  std::string config_path;
  json config = json::object();
};

void load_config(GlobalOpts& g) {
  if (g.config_path.empty()) return;
  std::ifstream in(g.config_path);
  if (!in) throw std::runtime_error("cannot open config file: " + g.config_path);
  in >> g.config;
}

// config supplies defaults; explicitly-passed flags already sit in the fieldsial
VerifierEnv make_env(const GlobalOpts& g, bool seed_given, bool jobs_given, bool grid_given,
                     bool restarts_given) {
  VerifierEnv env;
  const json& c = g.config;
  if (c.contains("quadrature")) {
    const json& q = c["quadrature"];
    env.quad.base_size = q.value("base_size", env.quad.base_size);
    env.quad.tol = q.value("tol", env.quad.tol);
    env.quad.refinement_levels = q.value("refinement_levels", env.quad.refinement_levels);
    env.quad.split_at_breakpoints = q.value("split_at_breakpoints", env.quad.split_at_breakpoints);
  }
  if (c.contains("solver")) {
    const json& s = c["solver"];
    env.solver.restarts = s.value("restarts", env.solver.restarts);
    env.solver.max_iters = s.value("max_iters", env.solver.max_iters);
    env.solver.step_tol = s.value("step_tol", env.solver.step_tol);
    if (s.contains("eps_schedule")) env.solver.eps_schedule = s["eps_schedule"].get<std::vector<double>>();
  }
  env.solver.seed = c.value("seed", env.solver.seed);
  env.horizon = c.value("horizon", g.horizon);
  env.jobs = c.value("jobs", 0u);
  if (seed_given || !c.contains("seed")) env.solver.seed = g.seed;
  if (jobs_given || !c.contains("jobs")) env.jobs = g.jobs;
  if (grid_given || (g.grid_size > 0 && !c.contains("quadrature"))) {
    if (g.grid_size > 0) env.quad.base_size = g.grid_size;
  }
  if (restarts_given || (g.restarts > 0 && !c.contains("solver"))) {
    if (g.restarts > 0) env.solver.restarts = g.restarts;
  }
  env.solver.jobs = env.jobs;
  return env;
}

FunctionSpec function_from(const GlobalOpts& g, const std::string& inline_spec) {
  if (!inline_spec.empty()) return parse_function(inline_spec);
  if (g.config.contains("function")) return parse_function(g.config["function"]);
  throw std::runtime_error("no function given: pass --f or put \"function\" in the config");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string format_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int edit_distance(const std::string& a, const std::string& b) {
  std::vector<int> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = static_cast<int>(j);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = static_cast<int>(i);
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const int sub = prev[j - 1] + (std::toupper(a[i - 1]) == std::toupper(b[j - 1]) ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string check_registry_id(const std::string& id) {
  if (registry_find(id)) return {};
  std::vector<std::pair<int, std::string>> dist;
  for (const auto& known : registry_ids()) dist.emplace_back(edit_distance(id, known), known);
  std::sort(dist.begin(), dist.end());
  std::string msg = "unknown theorem id \"" + id + "\"; closest matches:";
  for (std::size_t i = 0; i < std::min<std::size_t>(3, dist.size()); ++i) msg += " " + dist[i].second;
  return msg;
}

TheoremCase case_from_json(const std::string& id, const json& e) {
  TheoremCase c;
  c.id = id;
  c.f = parse_function(e.at("function"));
  if (e.contains("derivative")) c.f_alpha = parse_function(e.at("derivative"));
  c.p = e.value("p", 0.5);
  c.alpha = e.value("alpha", 0.0);
  c.beta = e.value("beta", 0.0);
  c.n = e.value("n", 0);
  c.h = e.value("h", 0.0);
  c.lambda = e.value("lambda", 0.0);
  c.q = e.value("q", 0.0);
  c.r = e.value("r", 0);
  return c;
}

// minimal RFC-4180-style reader for the artifacts this tool writes
std::vector<std::map<std::string, std::string>> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty csv: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  std::vector<std::map<std::string, std::string>> rows;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    std::map<std::string, std::string> row;
    std::size_t i = 0;
    while (std::getline(ss, cell, ',')) {
      if (i < header.size()) row[header[i]] = cell;
      ++i;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracsmooth: a numerical laboratory for fractional smoothness in L_p, 0 < p < oo"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print help");  // frees -h/--h for the step option

  GlobalOpts g;
  auto* seed_opt = app.add_option("--seed", g.seed, "global random seed")->capture_default_str();
  auto* jobs_opt = app.add_option("--jobs", g.jobs, "worker thread cap (0 = auto)");
  auto* grid_opt = app.add_option("--grid-size", g.grid_size, "quadrature base panel count");
  auto* restarts_opt = app.add_option("--restarts", g.restarts, "solver restarts");
  app.add_option("--config", g.config_path, "JSON config file; explicit flags override it");
  app.add_option("--horizon", g.horizon, "E-table depth for sweeps")->capture_default_str();
  app.fallthrough();

  {
    std::string ids = "theorem registry:";
    for (const auto& id : registry_ids()) ids += "\n  " + id;
    app.footer(ids);
  }

  std::string f_spec, out_path, summary_path, format = "csv", case_id, in_path, xcol = "n",
              ycol = "lhs";
  double p = 0.5, alpha = 1.0, h = 0.0, h_min = 0.0, h_max = 0.0;
  int n = 0, K = 0, points = 8, scan = 33;
  bool table = false;
  std::vector<double> window;

  auto* norm = app.add_subcommand("norm", "L_p quasi-norm of a function");
  norm->add_option("--f", f_spec, "function spec (JSON)");
  norm->add_option("--p", p, "exponent")->required();
  norm->add_option("--out", out_path);
  norm->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* fracdiff = app.add_subcommand("fracdiff", "fractional difference and its quasi-norm");
  fracdiff->add_option("--f", f_spec);
  fracdiff->add_option("--alpha", alpha)->required();
  fracdiff->add_option("--h", h, "step delta")->required();
  fracdiff->add_option("--p", p);
  fracdiff->add_option("--grid-size", g.grid_size);
  fracdiff->add_option("--out", out_path, "write sampled values (x, re, im)");

  auto* weylcmd = app.add_subcommand("weyl", "Weyl derivative / fractional integral coefficients");
  weylcmd->add_option("--f", f_spec);
  weylcmd->add_option("--alpha", alpha)->required();
  weylcmd->add_option("--K", K, "spectral cutoff (default: input bandwidth or 64)");
  weylcmd->add_option("--out", out_path);
  weylcmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* modcmd = app.add_subcommand("modulus", "fractional modulus of smoothness");
  modcmd->add_option("--f", f_spec);
  modcmd->add_option("--alpha", alpha)->required();
  modcmd->add_option("--p", p)->required();
  modcmd->add_option("--h", h, "single step");
  modcmd->add_option("--h-min", h_min);
  modcmd->add_option("--h-max", h_max);
  modcmd->add_option("--points", points, "geometric curve points");
  modcmd->add_option("--scan", scan);
  modcmd->add_option("--out", out_path);

  auto* best = app.add_subcommand("bestapprox", "best trigonometric approximation");
  best->add_option("--f", f_spec);
  best->add_option("--n", n, "degree")->required();
  best->add_option("--p", p)->required();
  best->add_flag("--table", table, "full E-table 0..n");
  best->add_option("--out", out_path);
  best->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* real = app.add_subcommand("realization", "realization functional");
  real->add_option("--f", f_spec);
  real->add_option("--alpha", alpha)->required();
  real->add_option("--h", h, "delta")->required();
  real->add_option("--p", p)->required();
  real->add_option("--out", out_path);

  auto* verify = app.add_subcommand("verify", "check one theorem id over configured cases");
  verify->add_option("--case", case_id)->required();
  verify->add_option("--out", out_path);
  verify->add_option("--summary", summary_path);

  auto* sweepcmd = app.add_subcommand("sweep", "run a theorem id over its default grid");
  sweepcmd->add_option("--case", case_id)->required();
  sweepcmd->add_option("--out", out_path);
  sweepcmd->add_option("--summary", summary_path);

  auto* slope = app.add_subcommand("slope", "log-log slope fit over a CSV column pair");
  slope->add_option("--in", in_path)->required();
  slope->add_option("--x", xcol)->capture_default_str();
  slope->add_option("--y", ycol)->capture_default_str();
  slope->add_option("--window", window, "abscissa window lo hi")->expected(2);
  slope->add_option("--out", out_path);

  for (CLI::App* sub : app.get_subcommands({})) sub->set_help_flag("--help", "print help");

  CLI11_PARSE(app, argc, argv);

  try {
    load_config(g);
    const VerifierEnv env = make_env(g, seed_opt->count() > 0, jobs_opt->count() > 0,
                                     grid_opt->count() > 0, restarts_opt->count() > 0);
    bool flagged = false;

    if (app.got_subcommand(norm)) {
      const FunctionSpec f = function_from(g, f_spec);
      const LpResult r = lp_norm_detail(f, p, env.quad);
      flagged = !(r.converged || r.exact);
      std::printf("%s\n", format_value(r.value).c_str());
      if (!out_path.empty()) {
        if (format == "json") {
          ordered_json j;
          j["kind"] = f.kind;
          j["p"] = p;
          j["value"] = r.value;
          j["error_estimate"] = r.error_estimate;
          j["converged"] = r.converged || r.exact;
          write_file(out_path, j.dump(2) + "\n");
        } else {
          write_file(out_path, "p,value,error_estimate,converged\n" + format_value(p) + "," +
                                   format_value(r.value) + "," + format_value(r.error_estimate) +
                                   "," + (r.converged || r.exact ? "1" : "0") + "\n");
        }
      }
    } else if (app.got_subcommand(fracdiff)) {
      const FunctionSpec f = function_from(g, f_spec);
      const FracDiffResult d = frac_difference(f, alpha, h, env.trunc);
      flagged = !d.converged;
      const LpResult r = lp_norm_detail(d.fn, p, env.quad);
      flagged = flagged || !(r.converged || r.exact);
      std::printf("norm=%s terms=%ld tail_bound=%s\n", format_value(r.value).c_str(), d.terms,
                  format_value(d.tail_bound).c_str());
      if (!out_path.empty()) {
        const std::size_t N = 1024;
        std::string csv = "x,re,im\n";
        for (std::size_t j = 0; j < N; ++j) {
          const double x = two_pi * static_cast<double>(j) / static_cast<double>(N);
          const cplx v = d.fn.evaluator(x);
          csv += format_value(x) + "," + format_value(v.real()) + "," + format_value(v.imag()) + "\n";
        }
        write_file(out_path, csv);
      }
    } else if (app.got_subcommand(weylcmd)) {
      const FunctionSpec f = function_from(g, f_spec);
      const int cutoff = K > 0 ? K : (f.poly ? f.poly->degree() : 64);
      const WeylOfSpecResult w = weyl_of_spec(f, alpha, cutoff);
      flagged = !w.cutoff_ok;
      std::printf("degree=%d coeff_tail_l1=%s\n", w.fn.poly->degree(),
                  format_value(w.coeff_tail_l1).c_str());
      if (!out_path.empty()) {
        if (format == "json") {
          ordered_json arr = ordered_json::array();
          for (int k = -w.fn.poly->degree(); k <= w.fn.poly->degree(); ++k)
            arr.push_back({{"k", k},
                           {"re", w.fn.poly->coeff(k).real()},
                           {"im", w.fn.poly->coeff(k).imag()}});
          write_file(out_path, arr.dump(2) + "\n");
        } else {
          std::string csv = "k,re,im\n";
          for (int k = -w.fn.poly->degree(); k <= w.fn.poly->degree(); ++k)
            csv += std::to_string(k) + "," + format_value(w.fn.poly->coeff(k).real()) + "," +
                   format_value(w.fn.poly->coeff(k).imag()) + "\n";
          write_file(out_path, csv);
        }
      }
    } else if (app.got_subcommand(modcmd)) {
      const FunctionSpec f = function_from(g, f_spec);
      if (h_min > 0 && h_max > h_min) {
        std::vector<double> hs;
        for (int i = 0; i < points; ++i)
          hs.push_back(h_min * std::pow(h_max / h_min, static_cast<double>(i) / (points - 1)));
        const ModulusCurve c = modulus_curve(f, alpha, p, hs, env.quad, scan, env.trunc);
        flagged = !c.all_converged;
        std::string csv;
        curve_to_csv(c, csv);
        if (!out_path.empty()) write_file(out_path, csv);
        std::printf("%s\n", format_value(c.entries.back().second).c_str());
      } else {
        if (!(h > 0)) throw std::runtime_error("modulus: pass --h or --h-min/--h-max");
        const ModulusDetail d = modulus_detail(f, alpha, h, p, env.quad, scan, env.trunc);
        flagged = !d.all_converged;
        std::printf("%s\n", format_value(d.value).c_str());
        if (!out_path.empty())
          write_file(out_path, "h,value\n" + format_value(h) + "," + format_value(d.value) + "\n");
      }
    } else if (app.got_subcommand(best)) {
      const FunctionSpec f = function_from(g, f_spec);
      SolverOptions opts = env.solver;
      if (table) {
        std::vector<TrigPolynomial> polys;
        const ETable t = best_approx_table(f, n, p, opts, env.quad, &polys);
        std::string csv;
        etable_to_csv(t, csv);
        if (!out_path.empty()) write_file(out_path, csv);
        std::printf("E_%d=%s\n", n, format_value(t.values.back()).c_str());
      } else {
        const BestApproxResult r = best_approx(f, n, p, opts, env.quad);
        flagged = r.status == SolveStatus::stagnated;
        std::printf("value=%s status=%s\n", format_value(r.value).c_str(), to_string(r.status));
        if (!out_path.empty()) {
          if (format == "json") {
            ordered_json j;
            j["value"] = r.value;
            j["status"] = to_string(r.status);
            ordered_json arr = ordered_json::array();
            for (int k = -n; k <= n; ++k)
              arr.push_back({{"k", k},
                             {"re", r.polynomial.coeff(k).real()},
                             {"im", r.polynomial.coeff(k).imag()}});
            j["coeffs"] = arr;
            write_file(out_path, j.dump(2) + "\n");
          } else {
            std::string csv = "k,re,im\n";
            for (int k = -n; k <= n; ++k)
              csv += std::to_string(k) + "," + format_value(r.polynomial.coeff(k).real()) + "," +
                     format_value(r.polynomial.coeff(k).imag()) + "\n";
            write_file(out_path, csv);
          }
        }
      }
    } else if (app.got_subcommand(real)) {
      const FunctionSpec f = function_from(g, f_spec);
      const RealizationResult r = realization(f, alpha, h, p, env.solver, env.quad);
      std::printf("value=%s distance=%s derivative=%s status=%s\n", format_value(r.value).c_str(),
                  format_value(r.distance_part).c_str(), format_value(r.derivative_part).c_str(),
                  to_string(r.status));
      if (!out_path.empty()) {
        ordered_json j;
        j["value"] = r.value;
        j["distance_part"] = r.distance_part;
        j["derivative_part"] = r.derivative_part;
        j["degree"] = r.minimizer.degree();
        j["status"] = to_string(r.status);
        write_file(out_path, j.dump(2) + "\n");
      }
    } else if (app.got_subcommand(verify) || app.got_subcommand(sweepcmd)) {
      const std::string problem = check_registry_id(case_id);
      if (!problem.empty()) {
        std::fprintf(stderr, "%s\n", problem.c_str());
        return 1;
      }
      std::vector<TheoremCase> cases;
      if (app.got_subcommand(verify) && g.config.contains("cases")) {
        for (const auto& e : g.config["cases"]) cases.push_back(case_from_json(case_id, e));
      } else {
        cases = default_cases(case_id, env);
      }
      const SweepResult s = sweep_cases(case_id, cases, env);
      flagged = s.summary.any_flagged;
      if (!out_path.empty()) write_file(out_path, reports_to_csv(s.reports));
      if (!summary_path.empty()) write_file(summary_path, summary_to_json(s.summary).dump(2) + "\n");
      std::printf("%s cases=%zu max_ratio=%s min_ratio=%s stability=%s%s\n", case_id.c_str(),
                  s.reports.size(), format_value(s.summary.max_ratio).c_str(),
                  format_value(s.summary.min_ratio).c_str(),
                  format_value(s.summary.stability).c_str(), flagged ? " [flagged]" : "");
      for (const auto& note : s.summary.notes) std::printf("%s\n", note.c_str());
    } else if (app.got_subcommand(slope)) {
      const auto rows = read_csv(in_path);
      std::vector<std::pair<double, double>> pts;
      for (const auto& row : rows) {
        auto ix = row.find(xcol), iy = row.find(ycol);
        if (ix == row.end() || iy == row.end())
          throw std::runtime_error("slope: columns not found: " + xcol + ", " + ycol);
        const double x = std::atof(ix->second.c_str());
        const double y = std::atof(iy->second.c_str());
        if (!window.empty() && (x < window[0] || x > window[1])) continue;
        if (x > 0 && y > 0) pts.emplace_back(x, y);
      }
      const SlopeFit fit = fit_rate(pts);
      ordered_json j;
      j["slope"] = fit.slope;
      j["intercept"] = fit.intercept;
      j["r2"] = fit.r2;
      j["window"] = {fit.xmin, fit.xmax};
      j["npoints"] = fit.npoints;
      const std::string text = j.dump(2) + "\n";
      std::printf("%s", text.c_str());
      if (!out_path.empty()) write_file(out_path, text);
    }

    return flagged ? 2 : 0;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
