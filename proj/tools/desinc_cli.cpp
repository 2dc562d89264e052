// Command-line front end: integration, map optimization, convergence
// tables, pole recovery, the traveling-wave solver, and the box-integral
// module, over the built-in problem catalog or user problem files.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "desinc/box.hpp"
#include "desinc/catalog.hpp"
#include "desinc/errors.hpp"
#include "desinc/hilbert.hpp"
#include "desinc/optimizer.hpp"
#include "desinc/problem_io.hpp"
#include "desinc/quadrature.hpp"
#include "desinc/sinc.hpp"
#include "desinc/transform.hpp"

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct Loaded {
  desinc::ProblemSpec problem;
  const desinc::CatalogEntry* entry = nullptr;
};

Loaded load_problem(const std::string& arg) {
  for (const auto& e : desinc::catalog())
    if (e.name == arg) return {e.problem, &e};
  std::ifstream f(arg);
  if (!f)
    throw desinc::ConfigError(
        "'" + arg + "' is neither a catalog name nor a readable file");
  std::stringstream ss;
  ss << f.rdbuf();
  return {desinc::problem_from_json(ss.str()), nullptr};
}

// A runnable rule: transform, decay parameters for the step formula, and
// (when available) the overflow-safe node-space integrand.
struct Scheme {
  std::shared_ptr<const desinc::Transform> transform;
  desinc::DecayParams params;
  std::function<double(double)> fused;
};

Scheme scheme_for(const Loaded& lp, const std::string& label) {
  using namespace desinc;
  Scheme out;
  if (lp.entry != nullptr) {
    const CatalogScheme& s = lp.entry->scheme(label);
    out.transform = s.transform;
    out.params = s.params;
    out.fused = s.fused;
    return out;
  }
  const ProblemSpec& p = lp.problem;
  if (label == "se") {
    out.transform = std::make_shared<SingleExpTransform>(p.domain, 1.0, "se");
    out.params = DecayParams{1.0, 1.0, 1.0, false};
  } else if (label == "de") {
    out.transform =
        std::make_shared<ConformalTransform>(canonical_de_transform(p.domain));
    out.params = DecayParams{1.0, 0.5 * kPi, 0.5 * kPi, true};
  } else if (label == "opt") {
    if (p.singularities.empty())
      throw ConfigError("the optimized transform needs declared singularities");
    ParameterSolution sol =
        solve_parameter_problem(preimages(p.singularities, p.domain));
    out.transform =
        std::make_shared<ConformalTransform>(p.domain, sol.map, "opt");
    out.params = DecayParams{1.0, beta2_of(sol, p.domain), 0.5 * kPi, true};
  } else {
    throw ConfigError("unknown transform '" + label + "'");
  }
  if (p.fused_weight)
    out.fused = p.integrand;
  else if (p.fused_family)
    out.fused = p.fused_family(*out.transform);
  return out;
}

int run_integrate(const std::string& problem, const std::string& transform,
                  int n, double eps, const std::string& out) {
  using namespace desinc;
  Loaded lp = load_problem(problem);
  double value = 0.0;
  long evaluations = 0;
  int n_used = n;
  double estimate = std::numeric_limits<double>::quiet_NaN();
  if (transform == "adaptive") {
    AdaptiveResult res =
        adaptive_integrate(lp.problem, lp.problem.domain.kind, eps);
    value = res.value;
    estimate = res.estimate;
    n_used = res.n_final;
    for (const auto& it : res.history) evaluations += 2L * it.n + 1;
  } else {
    Scheme s = scheme_for(lp, transform);
    RuleConfig cfg{n, optimal_step(s.params, n, false)};
    value = s.fused ? trapezoid_nodes(s.fused, cfg)
                    : trapezoid(lp.problem.integrand, *s.transform, cfg);
    evaluations = 2L * n + 1;
  }
  double rel = std::numeric_limits<double>::quiet_NaN();
  if (lp.problem.has_reference())
    rel = std::abs((value - lp.problem.reference) / lp.problem.reference);
  if (out == "json") {
    nlohmann::json j;
    j["transform"] = transform;
    j["n"] = n_used;
    j["evaluations"] = evaluations;
    j["value"] = value;
    j["rel_error"] = rel;
    if (transform == "adaptive") j["estimate"] = estimate;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "transform,n,evaluations,value,rel_error\n";
    std::cout << transform << "," << n_used << "," << evaluations << ","
              << fmt(value) << "," << fmt(rel) << "\n";
  }
  return 0;
}

int run_optimize_map(const std::string& problem) {
  using namespace desinc;
  Loaded lp = load_problem(problem);
  if (lp.problem.singularities.empty())
    throw ConfigError("optimize-map needs declared singularities");
  ParameterSolution sol = solve_parameter_problem(
      preimages(lp.problem.singularities, lp.problem.domain));
  nlohmann::json j;
  j["u0"] = sol.map.u0;
  j["u"] = sol.map.u;
  j["x"] = sol.nodes;
  j["residual"] = sol.constraint_residual;
  std::cout << j.dump(2) << "\n";
  return 0;
}

int run_convergence(const std::string& problem, const std::string& transform,
                    const std::vector<int>& ns, const std::string& out) {
  using namespace desinc;
  Loaded lp = load_problem(problem);
  if (!lp.problem.has_reference())
    throw ConfigError("convergence needs a problem with a reference value");
  std::vector<std::string> labels;
  if (transform == "all") {
    if (lp.entry != nullptr) {
      for (const auto& s : lp.entry->schemes) labels.push_back(s.label);
    } else {
      labels = {"se", "de"};
      if (!lp.problem.singularities.empty()) labels.push_back("opt");
    }
  } else {
    labels.push_back(transform);
  }
  std::vector<ConvergenceRow> rows;
  for (const auto& label : labels) {
    Scheme s = scheme_for(lp, label);
    std::vector<ConvergenceRow> part =
        s.fused ? convergence_study_nodes(s.fused, s.params, ns,
                                          lp.problem.reference, false, label)
                : convergence_study(lp.problem.integrand, *s.transform,
                                    s.params, ns, lp.problem.reference, false,
                                    label);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  if (out == "json") {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json row;
      row["transform"] = r.label;
      row["n"] = r.n;
      row["evaluations"] = r.evaluations;
      row["value"] = r.value;
      row["rel_error"] = r.rel_error;
      j.push_back(row);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "transform,n,evaluations,value,rel_error\n";
    for (const auto& r : rows)
      std::cout << r.label << "," << r.n << "," << r.evaluations << ","
                << fmt(r.value) << "," << fmt(r.rel_error) << "\n";
  }
  return 0;
}

int run_pade_poles(const std::string& problem, const std::string& transform,
                   int n, int count, const std::string& out) {
  using namespace desinc;
  Loaded lp = load_problem(problem);
  if (n < 8) throw ConfigError("pade-poles needs n >= 8");
  if (lp.problem.fused_weight)
    throw ConfigError("pade-poles needs an interval-space integrand");
  if (!lp.problem.integrand) throw ConfigError("missing integrand");
  Scheme s = scheme_for(lp, transform);
  const int k =
      static_cast<int>(std::lround(std::log2(static_cast<double>(n))));
  const double h = optimal_step(s.params, n, false);
  std::vector<std::pair<double, double>> samples;
  for (int j = -k; j <= k; ++j) {
    const double x = s.transform->forward(j * h);
    samples.emplace_back(x, lp.problem.integrand(x));
  }
  SincPadeApproximant ap = fit_sinc_pade(samples, k - 2, k + 2, h);
  PadePoles pp = pade_poles(ap, count);
  if (out == "json") {
    nlohmann::json j;
    j["poles"] = nlohmann::json::array();
    for (const auto& z : pp.poles)
      j["poles"].push_back({{"re", z.real()}, {"im", z.imag()}});
    j["shortfall"] = pp.shortfall;
    j["condition"] = ap.condition;
    j["fit_residual"] = ap.fit_residual;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "re,im\n";
    for (const auto& z : pp.poles)
      std::cout << fmt(z.real()) << "," << fmt(z.imag()) << "\n";
    if (pp.shortfall)
      std::cerr << "warning: fewer off-axis poles than requested\n";
  }
  return 0;
}

int run_bo_solve(const std::string& transform, int n, double tol_in,
                 const std::string& out) {
  using namespace desinc;
  const BOConfig& cfg = bo_config();
  const BOScheme& scheme = cfg.scheme(transform);
  BOProblem p;
  p.wave_speed = cfg.wave_speed;
  p.forcing = forcing_for(cfg.solution, cfg.wave_speed);
  p.transform = scheme.transform;
  p.n = n;
  p.step = optimal_step(scheme.params, n, true);
  double tol = tol_in;
  if (!(tol > 0.0)) {
    double fmax = 0.0;
    for (int j = -n; j <= n; ++j)
      fmax = std::max(fmax,
                      std::abs(p.forcing(p.transform->forward(j * p.step))));
    tol = 1e-12 * (1.0 + fmax);
  }
  BOSolveStats stats;
  SincExpansion y = solve_benjamin_ono(p, bo_initial_guess(p), tol, &stats);
  double sup = 0.0;
  std::vector<std::pair<double, double>> grid;  // (exact, computed) per x
  for (int i = 0; i <= 100; ++i) {
    const double x = -5.0 + 0.1 * i;
    const double ye = cfg.solution.value(x);
    const double yc = sinc_eval(y, x);
    sup = std::max(sup, std::abs(yc - ye) / std::abs(ye));
    grid.emplace_back(ye, yc);
  }
  nlohmann::json summary;
  summary["transform"] = transform;
  summary["n"] = n;
  summary["sup_rel_error"] = sup;
  summary["newton_iterations"] = stats.newton_iterations;
  summary["final_residual"] = stats.final_residual;
  if (out == "json") {
    nlohmann::json j = summary;
    j["samples"] = nlohmann::json::array();
    for (int i = 0; i <= 100; ++i)
      j["samples"].push_back({{"x", -5.0 + 0.1 * i},
                              {"y_exact", grid[i].first},
                              {"y_computed", grid[i].second}});
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "x,y_exact,y_computed\n";
    for (int i = 0; i <= 100; ++i)
      std::cout << fmt(-5.0 + 0.1 * i) << "," << fmt(grid[i].first) << ","
                << fmt(grid[i].second) << "\n";
    std::cerr << summary.dump() << "\n";
  }
  return 0;
}

int run_box(int m, double kappa, const std::string& method,
            const std::string& variant, int n, int threads,
            const std::string& out) {
  using namespace desinc;
  BoxProblem p;
  p.m = m;
  p.kappa = kappa;
  TensorVariant tv = variant == "single"   ? TensorVariant::Single
                     : variant == "double" ? TensorVariant::Double
                                           : TensorVariant::Optimized;
  const int n_reduced = n > 0 ? n : 64;
  int n_tensor = n;
  if (n_tensor <= 0) n_tensor = m <= 2 ? 48 : m == 3 ? 32 : m == 4 ? 24 : 12;
  const bool want_reduced = method.empty() || method == "reduced";
  const bool want_tensor = method.empty() || method == "tensor";
  double v_reduced = 0.0;
  double v_tensor = 0.0;
  if (want_reduced) v_reduced = box_expectation_reduced(p, n_reduced);
  if (want_tensor) v_tensor = box_expectation_tensor(p, n_tensor, tv, threads);
  if (out == "json") {
    nlohmann::json j;
    if (want_reduced)
      j["reduced"] = {{"n", n_reduced}, {"value", v_reduced}};
    if (want_tensor)
      j["tensor"] = {{"variant", variant}, {"n", n_tensor}, {"value", v_tensor}};
    if (want_reduced && want_tensor)
      j["discrepancy"] = std::abs(v_reduced - v_tensor);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "method,variant,n,value\n";
    if (want_reduced)
      std::cout << "reduced,," << n_reduced << "," << fmt(v_reduced) << "\n";
    if (want_tensor)
      std::cout << "tensor," << variant << "," << n_tensor << ","
                << fmt(v_tensor) << "\n";
    if (want_reduced && want_tensor)
      std::cout << "discrepancy,,," << fmt(std::abs(v_reduced - v_tensor))
                << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Singularity-adapted double-exponential quadrature and Sinc toolkit"};
  app.require_subcommand(1);

  std::string problem;
  std::string out = "csv";
  auto add_out = [&out](CLI::App* sub) {
    sub->add_option("--out", out, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  CLI::App* integrate =
      app.add_subcommand("integrate", "integrate a problem once");
  integrate->add_option("problem", problem, "catalog name or problem file")
      ->required();
  std::string int_transform = "de";
  integrate->add_option("--transform", int_transform, "rule family")
      ->check(CLI::IsMember({"se", "de", "de-lit", "opt", "adaptive"}));
  int int_n = 64;
  integrate->add_option("--n", int_n, "one-sided node count");
  double eps = 1e-10;
  integrate->add_option("--eps", eps, "adaptive error target");
  add_out(integrate);

  CLI::App* optimize = app.add_subcommand(
      "optimize-map", "solve the map parameter program for a problem");
  optimize->add_option("problem", problem, "catalog name or problem file")
      ->required();

  CLI::App* convergence = app.add_subcommand(
      "convergence", "rule comparison table over a range of node counts");
  convergence->add_option("problem", problem, "catalog name or problem file")
      ->required();
  std::string conv_transform = "all";
  convergence->add_option("--transform", conv_transform,
                          "one rule label, or all");
  std::vector<int> ns{8, 16, 32, 64, 128, 256};
  convergence->add_option("--ns", ns, "node counts");
  add_out(convergence);

  CLI::App* pade = app.add_subcommand(
      "pade-poles", "recover integrand poles from central samples");
  pade->add_option("problem", problem, "catalog name or problem file")
      ->required();
  std::string pade_transform = "de";
  pade->add_option("--transform", pade_transform, "rule family")
      ->check(CLI::IsMember({"se", "de", "de-lit", "opt"}));
  int pade_n = 32;
  pade->add_option("--n", pade_n, "one-sided node count (power of two)");
  int count = 4;
  pade->add_option("--count", count, "poles to report");
  add_out(pade);

  CLI::App* bo = app.add_subcommand(
      "bo-solve", "solve the forced traveling-wave collocation problem");
  std::string bo_transform = "opt";
  bo->add_option("--transform", bo_transform, "rule family")
      ->check(CLI::IsMember({"se", "de", "opt"}));
  int bo_n = 32;
  bo->add_option("--n", bo_n, "one-sided node count");
  double tol = 0.0;
  bo->add_option("--tol", tol, "absolute residual tolerance (default scaled)");
  add_out(bo);

  CLI::App* box = app.add_subcommand("box", "mean absolute box determinant");
  int box_m = 2;
  box->add_option("--m", box_m, "dimension")->required();
  double kappa = 1.0;
  box->add_option("--kappa", kappa, "decay constant");
  std::string method;
  box->add_option("--method", method, "reduced or tensor (default both)")
      ->check(CLI::IsMember({"reduced", "tensor"}));
  std::string variant = "optimized";
  box->add_option("--variant", variant, "tensor rule variant")
      ->check(CLI::IsMember({"single", "double", "optimized"}));
  int box_n = 0;
  box->add_option("--n", box_n, "one-sided node count (0 = per-method default)");
  int threads = 1;
  box->add_option("--threads", threads, "tensor slab workers");
  add_out(box);

  try {
    app.parse(argc, argv);
    if (integrate->parsed())
      return run_integrate(problem, int_transform, int_n, eps, out);
    if (optimize->parsed()) return run_optimize_map(problem);
    if (convergence->parsed())
      return run_convergence(problem, conv_transform, ns, out);
    if (pade->parsed())
      return run_pade_poles(problem, pade_transform, pade_n, count, out);
    if (bo->parsed()) return run_bo_solve(bo_transform, bo_n, tol, out);
    if (box->parsed())
      return run_box(box_m, kappa, method, variant, box_n, threads, out);
    return 0;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const desinc::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const desinc::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const desinc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
