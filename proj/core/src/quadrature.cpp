#include "desinc/quadrature.hpp"

#include <cmath>
#include <limits>

namespace desinc {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
}  // namespace

double optimal_step(const DecayParams& params, int n, bool for_sinc) {
  if (n < 1) throw ConfigError("optimal_step: n must be positive");
  if (!(params.rate > 0.0) || !(params.beta > 0.0) || !(params.d > 0.0))
    throw ConfigError("optimal_step: decay parameters must be positive");
  if (params.double_exponential) {
    if (params.d * params.rate > kPi / 2 + 1e-12)
      throw ConfigError("optimal_step: d * gamma exceeds pi/2");
    const double front = for_sinc ? kPi : kTwoPi;
    const double arg = front * params.d * params.rate * n / params.beta;
    if (!(arg > 1.0))
      throw DegenerateStepError("optimal_step: log argument <= 1");
    return std::log(arg) / (params.rate * n);
  }
  const double rho = params.rate;
  const double front = for_sinc ? kPi : kTwoPi;
  return std::pow(front * params.d, 1.0 / (rho + 1.0)) *
         std::pow(params.beta * n, -rho / (rho + 1.0));
}

double trapezoid_nodes(const std::function<double(double)>& g,
                       const RuleConfig& cfg) {
  if (cfg.n < 0) throw ConfigError("trapezoid: negative n");
  if (!(cfg.step > 0.0)) throw ConfigError("trapezoid: step must be positive");
  double s = 0.0, c = 0.0;
  for (long k = -cfg.n; k <= cfg.n; ++k) {
    const double gk = g(static_cast<double>(k) * cfg.step);
    if (!std::isfinite(gk))
      throw EvaluationError("trapezoid: non-finite integrand at node " +
                                std::to_string(k),
                            k);
    const double y = gk * cfg.step - c;
    const double t = s + y;
    c = (t - s) - y;
    s = t;
  }
  return s;
}

double trapezoid(const std::function<double(double)>& f, const Transform& t,
                 const RuleConfig& cfg) {
  return trapezoid_nodes(
      [&](double tk) {
        const double x = t.forward(tk);
        const double fx = f(x);
        if (fx == 0.0) return 0.0;
        const double w = t.derivative(tk);
        if (w == 0.0) return 0.0;
        return fx * w;
      },
      cfg);
}

namespace {

std::vector<ConvergenceRow> study_impl(
    const std::function<double(const RuleConfig&)>& run,
    const DecayParams& params, const std::vector<int>& ns, double reference,
    bool for_sinc, const std::string& label) {
  if (std::isnan(reference))
    throw ConfigError("convergence_study: missing reference value");
  std::vector<ConvergenceRow> rows;
  rows.reserve(ns.size());
  for (int n : ns) {
    RuleConfig cfg{n, optimal_step(params, n, for_sinc)};
    ConvergenceRow row;
    row.label = label;
    row.n = n;
    row.evaluations = 2L * n + 1;
    row.value = run(cfg);
    row.rel_error = std::abs((row.value - reference) / reference);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::vector<ConvergenceRow> convergence_study(
    const std::function<double(double)>& f, const Transform& t,
    const DecayParams& params, const std::vector<int>& ns, double reference,
    bool for_sinc, const std::string& label) {
  return study_impl(
      [&](const RuleConfig& cfg) { return trapezoid(f, t, cfg); }, params, ns,
      reference, for_sinc, label.empty() ? t.label() : label);
}

std::vector<ConvergenceRow> convergence_study_nodes(
    const std::function<double(double)>& g, const DecayParams& params,
    const std::vector<int>& ns, double reference, bool for_sinc,
    const std::string& label) {
  return study_impl(
      [&](const RuleConfig& cfg) { return trapezoid_nodes(g, cfg); }, params,
      ns, reference, for_sinc, label);
}

}  // namespace desinc
