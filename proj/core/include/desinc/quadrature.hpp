#pragma once

#include <functional>
#include <string>
#include <vector>

#include "desinc/transform.hpp"

namespace desinc {

// Decay model of the transformed integrand on the strip.
// rate is rho for single-exponential decay and gamma for
// double-exponential decay; beta is the matching beta (SE) or
// beta_2 (DE) coefficient; d is the strip half-width.
struct DecayParams {
  double rate = 1.0;
  double beta = 1.0;
  double d = 1.0;
  bool double_exponential = true;
};

struct RuleConfig {
  int n = 32;       // nodes run k = -n..n
  double step = 0;  // mesh size h
};

// Error-balancing step size.
//   SE quadrature: (2 pi d)^{1/(rho+1)} (beta n)^{-rho/(rho+1)}
//   DE quadrature: log(2 pi d gamma n / beta2) / (gamma n)
//   SE Sinc:       (pi d)^{1/(rho+1)} (beta n)^{-rho/(rho+1)}
//   DE Sinc:       log(pi d gamma n / beta2) / (gamma n)
// A DE log argument <= 1 signals DegenerateStepError. DE parameters
// with d * gamma > pi/2 signal ConfigError.
double optimal_step(const DecayParams& params, int n, bool for_sinc);

// Trapezoidal rule h * sum_{k=-n}^{n} g(k h) with compensated summation
// in fixed ascending order. A non-finite g(k h) signals EvaluationError
// carrying k. g must already include the transform weight.
double trapezoid_nodes(const std::function<double(double)>& g,
                       const RuleConfig& cfg);

// Same rule applied to f over the target interval through the
// transform: g(t) = f(phi(t)) phi'(t). A zero factor short-circuits the
// product so that harmless underflow on one side cannot manufacture
// NaN from overflow on the other.
double trapezoid(const std::function<double(double)>& f, const Transform& t,
                 const RuleConfig& cfg);

struct ConvergenceRow {
  std::string label;
  int n = 0;
  long evaluations = 0;
  double value = 0.0;
  double rel_error = 0.0;
};

// Runs the rule at each n with the error-balancing step and reports
// relative errors against the reference. A NaN reference signals
// ConfigError.
std::vector<ConvergenceRow> convergence_study(
    const std::function<double(double)>& f, const Transform& t,
    const DecayParams& params, const std::vector<int>& ns, double reference,
    bool for_sinc = false, const std::string& label = "");

// Fused-integrand variant: g is already the node function.
std::vector<ConvergenceRow> convergence_study_nodes(
    const std::function<double(double)>& g, const DecayParams& params,
    const std::vector<int>& ns, double reference, bool for_sinc = false,
    const std::string& label = "");

}  // namespace desinc
