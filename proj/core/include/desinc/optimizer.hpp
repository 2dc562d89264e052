#pragma once

#include <complex>
#include <vector>

#include "desinc/transform.hpp"

namespace desinc {

// Result of the map parameter program: the sinh-polynomial inner map,
// the constraint nodes, and convergence diagnostics. objective equals
// map.u0, the quantity the program maximizes.
struct ParameterSolution {
  SinhPolyMap map;
  std::vector<double> nodes;
  double constraint_residual = 0.0;
  double objective = 0.0;
  int homotopy_steps = 0;
};

// Strip preimages of the given singularities under the outer map.
// Each preimage is reflected into the upper half-plane; imaginary parts
// outside (0, pi) signal DomainError. The result is sorted by real
// part. A preimage duplicating the previous one (a conjugate partner)
// is dropped; remaining exact real-part ties are broken by nudging the
// later entry up by 1e-9 (a warning is printed to stderr).
std::vector<std::complex<double>> preimages(
    const std::vector<std::complex<double>>& singularities,
    const OuterMap& outer);

// Collinear closed-form starting point: u0 = min Im(p), the constant
// term carries Re(p) at the minimizer, nodes at +-acosh(Im(p)/u0).
// Satisfies the deformed constraints of the homotopy at tau = 0 exactly.
ParameterSolution initial_guess(const std::vector<std::complex<double>>& p);

// Solves max u0 subject to h(x_k + i pi/2) = p_k over sinh-polynomial
// maps, by homotopy continuation with a Newton-KKT corrector. steps is
// the initial homotopy resolution; on failure the solver retries with
// 256 steps and with an ascending-node start before giving up.
// Non-convergence signals OptimizationError carrying the failing tau.
// The returned solution has constraint_residual <= 1e-10 and a strictly
// monotone composed map on [-15, 15].
ParameterSolution solve_parameter_problem(
    const std::vector<std::complex<double>>& p, double xbar = 20.0,
    int steps = 16);

// Decay coefficient of the trapezoidal error model for the composed
// transform: u0/2 for a finite tanh outer map, u0 otherwise.
double beta2_of(const ParameterSolution& sol, const OuterMap& outer);

// max_k |h(x_k + i pi/2) - p_k| for a candidate map.
double constraint_residual_of(const SinhPolyMap& map,
                              const std::vector<double>& nodes,
                              const std::vector<std::complex<double>>& p);

}  // namespace desinc
