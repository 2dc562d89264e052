#pragma once

#include <Eigen/Dense>

#include <functional>
#include <memory>
#include <vector>

#include "desinc/sinc.hpp"
#include "desinc/transform.hpp"

namespace desinc {

// Derivative of the Sinc basis at the nodes:
// W[l, j] = S'(j, step)(l step) = (-1)^{l-j} / (step (l - j)), zero on
// the diagonal. Indices run 0..2n over node offsets -n..n.
Eigen::MatrixXd sinc_derivative_weights(int n, double step);

// Conjugate-function approximation applied to the expansion's own
// samples: (step/pi) sum_l kernel_l(x) y_l phi'(l step), where
// kernel_l(x) = [cos(pi (phi^{-1}(x)/step - l)) - 1] / (x - phi(l step))
// with the removable value 0 at x = phi(l step).
double discrete_hilbert_of_samples(const SincExpansion& e, double x);

// Same kernel applied to the derivative of the interpolant:
// (step/pi) sum_l kernel_l(x) (W y)_l. This approximates the conjugate
// function of y' when the coefficients sample y itself.
double discrete_hilbert_of_derivative(const SincExpansion& e, double x);

// The y-independent collocation matrix M with
// (H y')(x_k) ~ (M y)_k = (step/pi) sum_l K[k,l] (W y)_l,
// K[k,l] = ((-1)^{k-l} - 1)/(x_k - x_l), zero for even k-l.
Eigen::MatrixXd hilbert_derivative_matrix(const Transform& transform, int n,
                                          double step);

// A traveling-wave profile built from Lorentzian bumps:
// y(x) = sum_i eps_i^2 / ((x - delta_i)^2 + eps_i^2).
struct Lorentzian {
  double delta = 0.0;
  double eps = 1.0;
};

struct LorentzianSumSolution {
  std::vector<Lorentzian> terms;

  double value(double x) const;
  // closed-form conjugate function of y'
  double hilbert_of_derivative(double x) const;
};

// Closed-form forcing f(x) = -c y + y^2/2 + (H y')(x) for which the
// Lorentzian sum is an exact traveling-wave solution. The sign of the
// conjugate-function term follows the convention
// (H y)(x) = (1/pi) PV int y(s)/(s - x) ds.
std::function<double(double)> forcing_for(const LorentzianSumSolution& sol,
                                          double c);

struct BOProblem {
  double wave_speed = 1.0;
  std::function<double(double)> forcing;
  std::shared_ptr<const Transform> transform;
  int n = 32;
  double step = 0.0;
};

// Collocation residual F_k = -c y_k + y_k^2/2 + (M y)_k - f(x_k).
Eigen::VectorXd benjamin_ono_residual(const BOProblem& p,
                                      const Eigen::VectorXd& y,
                                      const Eigen::MatrixXd& M);

// Dominant-balance starting point y_k = -f(x_k)/c at the collocation nodes.
std::vector<double> bo_initial_guess(const BOProblem& p);

struct BOSolveStats {
  int newton_iterations = 0;
  double final_residual = 0.0;
};

// Damped Newton iteration on the collocation residual. y0 must have
// 2n+1 entries; converged when max|F| <= tol. Five consecutive damped
// steps with growing residual signal DivergenceError.
SincExpansion solve_benjamin_ono(const BOProblem& p,
                                 const std::vector<double>& y0, double tol,
                                 BOSolveStats* stats = nullptr);

}  // namespace desinc
