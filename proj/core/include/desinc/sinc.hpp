#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "desinc/problem.hpp"
#include "desinc/quadrature.hpp"
#include "desinc/transform.hpp"

namespace desinc {

// A Sinc expansion y(x) ~ sum_j coefficients[j+n] S(j, step)(phi^{-1}(x)).
struct SincExpansion {
  std::vector<double> coefficients;  // y_{-n}..y_{+n}
  double step = 0.0;
  std::shared_ptr<const Transform> transform;

  int n() const { return (static_cast<int>(coefficients.size()) - 1) / 2; }
};

// S(j, step)(x) = sin(pi (x/step - j)) / (pi (x/step - j)), with the
// removable value 1 at x = j step.
double sinc_basis(int j, double step, double x);

// Evaluates the expansion at x inside the target interval.
double sinc_eval(const SincExpansion& e, double x);

// Rational approximant p(x)/q(x) fitted at the central Sinc points;
// q's constant term is fixed to 1 and not stored.
struct SincPadeApproximant {
  std::vector<double> p;  // p_0..p_r
  std::vector<double> q;  // q_1..q_s
  double step = 0.0;
  double fit_residual = 0.0;
  double condition = 0.0;
};

// Least-squares fit of sum_i p_i x^i - f_k sum_j q_j x_k^j = f_k over
// the samples (x_k, f_k), solved with column-scaled QR. The samples
// must be the r+s+1 central Sinc points. Rank deficiency signals
// IllConditioningError with the condition estimate.
SincPadeApproximant fit_sinc_pade(
    const std::vector<std::pair<double, double>>& samples, int r, int s,
    double step = 0.0);

struct PadePoles {
  std::vector<std::complex<double>> poles;
  bool shortfall = false;  // fewer off-axis roots than requested
};

// Denominator roots via companion-matrix eigenvalues, filtered to
// Im > 1e-6, sorted by |Im| ascending; at most count are returned.
PadePoles pade_poles(const SincPadeApproximant& a, int count);

struct AdaptiveIteration {
  int phase = 1;
  int n = 0;
  double value = 0.0;
  double estimate = 0.0;
  bool fallback = false;  // phase-2 iteration that kept the previous map
  SinhPolyMap map;
  std::vector<std::complex<double>> poles;
};

struct AdaptiveResult {
  double value = 0.0;
  double estimate = 0.0;
  int n_final = 0;
  SinhPolyMap final_map;
  std::vector<AdaptiveIteration> history;
};

// Adaptive optimized integration. Phase 1 doubles n under the plain DE
// map until the successive-doubling error estimate drops below 1e-3;
// phase 2 alternates Sinc-Pade pole estimation, the map parameter
// program, and re-integration until the estimate drops below eps.
// Pole-extraction or parameter-program failures fall back to the
// previous map and continue doubling.
AdaptiveResult adaptive_integrate(const ProblemSpec& problem,
                                  OuterMapKind outer, double eps);

}  // namespace desinc
