#pragma once

namespace desinc {

// Expectation of exp(-kappa |r|) over the unit cube [0,1]^m.
struct BoxProblem {
  int m = 2;
  double kappa = 1.0;
};

enum class TensorVariant { Single, Double, Optimized };

// Lower incomplete gamma at integer order:
// gamma(m, a) = (m-1)! - e^{-a} sum_{j=0}^{m-1} C(m-1,j) j! a^{m-1-j}.
// m <= 20; larger orders overflow the factorial and signal RangeError.
double lower_incomplete_gamma_sum(int m, double a);

// erf with relative error <= 1e-15.
double erf_value(double u);

// One-dimensional reduced form
// (1/2) (pi/(2 kappa))^{(m-1)/2} int_0^inf t^{(m-1)/2} e^{-kappa t/2}
//   erf^m(sqrt(kappa/(2t))) dt
// by the trapezoidal rule on the exponential half-line map, 2n+1 nodes.
double box_expectation_reduced(const BoxProblem& p, int n);

// Tensor-product trapezoidal rule over [-1,1]^{m-1}; 2 <= m <= 5.
// Single/Double use one fixed map per dimension; Optimized widens each
// dimension's map using the inner dimensions' accumulated sum of squares.
// threads > 1 splits the outermost dimension into fixed slabs whose
// partial sums are reduced in slab order, so the result is independent
// of the thread count.
double box_expectation_tensor(const BoxProblem& p, int n, TensorVariant variant,
                              int threads = 1);

namespace detail {
// gamma(m, a)/a^m = int_0^1 x^{m-1} e^{-a x} dx, evaluated by the
// alternating series for a < m to dodge the cancellation between
// (m-1)!/a^m and the sum, and by the closed form otherwise.
double gamma_over_am(int m, double a);
}  // namespace detail

}  // namespace desinc
