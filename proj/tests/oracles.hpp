#pragma once

// Self-contained numeric oracles used to cross-check library results:
// a conjugate-function principal value integral, plain adaptive Simpson,
// and high-order finite differences.

#include <cmath>
#include <functional>

namespace oracle {

using Fn = std::function<double(double)>;

// (1/pi) PV int y(s)/(s - x) ds over the real line. Substituting
// s = x +- u folds the principal value into the smooth difference
// quotient [y(x+u) - y(x-u)]/u; the substitution u = e^v then makes the
// trapezoidal rule on v geometrically accurate. Cancellation noise for
// tiny u is suppressed by the e^v weight. The step must stay well under
// the strip width of y in the log variable, which narrow bumps shrink;
// 0.005 holds ~1e-13 for Lorentzians down to eps = 0.1.
inline double hilbert_pv(const Fn& y, double x) {
  const double pi = 3.14159265358979323846;
  const double h = 0.005;
  double acc = 0.0;
  // g(u) e^v dv with u = e^v collapses to the bare difference
  for (double v = -40.0; v <= 12.0; v += h) {
    const double u = std::exp(v);
    acc += y(x + u) - y(x - u);
  }
  return acc * h / pi;
}

inline double simpson_rec(const Fn& f, double a, double b, double fa,
                          double fm, double fb, double eps, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * eps)
    return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, 0.5 * eps, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, 0.5 * eps, depth - 1);
}

inline double integrate(const Fn& f, double a, double b, double eps = 1e-12) {
  const double m = 0.5 * (a + b);
  return simpson_rec(f, a, b, f(a), f(m), f(b), eps, 44);
}

// Five-point central difference, O(h^4).
inline double derivative(const Fn& f, double x, double h = 1e-3) {
  return (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) /
         (12.0 * h);
}

}  // namespace oracle
