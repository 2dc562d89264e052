#include "desinc/box.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "desinc/errors.hpp"
#include "desinc/parallel.hpp"
#include "desinc/quadrature.hpp"

namespace desinc {

namespace {
constexpr double kPi = 3.141592653589793;
}

double erf_value(double u) { return std::erf(u); }

double lower_incomplete_gamma_sum(int m, double a) {
  if (m < 1) throw ConfigError("lower_incomplete_gamma_sum: m must be >= 1");
  if (m > 20)
    throw RangeError(
        "lower_incomplete_gamma_sum: m > 20 overflows the closed form");
  double fact = 1.0;
  for (int j = 2; j < m; ++j) fact *= j;
  // C(m-1,j) j! = (m-1)(m-2)...(m-j), the falling factorial
  double sum = 0.0;
  double falling = 1.0;
  for (int j = 0; j < m; ++j) {
    sum += falling * std::pow(a, m - 1 - j);
    falling *= m - 1 - j;
  }
  return fact - std::exp(-a) * sum;
}

namespace detail {

double gamma_over_am(int m, double a) {
  if (a < m) {
    double term = 1.0;
    double total = 1.0 / m;
    for (int k = 1;; ++k) {
      term *= -a / k;
      const double piece = term / (m + k);
      total += piece;
      if (std::abs(piece) < 1e-18 * std::abs(total) || k > 200) break;
    }
    return total;
  }
  return lower_incomplete_gamma_sum(m, a) / std::pow(a, m);
}

}  // namespace detail

double box_expectation_reduced(const BoxProblem& p, int n) {
  if (p.m < 1) throw ConfigError("box_expectation_reduced: m must be >= 1");
  if (!(p.kappa > 0.0))
    throw ConfigError("box_expectation_reduced: kappa must be positive");
  if (n < 1) throw ConfigError("box_expectation_reduced: n must be >= 1");

  const double beta = 0.5 * (p.m + 1);
  const double h =
      optimal_step(DecayParams{1.0, beta, 0.5 * kPi, false}, n, false);

  double tot = 0.0;
  double c = 0.0;
  for (int j = -n; j <= n; ++j) {
    const double t = std::exp(j * h);
    const double decay = std::exp(-0.5 * p.kappa * t);
    double F = 0.0;
    if (t > 0.0 && decay > 0.0) {
      const double u = std::sqrt(p.kappa / (2.0 * t));
      F = std::pow(t, 0.5 * (p.m - 1)) * decay *
          std::pow(erf_value(u), p.m) * t;
    }
    const double y = F - c;
    const double s = tot + y;
    c = (s - tot) - y;
    tot = s;
  }
  return 0.5 * std::pow(kPi / (2.0 * p.kappa), 0.5 * (p.m - 1)) * h * tot;
}

namespace {

double bracket_of(int m, double kappa, double S) {
  return detail::gamma_over_am(m, kappa * std::sqrt(S));
}

// Fixed per-dimension nodes and weights (single and double variants).
double subtree_fixed(const std::vector<double>& phi,
                     const std::vector<double>& wts, int level, int dims,
                     double S, double w, int m, double kappa) {
  if (level == dims) return w * bracket_of(m, kappa, S);
  double acc = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (wts[i] == 0.0) continue;
    acc += subtree_fixed(phi, wts, level + 1, dims, S + phi[i] * phi[i],
                         w * wts[i], m, kappa);
  }
  return acc;
}

// Optimized variant: each dimension's map width depends on the inner
// dimensions through u0 = arctan(sqrt(S)).
double subtree_opt(const std::vector<double>& sh, const std::vector<double>& ch,
                   int level, int dims, double S, double w, int m,
                   double kappa) {
  if (level == dims) return w * bracket_of(m, kappa, S);
  const double u0 = std::atan(std::sqrt(S));
  double acc = 0.0;
  for (std::size_t i = 0; i < sh.size(); ++i) {
    const double arg = u0 * sh[i];
    const double ph = std::tanh(arg);
    const double csh = std::cosh(arg);
    const double wt = u0 * ch[i] / (csh * csh);
    if (wt == 0.0) continue;
    acc += subtree_opt(sh, ch, level + 1, dims, S + ph * ph, w * wt, m, kappa);
  }
  return acc;
}

}  // namespace

double box_expectation_tensor(const BoxProblem& p, int n, TensorVariant variant,
                              int threads) {
  if (p.m < 2 || p.m > 5)
    throw RangeError("box_expectation_tensor: m must be in 2..5");
  if (!(p.kappa > 0.0))
    throw ConfigError("box_expectation_tensor: kappa must be positive");
  if (n < 1) throw ConfigError("box_expectation_tensor: n must be >= 1");

  const int dims = p.m - 1;
  double h = 0.0;
  switch (variant) {
    case TensorVariant::Single:
      h = optimal_step(DecayParams{1.0, 1.0, 0.5 * kPi, false}, n, false);
      break;
    case TensorVariant::Double:
      h = optimal_step(DecayParams{1.0, 0.5 * kPi, kPi / 6.0, true}, n, false);
      break;
    case TensorVariant::Optimized:
      h = optimal_step(DecayParams{1.0, 0.25 * kPi, 0.5 * kPi, true}, n, false);
      break;
  }

  const std::size_t count = 2 * static_cast<std::size_t>(n) + 1;
  std::vector<double> partial(count, 0.0);

  if (variant == TensorVariant::Optimized) {
    std::vector<double> sh(count), ch(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = (static_cast<double>(i) - n) * h;
      sh[i] = std::sinh(t);
      ch[i] = std::cosh(t);
    }
    const double u0 = std::atan(1.0);  // sqrt(S) = 1 at the outermost level
    run_slabs(count, threads, [&](std::size_t i) {
      const double arg = u0 * sh[i];
      const double ph = std::tanh(arg);
      const double csh = std::cosh(arg);
      const double wt = u0 * ch[i] / (csh * csh);
      if (wt == 0.0) return;
      partial[i] =
          subtree_opt(sh, ch, 1, dims, 1.0 + ph * ph, wt, p.m, p.kappa);
    });
  } else {
    std::vector<double> phi(count), wts(count);
    for (std::size_t i = 0; i < count; ++i) {
      const double t = (static_cast<double>(i) - n) * h;
      if (variant == TensorVariant::Single) {
        const double c = std::cosh(0.5 * t);
        phi[i] = std::tanh(0.5 * t);
        wts[i] = 0.5 / (c * c);
      } else {
        const double inner = 0.5 * kPi * std::sinh(t);
        const double c = std::cosh(inner);
        phi[i] = std::tanh(inner);
        wts[i] = 0.5 * kPi * std::cosh(t) / (c * c);
      }
    }
    run_slabs(count, threads, [&](std::size_t i) {
      if (wts[i] == 0.0) return;
      partial[i] = subtree_fixed(phi, wts, 1, dims, 1.0 + phi[i] * phi[i],
                                 wts[i], p.m, p.kappa);
    });
  }

  double tot = 0.0;
  double c = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double y = partial[i] - c;
    const double s = tot + y;
    c = (s - tot) - y;
    tot = s;
  }
  const double front = static_cast<double>(p.m) / (1 << (p.m - 1));
  return front * std::pow(h, dims) * tot;
}

}  // namespace desinc
