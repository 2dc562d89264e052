#include "desinc/hilbert.hpp"

#include <cmath>
#include <vector>

#include "desinc/errors.hpp"

namespace desinc {

namespace {
constexpr double kPi = 3.141592653589793;
}

Eigen::MatrixXd sinc_derivative_weights(int n, double step) {
  if (n < 1) throw ConfigError("sinc_derivative_weights: n must be >= 1");
  if (!(step > 0.0))
    throw ConfigError("sinc_derivative_weights: step must be positive");
  const int m = 2 * n + 1;
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(m, m);
  for (int l = 0; l < m; ++l)
    for (int j = 0; j < m; ++j) {
      if (l == j) continue;
      const int d = l - j;
      const double sgn = (std::abs(d) % 2 == 0) ? 1.0 : -1.0;
      w(l, j) = sgn / (step * d);
    }
  return w;
}

namespace {

// kernel_l(x) with the removable value 0 at x = x_l
double hilbert_kernel(double tau_over_h, int l, double x, double xl) {
  if (x == xl) return 0.0;
  return (std::cos(kPi * (tau_over_h - l)) - 1.0) / (x - xl);
}

double hilbert_sum(const SincExpansion& e, double x, bool of_derivative) {
  if (!e.transform)
    throw ConfigError("discrete_hilbert: expansion has no transform");
  const int n = e.n();
  const int m = 2 * n + 1;
  const double h = e.step;
  const double tau = e.transform->inverse(x) / h;

  Eigen::VectorXd values(m);
  if (of_derivative) {
    // (W y)_l = sum_j y_j S'(j, h)(l h)
    for (int l = 0; l < m; ++l) {
      double acc = 0.0;
      for (int j = 0; j < m; ++j) {
        if (j == l) continue;
        const int d = l - j;
        const double sgn = (std::abs(d) % 2 == 0) ? 1.0 : -1.0;
        acc += e.coefficients[j] * sgn / (h * d);
      }
      values[l] = acc;
    }
  } else {
    for (int l = 0; l < m; ++l) {
      const double t = (l - n) * h;
      values[l] = e.coefficients[l] * e.transform->derivative(t);
    }
  }

  double acc = 0.0;
  for (int l = 0; l < m; ++l) {
    const double xl = e.transform->forward((l - n) * h);
    acc += hilbert_kernel(tau, l - n, x, xl) * values[l];
  }
  return h / kPi * acc;
}

}  // namespace

double discrete_hilbert_of_samples(const SincExpansion& e, double x) {
  return hilbert_sum(e, x, false);
}

double discrete_hilbert_of_derivative(const SincExpansion& e, double x) {
  return hilbert_sum(e, x, true);
}

Eigen::MatrixXd hilbert_derivative_matrix(const Transform& transform, int n,
                                          double step) {
  const int m = 2 * n + 1;
  Eigen::VectorXd xs(m);
  for (int l = 0; l < m; ++l) xs[l] = transform.forward((l - n) * step);

  // K[k,l] = ((-1)^{k-l} - 1)/(x_k - x_l): 0 for even k-l, else -2/(..)
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(m, m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) {
      if (((k - l) % 2) == 0) continue;
      K(k, l) = -2.0 / (xs[k] - xs[l]);
    }
  return (step / kPi) * (K * sinc_derivative_weights(n, step));
}

double LorentzianSumSolution::value(double x) const {
  double y = 0.0;
  for (const auto& t : terms) {
    const double dx = x - t.delta;
    y += t.eps * t.eps / (dx * dx + t.eps * t.eps);
  }
  return y;
}

double LorentzianSumSolution::hilbert_of_derivative(double x) const {
  // H of a Lorentzian bump is -eps (x - delta) / ((x-delta)^2 + eps^2);
  // differentiating gives the conjugate function of y'
  double v = 0.0;
  for (const auto& t : terms) {
    const double dx = x - t.delta;
    const double den = dx * dx + t.eps * t.eps;
    v += -t.eps * (t.eps * t.eps - dx * dx) / (den * den);
  }
  return v;
}

std::function<double(double)> forcing_for(const LorentzianSumSolution& sol,
                                          double c) {
  for (const auto& t : sol.terms)
    if (!(t.eps > 0.0)) throw ConfigError("forcing_for: eps must be positive");
  return [sol, c](double x) {
    const double y = sol.value(x);
    return -c * y + 0.5 * y * y + sol.hilbert_of_derivative(x);
  };
}

std::vector<double> bo_initial_guess(const BOProblem& p) {
  if (!p.transform) throw ConfigError("bo_initial_guess: missing transform");
  if (p.wave_speed == 0.0)
    throw ConfigError("bo_initial_guess: wave speed must be nonzero");
  std::vector<double> y0(2 * p.n + 1);
  for (int k = -p.n; k <= p.n; ++k)
    y0[k + p.n] = -p.forcing(p.transform->forward(k * p.step)) / p.wave_speed;
  return y0;
}

Eigen::VectorXd benjamin_ono_residual(const BOProblem& p,
                                      const Eigen::VectorXd& y,
                                      const Eigen::MatrixXd& M) {
  const int m = 2 * p.n + 1;
  if (y.size() != m) throw ConfigError("benjamin_ono_residual: bad y size");
  Eigen::VectorXd F = M * y;
  for (int k = 0; k < m; ++k) {
    const double xk = p.transform->forward((k - p.n) * p.step);
    F[k] += -p.wave_speed * y[k] + 0.5 * y[k] * y[k] - p.forcing(xk);
  }
  return F;
}

SincExpansion solve_benjamin_ono(const BOProblem& p,
                                 const std::vector<double>& y0, double tol,
                                 BOSolveStats* stats) {
  if (!p.transform) throw ConfigError("solve_benjamin_ono: missing transform");
  if (!(p.step > 0.0)) throw ConfigError("solve_benjamin_ono: step must be positive");
  const int m = 2 * p.n + 1;
  if (static_cast<int>(y0.size()) != m)
    throw ConfigError("solve_benjamin_ono: y0 must have 2n+1 entries");

  const Eigen::MatrixXd M = hilbert_derivative_matrix(*p.transform, p.n, p.step);
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(y0.data(), m);

  Eigen::VectorXd F = benjamin_ono_residual(p, y, M);
  int growth_streak = 0;
  int iterations = 0;
  for (; iterations < 200; ++iterations) {
    if (F.cwiseAbs().maxCoeff() <= tol) break;

    Eigen::MatrixXd J = M;
    for (int k = 0; k < m; ++k) J(k, k) += -p.wave_speed + y[k];
    const Eigen::VectorXd dy = J.partialPivLu().solve(-F);

    const double base = F.norm();
    double t = 1.0;
    Eigen::VectorXd y_try, F_try;
    for (int bt = 0; bt < 10; ++bt) {
      y_try = y + t * dy;
      F_try = benjamin_ono_residual(p, y_try, M);
      if (F_try.norm() < base) break;
      t /= 2.0;
    }
    y = y_try;
    if (F_try.norm() >= base) {
      if (++growth_streak >= 5)
        throw DivergenceError(
            "solve_benjamin_ono: residual grew for 5 consecutive damped steps",
            std::vector<double>(y.data(), y.data() + m));
    } else {
      growth_streak = 0;
    }
    F = F_try;
  }

  if (F.cwiseAbs().maxCoeff() > tol)
    throw DivergenceError(
        "solve_benjamin_ono: iteration cap reached before the residual met "
        "the tolerance",
        std::vector<double>(y.data(), y.data() + m));

  if (stats != nullptr) {
    stats->newton_iterations = iterations;
    stats->final_residual = F.cwiseAbs().maxCoeff();
  }

  SincExpansion e;
  e.coefficients.assign(y.data(), y.data() + m);
  e.step = p.step;
  e.transform = p.transform;
  return e;
}

}  // namespace desinc
