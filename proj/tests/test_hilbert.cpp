#include <Eigen/Dense>

#include <cmath>
#include <memory>
#include <vector>

#include "doctest.h"

#include "desinc/catalog.hpp"
#include "desinc/errors.hpp"
#include "desinc/hilbert.hpp"
#include "desinc/quadrature.hpp"
#include "desinc/sinc.hpp"
#include "desinc/transform.hpp"
#include "oracles.hpp"

using namespace desinc;

namespace {

BOProblem make_bo(const char* label, int n) {
  const BOConfig& cfg = bo_config();
  const BOScheme& s = cfg.scheme(label);
  BOProblem p;
  p.wave_speed = cfg.wave_speed;
  p.forcing = forcing_for(cfg.solution, cfg.wave_speed);
  p.transform = s.transform;
  p.n = n;
  p.step = optimal_step(s.params, n, true);
  return p;
}

double sup_rel_error(const SincExpansion& y) {
  const BOConfig& cfg = bo_config();
  double sup = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = -5.0 + 0.1 * i;
    const double exact = cfg.solution.value(x);
    sup = std::max(sup, std::abs(sinc_eval(y, x) - exact) / std::abs(exact));
  }
  return sup;
}

}  // namespace

TEST_SUITE("hilbert") {

TEST_CASE("derivative weights: structure and finite differences") {
  const double h = 0.5;
  Eigen::MatrixXd W = sinc_derivative_weights(2, h);
  REQUIRE(W.rows() == 5);
  REQUIRE(W.cols() == 5);
  for (int l = 0; l < 5; ++l) {
    CHECK(W(l, l) == 0.0);
    for (int j = 0; j < 5; ++j) {
      CHECK(W(l, j) == -W(j, l));
      if (l != j) {
        const double expect =
            (((l - j) % 2 == 0) ? 1.0 : -1.0) / (h * (l - j));
        CHECK(W(l, j) == doctest::Approx(expect).epsilon(1e-15));
        // W really is S'(j)(l h)
        const int joff = j - 2, loff = l - 2;
        const double fd = oracle::derivative(
            [&](double x) { return sinc_basis(joff, h, x); }, loff * h, 1e-3);
        CHECK(std::abs(W(l, j) - fd) < 1e-6);
      }
    }
  }
  CHECK_THROWS_AS((void)sinc_derivative_weights(0, 0.5), ConfigError);
  CHECK_THROWS_AS((void)sinc_derivative_weights(4, 0.0), ConfigError);
}

TEST_CASE("conjugate function of the zero expansion vanishes") {
  SincExpansion e;
  e.step = 0.5;
  e.transform = std::make_shared<LinearTransform>();
  e.coefficients.assign(9, 0.0);
  CHECK(discrete_hilbert_of_samples(e, 0.3) == 0.0);
  CHECK(discrete_hilbert_of_derivative(e, 0.3) == 0.0);
}

TEST_CASE("closed-form conjugate functions match a principal value oracle") {
  // single bump, delta = 0, eps = 1
  LorentzianSumSolution one;
  one.terms = {{0.0, 1.0}};
  auto y = [](double s) { return 1.0 / (s * s + 1.0); };
  auto yp = [](double s) {
    const double d = s * s + 1.0;
    return -2.0 * s / (d * d);
  };
  CHECK(one.value(0.5) == doctest::Approx(0.8).epsilon(1e-15));
  // sign convention: conjugate of this bump is -x/(1+x^2)
  CHECK(oracle::hilbert_pv(y, 0.5) == doctest::Approx(-0.4).epsilon(1e-9));
  CHECK(one.hilbert_of_derivative(0.5) ==
        doctest::Approx(-0.48).epsilon(1e-12));
  for (int i = 0; i < 10; ++i) {
    const double x = -2.7 + 0.6 * i;
    CHECK(one.hilbert_of_derivative(x) ==
          doctest::Approx(oracle::hilbert_pv(yp, x)).epsilon(1e-8));
  }

  // the three-bump traveling wave used by the solver tests
  const BOConfig& cfg = bo_config();
  auto y3p = [&](double s) {
    double acc = 0.0;
    for (const auto& t : cfg.solution.terms) {
      const double d = (s - t.delta) * (s - t.delta) + t.eps * t.eps;
      acc += -2.0 * t.eps * t.eps * (s - t.delta) / (d * d);
    }
    return acc;
  };
  for (double x : {-1.4, 0.3, 1.9}) {
    CHECK(cfg.solution.hilbert_of_derivative(x) ==
          doctest::Approx(oracle::hilbert_pv(y3p, x)).epsilon(1e-8));
  }
}

TEST_CASE("collocation matrix agrees with the pointwise kernel sum") {
  const BOProblem p = make_bo("opt", 10);
  Eigen::MatrixXd M =
      hilbert_derivative_matrix(*p.transform, p.n, p.step);
  SincExpansion e;
  e.step = p.step;
  e.transform = p.transform;
  for (int j = -p.n; j <= p.n; ++j)
    e.coefficients.push_back(std::exp(-0.3 * j * j * p.step * p.step));
  Eigen::VectorXd y =
      Eigen::Map<const Eigen::VectorXd>(e.coefficients.data(), 2 * p.n + 1);
  Eigen::VectorXd My = M * y;
  for (int k = -p.n; k <= p.n; ++k) {
    const double xk = p.transform->forward(k * p.step);
    CHECK(My[k + p.n] ==
          doctest::Approx(discrete_hilbert_of_derivative(e, xk))
              .epsilon(1e-10));
  }
}

TEST_CASE("band-limited identity for the conjugate function") {
  // samples of sin(t)/t on a plain grid; conjugate is (cos x - 1)/x
  auto lin = std::make_shared<LinearTransform>();
  const int n = 64;
  const double h = 2.0;
  SincExpansion e;
  e.step = h;
  e.transform = lin;
  for (int j = -n; j <= n; ++j) {
    const double t = j * h;
    e.coefficients.push_back(j == 0 ? 1.0 : std::sin(t) / t);
  }
  for (double x : {0.5, 1.0, 2.0}) {
    const double expect = (std::cos(x) - 1.0) / x;
    CHECK(std::abs(discrete_hilbert_of_samples(e, x) - expect) < 1e-6);
  }
}

TEST_CASE("forcing construction validates the profile") {
  LorentzianSumSolution bad;
  bad.terms = {{0.0, -1.0}};
  CHECK_THROWS_AS((void)forcing_for(bad, 1.0), ConfigError);
  const BOConfig& cfg = bo_config();
  auto f = forcing_for(cfg.solution, 1.0);
  const double x = 0.7;
  const double yx = cfg.solution.value(x);
  CHECK(f(x) == doctest::Approx(-yx + 0.5 * yx * yx +
                                cfg.solution.hilbert_of_derivative(x))
                    .epsilon(1e-14));
}

TEST_CASE("solver input validation") {
  BOProblem p = make_bo("opt", 8);
  CHECK_THROWS_AS((void)solve_benjamin_ono(p, std::vector<double>(3, 0.0),
                                           1e-10),
                  ConfigError);
  BOProblem no_transform = p;
  no_transform.transform = nullptr;
  CHECK_THROWS_AS((void)bo_initial_guess(no_transform), ConfigError);
  BOProblem still = p;
  still.wave_speed = 0.0;
  CHECK_THROWS_AS((void)bo_initial_guess(still), ConfigError);
}

TEST_CASE("zero forcing yields the zero wave instantly") {
  BOProblem p;
  p.wave_speed = 1.0;
  p.forcing = [](double) { return 0.0; };
  p.transform = std::make_shared<LinearTransform>();
  p.n = 8;
  p.step = 0.5;
  BOSolveStats stats;
  SincExpansion y =
      solve_benjamin_ono(p, bo_initial_guess(p), 1e-13, &stats);
  CHECK(stats.newton_iterations == 0);
  for (double c : y.coefficients) CHECK(c == 0.0);
}

TEST_CASE("solved waves satisfy the reported residual bound") {
  const BOProblem p = make_bo("opt", 16);
  const double tol = 1e-11;
  BOSolveStats stats;
  SincExpansion y = solve_benjamin_ono(p, bo_initial_guess(p), tol, &stats);
  CHECK(stats.final_residual <= tol);
  Eigen::MatrixXd M = hilbert_derivative_matrix(*p.transform, p.n, p.step);
  Eigen::VectorXd yv =
      Eigen::Map<const Eigen::VectorXd>(y.coefficients.data(), 2 * p.n + 1);
  Eigen::VectorXd F = benjamin_ono_residual(p, yv, M);
  CHECK(F.cwiseAbs().maxCoeff() <= tol);
  CHECK(stats.newton_iterations > 0);
}

TEST_CASE("residual jacobian matches finite differences") {
  const BOProblem p = make_bo("opt", 8);
  const int m = 2 * p.n + 1;
  Eigen::MatrixXd M = hilbert_derivative_matrix(*p.transform, p.n, p.step);
  Eigen::VectorXd y(m);
  for (int k = 0; k < m; ++k) y[k] = 0.1 * std::sin(1.0 + k);
  Eigen::MatrixXd J = M;
  for (int k = 0; k < m; ++k) J(k, k) += -p.wave_speed + y[k];
  const double d = 1e-6;
  for (int j = 0; j < m; ++j) {
    Eigen::VectorXd hi = y, lo = y;
    hi[j] += d;
    lo[j] -= d;
    Eigen::VectorXd col = (benjamin_ono_residual(p, hi, M) -
                           benjamin_ono_residual(p, lo, M)) /
                          (2.0 * d);
    for (int k = 0; k < m; ++k)
      CHECK(std::abs(col[k] - J(k, j)) <= 1e-5 * (1.0 + std::abs(J(k, j))));
  }
}

TEST_CASE("adapted map beats the plain composition on the wave problem") {
  BOSolveStats stats;
  const BOProblem de = make_bo("de", 32);
  const BOProblem opt = make_bo("opt", 32);
  const double tol = 1e-10;
  const double err_de = sup_rel_error(solve_benjamin_ono(
      de, bo_initial_guess(de), tol, &stats));
  const double err_opt = sup_rel_error(solve_benjamin_ono(
      opt, bo_initial_guess(opt), tol, &stats));
  CHECK(err_opt < err_de);
  CHECK(err_opt < 1.0);
}

}  // TEST_SUITE
