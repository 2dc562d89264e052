#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "doctest.h"

#include "desinc/errors.hpp"
#include "desinc/transform.hpp"
#include "oracles.hpp"

using namespace desinc;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("transform") {

TEST_CASE("outer maps forward values") {
  OuterMap fin{OuterMapKind::FiniteTanh, -1.0, 1.0};
  CHECK(outer_forward(fin, 0.0) == doctest::Approx(0.0));
  CHECK(outer_forward(fin, 1.3) == doctest::Approx(std::tanh(1.3)));
  OuterMap fin01{OuterMapKind::FiniteTanh, 0.0, 1.0};
  CHECK(outer_forward(fin01, 0.7) ==
        doctest::Approx(0.5 * std::tanh(0.7) + 0.5));
  OuterMap inf{OuterMapKind::InfiniteSinh};
  CHECK(outer_forward(inf, 1.3) == doctest::Approx(std::sinh(1.3)));
  OuterMap slog{OuterMapKind::SemiInfLog};
  CHECK(outer_forward(slog, 0.0) == doctest::Approx(std::log(2.0)));
  OuterMap sexp{OuterMapKind::SemiInfExp};
  CHECK(outer_forward(sexp, 0.0) == doctest::Approx(1.0));
  // complex overload agrees with the sinh addition identity
  cplx z = outer_forward(inf, cplx(0.0, 0.5 * kPi));
  CHECK(std::abs(z - cplx(0.0, 1.0)) < 1e-15);
}

TEST_CASE("outer derivatives match finite differences") {
  std::vector<OuterMap> maps = {
      {OuterMapKind::FiniteTanh, -1.0, 1.0},
      {OuterMapKind::FiniteTanh, 0.0, 1.0},
      {OuterMapKind::InfiniteSinh, 0.0, 0.0},
      {OuterMapKind::SemiInfLog, 0.0, 0.0},
      {OuterMapKind::SemiInfExp, 0.0, 0.0},
  };
  for (const auto& m : maps) {
    for (double z : {-2.0, -0.3, 0.0, 0.7, 1.9}) {
      const double fd =
          oracle::derivative([&](double t) { return outer_forward(m, t); }, z,
                             1e-4);
      CHECK(outer_derivative(m, z) == doctest::Approx(fd).epsilon(1e-8));
    }
  }
}

TEST_CASE("outer inverse round trips and principal branch") {
  OuterMap sexp{OuterMapKind::SemiInfExp};
  cplx p = outer_inverse(sexp, cplx(2.0, 0.5));
  // principal log oracle: log|2+0.5i| + i atan2(0.5, 2)
  CHECK(p.real() == doctest::Approx(0.5 * std::log(4.25)).epsilon(1e-14));
  CHECK(p.imag() == doctest::Approx(std::atan2(0.5, 2.0)).epsilon(1e-14));
  CHECK(p.real() == doctest::Approx(0.7234594915).epsilon(1e-9));
  CHECK(p.imag() == doctest::Approx(0.2449786631).epsilon(1e-9));

  OuterMap fin01{OuterMapKind::FiniteTanh, 0.0, 1.0};
  cplx q = outer_inverse(fin01, cplx(0.5, 0.5));
  CHECK(std::abs(q - cplx(0.0, 0.25 * kPi)) < 1e-14);
  cplx q2 = outer_inverse(OuterMap{OuterMapKind::FiniteTanh, -1.0, 1.0},
                          cplx(0.0, 1.0));
  CHECK(std::abs(q2 - cplx(0.0, 0.25 * kPi)) < 1e-14);
  CHECK(std::abs(outer_inverse(sexp, cplx(1.0, 0.0))) < 1e-15);

  std::vector<OuterMap> maps = {
      {OuterMapKind::FiniteTanh, -1.0, 1.0},
      {OuterMapKind::InfiniteSinh, 0.0, 0.0},
      {OuterMapKind::SemiInfLog, 0.0, 0.0},
      {OuterMapKind::SemiInfExp, 0.0, 0.0},
  };
  for (const auto& m : maps) {
    for (double re : {-1.5, -0.2, 0.4, 1.1}) {
      for (double im : {0.1, 0.8, 1.4}) {
        const cplx z(re, im);
        const cplx back = outer_inverse(m, outer_forward(m, z));
        CHECK(std::abs(back - z) < 1e-12 * (1.0 + std::abs(z)));
      }
    }
  }
}

TEST_CASE("sinh-polynomial map evaluation and derivative") {
  SinhPolyMap m;
  m.u0 = 0.13912;
  m.u = {0.19081, 0.21938};
  CHECK(map_eval(m, 1.0) ==
        doctest::Approx(0.13912 * std::sinh(1.0) + 0.19081 + 0.21938)
            .epsilon(1e-15));
  for (double t : {-1.7, -0.4, 0.0, 0.9, 2.3}) {
    const double fd =
        oracle::derivative([&](double s) { return map_eval(m, s); }, t, 1e-4);
    CHECK(map_deriv(m, t) == doctest::Approx(fd).epsilon(1e-9));
  }
  // sinh addition identity at t = x + i pi/2
  SinhPolyMap plain;
  plain.u0 = 1.0;
  cplx v = map_eval(plain, cplx(0.7, 0.5 * kPi));
  CHECK(std::abs(v - cplx(0.0, std::cosh(0.7))) < 1e-14);
  SinhPolyMap quarter;
  quarter.u0 = 0.25 * kPi;
  CHECK(std::abs(map_eval(quarter, cplx(0.0, 0.0))) < 1e-15);
}

TEST_CASE("composed transforms are monotone and differentiate correctly") {
  SinhPolyMap inner;
  inner.u0 = 0.13912;
  inner.u = {0.19081, 0.21938};
  ConformalTransform ex1{OuterMap{OuterMapKind::FiniteTanh, -1.0, 1.0}, inner};
  ConformalTransform de =
      canonical_de_transform(OuterMap{OuterMapKind::SemiInfExp});
  SingleExpTransform se{OuterMap{OuterMapKind::SemiInfLog}, 1.0};
  LiteratureExpTransform lit;
  const Transform* transforms[] = {&ex1, &de, &se, &lit};
  // stay where the finite maps are not yet saturated in doubles
  for (const Transform* t : transforms) {
    double prev = t->forward(-2.5);
    for (double s = -2.4; s <= 2.5; s += 0.1) {
      const double cur = t->forward(s);
      CHECK(cur > prev);
      prev = cur;
      const double fd = oracle::derivative(
          [&](double z) { return t->forward(z); }, s, 1e-4);
      CHECK(t->derivative(s) ==
            doctest::Approx(fd).epsilon(1e-7));
    }
  }
  CHECK(lit.forward(0.0) == doctest::Approx(std::exp(-0.017)).epsilon(1e-15));
}

TEST_CASE("generic inverse round trips inside the target interval") {
  ConformalTransform de =
      canonical_de_transform(OuterMap{OuterMapKind::FiniteTanh, -1.0, 1.0});
  for (double t : {-2.0, -1.0, -0.3, 0.0, 0.5, 1.5, 2.5}) {
    const double x = de.forward(t);
    CHECK(de.inverse(x) == doctest::Approx(t).epsilon(1e-10));
  }
  SingleExpTransform se{OuterMap{OuterMapKind::SemiInfExp}, 1.0};
  for (double x : {0.01, 0.5, 1.0, 7.0, 300.0}) {
    CHECK(se.forward(se.inverse(x)) ==
          doctest::Approx(x).epsilon(1e-12));
  }
  CHECK_THROWS_AS((void)de.inverse(1.0), DomainError);
  CHECK_THROWS_AS((void)de.inverse(-1.2), DomainError);
  CHECK_THROWS_AS((void)se.inverse(0.0), DomainError);
}

TEST_CASE("linear transform is the identity") {
  LinearTransform lin;
  CHECK(lin.forward(1.7) == 1.7);
  CHECK(lin.derivative(-3.0) == 1.0);
  CHECK(lin.inverse(0.25) == 0.25);
  CHECK(lin.target().kind == Interval::Kind::Infinite);
}

TEST_CASE("target intervals and open containment") {
  OuterMap fin{OuterMapKind::FiniteTanh, 0.0, 2.0};
  Interval it = interval_of(fin);
  CHECK(it.kind == Interval::Kind::Finite);
  CHECK(it.a == 0.0);
  CHECK(it.b == 2.0);
  CHECK(it.contains_open(1.0));
  CHECK_FALSE(it.contains_open(0.0));
  CHECK_FALSE(it.contains_open(2.0));
  Interval half = interval_of(OuterMap{OuterMapKind::SemiInfLog});
  CHECK(half.kind == Interval::Kind::SemiInfinite);
  CHECK(half.contains_open(1e-12));
  CHECK_FALSE(half.contains_open(0.0));
  CHECK(interval_of(OuterMap{OuterMapKind::InfiniteSinh}).contains_open(-1e9));
}

TEST_CASE("finite map endpoints must be ordered") {
  CHECK_THROWS_AS(
      (void)canonical_de_transform(OuterMap{OuterMapKind::FiniteTanh, 1.0, 1.0}),
      ConfigError);
}

}  // TEST_SUITE
