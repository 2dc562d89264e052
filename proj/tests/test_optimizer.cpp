#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"

#include "desinc/catalog.hpp"
#include "desinc/errors.hpp"
#include "desinc/optimizer.hpp"
#include "desinc/transform.hpp"

using namespace desinc;
using cplx = std::complex<double>;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("optimizer") {

TEST_CASE("preimages reflect, sort, dedupe, and validate") {
  OuterMap fin01{OuterMapKind::FiniteTanh, 0.0, 1.0};
  auto single = preimages({cplx(0.5, 0.5)}, fin01);
  REQUIRE(single.size() == 1);
  CHECK(std::abs(single[0] - cplx(0.0, 0.25 * kPi)) < 1e-14);

  // lower-half singularity reflects up; the conjugate pair is one constraint
  auto lower = preimages({cplx(0.5, -0.5)}, fin01);
  REQUIRE(lower.size() == 1);
  CHECK(std::abs(lower[0] - cplx(0.0, 0.25 * kPi)) < 1e-14);
  auto pair = preimages({cplx(0.5, 0.5), cplx(0.5, -0.5)}, fin01);
  CHECK(pair.size() == 1);

  OuterMap fin{OuterMapKind::FiniteTanh, -1.0, 1.0};
  auto two = preimages({cplx(0.5, 0.5), cplx(-0.5, 1.0)}, fin);
  REQUIRE(two.size() == 2);
  CHECK(two[0].real() < two[1].real());

  // distinct poles over one abscissa stay distinct, nudged apart
  OuterMap inf{OuterMapKind::InfiniteSinh};
  const cplx w1(0.3, 0.4), w2(0.3, 0.9);
  auto tied = preimages({outer_forward(inf, w1), outer_forward(inf, w2)}, inf);
  REQUIRE(tied.size() == 2);
  CHECK(tied[1].real() - tied[0].real() == doctest::Approx(1e-9).epsilon(1e-3));
  CHECK(std::min(tied[0].imag(), tied[1].imag()) ==
        doctest::Approx(0.4).epsilon(1e-12));
  CHECK(std::max(tied[0].imag(), tied[1].imag()) ==
        doctest::Approx(0.9).epsilon(1e-12));

  // a real singularity has no strip preimage; a branch-cut point errors
  CHECK_THROWS_AS((void)preimages({cplx(0.5, 0.0)}, fin01), DomainError);
  CHECK_THROWS_AS((void)preimages({cplx(2.0, 0.0)}, fin01), DomainError);
}

TEST_CASE("single-pair program has the closed-form answer") {
  OuterMap fin01{OuterMapKind::FiniteTanh, 0.0, 1.0};
  auto p = preimages({cplx(0.5, 0.5), cplx(0.5, -0.5)}, fin01);
  ParameterSolution sol = solve_parameter_problem(p);
  CHECK(std::abs(sol.map.u0 - 0.25 * kPi) <= 1e-8);
  REQUIRE(sol.map.u.size() == 1);
  CHECK(std::abs(sol.map.u[0]) < 1e-8);
  REQUIRE(sol.nodes.size() == 1);
  CHECK(std::abs(sol.nodes[0]) < 1e-6);
  CHECK(sol.constraint_residual <= 1e-10);
  CHECK(sol.objective == sol.map.u0);
}

TEST_CASE("catalog problems reproduce the pinned maps") {
  struct Row {
    const char* name;
    double u0;
    std::vector<double> u;
  };
  const std::vector<Row> rows = {
      {"ex1", 0.1391201711269445, {0.19081158624832746, 0.2193815422298071}},
      {"ex2",
       5.771509354726912e-06,
       {0.2543147561177209, 0.14935783111404858, -0.004543342147859553,
        9.987955001251747e-05}},
      {"ex3",
       0.2672465406936717,
       {0.30707242372931257, 0.20336471766628774, -0.03196624591174697}},
      {"ex4",
       0.009435312800722446,
       {0.9335086104815726, 0.08408676166656482, -0.009984583899717694}},
  };
  for (const Row& row : rows) {
    CAPTURE(row.name);
    const CatalogEntry& e = catalog_entry(row.name);
    auto p = preimages(e.problem.singularities, e.problem.domain);
    ParameterSolution sol = solve_parameter_problem(p);
    CHECK(sol.constraint_residual <= 1e-10);
    CHECK(sol.map.u0 == doctest::Approx(row.u0).epsilon(1e-6));
    REQUIRE(sol.map.u.size() == row.u.size());
    for (std::size_t j = 0; j < row.u.size(); ++j)
      CHECK(std::abs(sol.map.u[j] - row.u[j]) < 1e-6);
    // the catalog's frozen map agrees with the live solve
    CHECK(e.optimized.u0 == doctest::Approx(sol.map.u0).epsilon(1e-5));

    ParameterSolution again = solve_parameter_problem(p);
    CHECK(again.map.u0 == sol.map.u0);  // bitwise repeatable
  }
}

TEST_CASE("collinear start satisfies its deformed constraints") {
  std::vector<cplx> p = {cplx(-0.45314447, 2.92253373),
                         cplx(0.45340399, 0.56807545),
                         cplx(0.70937424, 3.14108997)};
  ParameterSolution g = initial_guess(p);
  CHECK(g.map.u0 == doctest::Approx(0.56807545).epsilon(1e-12));
  CHECK(g.constraint_residual < 1e-10);
  CHECK(g.nodes.size() == p.size());
  CHECK_THROWS_AS((void)initial_guess({}), ConfigError);
}

TEST_CASE("decay coefficient follows the outer map") {
  ParameterSolution sol;
  sol.map.u0 = 0.5;
  CHECK(beta2_of(sol, OuterMap{OuterMapKind::FiniteTanh, -1.0, 1.0}) == 0.25);
  CHECK(beta2_of(sol, OuterMap{OuterMapKind::InfiniteSinh, 0.0, 0.0}) == 0.5);
  CHECK(beta2_of(sol, OuterMap{OuterMapKind::SemiInfLog, 0.0, 0.0}) == 0.5);
  CHECK(beta2_of(sol, OuterMap{OuterMapKind::SemiInfExp, 0.0, 0.0}) == 0.5);
}

TEST_CASE("constraint residual measures the worst violation") {
  SinhPolyMap m;
  m.u0 = 1.0;
  m.u = {0.0};
  std::vector<double> nodes{0.3};
  std::vector<cplx> targets{cplx(0.0, std::cosh(0.3))};
  CHECK(constraint_residual_of(m, nodes, targets) < 1e-15);
  targets[0] += cplx(0.0, 0.25);
  CHECK(constraint_residual_of(m, nodes, targets) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS((void)constraint_residual_of(m, {0.1, 0.2}, targets),
                  ConfigError);
}

}  // TEST_SUITE
