#pragma once

#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "desinc/transform.hpp"

namespace desinc {

// An integration problem: integrand over the target interval, domain
// description, known singularity loci, and an optional reference value
// (NaN when absent).
//
// fused_weight means the integrand is already a node function g(t)
// with the transform weight folded in, so the engine must not multiply
// by phi' again.
//
// fused_family, when set, builds a floating-point-stable node function
// g(t) = f(phi(t)) phi'(t) for an arbitrary transform over this domain;
// the catalog provides these for integrands whose tails overflow under
// naive composition.
struct ProblemSpec {
  std::string name = "user";
  std::function<double(double)> integrand;
  OuterMap domain;
  std::vector<std::complex<double>> singularities;
  double reference = std::numeric_limits<double>::quiet_NaN();
  bool fused_weight = false;
  std::function<std::function<double(double)>(const Transform&)> fused_family;

  bool has_reference() const { return !std::isnan(reference); }
};

}  // namespace desinc
