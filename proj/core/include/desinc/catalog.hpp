#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "desinc/hilbert.hpp"
#include "desinc/problem.hpp"
#include "desinc/quadrature.hpp"
#include "desinc/transform.hpp"

namespace desinc {

// One ready-to-run integration scheme for a catalog problem: a transform,
// the decay parameters feeding its step rule, and a node-space evaluator
// g(t) = f(phi(t)) phi'(t) with the overflow-prone factors fused.
struct CatalogScheme {
  std::string label;  // "se", "de", "de-lit", "opt"
  std::shared_ptr<const Transform> transform;
  DecayParams params;
  std::function<double(double)> fused;
};

struct CatalogEntry {
  std::string name;
  std::string expression;  // parser form of the integrand
  ProblemSpec problem;     // guarded x-space form with singularity list
  std::vector<CatalogScheme> schemes;
  SinhPolyMap optimized;   // frozen parameter-program output (u empty if none)

  const CatalogScheme& scheme(const std::string& label) const;
};

// The worked integration problems: ex1 (finite interval with endpoint
// blowups), ex2 (real line, oscillatory), ex3 (half-line, log map),
// ex4 (half-line, exp map), ex5 (finite, single pole pair), and the
// even tanh integral over the real line.
const std::vector<CatalogEntry>& catalog();
const CatalogEntry& catalog_entry(const std::string& name);

// Traveling-wave demonstration problem: three Lorentzian bumps riding at
// wave speed 1, with the frozen optimized map for their pole pairs and
// the step parameters for the interpolation-oriented rules.
struct BOScheme {
  std::string label;  // "se", "de", "opt"
  std::shared_ptr<const Transform> transform;
  DecayParams params;
};

struct BOConfig {
  LorentzianSumSolution solution;
  double wave_speed = 1.0;
  std::vector<std::complex<double>> singularities;
  SinhPolyMap optimized;
  std::vector<BOScheme> schemes;

  const BOScheme& scheme(const std::string& label) const;
};

const BOConfig& bo_config();

}  // namespace desinc
