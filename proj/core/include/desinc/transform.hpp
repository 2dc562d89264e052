#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "desinc/errors.hpp"

namespace desinc {

// The four canonical outer maps psi from the real line onto the target
// interval. FiniteTanh carries its endpoints; the others ignore a and b.
enum class OuterMapKind { FiniteTanh, InfiniteSinh, SemiInfLog, SemiInfExp };

struct OuterMap {
  OuterMapKind kind = OuterMapKind::InfiniteSinh;
  double a = -1.0;
  double b = 1.0;
};

// psi(z): FiniteTanh   (b-a)/2 tanh(z) + (b+a)/2
//         InfiniteSinh sinh(z)
//         SemiInfLog   log(e^z + 1)
//         SemiInfExp   e^z
double outer_forward(const OuterMap& map, double z);
std::complex<double> outer_forward(const OuterMap& map, std::complex<double> z);

// psi'(z), arranged to underflow rather than overflow where possible.
double outer_derivative(const OuterMap& map, double z);

// Principal preimage psi^{-1}(s). Arguments on a branch cut signal
// DomainError.
std::complex<double> outer_inverse(const OuterMap& map, std::complex<double> s);

// Inner map h(t) = u0 sinh(t) + sum_j u[j] t^j (u[0] is the constant term).
struct SinhPolyMap {
  double u0 = 1.0;
  std::vector<double> u;
};

double map_eval(const SinhPolyMap& map, double t);
double map_deriv(const SinhPolyMap& map, double t);
std::complex<double> map_eval(const SinhPolyMap& map, std::complex<double> t);
std::complex<double> map_deriv(const SinhPolyMap& map, std::complex<double> t);

// Target interval of a transform, used for domain checks and inversion.
struct Interval {
  enum class Kind { Finite, SemiInfinite, Infinite };
  Kind kind = Kind::Infinite;
  double a = 0.0;
  double b = 0.0;

  bool contains_open(double x) const;
};

Interval interval_of(const OuterMap& map);

// A monotone change of variables phi: R -> target interval.
class Transform {
 public:
  virtual ~Transform() = default;
  virtual double forward(double t) const = 0;
  virtual double derivative(double t) const = 0;
  virtual Interval target() const = 0;
  virtual std::string label() const = 0;
  virtual double inverse(double x) const;
};

// Generic monotone inversion: Newton from t = 0 inside a geometrically
// grown bracket with a bisection safeguard. Converges to
// |phi(t) - x| <= 1e-14 max(1, |x|). x outside the open target interval
// signals DomainError.
double transform_inverse(const Transform& transform, double x);

// phi = psi(h(t)) with a sinh-polynomial inner map.
class ConformalTransform final : public Transform {
 public:
  ConformalTransform(OuterMap outer, SinhPolyMap inner, std::string label = "");
  double forward(double t) const override;
  double derivative(double t) const override;
  Interval target() const override;
  std::string label() const override;
  const OuterMap& outer() const { return outer_; }
  const SinhPolyMap& inner() const { return inner_; }

 private:
  OuterMap outer_;
  SinhPolyMap inner_;
  std::string label_;
};

// phi = psi(c t), the single-exponential family.
class SingleExpTransform final : public Transform {
 public:
  SingleExpTransform(OuterMap outer, double slope, std::string label = "");
  double forward(double t) const override;
  double derivative(double t) const override;
  Interval target() const override;
  std::string label() const override;
  const OuterMap& outer() const { return outer_; }
  double slope() const { return slope_; }

 private:
  OuterMap outer_;
  double slope_;
  std::string label_;
};

// Fixed half-line map phi(t) = exp(0.22 t - 0.017 e^{-t}) from the
// published comparison study; kept as a catalog transform.
class LiteratureExpTransform final : public Transform {
 public:
  LiteratureExpTransform() = default;
  double forward(double t) const override;
  double derivative(double t) const override;
  Interval target() const override;
  std::string label() const override;
};

// phi(t) = t. Used for band-limited data on the real line, where the
// trapezoidal sampling is already exponentially accurate.
class LinearTransform final : public Transform {
 public:
  LinearTransform() = default;
  double forward(double t) const override { return t; }
  double derivative(double) const override { return 1.0; }
  double inverse(double x) const override { return x; }
  Interval target() const override { return Interval{Interval::Kind::Infinite, 0.0, 0.0}; }
  std::string label() const override { return "linear"; }
};

// Canonical double-exponential composition psi((pi/2) sinh t).
ConformalTransform canonical_de_transform(const OuterMap& outer);

}  // namespace desinc
