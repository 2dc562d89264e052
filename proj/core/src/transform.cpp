#include "desinc/transform.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace desinc {

namespace {

double softplus(double y) {
  return std::max(y, 0.0) + std::log1p(std::exp(-std::abs(y)));
}

// sech^2(z) without overflow: 4 q / (1+q)^2 with q = e^{-2|z|}.
double sech2(double z) {
  const double q = std::exp(-2.0 * std::abs(z));
  const double r = 1.0 + q;
  return 4.0 * q / (r * r);
}

void require_ordered(const OuterMap& outer) {
  if (outer.kind == OuterMapKind::FiniteTanh && !(outer.a < outer.b))
    throw ConfigError("finite outer map requires a < b");
}

}  // namespace

double outer_forward(const OuterMap& map, double z) {
  switch (map.kind) {
    case OuterMapKind::FiniteTanh:
      return 0.5 * (map.b - map.a) * std::tanh(z) + 0.5 * (map.b + map.a);
    case OuterMapKind::InfiniteSinh:
      return std::sinh(z);
    case OuterMapKind::SemiInfLog:
      return softplus(z);
    case OuterMapKind::SemiInfExp:
      return std::exp(z);
  }
  return 0.0;
}

std::complex<double> outer_forward(const OuterMap& map, std::complex<double> z) {
  switch (map.kind) {
    case OuterMapKind::FiniteTanh:
      return 0.5 * (map.b - map.a) * std::tanh(z) + 0.5 * (map.b + map.a);
    case OuterMapKind::InfiniteSinh:
      return std::sinh(z);
    case OuterMapKind::SemiInfLog:
      return std::log(std::exp(z) + 1.0);
    case OuterMapKind::SemiInfExp:
      return std::exp(z);
  }
  return {};
}

double outer_derivative(const OuterMap& map, double z) {
  switch (map.kind) {
    case OuterMapKind::FiniteTanh:
      return 0.5 * (map.b - map.a) * sech2(z);
    case OuterMapKind::InfiniteSinh:
      return std::cosh(z);
    case OuterMapKind::SemiInfLog:
      // logistic; underflows to 0 for very negative z
      return 1.0 / (1.0 + std::exp(-z));
    case OuterMapKind::SemiInfExp:
      return std::exp(z);
  }
  return 0.0;
}

std::complex<double> outer_inverse(const OuterMap& map, std::complex<double> s) {
  switch (map.kind) {
    case OuterMapKind::FiniteTanh: {
      const std::complex<double> w =
          (s - 0.5 * (map.b + map.a)) / (0.5 * (map.b - map.a));
      if (w.imag() == 0.0 && std::abs(w.real()) >= 1.0)
        throw DomainError("outer_inverse: argument on the atanh branch cut");
      return std::atanh(w);
    }
    case OuterMapKind::InfiniteSinh:
      if (s.real() == 0.0 && std::abs(s.imag()) >= 1.0)
        throw DomainError("outer_inverse: argument on the asinh branch cut");
      return std::asinh(s);
    case OuterMapKind::SemiInfLog: {
      const std::complex<double> w = std::exp(s) - 1.0;
      if (w.imag() == 0.0 && w.real() <= 0.0)
        throw DomainError("outer_inverse: argument on the log branch cut");
      return std::log(w);
    }
    case OuterMapKind::SemiInfExp:
      if (s.imag() == 0.0 && s.real() <= 0.0)
        throw DomainError("outer_inverse: argument on the log branch cut");
      return std::log(s);
  }
  return {};
}

double map_eval(const SinhPolyMap& map, double t) {
  double p = 0.0;
  for (std::size_t j = map.u.size(); j-- > 0;) p = p * t + map.u[j];
  return map.u0 * std::sinh(t) + p;
}

double map_deriv(const SinhPolyMap& map, double t) {
  double p = 0.0;
  for (std::size_t j = map.u.size(); j-- > 1;)
    p = p * t + static_cast<double>(j) * map.u[j];
  return map.u0 * std::cosh(t) + p;
}

std::complex<double> map_eval(const SinhPolyMap& map, std::complex<double> t) {
  std::complex<double> p = 0.0;
  for (std::size_t j = map.u.size(); j-- > 0;) p = p * t + map.u[j];
  return map.u0 * std::sinh(t) + p;
}

std::complex<double> map_deriv(const SinhPolyMap& map, std::complex<double> t) {
  std::complex<double> p = 0.0;
  for (std::size_t j = map.u.size(); j-- > 1;)
    p = p * t + static_cast<double>(j) * map.u[j];
  return map.u0 * std::cosh(t) + p;
}

bool Interval::contains_open(double x) const {
  switch (kind) {
    case Kind::Finite:
      return x > a && x < b;
    case Kind::SemiInfinite:
      return x > 0.0;
    case Kind::Infinite:
      return std::isfinite(x);
  }
  return false;
}

Interval interval_of(const OuterMap& map) {
  switch (map.kind) {
    case OuterMapKind::FiniteTanh:
      return Interval{Interval::Kind::Finite, map.a, map.b};
    case OuterMapKind::InfiniteSinh:
      return Interval{Interval::Kind::Infinite, 0.0, 0.0};
    case OuterMapKind::SemiInfLog:
    case OuterMapKind::SemiInfExp:
      return Interval{Interval::Kind::SemiInfinite, 0.0, 0.0};
  }
  return Interval{};
}

double Transform::inverse(double x) const { return transform_inverse(*this, x); }

double transform_inverse(const Transform& transform, double x) {
  if (!transform.target().contains_open(x))
    throw DomainError("transform_inverse: point outside the open target interval");

  const double tol = 1e-14 * std::max(1.0, std::abs(x));

  // grow a bracket [lo, hi] with phi(lo) < x < phi(hi)
  double lo = -1.0, hi = 1.0;
  for (int i = 0; i < 700 && transform.forward(hi) < x; ++i) hi *= 2.0;
  for (int i = 0; i < 700 && transform.forward(lo) > x; ++i) lo *= 2.0;
  double flo = transform.forward(lo), fhi = transform.forward(hi);
  if (!(flo <= x && x <= fhi))
    throw DomainError("transform_inverse: failed to bracket the preimage");

  double t = 0.0;
  if (t < lo || t > hi) t = 0.5 * (lo + hi);
  double best_t = t;
  double best_r = std::numeric_limits<double>::infinity();

  for (int it = 0; it < 500; ++it) {
    const double f = transform.forward(t);
    const double r = f - x;
    if (std::abs(r) < best_r) {
      best_r = std::abs(r);
      best_t = t;
    }
    if (std::abs(r) <= tol) return t;
    if (r > 0.0)
      hi = t;
    else
      lo = t;
    const double d = transform.derivative(t);
    double next = (d > 0.0 && std::isfinite(d)) ? t - r / d : t;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == t) next = 0.5 * (lo + hi);
    if (next == t) break;  // bracket collapsed to adjacent floats
    t = next;
  }
  return best_t;
}

ConformalTransform::ConformalTransform(OuterMap outer, SinhPolyMap inner,
                                       std::string label)
    : outer_(outer), inner_(std::move(inner)), label_(std::move(label)) {
  require_ordered(outer_);
  if (label_.empty()) label_ = "conformal";
}

double ConformalTransform::forward(double t) const {
  return outer_forward(outer_, map_eval(inner_, t));
}

double ConformalTransform::derivative(double t) const {
  return outer_derivative(outer_, map_eval(inner_, t)) * map_deriv(inner_, t);
}

Interval ConformalTransform::target() const { return interval_of(outer_); }

std::string ConformalTransform::label() const { return label_; }

SingleExpTransform::SingleExpTransform(OuterMap outer, double slope,
                                       std::string label)
    : outer_(outer), slope_(slope), label_(std::move(label)) {
  require_ordered(outer_);
  if (!(slope_ > 0.0))
    throw ConfigError("single-exponential transform requires a positive slope");
  if (label_.empty()) label_ = "se";
}

double SingleExpTransform::forward(double t) const {
  return outer_forward(outer_, slope_ * t);
}

double SingleExpTransform::derivative(double t) const {
  return slope_ * outer_derivative(outer_, slope_ * t);
}

Interval SingleExpTransform::target() const { return interval_of(outer_); }

std::string SingleExpTransform::label() const { return label_; }

double LiteratureExpTransform::forward(double t) const {
  return std::exp(0.22 * t - 0.017 * std::exp(-t));
}

double LiteratureExpTransform::derivative(double t) const {
  const double e = std::exp(-t);
  return forward(t) * (0.22 + 0.017 * e);
}

Interval LiteratureExpTransform::target() const {
  return Interval{Interval::Kind::SemiInfinite, 0.0, 0.0};
}

std::string LiteratureExpTransform::label() const { return "de-lit"; }

ConformalTransform canonical_de_transform(const OuterMap& outer) {
  SinhPolyMap inner;
  inner.u0 = 1.5707963267948966;  // pi/2
  return ConformalTransform(outer, inner, "de");
}

}  // namespace desinc
