#include "desinc/sinc.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

#include "desinc/optimizer.hpp"

namespace desinc {

namespace {
constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;
constexpr double kHalfPi = 1.5707963267948966;
}  // namespace

double sinc_basis(int j, double step, double x) {
  if (!(step > 0.0)) throw ConfigError("sinc_basis: step must be positive");
  const double u = x / step - static_cast<double>(j);
  const double m = std::nearbyint(u);
  if (u == m) return m == 0.0 ? 1.0 : 0.0;
  const double pu = kPi * u;
  return std::sin(pu) / pu;
}

double sinc_eval(const SincExpansion& e, double x) {
  if (!e.transform) throw ConfigError("sinc_eval: expansion has no transform");
  if (!(e.step > 0.0)) throw ConfigError("sinc_eval: step must be positive");
  const int n = e.n();
  const double t = e.transform->inverse(x);
  const double u = t / e.step;
  const double m = std::nearbyint(u);
  if (std::abs(u - m) <= 1e-12) {
    const long jm = std::lround(m);
    if (jm >= -n && jm <= n) return e.coefficients[jm + n];
    return 0.0;
  }
  // S(j)(t) = (-1)^j sin(pi u) / (pi (u - j))
  const double spu = std::sin(kPi * u) / kPi;
  double acc = 0.0;
  for (int j = -n; j <= n; ++j) {
    const double sgn = (std::abs(j) % 2 == 0) ? 1.0 : -1.0;
    acc += e.coefficients[j + n] * sgn / (u - j);
  }
  return spu * acc;
}

SincPadeApproximant fit_sinc_pade(
    const std::vector<std::pair<double, double>>& samples, int r, int s,
    double step) {
  const int m = static_cast<int>(samples.size());
  if (r < 0 || s < 0) throw ConfigError("fit_sinc_pade: negative degree");
  if (m != r + s + 1)
    throw ConfigError("fit_sinc_pade: need exactly r+s+1 samples");

  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, r + s + 1);
  Eigen::VectorXd b(m);
  for (int k = 0; k < m; ++k) {
    const double xk = samples[k].first;
    const double fk = samples[k].second;
    double pw = 1.0;
    for (int i = 0; i <= r; ++i) {
      A(k, i) = pw;
      pw *= xk;
    }
    pw = xk;
    for (int j = 1; j <= s; ++j) {
      A(k, r + j) = -fk * pw;
      pw *= xk;
    }
    b[k] = fk;
  }

  Eigen::VectorXd scale(r + s + 1);
  for (int c = 0; c < r + s + 1; ++c) {
    scale[c] = A.col(c).cwiseAbs().maxCoeff();
    if (scale[c] == 0.0) scale[c] = 1.0;
  }
  const Eigen::MatrixXd As = A * scale.cwiseInverse().asDiagonal();

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(As, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double smin = sv[sv.size() - 1];
  const double cond = smin > 0.0 ? sv[0] / smin
                                 : std::numeric_limits<double>::infinity();

  // Central-window sample sets are extremely ill-conditioned by design, so
  // the truncated solve below must still run at condition numbers past
  // 1/eps. Only structural degeneracy (a zero column or repeated
  // abscissas) is rejected here.
  if (!(smin > sv[0] * 1e-30))
    throw IllConditioningError("fit_sinc_pade: rank-deficient system", cond);
  Eigen::VectorXd coef = svd.solve(b);
  coef = coef.cwiseQuotient(scale);

  SincPadeApproximant out;
  out.p.assign(coef.data(), coef.data() + r + 1);
  out.q.assign(coef.data() + r + 1, coef.data() + r + s + 1);
  out.step = step;
  out.fit_residual = (A * coef - b).cwiseAbs().maxCoeff();
  out.condition = cond;
  return out;
}

PadePoles pade_poles(const SincPadeApproximant& a, int count) {
  if (count < 0) throw ConfigError("pade_poles: negative count");
  // ascending denominator coefficients, constant term 1
  std::vector<double> c;
  c.push_back(1.0);
  c.insert(c.end(), a.q.begin(), a.q.end());
  int deg = static_cast<int>(c.size()) - 1;
  while (deg > 0 && c[deg] == 0.0) --deg;

  PadePoles out;
  if (deg == 0) {
    out.shortfall = count > 0;
    return out;
  }

  // variable scaling x = alpha y balances the companion matrix
  const double alpha = std::pow(std::abs(c[deg]), -1.0 / deg);
  std::vector<double> cs(deg + 1);
  double pw = 1.0;
  for (int i = 0; i <= deg; ++i) {
    cs[i] = c[i] * pw;
    pw *= alpha;
  }
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -cs[i] / cs[deg];

  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  std::vector<std::complex<double>> up;
  for (int i = 0; i < deg; ++i) {
    const std::complex<double> z = alpha * es.eigenvalues()[i];
    if (z.imag() > 1e-6) up.push_back(z);
  }
  std::sort(up.begin(), up.end(),
            [](const std::complex<double>& l, const std::complex<double>& r) {
              return std::abs(l.imag()) < std::abs(r.imag());
            });
  out.shortfall = static_cast<int>(up.size()) < count;
  if (static_cast<int>(up.size()) > count) up.resize(count);
  out.poles = std::move(up);
  return out;
}

namespace {

double integrate_current(const ProblemSpec& problem, const Transform& t,
                         const RuleConfig& cfg) {
  if (problem.fused_family)
    return trapezoid_nodes(problem.fused_family(t), cfg);
  return trapezoid(problem.integrand, t, cfg);
}

}  // namespace

AdaptiveResult adaptive_integrate(const ProblemSpec& problem,
                                  OuterMapKind outer, double eps) {
  if (!(eps > 1e-14))
    throw ConfigError("adaptive_integrate: eps must exceed 1e-14");
  if (problem.fused_weight && !problem.fused_family)
    throw ConfigError(
        "adaptive_integrate: a node-space integrand cannot follow an "
        "evolving map; provide an interval-space integrand");
  if (!problem.integrand)
    throw ConfigError("adaptive_integrate: missing integrand");

  const double tiny = std::numeric_limits<double>::min();
  OuterMap om{outer, problem.domain.a, problem.domain.b};

  SinhPolyMap inner;
  inner.u0 = kHalfPi;
  auto transform = std::make_shared<ConformalTransform>(om, inner, "de");
  // phase-1 mesh: the widest step the DE error model allows at d = pi/2
  std::function<double(int)> step_of = [](int n) {
    return std::log(kTwoPi * n) / n;
  };

  AdaptiveResult result;
  int n = 1;
  double a_prev =
      integrate_current(problem, *transform, RuleConfig{n, step_of(n)});
  double est = std::numeric_limits<double>::infinity();

  while (est >= 1e-3 && n < (1 << 16)) {
    n *= 2;
    const double a =
        integrate_current(problem, *transform, RuleConfig{n, step_of(n)});
    est = std::abs(a - a_prev) / std::max(std::abs(a), tiny);
    AdaptiveIteration it;
    it.phase = 1;
    it.n = n;
    it.value = a;
    it.estimate = est;
    it.map = transform->inner();
    result.history.push_back(it);
    a_prev = a;
  }

  while (est >= eps && n <= (1 << 14)) {
    const int k = static_cast<int>(std::lround(std::log2(n)));
    const int r = std::max(k - 2, 0);
    const int s = k + 2;

    AdaptiveIteration it;
    it.phase = 2;
    it.fallback = true;
    const double h = step_of(n);
    try {
      std::vector<std::pair<double, double>> samples;
      for (int kk = -((r + s) / 2); kk <= (r + s + 1) / 2; ++kk) {
        const double x = transform->forward(kk * h);
        samples.emplace_back(x, problem.integrand(x));
      }
      SincPadeApproximant fit = fit_sinc_pade(samples, r, s, h);
      PadePoles pp = pade_poles(fit, 4);
      it.poles = pp.poles;

      // strip preimages of the estimated loci; stray poles are dropped
      std::vector<std::complex<double>> pre;
      for (const auto& z : pp.poles) {
        try {
          std::complex<double> w = outer_inverse(om, z);
          if (w.imag() < 0.0) w = std::conj(w);
          if (w.imag() > 0.0 && w.imag() < kPi) pre.push_back(w);
        } catch (const DomainError&) {
        }
      }
      std::sort(pre.begin(), pre.end(),
                [](const std::complex<double>& l, const std::complex<double>& r2) {
                  return l.real() < r2.real();
                });
      for (std::size_t i = 1; i < pre.size(); ++i)
        if (pre[i].real() - pre[i - 1].real() < 1e-12)
          pre[i] = {pre[i - 1].real() + 1e-9, pre[i].imag()};

      if (!pre.empty()) {
        ParameterSolution sol = solve_parameter_problem(pre);
        transform = std::make_shared<ConformalTransform>(om, sol.map, "opt");
        const double b2 = beta2_of(sol, om);
        step_of = [b2](int nn) {
          return optimal_step(DecayParams{1.0, b2, kHalfPi, true}, nn, false);
        };
        it.fallback = false;
      }
    } catch (const Error&) {
      // keep the previous map and continue doubling
    }

    n *= 2;
    const double a =
        integrate_current(problem, *transform, RuleConfig{n, step_of(n)});
    est = std::abs(a - a_prev) / std::max(std::abs(a), tiny);
    it.n = n;
    it.value = a;
    it.estimate = est;
    it.map = transform->inner();
    result.history.push_back(it);
    a_prev = a;
  }

  result.value = a_prev;
  result.estimate = est;
  result.n_final = n;
  result.final_map = transform->inner();
  return result;
}

}  // namespace desinc
