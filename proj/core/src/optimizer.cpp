#include "desinc/optimizer.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iostream>
#include <limits>
#include <optional>

namespace desinc {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

constexpr double kHalfPi = 1.5707963267948966;

struct Pieces {
  VectorXd C;   // 2n-1 constraint residuals
  VectorXd g0;  // gradient of u0 in (u, x)
  MatrixXd J;   // constraint Jacobian
  double u0 = 0.0;
  MatrixXd H;   // Lagrangian Hessian, filled only when lam is present
};

// Residuals, gradient of the eliminated objective u0 = S/D, constraint
// Jacobian, and (optionally) the Lagrangian Hessian with exact second
// derivatives. Variable order is (u_1..u_n, x_1..x_n).
Pieces kkt_pieces(const VectorXd& u, const VectorXd& x, const VectorXd& dt,
                  const VectorXd& et, const VectorXd* lam) {
  const int n = static_cast<int>(u.size());
  Pieces out;

  Eigen::MatrixXcd W(n, n), Wd(n, n);
  Eigen::VectorXcd P(n), P1(n), P2(n);
  VectorXd ch(n), sh(n);
  for (int k = 0; k < n; ++k) {
    const cplx w(x[k], kHalfPi);
    cplx pw = 1.0;
    for (int j = 0; j < n; ++j) {
      W(k, j) = pw;
      Wd(k, j) = (j >= 1) ? static_cast<double>(j) * W(k, j - 1) : cplx(0.0);
      pw *= w;
    }
    cplx p = 0.0, p1 = 0.0, p2 = 0.0;
    for (int j = n - 1; j >= 0; --j) p = p * w + u[j];
    for (int j = n - 1; j >= 1; --j) p1 = p1 * w + static_cast<double>(j) * u[j];
    for (int j = n - 1; j >= 2; --j)
      p2 = p2 * w + static_cast<double>(j * (j - 1)) * u[j];
    P[k] = p;
    P1[k] = p1;
    P2[k] = p2;
    ch[k] = std::cosh(x[k]);
    sh[k] = std::sinh(x[k]);
  }

  double S = 0.0;
  for (int k = 0; k < n; ++k) S += et[k] - P[k].imag();
  const double D = ch.sum();
  const double u0 = S / D;
  out.u0 = u0;

  VectorXd gS = VectorXd::Zero(2 * n), gD = VectorXd::Zero(2 * n);
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int k = 0; k < n; ++k) col += W(k, j).imag();
    gS[j] = -col;
  }
  for (int k = 0; k < n; ++k) {
    gS[n + k] = -P1[k].imag();
    gD[n + k] = sh[k];
  }
  const VectorXd g0 = (gS * D - S * gD) / (D * D);
  out.g0 = g0;

  out.C.resize(2 * n - 1);
  for (int k = 0; k < n; ++k) out.C[k] = P[k].real() - dt[k];
  for (int k = 0; k < n - 1; ++k)
    out.C[n + k] = u0 * ch[k] + P[k].imag() - et[k];

  out.J = MatrixXd::Zero(2 * n - 1, 2 * n);
  for (int k = 0; k < n; ++k) {
    for (int j = 0; j < n; ++j) out.J(k, j) = W(k, j).real();
    out.J(k, n + k) = P1[k].real();
  }
  for (int k = 0; k < n - 1; ++k) {
    for (int i = 0; i < 2 * n; ++i) out.J(n + k, i) = g0[i] * ch[k];
    for (int j = 0; j < n; ++j) out.J(n + k, j) += W(k, j).imag();
    out.J(n + k, n + k) += u0 * sh[k] + P1[k].imag();
  }

  if (lam == nullptr) return out;

  // Hessian of u0 = S/D
  MatrixXd HS = MatrixXd::Zero(2 * n, 2 * n), HD = MatrixXd::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      HS(j, n + k) = -Wd(k, j).imag();
      HS(n + k, j) = -Wd(k, j).imag();
    }
  for (int k = 0; k < n; ++k) {
    HS(n + k, n + k) = -P2[k].imag();
    HD(n + k, n + k) = ch[k];
  }
  const MatrixXd H0 = HS / D - (gS * gD.transpose() + gD * gS.transpose()) / (D * D)
                      - S * HD / (D * D)
                      + 2.0 * S * (gD * gD.transpose()) / (D * D * D);

  MatrixXd H = H0;
  for (int k = 0; k < n; ++k) {
    const double m = (*lam)[k];
    for (int j = 0; j < n; ++j) {
      H(j, n + k) -= m * Wd(k, j).real();
      H(n + k, j) -= m * Wd(k, j).real();
    }
    H(n + k, n + k) -= m * P2[k].real();
  }
  for (int k = 0; k < n - 1; ++k) {
    const double m = (*lam)[n + k];
    H -= m * ch[k] * H0;
    VectorXd hx = VectorXd::Zero(2 * n);
    for (int j = 0; j < n; ++j) hx[j] = Wd(k, j).imag();
    hx[n + k] += u0 * ch[k] + P2[k].imag();
    VectorXd ek = VectorXd::Zero(2 * n);
    ek[n + k] = 1.0;
    const VectorXd gsh = g0 * sh[k];
    H -= m * (gsh * ek.transpose() + ek * gsh.transpose());
    H -= m * (ek * hx.transpose() + hx * ek.transpose());
    // the two outer products double count the (n+k, n+k) entry
    H(n + k, n + k) += m * hx[n + k];
  }
  out.H = std::move(H);
  return out;
}

VectorXd solve_square(const MatrixXd& A, const VectorXd& b) {
  VectorXd d = A.partialPivLu().solve(b);
  if (!d.allFinite()) d = A.colPivHouseholderQr().solve(b);
  return d;
}

struct KktState {
  VectorXd u, x;
  std::optional<VectorXd> lam;
  double u0 = 0.0;
  bool ok = false;
  int active = 0;
};

// Newton corrector on the KKT system at fixed targets (dt, et), with
// backtracking on the merit ||F|| and an active-set fallback for the
// node-spread bound |x_1 + x_n| <= xbar.
KktState solve_kkt(const VectorXd& dt, const VectorXd& et, VectorXd u,
                   VectorXd x, std::optional<VectorXd> lam, double xbar,
                   int maxit = 200, double tol = 1e-11) {
  const int n = static_cast<int>(u.size());
  int active = 0;
  for (int it = 0; it < maxit; ++it) {
    if (active == 0) {
      Pieces pc = kkt_pieces(u, x, dt, et, nullptr);
      if (!lam) {
        // least-squares multiplier estimate from J^T lam = g0
        lam = pc.J.transpose().colPivHouseholderQr().solve(pc.g0).eval();
      }
      Pieces pch = kkt_pieces(u, x, dt, et, &*lam);
      const VectorXd G = pc.g0 - pc.J.transpose() * (*lam);
      VectorXd F(4 * n - 1);
      F << G, pc.C;
      if (std::max(pc.C.cwiseAbs().maxCoeff(), G.cwiseAbs().maxCoeff()) < tol &&
          std::abs(x[0] + x[n - 1]) <= xbar + 1e-9)
        return {u, x, lam, pc.u0, true, active};

      MatrixXd KKT = MatrixXd::Zero(4 * n - 1, 4 * n - 1);
      KKT.topLeftCorner(2 * n, 2 * n) = pch.H;
      KKT.topRightCorner(2 * n, 2 * n - 1) = -pc.J.transpose();
      KKT.bottomLeftCorner(2 * n - 1, 2 * n) = pc.J;
      const VectorXd d = solve_square(KKT, -F);

      const double base = F.norm();
      double t = 1.0;
      VectorXd un, xn, ln;
      for (int bt = 0; bt < 30; ++bt) {
        un = u + t * d.head(n);
        xn = x + t * d.segment(n, n);
        ln = *lam + t * d.tail(2 * n - 1);
        Pieces pn = kkt_pieces(un, xn, dt, et, nullptr);
        VectorXd Fn(4 * n - 1);
        Fn << pn.g0 - pn.J.transpose() * ln, pn.C;
        if (Fn.norm() < (1.0 - 1e-4 * t) * base || t < 1e-6) break;
        t /= 2.0;
      }
      u = un;
      x = xn;
      lam = ln;

      const double s = x[0] + x[n - 1];
      if (std::abs(s) > xbar) {
        const double sign = (s > 0.0) ? 1.0 : -1.0;
        const double shift = (s - sign * xbar) / 2.0;
        x[0] -= shift;
        x[n - 1] -= shift;
        if (it > 2) {
          active = (s > 0.0) ? 1 : -1;
          lam.reset();
        }
      }
    } else {
      // square system: C(v) = 0 together with x_1 + x_n = active * xbar
      Pieces pc = kkt_pieces(u, x, dt, et, nullptr);
      VectorXd row = VectorXd::Zero(2 * n);
      row[n] = 1.0;
      row[2 * n - 1] = 1.0;
      VectorXd Ca(2 * n);
      Ca << pc.C, x[0] + x[n - 1] - active * xbar;
      if (Ca.cwiseAbs().maxCoeff() < tol) return {u, x, lam, pc.u0, true, active};
      MatrixXd Ja(2 * n, 2 * n);
      Ja << pc.J, row.transpose();
      const VectorXd d = solve_square(Ja, -Ca);

      const double base = Ca.norm();
      double t = 1.0;
      VectorXd un, xn;
      for (int bt = 0; bt < 30; ++bt) {
        un = u + t * d.head(n);
        xn = x + t * d.tail(n);
        Pieces pn = kkt_pieces(un, xn, dt, et, nullptr);
        VectorXd C2a(2 * n);
        C2a << pn.C, xn[0] + xn[n - 1] - active * xbar;
        if (C2a.norm() < (1.0 - 1e-4 * t) * base || t < 1e-6) break;
        t /= 2.0;
      }
      u = un;
      x = xn;
    }
  }
  double u0 = kkt_pieces(u, x, dt, et, nullptr).u0;
  return {u, x, std::nullopt, u0, false, active};
}

struct Start {
  double ebar = 0.0;
  VectorXd u, x;
};

Start collinear_start(const VectorXd& dt, const VectorXd& et) {
  const int n = static_cast<int>(dt.size());
  Start st;
  int kbar = 0;
  et.minCoeff(&kbar);
  st.ebar = et[kbar];
  st.u = VectorXd::Zero(n);
  st.u[0] = dt[kbar];
  st.x.resize(n);
  for (int k = 0; k < n; ++k) {
    st.x[k] = std::acosh(std::max(et[k] / st.ebar, 1.0));
    if (k < kbar) st.x[k] = -st.x[k];
  }
  return st;
}

struct HomotopyRun {
  VectorXd u, x;
  double u0 = 0.0;
  bool ok = false;
  double failed_tau = 0.0;
};

HomotopyRun homotopy_kkt(const VectorXd& dt, const VectorXd& et, int steps,
                         double xbar, bool ascending) {
  const int n = static_cast<int>(dt.size());
  Start st = collinear_start(dt, et);
  const double dbar = st.u[0];
  VectorXd u = st.u, x = st.x;
  if (ascending) {
    int kbar = 0;
    et.minCoeff(&kbar);
    for (int k = 0; k < n; ++k) x[k] = static_cast<double>(k - kbar);
  }
  // the epsilon path is the identity when x is the exact acosh profile
  // and a true deformation when the ascending start replaced it
  VectorXd e0(n);
  for (int k = 0; k < n; ++k) e0[k] = st.ebar * std::cosh(x[k]);

  std::optional<VectorXd> lam;
  HomotopyRun run;
  for (int i = 1; i <= steps; ++i) {
    const double tau = static_cast<double>(i) / steps;
    const VectorXd dtau = VectorXd::Constant(n, dbar) + tau * (dt - VectorXd::Constant(n, dbar));
    const VectorXd etau = e0 + tau * (et - e0);
    KktState ks = solve_kkt(dtau, etau, u, x, lam, xbar);
    u = ks.u;
    x = ks.x;
    lam = ks.lam;
    run.u0 = ks.u0;
    if (!ks.ok) {
      run.u = u;
      run.x = x;
      run.ok = false;
      run.failed_tau = tau;
      return run;
    }
  }
  run.u = u;
  run.x = x;
  run.ok = true;
  run.failed_tau = 1.0;
  return run;
}

}  // namespace

std::vector<std::complex<double>> preimages(
    const std::vector<std::complex<double>>& singularities,
    const OuterMap& outer) {
  std::vector<std::complex<double>> pre;
  pre.reserve(singularities.size());
  for (const auto& s : singularities) {
    cplx z = outer_inverse(outer, s);
    if (z.imag() < 0.0) z = std::conj(z);
    if (!(z.imag() > 0.0 && z.imag() < 3.141592653589793))
      throw DomainError("preimages: singularity preimage leaves the strip");
    pre.push_back(z);
  }
  std::sort(pre.begin(), pre.end(),
            [](const cplx& l, const cplx& r) { return l.real() < r.real(); });
  // A singularity and its complex conjugate reflect onto the same point
  // and are one constraint, not two.
  pre.erase(std::unique(pre.begin(), pre.end(),
                        [](const cplx& l, const cplx& r) {
                          return std::abs(l.real() - r.real()) < 1e-12 &&
                                 std::abs(l.imag() - r.imag()) < 1e-12;
                        }),
            pre.end());
  for (std::size_t k = 1; k < pre.size(); ++k) {
    if (pre[k].real() - pre[k - 1].real() < 1e-12) {
      pre[k] = cplx(pre[k - 1].real() + 1e-9, pre[k].imag());
      std::cerr << "preimages: tied real parts, nudging entry " << k
                << " by 1e-9\n";
    }
  }
  return pre;
}

ParameterSolution initial_guess(const std::vector<std::complex<double>>& p) {
  if (p.empty()) throw ConfigError("initial_guess: empty preimage list");
  const int n = static_cast<int>(p.size());
  VectorXd dt(n), et(n);
  for (int k = 0; k < n; ++k) {
    dt[k] = p[k].real();
    et[k] = p[k].imag();
  }
  Start st = collinear_start(dt, et);

  ParameterSolution sol;
  sol.map.u0 = st.ebar;
  sol.map.u.assign(st.u.data(), st.u.data() + n);
  sol.nodes.assign(st.x.data(), st.x.data() + n);
  sol.objective = st.ebar;
  sol.homotopy_steps = 0;
  // residual against the solution's own collinear targets
  std::vector<cplx> targets(n);
  for (int k = 0; k < n; ++k)
    targets[k] = cplx(st.u[0], st.ebar * std::cosh(st.x[k]));
  sol.constraint_residual = constraint_residual_of(sol.map, sol.nodes, targets);
  return sol;
}

double constraint_residual_of(const SinhPolyMap& map,
                              const std::vector<double>& nodes,
                              const std::vector<std::complex<double>>& p) {
  if (nodes.size() != p.size())
    throw ConfigError("constraint_residual_of: size mismatch");
  double r = 0.0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const cplx h = map_eval(map, cplx(nodes[k], kHalfPi));
    r = std::max(r, std::abs(h - p[k]));
  }
  return r;
}

ParameterSolution solve_parameter_problem(
    const std::vector<std::complex<double>>& p, double xbar, int steps) {
  if (p.empty()) throw ConfigError("solve_parameter_problem: empty preimage list");

  std::vector<cplx> ps = p;
  std::sort(ps.begin(), ps.end(),
            [](const cplx& l, const cplx& r) { return l.real() < r.real(); });
  const int n = static_cast<int>(ps.size());
  VectorXd dt(n), et(n);
  for (int k = 0; k < n; ++k) {
    dt[k] = ps[k].real();
    et[k] = ps[k].imag();
    if (!(et[k] > 0.0))
      throw DomainError("solve_parameter_problem: preimage not in the upper strip");
  }

  ParameterSolution sol;
  if (n == 1) {
    sol.map.u0 = et[0];
    sol.map.u = {dt[0]};
    sol.nodes = {0.0};
    sol.objective = et[0];
    sol.homotopy_steps = 0;
    sol.constraint_residual = constraint_residual_of(sol.map, sol.nodes, ps);
    return sol;
  }

  const double ebar = et.minCoeff();
  double last_failed_tau = 0.0;
  bool accepted = false;
  HomotopyRun best;
  int best_steps = 0;

  std::vector<std::pair<bool, int>> ladder = {
      {false, steps}, {false, 256}, {true, steps}, {true, 256}};
  ladder.erase(std::unique(ladder.begin(), ladder.end()), ladder.end());
  for (const auto& [ascending, rung_steps] : ladder) {
    HomotopyRun run = homotopy_kkt(dt, et, rung_steps, xbar, ascending);
    if (!run.ok) {
      last_failed_tau = run.failed_tau;
      continue;
    }
    SinhPolyMap cand;
    cand.u0 = run.u0;
    cand.u.assign(run.u.data(), run.u.data() + n);
    std::vector<double> nodes(run.x.data(), run.x.data() + n);
    const double resid = constraint_residual_of(cand, nodes, ps);
    if (resid <= 1e-10 && run.u0 >= 1e-8 * ebar) {
      best = run;
      best_steps = rung_steps;
      accepted = true;
      break;
    }
    last_failed_tau = 1.0;
  }

  if (!accepted)
    throw OptimizationError("solve_parameter_problem: homotopy failed to "
                            "converge to a non-degenerate map",
                            last_failed_tau);

  sol.map.u0 = best.u0;
  sol.map.u.assign(best.u.data(), best.u.data() + n);
  sol.nodes.assign(best.x.data(), best.x.data() + n);
  sol.objective = best.u0;
  sol.homotopy_steps = best_steps;
  sol.constraint_residual = constraint_residual_of(sol.map, sol.nodes, ps);

  for (int i = 0; i <= 600; ++i) {
    const double t = -15.0 + i * 0.05;
    if (!(map_deriv(sol.map, t) > 0.0))
      throw MonotonicityError("solve_parameter_problem: optimized map is not "
                              "monotone on the audit grid");
  }
  return sol;
}

double beta2_of(const ParameterSolution& sol, const OuterMap& outer) {
  return outer.kind == OuterMapKind::FiniteTanh ? 0.5 * sol.map.u0 : sol.map.u0;
}

}  // namespace desinc
