#include "posmap/optim.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace posmap {

namespace {

CMatrix hermitian_part(const CMatrix& x) { return 0.5 * (x + x.adjoint()); }

std::optional<double> log_det(const CMatrix& x) {
  Eigen::LLT<CMatrix> llt(x);
  if (llt.info() != Eigen::Success) return std::nullopt;
  double s = 0.0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    const double d = llt.matrixLLT()(i, i).real();
    if (!(d > 0)) return std::nullopt;
    s += std::log(d);
  }
  return 2.0 * s;
}

double real_inner(const CMatrix& a, const CMatrix& b) { return (a.array().conjugate() * b.array()).sum().real(); }

struct Barrier {
  const CMatrix& C;
  int dA, dB, n;

  CMatrix pt(const CMatrix& x) const { return partial_transpose(x, dA, dB, Subsystem::Second); }

  // Hermitian part with the trace removed: projection onto the tangent space
  // of the trace-one slice.
  CMatrix tangent(const CMatrix& x) const {
    CMatrix h = hermitian_part(x);
    h.diagonal().array() -= h.trace().real() / n;
    return h;
  }

  std::optional<double> value(const CMatrix& rho, double mu) const {
    const auto l1 = log_det(rho);
    if (!l1) return std::nullopt;
    const auto l2 = log_det(pt(rho));
    if (!l2) return std::nullopt;
    return (C * rho).trace().real() - mu * (*l1 + *l2);
  }
};

} // namespace

PptMinResult ppt_min(const CMatrix& C, int dA, int dB, double tol, int max_outer, const PptMinSettings& settings) {
  const int n = dA * dB;
  if (C.rows() != n || C.cols() != n) throw Error("ppt_min: C must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!is_hermitian(C, 1e-8 * std::max(1.0, C.norm()))) throw Error("ppt_min: C is not Hermitian");
  const CMatrix Ch = hermitian_part(C);
  const Barrier barrier{Ch, dA, dB, n};

  PptMinResult result;
  CMatrix rho = CMatrix::Identity(n, n) / static_cast<double>(n);
  double mu = settings.mu_start;
  bool schedule_done = false;

  for (int outer = 0; outer < max_outer; ++outer) {
    for (int step = 0; step < settings.max_newton; ++step) {
      const CMatrix rho_inv = rho.llt().solve(CMatrix::Identity(n, n));
      const CMatrix sigma = barrier.pt(rho);
      const CMatrix sigma_inv = sigma.llt().solve(CMatrix::Identity(n, n));
      const CMatrix grad = barrier.tangent(Ch - mu * (rho_inv + barrier.pt(sigma_inv)));

      auto hess = [&](const CMatrix& d) {
        return barrier.tangent(mu * (rho_inv * d * rho_inv + barrier.pt(sigma_inv * barrier.pt(d) * sigma_inv)));
      };
      // average of the inverses of the two Hessian terms
      auto precond = [&](const CMatrix& r) {
        return barrier.tangent((rho * r * rho + barrier.pt(sigma * barrier.pt(r) * sigma)) / (4.0 * mu));
      };

      // preconditioned CG for hess(d) = -grad
      CMatrix d = CMatrix::Zero(n, n);
      CMatrix r = -grad;
      CMatrix z = precond(r);
      CMatrix p = z;
      double rz = real_inner(r, z);
      const double stop = 1e-10 * std::max(1.0, grad.norm());
      for (int it = 0; it < settings.max_cg && r.norm() > stop; ++it) {
        const CMatrix hp = hess(p);
        const double curvature = real_inner(p, hp);
        if (!(curvature > 0)) break;
        const double alpha = rz / curvature;
        d += alpha * p;
        r -= alpha * hp;
        z = precond(r);
        const double rz_next = real_inner(r, z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
      }
      ++result.iterations;

      const double decrement = -real_inner(grad, d);
      if (!(decrement > 1e-10 * mu)) break;

      const double f0 = *barrier.value(rho, mu);
      double t = 1.0;
      bool moved = false;
      while (t > 1e-12) {
        const CMatrix trial = rho + t * d;
        const auto f = barrier.value(trial, mu);
        if (f && *f <= f0 - 0.25 * t * decrement) {
          rho = hermitian_part(trial);
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }

    const double value = (Ch * rho).trace().real();
    result.outer_values.push_back(value);
    const auto count = result.outer_values.size();
    if (count >= 2 && std::abs(result.outer_values[count - 1] - result.outer_values[count - 2]) <= tol) {
      result.converged = true;
      break;
    }
    if (mu <= settings.mu_final) {
      schedule_done = true;
      break;
    }
    mu = std::max(mu * settings.mu_factor, settings.mu_final);
  }
  result.converged = result.converged || schedule_done;

  rho = hermitian_part(rho);
  rho /= rho.trace().real();
  result.rho = rho;
  result.value = (Ch * rho).trace().real();

  const bool feasible = min_eigenvalue(rho) >= -1e-8 && min_eigenvalue(barrier.pt(rho)) >= -1e-8 &&
                        std::abs(rho.trace().real() - 1.0) <= 1e-10;
  if (!feasible) result.converged = false;
  return result;
}

CMatrix project_psd(const CMatrix& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(x));
  const RVector clipped = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint();
}

DykstraResult decompose_dykstra(const CMatrix& C, int dA, int dB, double tol, int max_iter) {
  const int n = dA * dB;
  if (C.rows() != n || C.cols() != n)
    throw Error("decompose_dykstra: C must be " + std::to_string(n) + "x" + std::to_string(n));
  if (!is_hermitian(C, 1e-8 * std::max(1.0, C.norm()))) throw Error("decompose_dykstra: C is not Hermitian");
  const CMatrix Ch = hermitian_part(C);
  auto pt = [&](const CMatrix& x) { return partial_transpose(x, dA, dB, Subsystem::Second); };
  auto residual_of = [&](const CMatrix& a, const CMatrix& b) { return (Ch - a - pt(b)).norm(); };

  CMatrix a = Ch, b = CMatrix::Zero(n, n);
  CMatrix pa = CMatrix::Zero(n, n), pb = pa, qa = pa, qb = pa;

  DykstraResult best{project_psd(a), project_psd(b), 0.0, 0};
  best.residual = residual_of(best.A, best.B);

  for (int it = 1; it <= max_iter && best.residual > tol; ++it) {
    // affine step: (A, B) -> (A, B) + (R, R^Gamma) / 2 with R the constraint residual
    const CMatrix ya = a + pa, yb = b + pb;
    const CMatrix r = Ch - ya - pt(yb);
    const CMatrix aa = ya + 0.5 * r, ab = yb + 0.5 * pt(r);
    pa = ya - aa;
    pb = yb - ab;
    // cone step
    const CMatrix za = aa + qa, zb = ab + qb;
    a = project_psd(za);
    b = project_psd(zb);
    qa = za - a;
    qb = zb - b;

    const double res = residual_of(a, b);
    if (res < best.residual) best = {a, b, res, it};
    best.iterations = it;
  }
  return best;
}

} // namespace posmap
