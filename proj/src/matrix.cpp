#include "posmap/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

namespace posmap {

namespace {

void require_square(const CMatrix& a, const char* what) {
  if (a.rows() != a.cols())
    throw Error(std::string(what) + ": matrix must be square, got " + std::to_string(a.rows()) + "x" +
                std::to_string(a.cols()));
}

void require_hermitian(const CMatrix& a, const char* what) {
  require_square(a, what);
  const double scale = std::max(a.norm(), 1.0);
  const double defect = max_hermitian_defect(a);
  if (defect > 1e-8 * scale)
    throw Error(std::string(what) + ": matrix is not Hermitian (max |A - A*| = " + std::to_string(defect) + ")");
}

HermEig sorted(RVector values, CMatrix vectors) {
  std::vector<Eigen::Index> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return values(i) < values(j); });
  HermEig out{RVector(values.size()), CMatrix(vectors.rows(), vectors.cols())};
  for (std::size_t k = 0; k < order.size(); ++k) {
    out.eigenvalues(k) = values(order[k]);
    out.eigenvectors.col(k) = vectors.col(order[k]);
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

} // namespace

bool is_psd(const CMatrix& a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  return min_eigenvalue(a) >= -tol;
}

double min_eigenvalue(const CMatrix& a) {
  require_square(a, "min_eigenvalue");
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

HermEig herm_eig(const CMatrix& a) {
  require_hermitian(a, "herm_eig");
  const CMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  if (es.info() != Eigen::Success) throw Error("herm_eig: eigensolver did not converge");
  // SelfAdjointEigenSolver already sorts ascending
  return {es.eigenvalues(), es.eigenvectors()};
}

HermEig jacobi_eig(const CMatrix& input, double rel_tol, int max_sweeps) {
  require_hermitian(input, "jacobi_eig");
  const Eigen::Index n = input.rows();
  CMatrix a = 0.5 * (input + input.adjoint());
  CMatrix v = CMatrix::Identity(n, n);
  const double target = rel_tol * std::max(a.norm(), std::numeric_limits<double>::min());

  auto off_norm = [&] {
    double s = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  for (int sweep = 0; sweep < max_sweeps && off_norm() > target; ++sweep) {
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const Complex phase = apq / mag;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(1.0 + theta * theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = diag(1, conj(phase)) * [[c, s], [-s, c]] on the (p, q) plane
        const Complex jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (Eigen::Index k = 0; k < n; ++k) {
          const Complex vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }
  return sorted(a.diagonal().real(), v);
}

CMatrix partial_transpose(const CMatrix& x, int dA, int dB, Subsystem which) {
  if (dA <= 0 || dB <= 0 || x.rows() != dA * dB || x.cols() != dA * dB)
    throw Error("partial_transpose: expected a " + std::to_string(dA * dB) + "x" + std::to_string(dA * dB) +
                " matrix, got " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  CMatrix out(x.rows(), x.cols());
  for (int a = 0; a < dA; ++a)
    for (int b = 0; b < dB; ++b)
      for (int c = 0; c < dA; ++c)
        for (int d = 0; d < dB; ++d) {
          const Complex value = x(a * dB + b, c * dB + d);
          if (which == Subsystem::First)
            out(c * dB + b, a * dB + d) = value;
          else
            out(a * dB + d, c * dB + b) = value;
        }
  return out;
}

CMatrix partial_trace(const CMatrix& x, int dA, int dB, Subsystem which) {
  if (dA <= 0 || dB <= 0 || x.rows() != dA * dB || x.cols() != dA * dB)
    throw Error("partial_trace: expected a " + std::to_string(dA * dB) + "x" + std::to_string(dA * dB) +
                " matrix, got " + std::to_string(x.rows()) + "x" + std::to_string(x.cols()));
  if (which == Subsystem::First) {
    CMatrix out = CMatrix::Zero(dB, dB);
    for (int a = 0; a < dA; ++a) out += x.block(a * dB, a * dB, dB, dB);
    return out;
  }
  CMatrix out(dA, dA);
  for (int a = 0; a < dA; ++a)
    for (int c = 0; c < dA; ++c) out(a, c) = x.block(a * dB, c * dB, dB, dB).trace();
  return out;
}

Complex hs_inner(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error("hs_inner: shape mismatch");
  return (a.adjoint() * b).trace();
}

CVector conj_vec(const CVector& f) { return f.conjugate(); }

CMatrix matrix_unit(int n, int i, int j) {
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error("matrix_unit: index out of range");
  CMatrix e = CMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

CMatrix pauli_x() {
  CMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

CMatrix pauli_y() {
  CMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

CMatrix pauli_z() {
  CMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632be59bd9b4e019ULL));
}

CMatrix rand_gaussian(std::uint64_t seed, int rows, int cols) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CMatrix g(rows, cols);
  // fill in row-major order so the draw sequence does not depend on storage
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      g(i, j) = Complex(re, im);
    }
  return g;
}

CMatrix rand_unitary(std::uint64_t seed, int d) {
  if (d < 1) throw Error("rand_unitary: d must be >= 1");
  const CMatrix g = rand_gaussian(seed, d, d);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(d, d);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int k = 0; k < d; ++k) {
    const double mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

CMatrix rand_hermitian(std::uint64_t seed, int d) {
  if (d < 1) throw Error("rand_hermitian: d must be >= 1");
  const CMatrix g = rand_gaussian(seed, d, d);
  return 0.5 * (g + g.adjoint());
}

CMatrix rand_psd(std::uint64_t seed, int d) {
  if (d < 1) throw Error("rand_psd: d must be >= 1");
  const CMatrix g = rand_gaussian(seed, d, d);
  CMatrix p = g * g.adjoint();
  return 0.5 * (p + p.adjoint());
}

CMatrix rand_state(std::uint64_t seed, int d) {
  CMatrix p = rand_psd(seed, d);
  return p / p.trace().real();
}

CVector rand_unit_vector(std::uint64_t seed, int d) {
  if (d < 1) throw Error("rand_unit_vector: d must be >= 1");
  CVector v = rand_gaussian(seed, d, 1).col(0);
  return v / v.norm();
}

} // namespace posmap
