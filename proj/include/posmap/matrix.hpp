#pragma once

// Dense complex-matrix kernel shared by every other module.
//
// All matrices are Eigen dense types over std::complex<double>. The canonical
// basis {e_i} is the standard coordinate basis; transposition, the diagonal
// projection and the conjugation J all refer to it.

#include <complex>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace posmap {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Raised on every contract violation (bad shapes, non-Hermitian input,
/// out-of-range parameters). The message names the violated constraint.
class Error : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

enum class Subsystem { First, Second };

struct HermEig {
  RVector eigenvalues;  // ascending
  CMatrix eigenvectors; // unitary, columns are eigenvectors
};

// ---------------------------------------------------------------------------
// predicates

template <typename Derived>
double max_hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
  return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double tol) {
  return a.rows() == a.cols() && max_hermitian_defect(a) <= tol;
}

/// Hermitian within tol and smallest eigenvalue >= -tol.
bool is_psd(const CMatrix& a, double tol);

/// Smallest eigenvalue of the Hermitian part of a.
double min_eigenvalue(const CMatrix& a);

// ---------------------------------------------------------------------------
// eigensolvers

/// Hermitian eigendecomposition (Householder tridiagonalisation + implicit QR).
/// Rejects non-square input and input whose anti-Hermitian part exceeds
/// 1e-8 * ||A||_F.
HermEig herm_eig(const CMatrix& a);

/// Cyclic complex Jacobi eigensolver. Slower than herm_eig but shares no code
/// with it; certificate re-verification runs on this route.
HermEig jacobi_eig(const CMatrix& a, double rel_tol = 1e-12, int max_sweeps = 100);

// ---------------------------------------------------------------------------
// tensor operations

template <typename DA, typename DB>
CMatrix kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = Complex(a(i, j)) * b.template cast<Complex>();
  return out;
}

/// Transpose of one tensor factor of an operator on C^dA (x) C^dB. Index
/// convention: basis vector e_a (x) e_b sits at position a*dB + b.
CMatrix partial_transpose(const CMatrix& x, int dA, int dB, Subsystem which);

/// Trace over one tensor factor; the remaining factor is returned.
CMatrix partial_trace(const CMatrix& x, int dA, int dB, Subsystem which);

/// Hilbert-Schmidt inner product Tr(a* b).
Complex hs_inner(const CMatrix& a, const CMatrix& b);

/// Entrywise conjugation in the canonical basis (the antiunitary J).
CVector conj_vec(const CVector& f);

/// Matrix unit E_ij of size n x n (0-based indices).
CMatrix matrix_unit(int n, int i, int j);

/// Pauli matrices.
CMatrix pauli_x();
CMatrix pauli_y();
CMatrix pauli_z();

// ---------------------------------------------------------------------------
// seeded generators (identical seed => bit-identical output on one platform)

CMatrix rand_gaussian(std::uint64_t seed, int rows, int cols);
CMatrix rand_unitary(std::uint64_t seed, int d);
CMatrix rand_hermitian(std::uint64_t seed, int d);
CMatrix rand_psd(std::uint64_t seed, int d);
CMatrix rand_state(std::uint64_t seed, int d);
CVector rand_unit_vector(std::uint64_t seed, int d);

/// Mix a base seed with a stream index into an independent seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace posmap
