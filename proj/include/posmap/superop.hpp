#pragma once

// Linear maps between matrix algebras.
//
// A SuperOp carries its canonical matrix representation `rep`, acting on
// column-stacked matrices: vec(T(a)) = rep * vec(a). When the map was built
// from operators it also keeps the Kraus-difference form
//
//     T(a) = sum_i c_i a~ c_i^*  -  sum_j d_j a~ d_j^*,    a~ = a or a^T,
//
// where a~ = a^T exactly when `pre_transpose` is set.
//
// Choi matrices use the output (x) input ordering: C = sum_ij T(E_ij) (x) E_ij.

#include <functional>
#include <optional>
#include <vector>

#include "posmap/matrix.hpp"

namespace posmap {

struct KrausForm {
  std::vector<CMatrix> plus;  // the c_i, each d_out x d_in
  std::vector<CMatrix> minus; // the d_j, each d_out x d_in
  bool pre_transpose = false;
};

struct SuperOp {
  int d_in = 0;
  int d_out = 0;
  CMatrix rep; // (d_out^2) x (d_in^2)
  std::optional<KrausForm> kraus;
};

struct ChoiMatrix {
  CMatrix C; // (d_out*d_in) x (d_out*d_in)
  int d_in = 0;
  int d_out = 0;
};

/// Kraus operators read off a Hermitian Choi matrix, split by eigenvalue sign.
struct KrausSplit {
  std::vector<CMatrix> plus;
  std::vector<CMatrix> minus;
};

CVector vec(const CMatrix& a);
CMatrix unvec(const CVector& v, int rows, int cols);

/// Permutation P on vec(M_d) with P vec(a) = vec(a^T).
CMatrix transpose_permutation(int d);

// construction

SuperOp from_kraus(std::vector<CMatrix> plus, std::vector<CMatrix> minus = {}, bool pre_transpose = false);
SuperOp from_rep(int d_in, int d_out, CMatrix rep);
/// Tabulates an arbitrary linear action on the matrix units E_ij.
SuperOp from_action(int d_in, int d_out, const std::function<CMatrix(const CMatrix&)>& action);
SuperOp identity_map(int d);

// evaluation

CMatrix apply(const SuperOp& t, const CMatrix& a);
/// Evaluates through the stored Kraus operators; throws when there are none.
CMatrix apply_kraus(const SuperOp& t, const CMatrix& a);

// algebra

/// alpha*T + beta*S. Kraus data survives only when both operands carry it
/// with the same transpose flag and beta >= 0.
SuperOp linear_combine(double alpha, const SuperOp& t, double beta, const SuperOp& s);
/// T o S.
SuperOp compose(const SuperOp& t, const SuperOp& s);
/// Dual with respect to the trace pairing: Tr[a T(b)] = Tr[T^d(a) b].
SuperOp dual(const SuperOp& t);

// Choi-Jamiolkowski

ChoiMatrix choi_of(const SuperOp& t);
SuperOp map_from_choi(const ChoiMatrix& c);
KrausSplit kraus_from_choi(const ChoiMatrix& c, double tol = 1e-10);

bool is_hermiticity_preserving(const SuperOp& t, double tol = 1e-10);

// elementary maps

/// c -> Tr(b^* c) a
SuperOp elementary_ket_bra(const CMatrix& a, const CMatrix& b);
/// c -> b^* c a
SuperOp module_elementary(const CMatrix& a, const CMatrix& b);

} // namespace posmap
