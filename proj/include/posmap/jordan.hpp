#pragma once

// Spin systems, spin-factor projections and Jordan-algebra probes.

#include <cstdint>
#include <optional>
#include <vector>

#include "posmap/matrix.hpp"
#include "posmap/superop.hpp"

namespace posmap {

/// Mutually anticommuting nontrivial symmetries: s = s^*, s s = 1, s != +-1,
/// s t + t s = 0 for distinct members.
struct SpinSystem {
  int dim = 0;
  std::vector<CMatrix> symmetries;
};

/// Largest violation of the spin-system relations (squares, adjoints,
/// anticommutators; Frobenius norms).
double spin_system_defect(const SpinSystem& s);

/// Throws unless every relation holds within tol and no member is +-1.
void validate_spin_system(const SpinSystem& s, double tol = 1e-10);

/// 2k+1 anticommuting symmetries on C^(2^k) built from tensor products of
/// Pauli matrices (Jordan-Wigner chain). For k = 1 this is {X, Y, Z}.
SpinSystem build_spin_system(int k);

/// (ab + ba) / 2
CMatrix jordan_product(const CMatrix& a, const CMatrix& b);

/// Hilbert-Schmidt orthogonal projection onto span{1, s_1, ..., s_m}.
SuperOp spin_projection(const SpinSystem& s, int generators);

/// The basis {1, s_1, ..., s_m} of the spin factor.
std::vector<CMatrix> spin_factor_basis(const SpinSystem& s, int generators);

struct ReversibilityReport {
  bool passed = true;
  /// Basis indices of a violating word, when the violation came from the
  /// exhaustive pass over basis words.
  std::optional<std::vector<int>> violating_word;
  /// Coefficients (one row per factor) of a violating word drawn from the
  /// real span, when the violation came from the sampled pass.
  std::optional<RMatrix> violating_coefficients;
  double residual = 0.0;
  int basis_dimension = 0;
  int words_checked = 0;
};

/// Looks for a word a_1 ... a_n whose symmetrisation a_1...a_n + a_n...a_1
/// leaves the real span of `basis`. Words of basis elements of lengths
/// 3..word_length are enumerated first (when there are at most 20000 of them),
/// then `samples` random words from the real span are drawn. A pass means no
/// violation was found, not that the span is reversible.
ReversibilityReport reversibility_probe(const std::vector<CMatrix>& basis, int word_length = 4, int samples = 500,
                                        std::uint64_t seed = 0, double tol = 1e-9);

/// Hermitian basis of M_d: diagonal units plus symmetric and antisymmetric
/// off-diagonal pairs.
std::vector<CMatrix> hermitian_basis(int d);

} // namespace posmap
