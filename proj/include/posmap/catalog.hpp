#pragma once

// Named maps and the classification each is expected to receive.

#include <optional>
#include <string>
#include <vector>

#include "posmap/matrix.hpp"
#include "posmap/superop.hpp"
#include "posmap/verdict.hpp"

namespace posmap {

struct NamedMapSpec {
  std::string name;
  std::vector<double> params;
  /// Antisymmetric unitary for breuer_hall / beta0 / jordan_proj; the
  /// symplectic block form is used when absent.
  std::optional<CMatrix> unitary;
};

/// Builds a catalogued map. Recognised names and parameters:
///
///   identity(d)            a -> a
///   transpose(d)           a -> a^T
///   diag(d)                projection onto the diagonal part
///   shift(d)               a -> S a S^*, S e_i = e_{i+1 mod d}
///   choi(n,k)              (n-k) diag(a) + sum_{j<=k} diag(S^{j*} a S^j) - a,  1 <= k <= n-2
///   choi_v()               a -> sum_i V_i a V_i^* for the six operators of choi_v_operators()
///   reduction(d)           a -> Tr(a) 1 - a
///   r_lambda(d,lambda)     a -> lambda/d Tr(a) 1 + (1-lambda) a
///   r_c(d)                 a -> (d-1) Tr(a) 1 - a
///   w_ij(d,i,j)            a -> W a W^*, W = |e_i><e_j| (1-based i, j)
///   robertson()            block-matrix form on M_4
///   breuer_hall(N)         (Tr(a) 1 - a - U a^T U^*) / (N-2), N even >= 4
///   beta0(N)               a -> U a^T U^*
///   jordan_proj(N)         (a + U a^T U^*) / 2
///   spin_proj(k,m)         projection onto span{1, s_1..s_m} in the k-site spin system
SuperOp build_named(const NamedMapSpec& spec);

/// Canonical antisymmetric unitary on C^N: direct sum of [[0,1],[-1,0]].
CMatrix symplectic_unitary(int n);

/// The six Kraus operators with sum_i V_i a V_i^* - a = choi(3,1)(a).
std::vector<CMatrix> choi_v_operators();

/// u([[a,b],[c,d]]) = [[d,-b],[-c,a]] on M_2.
CMatrix quaternionic_flip(const CMatrix& m);
/// Robertson's map assembled as theta o (iota + sigma)/2 instead of from the
/// block formula; used to cross-check build_named("robertson").
SuperOp robertson_factored();

/// Expected classification of a catalogued map. Unset fields carry no claim.
struct Expectation {
  std::optional<Verdict> complete_positivity;
  std::optional<Verdict> positivity;
  /// Smallest k for which k-positivity fails.
  std::optional<int> first_non_k_positive;
  std::optional<Verdict> decomposability;
  std::string note;
};

Expectation expected_for(const NamedMapSpec& spec);

struct CatalogEntry {
  std::string name;
  std::string signature;
  std::vector<double> default_params;
  std::string description;
};

const std::vector<CatalogEntry>& catalog();

} // namespace posmap
