#pragma once

// Classification of maps with re-checkable evidence.
//
// Negative verdicts (NOT_CP, NOT_POSITIVE, NOT_K_POSITIVE, NON_DECOMPOSABLE)
// and DECOMPOSABLE carry explicit evidence. POSITIVE_PROBED and
// K_POSITIVE_UP_TO only report that a randomized search found no violation.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "posmap/matrix.hpp"
#include "posmap/superop.hpp"
#include "posmap/verdict.hpp"

namespace posmap {

struct Tolerances {
  double algebraic = 1e-10; // identities that hold exactly in exact arithmetic
  double psd = 1e-8;        // PSD slack for states, decompositions and Choi spectra
  double delta = 1e-6;      // witness threshold Tr[C rho] <= -delta
  double residual = 1e-7;   // decomposition residual ||C - A - B^Gamma||_F
  int restarts = 200;       // see-saw restarts
  int max_iter = 500;       // see-saw iterations per restart
  int dykstra_iter = 20000;
};

struct Evidence {
  CMatrix choi; // Choi matrix of the map under test
  int d_in = 0;
  int d_out = 0;
  std::optional<CMatrix> witness; // PPT state
  std::optional<CMatrix> A;
  std::optional<CMatrix> B;
  std::optional<CVector> x; // product-vector probe: <y, T(x x^*) y>
  std::optional<CVector> y;
  std::optional<CMatrix> schmidt_vector; // d_out x d_in coefficient matrix, unit Frobenius norm
  std::optional<double> min_choi_eigenvalue;
  std::optional<double> objective_value;
  std::optional<double> residual;
};

struct Certificate {
  Test test = Test::CompletePositivity;
  Label label;
  Evidence evidence;
  Tolerances tolerances;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
  std::string note;
};

Certificate is_cp(const SuperOp& t, const Tolerances& tol = {});

/// See-saw minimisation of <y, T(x x^*) y> over unit x, y.
Certificate positivity_search(const SuperOp& t, int restarts, std::uint64_t seed, double tol = 1e-8,
                              int max_iter = 500);

/// See-saw minimisation of psi^* Choi(T) psi over unit psi of Schmidt rank <= k.
Certificate k_positivity_search(const SuperOp& t, int k, int restarts, std::uint64_t seed, double tol = 1e-8,
                                int max_iter = 500);

/// PPT witness search first; explicit decomposition Choi(T) = A + B^Gamma second.
Certificate decomposability_decide(const SuperOp& t, const Tolerances& tol = {});

struct SeesawResult {
  double value = 0.0;
  CMatrix psi; // d_out x d_in, unit Frobenius norm
  int restart = 0;
};

/// Minimum of psi^* C psi over Schmidt rank <= k found by alternating
/// eigenvector steps; restarts keyed by (seed, index), lowest index wins ties.
SeesawResult seesaw_min(const ChoiMatrix& c, int k, int restarts, std::uint64_t seed, int max_iter);

// ---------------------------------------------------------------------------
// locally linear combinations

struct HouSample {
  CVector x;
  CMatrix alpha; // |d| x |c| least-norm coefficients
  double operator_norm = 0.0;
  double frobenius_norm = 0.0;
  bool representable = true;
};

struct HouReport {
  std::vector<HouSample> samples;
  double max_operator_norm = 0.0;
  double max_frobenius_norm = 0.0;
  CVector worst_x;
  bool representable = true;
  std::optional<CVector> non_representable_x;
};

/// For sampled unit x solves d_j x = sum_i alpha_ji(x) c_i x with least norm.
/// The sample set is every standard basis vector, the normalised all-ones
/// vector, then `samples` seeded random vectors.
HouReport hou_contractive_check(const std::vector<CMatrix>& c_list, const std::vector<CMatrix>& d_list, int samples,
                                std::uint64_t seed, double tol = 1e-9);

// ---------------------------------------------------------------------------
// block-matrix criterion

struct StormerReport {
  bool premises_hold = false;
  bool conclusion_holds = false;
  double min_eig_blocks = 0.0;     // (x_ij)
  double min_eig_transposed = 0.0; // (x_ji)
  double min_eig_applied = 0.0;    // (T(x_ij))
};

/// Checks (x_ij) >= 0, (x_ji) >= 0 and (T(x_ij)) >= 0. Premises holding with a
/// failed conclusion refutes decomposability.
StormerReport stormer_probe(const SuperOp& t, const std::vector<std::vector<CMatrix>>& blocks, double tol = 1e-10);

// ---------------------------------------------------------------------------
// Radon-Nikodym style checks

/// T(a) = sum W^* a W, S(a) = sum lambda W^* a W; returns is_cp(T - S).
Certificate raginsky_check(const std::vector<CMatrix>& kraus, const std::vector<double>& lambda,
                           const Tolerances& tol = {});

struct RnDualReport {
  bool identity_holds = false;
  double max_identity_error = 0.0;
  Certificate difference_positive;
};

/// T2(a) = T1(t a t). Checks T2^d(rho) = t T1^d(rho) t on sampled states and
/// probes positivity of T1 - T2 (reported, not asserted).
RnDualReport rn_dual_check(const SuperOp& t1, const CMatrix& t, int samples, std::uint64_t seed,
                           const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// independent re-verification

struct VerifyOutcome {
  bool ok = false;
  std::string detail;
};

/// Re-checks a certificate from its stored evidence alone, using the Jacobi
/// eigensolver rather than the route the engines use.
VerifyOutcome verify_certificate(const Certificate& cert);

} // namespace posmap
