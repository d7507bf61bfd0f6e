#pragma once

// Conic engines behind decomposability certification.
//
// Partial transposes here act on the second tensor factor, matching the
// decomposition Choi(T) = A + B^Gamma of T = T_1 + T_2 o transpose.

#include <vector>

#include "posmap/matrix.hpp"

namespace posmap {

struct PptMinResult {
  double value = 0.0; // Tr[C rho]
  CMatrix rho;
  int iterations = 0; // Newton steps over all outer iterations
  bool converged = false;
  std::vector<double> outer_values; // Tr[C rho] at the end of each outer iteration
};

struct PptMinSettings {
  double mu_start = 1.0;
  double mu_final = 1e-9;
  double mu_factor = 0.25;
  int max_newton = 50;
  int max_cg = 400;
};

/// min Tr[C rho] over {rho >= 0, rho^Gamma >= 0, Tr rho = 1}.
///
/// Log-det barrier on both cones, started from the maximally mixed state and
/// followed along a decreasing barrier weight. Each centering step is a damped
/// Newton iteration on the trace-one Hermitian slice; Newton systems are solved
/// matrix-free by preconditioned conjugate gradients. converged is set when two
/// successive outer values differ by at most tol or the barrier schedule runs to
/// completion; it is cleared if the iterate fails the feasibility re-check.
PptMinResult ppt_min(const CMatrix& C, int dA, int dB, double tol = 1e-9, int max_outer = 40,
                     const PptMinSettings& settings = {});

struct DykstraResult {
  CMatrix A;
  CMatrix B;
  double residual = 0.0; // ||C - A - B^Gamma||_F
  int iterations = 0;
};

/// Dykstra alternating projections between the affine set A + B^Gamma = C and
/// the product of PSD cones. Returns the PSD pair with the smallest residual
/// seen; a residual above tol means the iteration cap was reached first.
DykstraResult decompose_dykstra(const CMatrix& C, int dA, int dB, double tol = 1e-10, int max_iter = 20000);

/// Eigenvalue clipping: nearest PSD matrix in Frobenius norm.
CMatrix project_psd(const CMatrix& x);

} // namespace posmap
