#include "posmap/certify.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "posmap/optim.hpp"

namespace posmap {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

Evidence base_evidence(const ChoiMatrix& c) {
  Evidence e;
  e.choi = c.C;
  e.d_in = c.d_in;
  e.d_out = c.d_out;
  return e;
}

// Orthonormal basis of the column space of m (thin QR), with the triangular
// factor returned in r.
CMatrix thin_q(const CMatrix& m, CMatrix& r) {
  Eigen::HouseholderQR<CMatrix> qr(m);
  const auto cols = m.cols();
  r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  return qr.householderQ() * CMatrix::Identity(m.rows(), cols);
}

// Minimum eigenpair of a Hermitian matrix.
std::pair<double, CVector> min_eigenpair(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
  return {es.eigenvalues()(0), es.eigenvectors().col(0)};
}

double schmidt_tail(const CMatrix& psi, int k) {
  Eigen::JacobiSVD<CMatrix> svd(psi);
  const RVector s = svd.singularValues();
  double tail = 0.0;
  for (Eigen::Index i = k; i < s.size(); ++i) tail = std::max(tail, s(i));
  return tail;
}

} // namespace

Certificate is_cp(const SuperOp& t, const Tolerances& tol) {
  const auto start = Clock::now();
  const ChoiMatrix c = choi_of(t);
  Certificate cert;
  cert.test = Test::CompletePositivity;
  cert.tolerances = tol;
  cert.evidence = base_evidence(c);
  if (!is_hermitian(c.C, tol.algebraic * std::max(1.0, c.C.norm()))) {
    cert.label = {Verdict::NOT_CP, 0};
    cert.evidence.min_choi_eigenvalue = min_eigenvalue(c.C);
    cert.note = "Choi matrix is not Hermitian";
  } else {
    const double lambda = herm_eig(c.C).eigenvalues(0);
    cert.evidence.min_choi_eigenvalue = lambda;
    cert.label = {lambda >= -tol.psd ? Verdict::CP : Verdict::NOT_CP, 0};
  }
  cert.wall_ms = elapsed_ms(start);
  return cert;
}

SeesawResult seesaw_min(const ChoiMatrix& c, int k, int restarts, std::uint64_t seed, int max_iter) {
  const int dout = c.d_out, din = c.d_in;
  const int rank = std::min({k, dout, din});
  const CMatrix C = 0.5 * (c.C + c.C.adjoint());
  const CMatrix id_out = CMatrix::Identity(dout, dout), id_in = CMatrix::Identity(din, din);

  SeesawResult best;
  best.value = std::numeric_limits<double>::infinity();
  for (int restart = 0; restart < restarts; ++restart) {
    CMatrix r;
    CMatrix z = thin_q(rand_gaussian(derive_seed(seed, static_cast<std::uint64_t>(restart)), din, rank), r);
    CMatrix y(dout, rank);
    double value = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
      // psi = (1 (x) Z) vec_rowmajor(Y): optimise Y with Z orthonormal
      const CMatrix lz = kron(id_out, z);
      auto [vy, ey] = min_eigenpair(lz.adjoint() * C * lz);
      for (int o = 0; o < dout; ++o)
        for (int s = 0; s < rank; ++s) y(o, s) = ey(o * rank + s);
      const CMatrix qy = thin_q(y, r);
      // psi = (Q (x) 1) vec_rowmajor(Z^T): optimise Z with Y = Q orthonormal
      const CMatrix lq = kron(qy, id_in);
      auto [vz, ez] = min_eigenpair(lq.adjoint() * C * lq);
      CMatrix znew(din, rank);
      for (int s = 0; s < rank; ++s)
        for (int i = 0; i < din; ++i) znew(i, s) = ez(s * din + i);
      y = qy;
      const double improvement = value - vz;
      value = std::min(vz, value);
      z = thin_q(znew, r);
      // absorb the triangular factor into Y so psi = Y Z^T is unchanged
      y = y * r.transpose();
      if (it > 0 && improvement <= 1e-14 * std::max(1.0, std::abs(value))) break;
    }
    if (value < best.value) {
      best.value = value;
      best.psi = y * z.transpose();
      best.psi /= best.psi.norm();
      best.restart = restart;
    }
  }
  // re-evaluate at the returned vector
  if (restarts > 0) {
    CVector psi(dout * din);
    for (int o = 0; o < dout; ++o)
      for (int i = 0; i < din; ++i) psi(o * din + i) = best.psi(o, i);
    best.value = (psi.adjoint() * C * psi)(0, 0).real();
  }
  return best;
}

Certificate k_positivity_search(const SuperOp& t, int k, int restarts, std::uint64_t seed, double tol, int max_iter) {
  if (k < 1 || k > t.d_in)
    throw Error("k_positivity_search: k must lie in [1, " + std::to_string(t.d_in) + "], got " + std::to_string(k));
  if (restarts < 1) throw Error("k_positivity_search: restarts must be >= 1");
  const auto start = Clock::now();
  const ChoiMatrix c = choi_of(t);
  if (!is_hermitian(c.C, 1e-8 * std::max(1.0, c.C.norm())))
    throw Error("k_positivity_search: map does not preserve Hermiticity");
  const SeesawResult s = seesaw_min(c, k, restarts, seed, max_iter);

  Certificate cert;
  cert.test = k == 1 ? Test::Positivity : Test::KPositivity;
  cert.seed = seed;
  cert.tolerances.psd = tol;
  cert.tolerances.restarts = restarts;
  cert.tolerances.max_iter = max_iter;
  cert.evidence = base_evidence(c);
  cert.evidence.objective_value = s.value;
  cert.evidence.schmidt_vector = s.psi;
  if (k == 1) {
    // psi = y (x) conj(x)
    Eigen::JacobiSVD<CMatrix> svd(s.psi, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Complex scale = svd.singularValues()(0);
    cert.evidence.y = svd.matrixU().col(0) * scale;
    cert.evidence.x = svd.matrixV().col(0);
    cert.label = {s.value <= -tol ? Verdict::NOT_POSITIVE : Verdict::POSITIVE_PROBED, 0};
  } else {
    cert.label = {s.value <= -tol ? Verdict::NOT_K_POSITIVE : Verdict::K_POSITIVE_UP_TO, k};
  }
  cert.note = "best restart " + std::to_string(s.restart);
  cert.wall_ms = elapsed_ms(start);
  return cert;
}

Certificate positivity_search(const SuperOp& t, int restarts, std::uint64_t seed, double tol, int max_iter) {
  return k_positivity_search(t, 1, restarts, seed, tol, max_iter);
}

Certificate decomposability_decide(const SuperOp& t, const Tolerances& tol) {
  const auto start = Clock::now();
  const ChoiMatrix c = choi_of(t);
  if (!is_hermitian(c.C, 1e-8 * std::max(1.0, c.C.norm())))
    throw Error("decomposability_decide: map does not preserve Hermiticity");

  Certificate cert;
  cert.test = Test::Decomposability;
  cert.tolerances = tol;
  cert.evidence = base_evidence(c);

  const PptMinResult ppt = ppt_min(c.C, c.d_out, c.d_in, 1e-9);
  cert.evidence.objective_value = ppt.value;
  if (ppt.value < -tol.delta) {
    cert.label = {Verdict::NON_DECOMPOSABLE, 0};
    cert.evidence.witness = ppt.rho;
    cert.note = "PPT witness after " + std::to_string(ppt.iterations) + " Newton steps";
    cert.wall_ms = elapsed_ms(start);
    return cert;
  }
  const DykstraResult dyk = decompose_dykstra(c.C, c.d_out, c.d_in, 1e-10, tol.dykstra_iter);
  cert.evidence.residual = dyk.residual;
  cert.evidence.A = dyk.A;
  cert.evidence.B = dyk.B;
  if (dyk.residual <= tol.residual) {
    cert.label = {Verdict::DECOMPOSABLE, 0};
    cert.note = "decomposition after " + std::to_string(dyk.iterations) + " Dykstra iterations";
  } else {
    cert.label = {Verdict::INCONCLUSIVE, 0};
    cert.evidence.witness = ppt.rho;
    cert.note = "no witness below -delta and no decomposition within the residual tolerance";
  }
  cert.wall_ms = elapsed_ms(start);
  return cert;
}

HouReport hou_contractive_check(const std::vector<CMatrix>& c_list, const std::vector<CMatrix>& d_list, int samples,
                                std::uint64_t seed, double tol) {
  if (c_list.empty() || d_list.empty()) throw Error("hou_contractive_check: operator lists must be nonempty");
  const auto rows = c_list.front().rows(), cols = c_list.front().cols();
  for (const auto* list : {&c_list, &d_list})
    for (const auto& m : *list)
      if (m.rows() != rows || m.cols() != cols) throw Error("hou_contractive_check: operators differ in shape");
  const int n = static_cast<int>(cols);

  std::vector<CVector> xs;
  for (int i = 0; i < n; ++i) xs.push_back(CVector::Unit(n, i));
  xs.push_back(CVector::Ones(n) / std::sqrt(static_cast<double>(n)));
  for (int s = 0; s < samples; ++s) xs.push_back(rand_unit_vector(derive_seed(seed, static_cast<std::uint64_t>(s)), n));

  HouReport report;
  report.worst_x = xs.front();
  const auto k = static_cast<Eigen::Index>(c_list.size());
  const auto l = static_cast<Eigen::Index>(d_list.size());
  for (const auto& x : xs) {
    CMatrix m(rows, k);
    for (Eigen::Index i = 0; i < k; ++i) m.col(i) = c_list[i] * x;
    Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(m);
    HouSample sample{x, CMatrix(l, k), 0.0, 0.0, true};
    for (Eigen::Index j = 0; j < l; ++j) {
      const CVector b = d_list[j] * x;
      const CVector a = cod.solve(b);
      if ((m * a - b).norm() > tol * std::max(1.0, b.norm())) sample.representable = false;
      sample.alpha.row(j) = a.transpose();
    }
    Eigen::JacobiSVD<CMatrix> svd(sample.alpha);
    sample.operator_norm = svd.singularValues()(0);
    sample.frobenius_norm = sample.alpha.norm();
    if (!sample.representable && report.representable) {
      report.representable = false;
      report.non_representable_x = x;
    }
    if (sample.representable && sample.operator_norm > report.max_operator_norm) {
      report.max_operator_norm = sample.operator_norm;
      report.worst_x = x;
    }
    if (sample.representable) report.max_frobenius_norm = std::max(report.max_frobenius_norm, sample.frobenius_norm);
    report.samples.push_back(std::move(sample));
  }
  return report;
}

StormerReport stormer_probe(const SuperOp& t, const std::vector<std::vector<CMatrix>>& blocks, double tol) {
  const auto n = blocks.size();
  if (n == 0) throw Error("stormer_probe: empty block array");
  for (const auto& row : blocks)
    if (row.size() != n) throw Error("stormer_probe: block array must be square");
  const auto m = blocks[0][0].rows();
  for (const auto& row : blocks)
    for (const auto& b : row)
      if (b.rows() != m || b.cols() != m) throw Error("stormer_probe: blocks must share one square shape");
  if (m != t.d_in) throw Error("stormer_probe: block size does not match the map's input dimension");

  const auto nn = static_cast<Eigen::Index>(n);
  CMatrix x(nn * m, nn * m), xt(nn * m, nn * m), applied(nn * t.d_out, nn * t.d_out);
  for (Eigen::Index i = 0; i < nn; ++i)
    for (Eigen::Index j = 0; j < nn; ++j) {
      x.block(i * m, j * m, m, m) = blocks[i][j];
      xt.block(i * m, j * m, m, m) = blocks[j][i];
      applied.block(i * t.d_out, j * t.d_out, t.d_out, t.d_out) = apply(t, blocks[i][j]);
    }
  auto psd_min = [&](const CMatrix& a) {
    return is_hermitian(a, tol) ? min_eigenvalue(a) : -std::numeric_limits<double>::infinity();
  };
  StormerReport r;
  r.min_eig_blocks = psd_min(x);
  r.min_eig_transposed = psd_min(xt);
  r.min_eig_applied = psd_min(applied);
  r.premises_hold = r.min_eig_blocks >= -tol && r.min_eig_transposed >= -tol;
  r.conclusion_holds = r.min_eig_applied >= -tol;
  return r;
}

Certificate raginsky_check(const std::vector<CMatrix>& kraus, const std::vector<double>& lambda,
                           const Tolerances& tol) {
  if (kraus.size() != lambda.size()) throw Error("raginsky_check: need one lambda per Kraus operator");
  if (kraus.empty()) throw Error("raginsky_check: empty Kraus set");
  std::vector<CMatrix> full, weighted;
  for (std::size_t i = 0; i < kraus.size(); ++i) {
    if (!(lambda[i] >= 0.0 && lambda[i] <= 1.0)) throw Error("raginsky_check: lambda must lie in [0, 1]");
    full.push_back(kraus[i].adjoint());
    weighted.push_back(std::sqrt(lambda[i]) * kraus[i].adjoint());
  }
  return is_cp(linear_combine(1.0, from_kraus(full), -1.0, from_kraus(weighted)), tol);
}

RnDualReport rn_dual_check(const SuperOp& t1, const CMatrix& t, int samples, std::uint64_t seed,
                           const Tolerances& tol) {
  if (t.rows() != t1.d_in || t.cols() != t1.d_in) throw Error("rn_dual_check: t must be d_in x d_in");
  if (!is_hermitian(t, tol.algebraic)) throw Error("rn_dual_check: t must be Hermitian with 0 <= t <= 1");
  const RVector spectrum = herm_eig(t).eigenvalues;
  if (spectrum(0) < -tol.algebraic || spectrum(spectrum.size() - 1) > 1.0 + tol.algebraic)
    throw Error("rn_dual_check: t violates 0 <= t <= 1");

  const SuperOp t2 = compose(t1, from_kraus({t}));
  const SuperOp t1d = dual(t1), t2d = dual(t2);
  RnDualReport report;
  report.identity_holds = true;
  for (int s = 0; s < samples; ++s) {
    const CMatrix rho = rand_state(derive_seed(seed, static_cast<std::uint64_t>(s)), t1.d_out);
    const CMatrix lhs = apply(t2d, rho);
    const CMatrix rhs = t * apply(t1d, rho) * t;
    const double err = (lhs - rhs).norm();
    report.max_identity_error = std::max(report.max_identity_error, err);
    if (err > tol.algebraic) report.identity_holds = false;
  }
  report.difference_positive =
      positivity_search(linear_combine(1.0, t1, -1.0, t2), tol.restarts, seed, tol.psd, tol.max_iter);
  return report;
}

VerifyOutcome verify_certificate(const Certificate& cert) {
  const Evidence& e = cert.evidence;
  const int n = e.d_in * e.d_out;
  if (n == 0 || e.choi.rows() != n || e.choi.cols() != n) return {false, "evidence lacks a Choi matrix"};
  const CMatrix& C = e.choi;
  const double psd_tol = std::max(cert.tolerances.psd, 1e-8);
  auto min_eig = [](const CMatrix& m) { return jacobi_eig(0.5 * (m + m.adjoint())).eigenvalues(0); };
  auto quadratic = [&](const CMatrix& psi) {
    CVector v(n);
    for (int o = 0; o < e.d_out; ++o)
      for (int i = 0; i < e.d_in; ++i) v(o * e.d_in + i) = psi(o, i);
    return (v.adjoint() * C * v)(0, 0).real();
  };

  switch (cert.label.verdict) {
  case Verdict::CP:
  case Verdict::NOT_CP: {
    if (!is_hermitian(C, 1e-8 * std::max(1.0, C.norm())))
      return {cert.label.verdict == Verdict::NOT_CP, "Choi matrix not Hermitian"};
    const double lambda = min_eig(C);
    const bool cp = lambda >= -cert.tolerances.psd;
    return {cp == (cert.label.verdict == Verdict::CP), "min Choi eigenvalue " + std::to_string(lambda)};
  }
  case Verdict::NOT_POSITIVE:
  case Verdict::NOT_K_POSITIVE: {
    if (!e.schmidt_vector) return {false, "missing violating vector"};
    const CMatrix& psi = *e.schmidt_vector;
    const int k = cert.label.verdict == Verdict::NOT_POSITIVE ? 1 : cert.label.k;
    if (std::abs(psi.norm() - 1.0) > 1e-10) return {false, "violating vector not normalised"};
    if (schmidt_tail(psi, k) > 1e-8) return {false, "violating vector exceeds Schmidt rank"};
    const double value = quadratic(psi);
    return {value <= -cert.tolerances.psd, "psi^* C psi = " + std::to_string(value)};
  }
  case Verdict::POSITIVE_PROBED:
  case Verdict::K_POSITIVE_UP_TO: {
    if (!e.schmidt_vector) return {true, "probe without stored vector"};
    const double value = quadratic(*e.schmidt_vector);
    return {value > -cert.tolerances.psd, "best probe value " + std::to_string(value)};
  }
  case Verdict::NON_DECOMPOSABLE: {
    if (!e.witness) return {false, "missing witness state"};
    const CMatrix& rho = *e.witness;
    if (rho.rows() != n || !is_hermitian(rho, 1e-10)) return {false, "witness not Hermitian"};
    const double tr = rho.trace().real();
    const double m1 = min_eig(rho);
    const double m2 = min_eig(partial_transpose(rho, e.d_out, e.d_in, Subsystem::Second));
    const double value = (C * rho).trace().real();
    const bool ok = m1 >= -psd_tol && m2 >= -psd_tol && std::abs(tr - 1.0) <= 1e-10 && value <= -cert.tolerances.delta;
    return {ok, "min eig " + std::to_string(m1) + ", min eig PT " + std::to_string(m2) + ", Tr[C rho] " +
                    std::to_string(value)};
  }
  case Verdict::DECOMPOSABLE: {
    if (!e.A || !e.B) return {false, "missing decomposition"};
    const double ma = min_eig(*e.A), mb = min_eig(*e.B);
    const double res = (C - *e.A - partial_transpose(*e.B, e.d_out, e.d_in, Subsystem::Second)).norm();
    const bool ok = ma >= -psd_tol && mb >= -psd_tol && res <= cert.tolerances.residual;
    return {ok, "min eig A " + std::to_string(ma) + ", min eig B " + std::to_string(mb) + ", residual " +
                    std::to_string(res)};
  }
  case Verdict::INCONCLUSIVE: return {true, "inconclusive verdicts carry no claim"};
  }
  return {false, "unknown verdict"};
}

} // namespace posmap
