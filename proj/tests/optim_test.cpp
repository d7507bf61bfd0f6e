#include <doctest.h>

#include "helpers.hpp"
#include "posmap/catalog.hpp"
#include "posmap/optim.hpp"

using namespace posmap;
using testutil::dist;

namespace {

CMatrix swap2() {
  CMatrix s = CMatrix::Zero(4, 4);
  s(0, 0) = s(3, 3) = s(1, 2) = s(2, 1) = 1.0;
  return s;
}

bool ppt(const CMatrix& rho, int dA, int dB) {
  return herm_eig(rho).eigenvalues.minCoeff() >= -1e-12 &&
         herm_eig(partial_transpose(rho, dA, dB, Subsystem::Second)).eigenvalues.minCoeff() >= -1e-12;
}

} // namespace

TEST_CASE("ppt_min on a PSD matrix stays nonnegative") {
  const CMatrix c = rand_psd(1, 6);
  const PptMinResult r = ppt_min(c, 2, 3);
  CHECK(r.value >= -1e-9);
  CHECK(r.converged);
}

TEST_CASE("ppt_min on the swap operator matches a brute-force scan") {
  // Werner states p P_anti + (1 - p) P_sym / 3 over a fine grid of p
  const CMatrix s = swap2(), id = CMatrix::Identity(4, 4);
  const CMatrix p_anti = (id - s) / 2.0, p_sym = (id + s) / 2.0;
  double brute = 1e9;
  for (int i = 0; i <= 10000; ++i) {
    const double p = i / 10000.0;
    const CMatrix rho = p * p_anti + (1 - p) / 3.0 * p_sym;
    if (ppt(rho, 2, 2)) brute = std::min(brute, (s * rho).trace().real());
  }
  CHECK(std::abs(brute) < 1e-12);

  const PptMinResult r = ppt_min(s, 2, 2);
  CHECK(std::abs(r.value - brute) < 1e-6);
  CHECK(std::abs(r.rho.trace() - 1.0) < 1e-10);
}

TEST_CASE("ppt_min on the Choi map") {
  const ChoiMatrix c = choi_of(build_named({"choi", {3, 1}, {}}));
  const PptMinResult r = ppt_min(c.C, 3, 3);
  CHECK(r.value <= -1e-4);
  CHECK(r.converged);
  CHECK(std::abs((c.C * r.rho).trace().real() - r.value) < 1e-9);
  CHECK(jacobi_eig(r.rho).eigenvalues.minCoeff() >= -1e-8);
  CHECK(jacobi_eig(partial_transpose(r.rho, 3, 3, Subsystem::Second)).eigenvalues.minCoeff() >= -1e-8);
  CHECK_THROWS_AS(ppt_min(rand_gaussian(1, 9, 9), 3, 3), Error);
}

TEST_CASE("Dykstra decomposition") {
  const CMatrix c = rand_psd(2, 4);
  const DykstraResult r = decompose_dykstra(c, 2, 2);
  CHECK(r.residual <= 1e-10);
  CHECK(dist(r.A + partial_transpose(r.B, 2, 2, Subsystem::Second), c) <= 1e-10);

  const CMatrix b0 = rand_psd(3, 6);
  const DykstraResult rb = decompose_dykstra(partial_transpose(b0, 2, 3, Subsystem::Second), 2, 3);
  CHECK(rb.residual <= 1e-8);
  CHECK(herm_eig(rb.A).eigenvalues.minCoeff() >= -1e-8);
  CHECK(herm_eig(rb.B).eigenvalues.minCoeff() >= -1e-8);

  const DykstraResult red = decompose_dykstra(choi_of(build_named({"reduction", {3}, {}})).C, 3, 3);
  CHECK(red.residual <= 1e-7);

  // the Choi matrix of gamma has no decomposition: the residual stays away from zero
  const DykstraResult g = decompose_dykstra(choi_of(build_named({"choi", {3, 1}, {}})).C, 3, 3, 1e-10, 2000);
  CHECK(g.residual > 1e-3);
}

TEST_CASE("project_psd") {
  const CMatrix h = rand_hermitian(5, 4);
  const CMatrix p = project_psd(h);
  CHECK(herm_eig(p).eigenvalues.minCoeff() >= -1e-12);
  CHECK(dist(project_psd(p), p) < 1e-12);
}
