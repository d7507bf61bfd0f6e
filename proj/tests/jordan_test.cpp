#include <doctest.h>

#include "helpers.hpp"
#include "posmap/jordan.hpp"

using namespace posmap;
using testutil::dist;

TEST_CASE("spin systems") {
  const SpinSystem s1 = build_spin_system(1);
  REQUIRE(s1.symmetries.size() == 3);
  CHECK(dist(s1.symmetries[0], pauli_x()) == 0.0);
  CHECK(dist(s1.symmetries[1], pauli_y()) == 0.0);
  CHECK(dist(s1.symmetries[2], pauli_z()) == 0.0);

  for (int k = 1; k <= 3; ++k) {
    const SpinSystem s = build_spin_system(k);
    CHECK(s.dim == (1 << k));
    CHECK(s.symmetries.size() == static_cast<std::size_t>(2 * k + 1));
    // invariants checked pairwise here, independent of spin_system_defect
    for (std::size_t i = 0; i < s.symmetries.size(); ++i) {
      const CMatrix& a = s.symmetries[i];
      CHECK(dist(a, a.adjoint()) < 1e-12);
      CHECK(dist(a * a, CMatrix::Identity(s.dim, s.dim)) < 1e-12);
      for (std::size_t j = i + 1; j < s.symmetries.size(); ++j)
        CHECK((a * s.symmetries[j] + s.symmetries[j] * a).norm() < 1e-12);
    }
    CHECK(spin_system_defect(s) < 1e-11);
    CHECK_NOTHROW(validate_spin_system(s));
  }
  CHECK_THROWS_AS(build_spin_system(0), Error);

  SpinSystem broken = build_spin_system(1);
  broken.symmetries[1] = pauli_x();
  CHECK_THROWS_AS(validate_spin_system(broken), Error);
}

TEST_CASE("Jordan product") {
  CHECK(jordan_product(pauli_x(), pauli_y()).norm() < 1e-15);
  const SpinSystem s = build_spin_system(2);
  for (const auto& x : s.symmetries) CHECK(dist(jordan_product(x, x), CMatrix::Identity(4, 4)) < 1e-14);
  const CMatrix a = rand_hermitian(2, 3);
  CHECK(dist(jordan_product(a, CMatrix::Identity(3, 3)), a) < 1e-14);
  CHECK_THROWS_AS(jordan_product(CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)), Error);
}

TEST_CASE("spin factor projection") {
  const SpinSystem s = build_spin_system(2);
  const SuperOp p = spin_projection(s, 4);
  CHECK(dist(posmap::apply(p, CMatrix::Identity(4, 4)), CMatrix::Identity(4, 4)) < 1e-13);
  for (int i = 0; i < 4; ++i) CHECK(dist(posmap::apply(p, s.symmetries[i]), s.symmetries[i]) < 1e-13);
  CHECK(posmap::apply(p, s.symmetries[4]).norm() < 1e-13);
  CHECK(posmap::apply(p, CMatrix(s.symmetries[0] * s.symmetries[1])).norm() < 1e-13);
  CHECK(spin_factor_basis(s, 4).size() == 5);
  CHECK_THROWS_AS(spin_projection(s, 6), Error);
  CHECK_THROWS_AS(spin_projection(s, -1), Error);
}

TEST_CASE("reversibility probe") {
  CHECK(reversibility_probe(hermitian_basis(2)).passed);
  CHECK(reversibility_probe(spin_factor_basis(build_spin_system(1), 3)).passed);
  const ReversibilityReport r = reversibility_probe(spin_factor_basis(build_spin_system(3), 6));
  CHECK_FALSE(r.passed);
  REQUIRE(r.violating_word.has_value());
  CHECK(r.violating_word->size() >= 3);
  CHECK(r.violating_word->size() <= 4);
  CHECK(r.residual > 1e-6);
}
