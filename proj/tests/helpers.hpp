#pragma once

#include <doctest.h>

#include "posmap/matrix.hpp"
#include "posmap/superop.hpp"

namespace testutil {

inline double dist(const posmap::CMatrix& a, const posmap::CMatrix& b) { return (a - b).norm(); }

/// Real diagonal matrix from an initializer list.
inline posmap::CMatrix diag(std::initializer_list<double> v) {
  posmap::CMatrix m = posmap::CMatrix::Zero(v.size(), v.size());
  int i = 0;
  for (double x : v) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

/// Ascending eigenvalues by brute force on a 2x2 Hermitian matrix.
inline std::pair<double, double> eig2(const posmap::CMatrix& a) {
  const double tr = (a(0, 0) + a(1, 1)).real();
  const double det = (a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0)).real();
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4 - det));
  return {tr / 2 - disc, tr / 2 + disc};
}

} // namespace testutil
