#include "posmap/jordan.hpp"

#include <cmath>
#include <string>

namespace posmap {

namespace {

CMatrix kron_chain(const std::vector<CMatrix>& factors) {
  CMatrix out = CMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

CMatrix symmetrized_word(const std::vector<CMatrix>& word) {
  CMatrix forward = word.front();
  CMatrix backward = word.back();
  for (std::size_t i = 1; i < word.size(); ++i) {
    forward = forward * word[i];
    backward = backward * word[word.size() - 1 - i];
  }
  return forward + backward;
}

// Real embedding [Re vec(a); Im vec(a)] so that spans are taken over R.
RVector real_embedding(const CMatrix& a) {
  const CVector v = vec(a);
  RVector out(2 * v.size());
  out << v.real(), v.imag();
  return out;
}

} // namespace

double spin_system_defect(const SpinSystem& s) {
  double worst = 0.0;
  const CMatrix id = CMatrix::Identity(s.dim, s.dim);
  for (std::size_t i = 0; i < s.symmetries.size(); ++i) {
    const auto& a = s.symmetries[i];
    if (a.rows() != s.dim || a.cols() != s.dim) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, (a - a.adjoint()).norm());
    worst = std::max(worst, (a * a - id).norm());
    for (std::size_t j = i + 1; j < s.symmetries.size(); ++j) {
      const auto& b = s.symmetries[j];
      worst = std::max(worst, (a * b + b * a).norm());
    }
  }
  return worst;
}

void validate_spin_system(const SpinSystem& s, double tol) {
  if (s.dim < 1) throw Error("spin system: dimension must be positive");
  const double defect = spin_system_defect(s);
  if (!(defect <= tol)) throw Error("spin system: relations violated by " + std::to_string(defect));
  const CMatrix id = CMatrix::Identity(s.dim, s.dim);
  for (const auto& a : s.symmetries)
    if ((a - id).norm() <= tol || (a + id).norm() <= tol) throw Error("spin system: symmetry equals +-1");
}

SpinSystem build_spin_system(int k) {
  if (k < 1) throw Error("build_spin_system: k must be >= 1, got " + std::to_string(k));
  const CMatrix x = pauli_x(), y = pauli_y(), z = pauli_z(), id = CMatrix::Identity(2, 2);
  SpinSystem s{1 << k, {}};
  for (int site = 0; site < k; ++site) {
    for (const CMatrix* p : {&x, &y}) {
      std::vector<CMatrix> factors(k, id);
      for (int j = 0; j < site; ++j) factors[j] = z;
      factors[site] = *p;
      s.symmetries.push_back(kron_chain(factors));
    }
  }
  s.symmetries.push_back(kron_chain(std::vector<CMatrix>(k, z)));
  return s;
}

CMatrix jordan_product(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || a.rows() != b.rows() || b.rows() != b.cols())
    throw Error("jordan_product: operands must be square of equal size");
  return 0.5 * (a * b + b * a);
}

std::vector<CMatrix> spin_factor_basis(const SpinSystem& s, int generators) {
  if (generators < 1 || generators > static_cast<int>(s.symmetries.size()))
    throw Error("spin_projection: generator count must lie in [1, " + std::to_string(s.symmetries.size()) +
                "], got " + std::to_string(generators));
  std::vector<CMatrix> basis{CMatrix::Identity(s.dim, s.dim)};
  basis.insert(basis.end(), s.symmetries.begin(), s.symmetries.begin() + generators);
  return basis;
}

SuperOp spin_projection(const SpinSystem& s, int generators) {
  const auto basis = spin_factor_basis(s, generators);
  CMatrix rep = CMatrix::Zero(s.dim * s.dim, s.dim * s.dim);
  for (const auto& b : basis) {
    const CVector v = vec(b);
    rep += v * v.adjoint() / hs_inner(b, b).real();
  }
  return from_rep(s.dim, s.dim, std::move(rep));
}

std::vector<CMatrix> hermitian_basis(int d) {
  std::vector<CMatrix> basis;
  for (int i = 0; i < d; ++i) basis.push_back(matrix_unit(d, i, i));
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      basis.push_back(matrix_unit(d, i, j) + matrix_unit(d, j, i));
      basis.push_back(Complex(0, 1) * (matrix_unit(d, i, j) - matrix_unit(d, j, i)));
    }
  return basis;
}

ReversibilityReport reversibility_probe(const std::vector<CMatrix>& basis, int word_length, int samples,
                                        std::uint64_t seed, double tol) {
  if (basis.empty()) throw Error("reversibility_probe: empty basis");
  if (word_length < 2) throw Error("reversibility_probe: word length must be >= 2");
  const auto n = basis.front().rows();
  for (const auto& b : basis)
    if (b.rows() != n || b.cols() != n) throw Error("reversibility_probe: basis elements must share one square shape");

  RMatrix embedded(2 * n * n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) embedded.col(i) = real_embedding(basis[i]);
  Eigen::ColPivHouseholderQR<RMatrix> qr(embedded);
  qr.setThreshold(1e-12);
  const Eigen::Index rank = qr.rank();
  const RMatrix q = (qr.householderQ() * RMatrix::Identity(embedded.rows(), embedded.rows())).leftCols(rank);

  auto residual_of = [&](const CMatrix& m) {
    const RVector v = real_embedding(m);
    return (v - q * (q.transpose() * v)).norm();
  };

  ReversibilityReport report;
  report.basis_dimension = static_cast<int>(rank);
  report.passed = true;
  report.residual = 0.0;

  // Exhaustive pass over words of basis elements, shortest first.
  const double b = static_cast<double>(basis.size());
  double total = 0;
  for (int len = 3; len <= word_length; ++len) total += std::pow(b, len);
  if (total <= 20000) {
    for (int len = 3; len <= word_length; ++len) {
      std::vector<int> idx(len, 0);
      while (true) {
        std::vector<CMatrix> word;
        for (int i : idx) word.push_back(basis[i]);
        const CMatrix sym = symmetrized_word(word);
        const double r = residual_of(sym) / std::max(1.0, sym.norm());
        ++report.words_checked;
        if (r > tol) {
          report.passed = false;
          report.residual = r;
          report.violating_word = idx;
          return report;
        }
        report.residual = std::max(report.residual, r);
        int pos = len - 1;
        while (pos >= 0 && ++idx[pos] == static_cast<int>(basis.size())) idx[pos--] = 0;
        if (pos < 0) break;
      }
    }
  }

  // Sampled pass: random elements of the real span, unit Frobenius norm.
  for (int s = 0; s < samples; ++s) {
    const CMatrix coeffs = rand_gaussian(derive_seed(seed, static_cast<std::uint64_t>(s)), word_length,
                                         static_cast<int>(basis.size()));
    RMatrix real_coeffs = coeffs.real();
    std::vector<CMatrix> word;
    for (int f = 0; f < word_length; ++f) {
      CMatrix a = CMatrix::Zero(n, n);
      for (std::size_t i = 0; i < basis.size(); ++i) a += real_coeffs(f, static_cast<Eigen::Index>(i)) * basis[i];
      const double norm = a.norm();
      if (norm > 0) {
        a /= norm;
        real_coeffs.row(f) /= norm;
      }
      word.push_back(std::move(a));
    }
    const CMatrix sym = symmetrized_word(word);
    const double r = residual_of(sym) / std::max(1.0, sym.norm());
    ++report.words_checked;
    if (r > tol) {
      report.passed = false;
      report.residual = r;
      report.violating_coefficients = real_coeffs;
      return report;
    }
    report.residual = std::max(report.residual, r);
  }
  return report;
}

} // namespace posmap
