#include "posmap/superop.hpp"

#include <cmath>
#include <string>

namespace posmap {

namespace {

std::string shape(const CMatrix& a) { return std::to_string(a.rows()) + "x" + std::to_string(a.cols()); }

CMatrix rep_of_kraus(const KrausForm& k, int d_in, int d_out) {
  CMatrix rep = CMatrix::Zero(d_out * d_out, d_in * d_in);
  for (const auto& c : k.plus) rep += kron(c.conjugate(), c);
  for (const auto& d : k.minus) rep -= kron(d.conjugate(), d);
  if (k.pre_transpose) rep = rep * transpose_permutation(d_in);
  return rep;
}

void append_scaled(std::vector<CMatrix>& plus, std::vector<CMatrix>& minus, double weight, const KrausForm& k) {
  if (weight == 0.0) return;
  const double s = std::sqrt(std::abs(weight));
  auto& same = weight > 0 ? plus : minus;
  auto& flipped = weight > 0 ? minus : plus;
  for (const auto& c : k.plus) same.push_back(s * c);
  for (const auto& d : k.minus) flipped.push_back(s * d);
}

} // namespace

CVector vec(const CMatrix& a) { return Eigen::Map<const CVector>(a.data(), a.size()); }

CMatrix unvec(const CVector& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) throw Error("unvec: length does not match shape");
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

CMatrix transpose_permutation(int d) {
  CMatrix p = CMatrix::Zero(d * d, d * d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) p(r + c * d, c + r * d) = 1.0;
  return p;
}

SuperOp from_kraus(std::vector<CMatrix> plus, std::vector<CMatrix> minus, bool pre_transpose) {
  const CMatrix* first = !plus.empty() ? &plus.front() : !minus.empty() ? &minus.front() : nullptr;
  if (!first) throw Error("from_kraus: at least one Kraus operator is required");
  const auto d_out = static_cast<int>(first->rows());
  const auto d_in = static_cast<int>(first->cols());
  for (const auto* list : {&plus, &minus})
    for (const auto& k : *list)
      if (k.rows() != d_out || k.cols() != d_in)
        throw Error("from_kraus: all Kraus operators must be " + shape(*first) + ", got " + shape(k));
  KrausForm form{std::move(plus), std::move(minus), pre_transpose};
  SuperOp t{d_in, d_out, rep_of_kraus(form, d_in, d_out), std::move(form)};
  return t;
}

SuperOp from_rep(int d_in, int d_out, CMatrix rep) {
  if (d_in < 1 || d_out < 1) throw Error("from_rep: dimensions must be positive");
  if (rep.rows() != d_out * d_out || rep.cols() != d_in * d_in)
    throw Error("from_rep: rep must be " + std::to_string(d_out * d_out) + "x" + std::to_string(d_in * d_in) +
                ", got " + shape(rep));
  return SuperOp{d_in, d_out, std::move(rep), std::nullopt};
}

SuperOp from_action(int d_in, int d_out, const std::function<CMatrix(const CMatrix&)>& action) {
  CMatrix rep(d_out * d_out, d_in * d_in);
  for (int j = 0; j < d_in; ++j)
    for (int i = 0; i < d_in; ++i) {
      const CMatrix image = action(matrix_unit(d_in, i, j));
      if (image.rows() != d_out || image.cols() != d_out) throw Error("from_action: action returned " + shape(image));
      rep.col(i + j * d_in) = vec(image);
    }
  return from_rep(d_in, d_out, std::move(rep));
}

SuperOp identity_map(int d) { return from_kraus({CMatrix::Identity(d, d)}); }

CMatrix apply(const SuperOp& t, const CMatrix& a) {
  if (a.rows() != t.d_in || a.cols() != t.d_in)
    throw Error("apply: expected a " + std::to_string(t.d_in) + "x" + std::to_string(t.d_in) + " input, got " +
                shape(a));
  return unvec(t.rep * vec(a), t.d_out, t.d_out);
}

CMatrix apply_kraus(const SuperOp& t, const CMatrix& a) {
  if (!t.kraus) throw Error("apply_kraus: map carries no Kraus data");
  if (a.rows() != t.d_in || a.cols() != t.d_in) throw Error("apply_kraus: input shape mismatch, got " + shape(a));
  const CMatrix x = t.kraus->pre_transpose ? CMatrix(a.transpose()) : a;
  CMatrix out = CMatrix::Zero(t.d_out, t.d_out);
  for (const auto& c : t.kraus->plus) out += c * x * c.adjoint();
  for (const auto& d : t.kraus->minus) out -= d * x * d.adjoint();
  return out;
}

SuperOp linear_combine(double alpha, const SuperOp& t, double beta, const SuperOp& s) {
  if (t.d_in != s.d_in || t.d_out != s.d_out) throw Error("linear_combine: dimension mismatch");
  SuperOp out{t.d_in, t.d_out, alpha * t.rep + beta * s.rep, std::nullopt};
  if (t.kraus && s.kraus && t.kraus->pre_transpose == s.kraus->pre_transpose && beta >= 0) {
    KrausForm k;
    k.pre_transpose = t.kraus->pre_transpose;
    append_scaled(k.plus, k.minus, alpha, *t.kraus);
    append_scaled(k.plus, k.minus, beta, *s.kraus);
    if (!k.plus.empty() || !k.minus.empty()) out.kraus = std::move(k);
  }
  return out;
}

SuperOp compose(const SuperOp& t, const SuperOp& s) {
  if (t.d_in != s.d_out) throw Error("compose: inner dimensions differ");
  SuperOp out{s.d_in, t.d_out, t.rep * s.rep, std::nullopt};
  if (t.kraus && s.kraus) {
    KrausForm k;
    k.pre_transpose = t.kraus->pre_transpose != s.kraus->pre_transpose;
    auto product = [&](const CMatrix& outer, const CMatrix& inner) -> CMatrix {
      return t.kraus->pre_transpose ? CMatrix(outer * inner.conjugate()) : CMatrix(outer * inner);
    };
    for (const auto& a : t.kraus->plus) {
      for (const auto& b : s.kraus->plus) k.plus.push_back(product(a, b));
      for (const auto& b : s.kraus->minus) k.minus.push_back(product(a, b));
    }
    for (const auto& a : t.kraus->minus) {
      for (const auto& b : s.kraus->plus) k.minus.push_back(product(a, b));
      for (const auto& b : s.kraus->minus) k.plus.push_back(product(a, b));
    }
    out.kraus = std::move(k);
  }
  return out;
}

SuperOp dual(const SuperOp& t) {
  SuperOp out{t.d_out, t.d_in,
              transpose_permutation(t.d_in) * t.rep.transpose() * transpose_permutation(t.d_out), std::nullopt};
  if (t.kraus) {
    KrausForm k;
    k.pre_transpose = t.kraus->pre_transpose;
    auto flip = [&](const CMatrix& c) -> CMatrix {
      return k.pre_transpose ? CMatrix(c.transpose()) : CMatrix(c.adjoint());
    };
    for (const auto& c : t.kraus->plus) k.plus.push_back(flip(c));
    for (const auto& d : t.kraus->minus) k.minus.push_back(flip(d));
    out.kraus = std::move(k);
  }
  return out;
}

ChoiMatrix choi_of(const SuperOp& t) {
  const int n = t.d_out * t.d_in;
  ChoiMatrix c{CMatrix(n, n), t.d_in, t.d_out};
  for (int o = 0; o < t.d_out; ++o)
    for (int i = 0; i < t.d_in; ++i)
      for (int p = 0; p < t.d_out; ++p)
        for (int j = 0; j < t.d_in; ++j) c.C(o * t.d_in + i, p * t.d_in + j) = t.rep(o + p * t.d_out, i + j * t.d_in);
  return c;
}

SuperOp map_from_choi(const ChoiMatrix& c) {
  const int n = c.d_out * c.d_in;
  if (c.d_in < 1 || c.d_out < 1 || c.C.rows() != n || c.C.cols() != n)
    throw Error("map_from_choi: Choi matrix must be " + std::to_string(n) + "x" + std::to_string(n));
  CMatrix rep(c.d_out * c.d_out, c.d_in * c.d_in);
  for (int o = 0; o < c.d_out; ++o)
    for (int i = 0; i < c.d_in; ++i)
      for (int p = 0; p < c.d_out; ++p)
        for (int j = 0; j < c.d_in; ++j) rep(o + p * c.d_out, i + j * c.d_in) = c.C(o * c.d_in + i, p * c.d_in + j);
  return from_rep(c.d_in, c.d_out, std::move(rep));
}

KrausSplit kraus_from_choi(const ChoiMatrix& c, double tol) {
  if (!is_hermitian(c.C, 1e-8 * std::max(1.0, c.C.norm())))
    throw Error("kraus_from_choi: Choi matrix is not Hermitian (map does not preserve Hermiticity)");
  const HermEig eig = herm_eig(c.C);
  KrausSplit out;
  for (Eigen::Index k = 0; k < eig.eigenvalues.size(); ++k) {
    const double lambda = eig.eigenvalues(k);
    if (std::abs(lambda) <= tol) continue;
    CMatrix op(c.d_out, c.d_in);
    for (int o = 0; o < c.d_out; ++o)
      for (int i = 0; i < c.d_in; ++i) op(o, i) = eig.eigenvectors(o * c.d_in + i, k);
    op *= std::sqrt(std::abs(lambda));
    (lambda > 0 ? out.plus : out.minus).push_back(std::move(op));
  }
  return out;
}

bool is_hermiticity_preserving(const SuperOp& t, double tol) {
  return is_hermitian(choi_of(t).C, tol * std::max(1.0, t.rep.norm()));
}

SuperOp elementary_ket_bra(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error("elementary_ket_bra: a and b must be square of equal size, got " + shape(a) + " and " + shape(b));
  const auto d = static_cast<int>(a.rows());
  return from_rep(d, d, vec(a) * vec(b).adjoint());
}

SuperOp module_elementary(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw Error("module_elementary: a and b must be square of equal size, got " + shape(a) + " and " + shape(b));
  const auto d = static_cast<int>(a.rows());
  SuperOp t = from_rep(d, d, kron(a.transpose(), b.adjoint()));
  if (a == b) t.kraus = KrausForm{{b.adjoint()}, {}, false};
  return t;
}

} // namespace posmap
