#include "posmap/catalog.hpp"

#include <cmath>
#include <sstream>

#include "posmap/jordan.hpp"

namespace posmap {

namespace {

std::string describe(const NamedMapSpec& spec) {
  std::ostringstream os;
  os << spec.name << "(";
  for (std::size_t i = 0; i < spec.params.size(); ++i) os << (i ? "," : "") << spec.params[i];
  os << ")";
  return os.str();
}

void require_arity(const NamedMapSpec& spec, std::size_t n) {
  if (spec.params.size() != n)
    throw Error(describe(spec) + ": expected " + std::to_string(n) + " parameter(s), got " +
                std::to_string(spec.params.size()));
}

int int_param(const NamedMapSpec& spec, std::size_t i, const char* what, int min_value) {
  const double v = spec.params.at(i);
  if (std::floor(v) != v) throw Error(describe(spec) + ": " + what + " must be an integer");
  const int n = static_cast<int>(v);
  if (n < min_value) throw Error(describe(spec) + ": " + what + " must be >= " + std::to_string(min_value));
  return n;
}

CMatrix shift_operator(int d) {
  CMatrix s = CMatrix::Zero(d, d);
  for (int i = 0; i < d; ++i) s((i + 1) % d, i) = 1.0;
  return s;
}

std::vector<CMatrix> all_units(int d, double scale) {
  std::vector<CMatrix> out;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) out.push_back(scale * matrix_unit(d, i, j));
  return out;
}

CMatrix antisymmetric_unitary(const NamedMapSpec& spec, int n) {
  if (n < 2 || n % 2 != 0) throw Error(describe(spec) + ": N must be even and >= 2");
  if (!spec.unitary) return symplectic_unitary(n);
  const CMatrix& u = *spec.unitary;
  if (u.rows() != n || u.cols() != n) throw Error(describe(spec) + ": unitary must be NxN");
  if ((u.adjoint() * u - CMatrix::Identity(n, n)).norm() > 1e-10) throw Error(describe(spec) + ": U is not unitary");
  if ((u.transpose() + u).norm() > 1e-10) throw Error(describe(spec) + ": U is not antisymmetric (U^T != -U)");
  return u;
}

SuperOp robertson_matrix_form() {
  return from_action(4, 4, [](const CMatrix& x) {
    const CMatrix a = x.topLeftCorner(2, 2), b = x.topRightCorner(2, 2);
    const CMatrix c = x.bottomLeftCorner(2, 2), d = x.bottomRightCorner(2, 2);
    const CMatrix id = CMatrix::Identity(2, 2);
    CMatrix out(4, 4);
    out.topLeftCorner(2, 2) = 0.5 * d.trace() * id;
    out.topRightCorner(2, 2) = 0.5 * (b + quaternionic_flip(c));
    out.bottomLeftCorner(2, 2) = 0.5 * (c + quaternionic_flip(b));
    out.bottomRightCorner(2, 2) = 0.5 * a.trace() * id;
    return out;
  });
}

} // namespace

CMatrix symplectic_unitary(int n) {
  if (n < 2 || n % 2 != 0) throw Error("symplectic_unitary: N must be even and >= 2");
  CMatrix u = CMatrix::Zero(n, n);
  for (int i = 0; i < n; i += 2) {
    u(i, i + 1) = 1.0;
    u(i + 1, i) = -1.0;
  }
  return u;
}

std::vector<CMatrix> choi_v_operators() {
  const double r2 = std::sqrt(2.0);
  return {r2 * matrix_unit(3, 0, 0), r2 * matrix_unit(3, 1, 1), r2 * matrix_unit(3, 2, 2),
          matrix_unit(3, 0, 1),      matrix_unit(3, 1, 2),      matrix_unit(3, 2, 0)};
}

CMatrix quaternionic_flip(const CMatrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw Error("quaternionic_flip: expects a 2x2 matrix");
  CMatrix out(2, 2);
  out << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
  return out;
}

SuperOp robertson_factored() {
  const SuperOp sigma = from_action(4, 4, [](const CMatrix& x) {
    CMatrix out(4, 4);
    out.topLeftCorner(2, 2) = quaternionic_flip(x.topLeftCorner(2, 2));
    out.topRightCorner(2, 2) = quaternionic_flip(x.bottomLeftCorner(2, 2));
    out.bottomLeftCorner(2, 2) = quaternionic_flip(x.topRightCorner(2, 2));
    out.bottomRightCorner(2, 2) = quaternionic_flip(x.bottomRightCorner(2, 2));
    return out;
  });
  const SuperOp theta = from_action(4, 4, [](const CMatrix& x) {
    CMatrix out = x;
    out.topLeftCorner(2, 2) = x.bottomRightCorner(2, 2);
    out.bottomRightCorner(2, 2) = x.topLeftCorner(2, 2);
    return out;
  });
  return compose(theta, linear_combine(0.5, identity_map(4), 0.5, sigma));
}

SuperOp build_named(const NamedMapSpec& spec) {
  const std::string& name = spec.name;
  if (name == "identity") {
    require_arity(spec, 1);
    return identity_map(int_param(spec, 0, "d", 1));
  }
  if (name == "transpose") {
    require_arity(spec, 1);
    const int d = int_param(spec, 0, "d", 1);
    return from_kraus({CMatrix::Identity(d, d)}, {}, true);
  }
  if (name == "diag") {
    require_arity(spec, 1);
    const int d = int_param(spec, 0, "d", 1);
    std::vector<CMatrix> units;
    for (int i = 0; i < d; ++i) units.push_back(matrix_unit(d, i, i));
    return from_kraus(std::move(units));
  }
  if (name == "shift") {
    require_arity(spec, 1);
    return from_kraus({shift_operator(int_param(spec, 0, "d", 1))});
  }
  if (name == "choi") {
    require_arity(spec, 2);
    const int n = int_param(spec, 0, "n", 1);
    const int k = int_param(spec, 1, "k", 1);
    if (k > n - 2) throw Error(describe(spec) + ": requires 1 <= k <= n-2");
    std::vector<CMatrix> plus;
    for (int i = 0; i < n; ++i) plus.push_back(std::sqrt(static_cast<double>(n - k)) * matrix_unit(n, i, i));
    // diag(S^{j*} a S^j) = sum_i E_{i,i+j} a E_{i+j,i}
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < n; ++i) plus.push_back(matrix_unit(n, i, (i + j) % n));
    return from_kraus(std::move(plus), {CMatrix::Identity(n, n)});
  }
  if (name == "choi_v") {
    require_arity(spec, 0);
    return from_kraus(choi_v_operators());
  }
  if (name == "reduction") {
    require_arity(spec, 1);
    const int d = int_param(spec, 0, "d", 1);
    return from_kraus(all_units(d, 1.0), {CMatrix::Identity(d, d)});
  }
  if (name == "r_lambda") {
    require_arity(spec, 2);
    const int d = int_param(spec, 0, "d", 1);
    const double lambda = spec.params[1];
    const double trace_weight = lambda / d;
    const double id_weight = 1.0 - lambda;
    std::vector<CMatrix> plus, minus;
    for (auto& w : all_units(d, std::sqrt(std::abs(trace_weight)))) (trace_weight >= 0 ? plus : minus).push_back(w);
    if (id_weight != 0.0)
      (id_weight > 0 ? plus : minus).push_back(std::sqrt(std::abs(id_weight)) * CMatrix::Identity(d, d));
    return from_kraus(std::move(plus), std::move(minus));
  }
  if (name == "r_c") {
    require_arity(spec, 1);
    const int d = int_param(spec, 0, "d", 1);
    return from_kraus(all_units(d, std::sqrt(static_cast<double>(d - 1))), {CMatrix::Identity(d, d)});
  }
  if (name == "w_ij") {
    require_arity(spec, 3);
    const int d = int_param(spec, 0, "d", 1);
    const int i = int_param(spec, 1, "i", 1);
    const int j = int_param(spec, 2, "j", 1);
    if (i > d || j > d) throw Error(describe(spec) + ": indices must lie in [1, d]");
    return from_kraus({matrix_unit(d, i - 1, j - 1)});
  }
  if (name == "robertson") {
    require_arity(spec, 0);
    return robertson_matrix_form();
  }
  if (name == "breuer_hall") {
    require_arity(spec, 1);
    const int n = int_param(spec, 0, "N", 4);
    const CMatrix u = antisymmetric_unitary(spec, n);
    const SuperOp reduction = build_named({"reduction", {static_cast<double>(n)}, std::nullopt});
    const SuperOp flip = from_kraus({u}, {}, true);
    return linear_combine(1.0 / (n - 2), reduction, -1.0 / (n - 2), flip);
  }
  if (name == "beta0") {
    require_arity(spec, 1);
    const int n = int_param(spec, 0, "N", 2);
    return from_kraus({antisymmetric_unitary(spec, n)}, {}, true);
  }
  if (name == "jordan_proj") {
    require_arity(spec, 1);
    const int n = int_param(spec, 0, "N", 2);
    const SuperOp flip = from_kraus({antisymmetric_unitary(spec, n)}, {}, true);
    return linear_combine(0.5, identity_map(n), 0.5, flip);
  }
  if (name == "spin_proj") {
    require_arity(spec, 2);
    const int k = int_param(spec, 0, "k", 1);
    const int m = int_param(spec, 1, "m", 1);
    if (k > 6) throw Error(describe(spec) + ": k must be <= 6");
    return spin_projection(build_spin_system(k), m);
  }
  std::string names;
  for (const auto& e : catalog()) names += " " + e.name;
  throw Error("unknown map '" + name + "'; catalogued maps:" + names);
}

Expectation expected_for(const NamedMapSpec& spec) {
  Expectation e;
  const auto& name = spec.name;
  auto p = [&](std::size_t i) { return i < spec.params.size() ? spec.params[i] : 0.0; };
  auto cp_map = [&] {
    e.complete_positivity = Verdict::CP;
    e.positivity = Verdict::POSITIVE_PROBED;
    e.decomposability = Verdict::DECOMPOSABLE;
  };
  int d = 0;
  if (name == "identity" || name == "diag" || name == "shift" || name == "w_ij" || name == "choi_v") {
    cp_map();
  } else if (name == "transpose") {
    d = static_cast<int>(p(0));
    if (d <= 1) {
      cp_map();
    } else {
      e.complete_positivity = Verdict::NOT_CP;
      e.first_non_k_positive = 2;
      e.positivity = Verdict::POSITIVE_PROBED;
      e.decomposability = Verdict::DECOMPOSABLE;
      e.note = "transposition is positive but not 2-positive";
    }
  } else if (name == "choi") {
    e.complete_positivity = Verdict::NOT_CP;
    e.positivity = Verdict::POSITIVE_PROBED;
    if (p(0) == 3 && p(1) == 1) {
      e.decomposability = Verdict::NON_DECOMPOSABLE;
      e.note = "Choi's map on M_3: positive, not decomposable";
    }
  } else if (name == "reduction") {
    e.positivity = Verdict::POSITIVE_PROBED;
    e.decomposability = Verdict::DECOMPOSABLE;
    if (p(0) >= 2) e.complete_positivity = Verdict::NOT_CP;
  } else if (name == "r_c") {
    d = static_cast<int>(p(0));
    e.positivity = Verdict::POSITIVE_PROBED;
    if (d >= 2) {
      e.complete_positivity = Verdict::NOT_CP;
      e.first_non_k_positive = d;
      e.note = "(d-1)-positive but not d-positive";
    }
  } else if (name == "robertson") {
    e.complete_positivity = Verdict::NOT_CP;
    e.positivity = Verdict::POSITIVE_PROBED;
    e.decomposability = Verdict::NON_DECOMPOSABLE;
  } else if (name == "breuer_hall") {
    e.complete_positivity = Verdict::NOT_CP;
    e.positivity = Verdict::POSITIVE_PROBED;
    e.decomposability = Verdict::NON_DECOMPOSABLE;
    const int half = static_cast<int>(p(0)) / 2;
    if (!(half > 2 && half % 2 == 0))
      e.note = "original construction states N = 2d with d > 2 even; N = " + std::to_string(2 * half) +
               " is outside that stricter condition";
  } else if (name == "beta0") {
    e.complete_positivity = Verdict::NOT_CP;
    e.positivity = Verdict::POSITIVE_PROBED;
    e.decomposability = Verdict::DECOMPOSABLE;
  } else if (name == "jordan_proj") {
    e.positivity = Verdict::POSITIVE_PROBED;
    e.decomposability = Verdict::DECOMPOSABLE;
  } else if (name == "spin_proj") {
    const int m = static_cast<int>(p(1));
    e.positivity = Verdict::POSITIVE_PROBED;
    e.note = "spin factor with " + std::to_string(m) + " generators, linear dimension " + std::to_string(m + 1);
    if (m >= 6) e.decomposability = Verdict::NON_DECOMPOSABLE;
    if (p(0) == 1) cp_map();
  }
  // Every positive map with d_in * d_out <= 6 is decomposable.
  if (e.positivity && !e.decomposability) {
    const SuperOp t = build_named(spec);
    if (t.d_in * t.d_out <= 6) e.decomposability = Verdict::DECOMPOSABLE;
  }
  return e;
}

const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries{
      {"identity", "identity(d)", {3}, "a -> a"},
      {"transpose", "transpose(d)", {2}, "a -> a^T"},
      {"diag", "diag(d)", {3}, "projection onto the diagonal"},
      {"shift", "shift(d)", {3}, "a -> S a S^*, S e_i = e_{i+1}"},
      {"choi", "choi(n,k)", {3, 1}, "(n-k) diag(a) + sum_j diag(S^{j*} a S^j) - a"},
      {"choi_v", "choi_v()", {}, "a -> sum_i V_i a V_i^*"},
      {"reduction", "reduction(d)", {3}, "a -> Tr(a) 1 - a"},
      {"r_lambda", "r_lambda(d,lambda)", {3, 0.5}, "a -> lambda/d Tr(a) 1 + (1-lambda) a"},
      {"r_c", "r_c(d)", {3}, "a -> (d-1) Tr(a) 1 - a"},
      {"w_ij", "w_ij(d,i,j)", {3, 1, 2}, "a -> W_ij a W_ij^*"},
      {"robertson", "robertson()", {}, "Robertson's map on M_4"},
      {"breuer_hall", "breuer_hall(N)", {4}, "(Tr(a) 1 - a - U a^T U^*) / (N-2)"},
      {"beta0", "beta0(N)", {4}, "a -> U a^T U^*"},
      {"jordan_proj", "jordan_proj(N)", {4}, "(a + U a^T U^*) / 2"},
      {"spin_proj", "spin_proj(k,m)", {3, 6}, "projection onto a spin factor with m generators on C^(2^k)"},
  };
  return entries;
}

} // namespace posmap
