#include "posmap/suite.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "posmap/analysis.hpp"
#include "posmap/catalog.hpp"
#include "posmap/certify.hpp"
#include "posmap/jordan.hpp"

namespace posmap {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

// Accumulates named sub-checks of one criterion.
class Checks {
public:
  void expect(bool ok, const std::string& what) {
    all_ &= ok;
    text_ += (text_.empty() ? "" : "; ") + std::string(ok ? "" : "FAILED ") + what;
  }
  bool ok() const { return all_; }
  const std::string& text() const { return text_; }

private:
  bool all_ = true;
  std::string text_;
};

SuperOp named(const std::string& name, std::vector<double> params = {}) {
  return build_named({name, std::move(params), std::nullopt});
}

double rep_distance(const SuperOp& a, const SuperOp& b) { return (a.rep - b.rep).norm(); }

CriterionResult finish(int id, std::string title, Checks& checks, Json values, Clock::time_point start) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.passed = checks.ok();
  r.detail = checks.text();
  r.values = std::move(values);
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return r;
}

CriterionResult choi_map(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  Json v;
  const SuperOp gamma = named("choi", {3, 1});
  const Certificate cp = is_cp(gamma);
  ch.expect(cp.label.verdict == Verdict::NOT_CP, "is_cp -> " + to_string(cp.label));
  ch.expect(*cp.evidence.min_choi_eigenvalue < -0.5, "min Choi eigenvalue " + fmt(*cp.evidence.min_choi_eigenvalue));
  const Certificate pos = positivity_search(gamma, 200, derive_seed(o.seed, 11), 1e-10);
  ch.expect(pos.label.verdict == Verdict::POSITIVE_PROBED, "positivity -> " + to_string(pos.label));
  ch.expect(*pos.evidence.objective_value >= -1e-10, "best probe value " + fmt(*pos.evidence.objective_value));
  const Certificate dec = decomposability_decide(gamma);
  ch.expect(dec.label.verdict == Verdict::NON_DECOMPOSABLE, "decomposability -> " + to_string(dec.label));
  ch.expect(*dec.evidence.objective_value <= -1e-4, "witness value " + fmt(*dec.evidence.objective_value));
  const VerifyOutcome ver = verify_certificate(dec);
  ch.expect(ver.ok, "witness re-verification: " + ver.detail);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  ch.expect(secs <= 60.0, "runtime within 60 s");
  v["min_choi_eigenvalue"] = *cp.evidence.min_choi_eigenvalue;
  v["positivity_best"] = *pos.evidence.objective_value;
  v["witness_value"] = *dec.evidence.objective_value;
  v["verdicts"] = {to_string(cp.label), to_string(pos.label), to_string(dec.label)};
  return finish(1, "Choi map on M_3: NOT_CP, POSITIVE_PROBED, NON_DECOMPOSABLE", ch, v, start);
}

CriterionResult hou_choi(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  const HouReport rep =
      hou_contractive_check(choi_v_operators(), {CMatrix::Identity(3, 3)}, 10000, derive_seed(o.seed, 21));
  ch.expect(rep.samples.size() >= 10000, std::to_string(rep.samples.size()) + " samples");
  ch.expect(rep.representable, "every sample representable");
  ch.expect(std::abs(rep.max_operator_norm - 1.0) <= 1e-4, "max norm " + fmt(rep.max_operator_norm));
  double worst_excess = 0.0, worst_mismatch = 0.0;
  for (const auto& s : rep.samples) {
    worst_excess = std::max(worst_excess, s.operator_norm - 1.0);
    double closed = 0.0;
    for (int i = 0; i < 3; ++i) {
      const double a = std::norm(s.x(i)), b = std::norm(s.x((i + 1) % 3));
      if (a > 0) closed += a / (2 * a + b);
    }
    worst_mismatch = std::max(worst_mismatch, std::abs(closed - s.frobenius_norm * s.frobenius_norm));
  }
  ch.expect(worst_excess <= 1e-8, "max excess over 1: " + fmt(worst_excess));
  ch.expect(worst_mismatch <= 1e-8, "closed form vs solver: " + fmt(worst_mismatch));
  Json v{{"max_operator_norm", rep.max_operator_norm},
         {"closed_form_mismatch", worst_mismatch},
         {"worst_x", matrix_to_json(CMatrix(rep.worst_x))}};
  return finish(2, "Contractive local combination for the Choi map", ch, v, start);
}

CriterionResult stormer_choi(const SuiteOptions&) {
  const auto start = Clock::now();
  Checks ch;
  const auto vs = choi_v_operators();
  std::vector<std::vector<CMatrix>> blocks;
  for (int i = 2; i < 6; ++i) {
    blocks.emplace_back();
    for (int j = 2; j < 6; ++j) blocks.back().push_back(vs[i] * vs[j].adjoint());
  }
  const StormerReport r = stormer_probe(named("choi", {3, 1}), blocks, 1e-10);
  ch.expect(r.min_eig_blocks >= -1e-10, "(x_ij) min eigenvalue " + fmt(r.min_eig_blocks));
  ch.expect(r.min_eig_transposed >= -1e-10, "(x_ji) min eigenvalue " + fmt(r.min_eig_transposed));
  ch.expect(r.min_eig_applied <= -1e-3, "(T(x_ij)) min eigenvalue " + fmt(r.min_eig_applied));
  return finish(3, "Block criterion on {V_i V_j^*}, i,j = 3..6", ch, stormer_report_to_json(r), start);
}

CriterionResult reduction_maps(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  const Certificate dec = decomposability_decide(named("reduction", {3}));
  ch.expect(dec.label.verdict == Verdict::DECOMPOSABLE, "R decomposability -> " + to_string(dec.label));
  const double residual = dec.evidence.residual.value_or(1.0);
  ch.expect(residual <= 1e-7, "Dykstra residual " + fmt(residual));
  if (dec.evidence.A && dec.evidence.B) {
    const double ma = min_eigenvalue(*dec.evidence.A), mb = min_eigenvalue(*dec.evidence.B);
    ch.expect(ma >= -1e-8 && mb >= -1e-8, "min eig A " + fmt(ma) + ", B " + fmt(mb));
  }
  ch.expect(verify_certificate(dec).ok, "decomposition re-verification");
  const SuperOp rc = named("r_c", {3});
  const Certificate k2 = k_positivity_search(rc, 2, 200, derive_seed(o.seed, 41), 1e-8);
  ch.expect(k2.label.verdict == Verdict::K_POSITIVE_UP_TO, "R_C k=2 -> " + to_string(k2.label));
  const Certificate k3 = k_positivity_search(rc, 3, 200, derive_seed(o.seed, 42), 1e-8);
  ch.expect(k3.label.verdict == Verdict::NOT_K_POSITIVE, "R_C k=3 -> " + to_string(k3.label));
  ch.expect(*k3.evidence.objective_value <= -1e-6, "k=3 value " + fmt(*k3.evidence.objective_value));
  ch.expect(verify_certificate(k3).ok, "k=3 violation re-verification");
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  ch.expect(secs <= 60.0, "runtime within 60 s");
  Json v{{"reduction_residual", residual},
         {"rc_k2_best", *k2.evidence.objective_value},
         {"rc_k3_value", *k3.evidence.objective_value},
         {"verdicts", {to_string(dec.label), to_string(k2.label), to_string(k3.label)}}};
  return finish(4, "Reduction map decomposable; R_C 2-positive, not 3-positive", ch, v, start);
}

CriterionResult transposition(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  const SuperOp tau = named("transpose", {2});
  const Certificate cp = is_cp(tau);
  ch.expect(cp.label.verdict == Verdict::NOT_CP, "is_cp -> " + to_string(cp.label));
  ch.expect(std::abs(*cp.evidence.min_choi_eigenvalue + 1.0) <= 1e-10,
            "min eigenvalue " + fmt(*cp.evidence.min_choi_eigenvalue));
  const Certificate k2 = k_positivity_search(tau, 2, 200, derive_seed(o.seed, 51), 1e-8);
  ch.expect(k2.label.verdict == Verdict::NOT_K_POSITIVE && k2.label.k == 2, "k=2 -> " + to_string(k2.label));
  const Certificate pos = positivity_search(tau, 200, derive_seed(o.seed, 52), 1e-8);
  ch.expect(pos.label.verdict == Verdict::POSITIVE_PROBED, "positivity -> " + to_string(pos.label));
  const Certificate dec = decomposability_decide(tau);
  ch.expect(dec.label.verdict == Verdict::DECOMPOSABLE, "decomposability -> " + to_string(dec.label));
  const double residual = dec.evidence.residual.value_or(1.0);
  ch.expect(residual <= 1e-9, "residual " + fmt(residual));
  Json v{{"min_choi_eigenvalue", *cp.evidence.min_choi_eigenvalue},
         {"k2_value", *k2.evidence.objective_value},
         {"residual", residual},
         {"verdicts", {to_string(cp.label), to_string(k2.label), to_string(pos.label), to_string(dec.label)}}};
  return finish(5, "Transposition on M_2", ch, v, start);
}

CriterionResult robertson(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  const SuperOp rob = named("robertson");
  const double diff = rep_distance(rob, robertson_factored());
  ch.expect(diff <= 1e-12, "matrix vs factored form " + fmt(diff));
  const Certificate pos = positivity_search(rob, 200, derive_seed(o.seed, 61), 1e-8);
  ch.expect(pos.label.verdict == Verdict::POSITIVE_PROBED, "positivity -> " + to_string(pos.label));
  const Certificate dec = decomposability_decide(rob);
  ch.expect(dec.label.verdict == Verdict::NON_DECOMPOSABLE, "decomposability -> " + to_string(dec.label));
  const VerifyOutcome ver = verify_certificate(dec);
  ch.expect(ver.ok, "witness re-verification: " + ver.detail);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  ch.expect(secs <= 300.0, "runtime within 300 s");
  Json v{{"form_difference", diff},
         {"positivity_best", *pos.evidence.objective_value},
         {"witness_value", *dec.evidence.objective_value}};
  return finish(6, "Robertson map on M_4", ch, v, start);
}

CriterionResult breuer_hall(const SuiteOptions&) {
  const auto start = Clock::now();
  Checks ch;
  const Certificate dec = decomposability_decide(named("breuer_hall", {4}));
  ch.expect(dec.label.verdict == Verdict::NON_DECOMPOSABLE, "decomposability -> " + to_string(dec.label));
  const VerifyOutcome ver = verify_certificate(dec);
  ch.expect(ver.ok, "witness re-verification: " + ver.detail);
  const SuperOp beta = named("beta0", {4});
  const double involution = rep_distance(compose(beta, beta), identity_map(4));
  ch.expect(involution <= 1e-12, "beta0 o beta0 - id: " + fmt(involution));
  const SuperOp proj = named("jordan_proj", {4});
  const double idem = rep_distance(compose(proj, proj), proj);
  ch.expect(idem <= 1e-10, "projection idempotence defect " + fmt(idem));
  Json v{{"witness_value", *dec.evidence.objective_value}, {"involution_defect", involution}, {"idempotence_defect", idem}};
  return finish(7, "Breuer-Hall map on M_4", ch, v, start);
}

CriterionResult spin_chain(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  Json v;
  for (int k = 1; k <= 3; ++k) {
    const SpinSystem s = build_spin_system(k);
    const double defect = spin_system_defect(s);
    ch.expect(defect <= 1e-11 && static_cast<int>(s.symmetries.size()) == 2 * k + 1,
              "k=" + std::to_string(k) + " defect " + fmt(defect));
    v["defect_k" + std::to_string(k)] = defect;
  }
  const SpinSystem s3 = build_spin_system(3);
  const auto basis = spin_factor_basis(s3, 6);
  const ReversibilityReport rev = reversibility_probe(basis, 4, 500, derive_seed(o.seed, 81));
  ch.expect(!rev.passed, "reversibility violation for 6 generators on C^8");
  const ReversibilityReport rev2 = reversibility_probe(hermitian_basis(2), 4, 500, derive_seed(o.seed, 82));
  ch.expect(rev2.passed, "M_2 passes reversibility probe");
  v["reversibility_violation"] = reversibility_report_to_json(rev);
  v["reversibility_m2_residual"] = rev2.residual;
  if (o.full) {
    const Certificate dec = decomposability_decide(spin_projection(s3, 6));
    ch.expect(dec.label.verdict == Verdict::NON_DECOMPOSABLE, "6-generator projection -> " + to_string(dec.label));
    const VerifyOutcome ver = verify_certificate(dec);
    ch.expect(ver.ok, "64x64 witness re-verification: " + ver.detail);
    const double secs = std::chrono::duration<double>(Clock::now() - start).count();
    ch.expect(secs <= 1800.0, "runtime within 1800 s");
    v["witness_value"] = dec.evidence.objective_value.value_or(0.0);
  } else {
    v["skipped"] = "64x64 decomposability case runs with --full";
  }
  return finish(8, "Spin-factor chain", ch, v, start);
}

SuperOp random_kraus_map(std::uint64_t seed, int d, int plus, int minus) {
  std::vector<CMatrix> p, m;
  for (int i = 0; i < plus; ++i) p.push_back(rand_gaussian(derive_seed(seed, i), d, d) / std::sqrt(2.0 * d));
  for (int i = 0; i < minus; ++i) m.push_back(rand_gaussian(derive_seed(seed, 100 + i), d, d) / std::sqrt(2.0 * d));
  return from_kraus(p, m);
}

CriterionResult properties(const SuiteOptions& o) {
  const auto start = Clock::now();
  Checks ch;
  Json v;
  std::mt19937_64 rng(derive_seed(o.seed, 91));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  // Raginsky differences
  int cp_count = 0;
  for (int c = 0; c < 100; ++c) {
    const int d = 2 + c % 3, n = 1 + c % 4;
    std::vector<CMatrix> kraus;
    std::vector<double> lambda;
    for (int i = 0; i < n; ++i) {
      kraus.push_back(rand_gaussian(derive_seed(o.seed, 10000 + 10 * c + i), d, d));
      lambda.push_back(unit(rng));
    }
    if (raginsky_check(kraus, lambda).label.verdict == Verdict::CP) ++cp_count;
  }
  ch.expect(cp_count == 100, "Raginsky differences CP: " + std::to_string(cp_count) + "/100");
  v["raginsky_cp"] = cp_count;

  const std::vector<NamedMapSpec> specs{
      {"transpose", {3}, {}}, {"diag", {3}, {}},       {"shift", {4}, {}},      {"choi", {3, 1}, {}},
      {"choi", {4, 2}, {}},   {"choi_v", {}, {}},      {"reduction", {3}, {}},  {"r_lambda", {3, 1.5}, {}},
      {"r_c", {3}, {}},       {"w_ij", {3, 1, 2}, {}}, {"robertson", {}, {}},   {"breuer_hall", {4}, {}},
      {"beta0", {4}, {}},     {"jordan_proj", {4}, {}}, {"spin_proj", {2, 4}, {}}};

  // duality
  double worst_dual = 0.0;
  for (int c = 0; c < 105; ++c) {
    const SuperOp t = build_named(specs[c % specs.size()]);
    const SuperOp td = dual(t);
    const CMatrix a = rand_hermitian(derive_seed(o.seed, 20000 + 2 * c), t.d_out);
    const CMatrix b = rand_hermitian(derive_seed(o.seed, 20001 + 2 * c), t.d_in);
    const Complex lhs = (a * apply(t, b)).trace(), rhs = (apply(td, a) * b).trace();
    worst_dual = std::max(worst_dual, std::abs(lhs - rhs));
  }
  ch.expect(worst_dual <= 1e-10, "duality identity max error " + fmt(worst_dual));
  v["duality_max_error"] = worst_dual;

  // rep / Kraus / Choi agreement
  double worst_three = 0.0;
  int three_cases = 0;
  for (int c = 0; three_cases < 100; ++c) {
    SuperOp t = c % 3 == 0 ? random_kraus_map(derive_seed(o.seed, 30000 + c), 2 + c % 3, 2, 1)
                           : build_named(specs[c % specs.size()]);
    if (!t.kraus) continue;
    const SuperOp via_choi = map_from_choi(choi_of(t));
    const CMatrix a = rand_gaussian(derive_seed(o.seed, 40000 + c), t.d_in, t.d_in);
    const CMatrix r1 = posmap::apply(t, a);
    const CMatrix r2 = apply_kraus(t, a);
    const CMatrix r3 = posmap::apply(via_choi, a);
    worst_three = std::max({worst_three, (r1 - r2).norm(), (r1 - r3).norm()});
    ++three_cases;
  }
  ch.expect(worst_three <= 1e-10, "rep/Kraus/Choi max disagreement " + fmt(worst_three));
  v["three_way_max_error"] = worst_three;

  // dual Radon-Nikodym identity
  double worst_rn = 0.0;
  bool all_rn = true;
  for (int c = 0; c < 100; ++c) {
    const int d = 2 + c % 2;
    const SuperOp t1 = random_kraus_map(derive_seed(o.seed, 50000 + c), d, 2, 1);
    const CMatrix u = rand_unitary(derive_seed(o.seed, 60000 + c), d);
    RVector spectrum(d);
    for (int i = 0; i < d; ++i) spectrum(i) = unit(rng);
    const CMatrix t = u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
    Tolerances tol;
    tol.restarts = 5;
    const RnDualReport r = rn_dual_check(t1, 0.5 * (t + t.adjoint()), 4, derive_seed(o.seed, 70000 + c), tol);
    all_rn &= r.identity_holds;
    worst_rn = std::max(worst_rn, r.max_identity_error);
  }
  ch.expect(all_rn && worst_rn <= 1e-10, "T2^d = t T1^d t max error " + fmt(worst_rn));
  v["rn_max_error"] = worst_rn;

  CMatrix t = CMatrix::Zero(2, 2);
  t(0, 0) = 1.0;
  const RnDualReport counter = rn_dual_check(identity_map(2), t, 100, derive_seed(o.seed, 92));
  ch.expect(counter.identity_holds, "counterexample: dual identity holds");
  ch.expect(counter.difference_positive.label.verdict == Verdict::NOT_POSITIVE,
            "counterexample: difference " + to_string(counter.difference_positive.label));
  CMatrix a(2, 2);
  a << 1, 1, 1, 1;
  const CMatrix diff = a - t * a * t;
  ch.expect(std::abs(diff.determinant() + 1.0) <= 1e-12, "counterexample: det (T1 - T2)(a) = -1");
  v["counterexample_value"] = *counter.difference_positive.evidence.objective_value;
  return finish(9, "Property suites", ch, v, start);
}

std::vector<CriterionResult> core_criteria(const SuiteOptions& o) {
  return {choi_map(o),  hou_choi(o),    stormer_choi(o), reduction_maps(o), transposition(o),
          robertson(o), breuer_hall(o), spin_chain(o),   properties(o)};
}

} // namespace

bool SuiteResult::passed() const {
  for (const auto& c : criteria)
    if (!c.passed) return false;
  return true;
}

SuiteResult run_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.criteria = core_criteria(options);
  if (options.determinism_check) {
    const auto start = Clock::now();
    SuiteOptions quick = options;
    quick.full = false;
    quick.determinism_check = false;
    SuiteResult first{options.full ? core_criteria(quick) : result.criteria};
    SuiteResult second{core_criteria(quick)};
    const std::string a = strip_timings(suite_to_json(first, quick)).dump();
    const std::string b = strip_timings(suite_to_json(second, quick)).dump();
    Checks ch;
    ch.expect(a == b, "two quick runs with seed " + std::to_string(options.seed) + " produce identical reports (" +
                          std::to_string(a.size()) + " bytes)");
    result.criteria.push_back(finish(10, "Determinism", ch, Json{{"report_bytes", a.size()}}, start));
  }
  return result;
}

Json suite_to_json(const SuiteResult& r, const SuiteOptions& options) {
  Json criteria = Json::array();
  for (const auto& c : r.criteria)
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"passed", c.passed},
                        {"detail", c.detail},
                        {"values", c.values},
                        {"seconds", c.seconds}});
  return Json{{"mode", options.full ? "full" : "quick"},
              {"seed", options.seed},
              {"passed", r.passed()},
              {"criteria", std::move(criteria)}};
}

std::string suite_to_junit(const SuiteResult& r) {
  auto escape = [](const std::string& s) {
    std::string out;
    for (char c : s) {
      switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
      }
    }
    return out;
  };
  int failures = 0;
  double total = 0;
  for (const auto& c : r.criteria) {
    failures += c.passed ? 0 : 1;
    total += c.seconds;
  }
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<testsuite name=\"acceptance\" tests=\"" << r.criteria.size() << "\" failures=\"" << failures
     << "\" time=\"" << total << "\">\n";
  for (const auto& c : r.criteria) {
    os << "  <testcase name=\"criterion " << c.id << ": " << escape(c.title) << "\" time=\"" << c.seconds << "\"";
    if (c.passed) {
      os << "/>\n";
    } else {
      os << ">\n    <failure message=\"" << escape(c.detail) << "\"/>\n  </testcase>\n";
    }
  }
  os << "</testsuite>\n";
  return os.str();
}

Json strip_timings(const Json& j) {
  if (j.is_object()) {
    Json out = Json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "seconds" && it.key() != "wall_ms") out[it.key()] = strip_timings(it.value());
    return out;
  }
  if (j.is_array()) {
    Json out = Json::array();
    for (const auto& e : j) out.push_back(strip_timings(e));
    return out;
  }
  return j;
}

} // namespace posmap
