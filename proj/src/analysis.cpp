#include "posmap/analysis.hpp"

#include <chrono>

namespace posmap {

AnalysisReport analyze(const SuperOp& t, Json descriptor, std::optional<Expectation> expected,
                       const AnalyzeOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const Tolerances& tol = options.tol;
  AnalysisReport report;
  report.descriptor = std::move(descriptor);
  report.expected = std::move(expected);
  report.seed = options.seed;

  report.certificates.push_back(is_cp(t, tol));

  const int top = std::min(options.max_k.value_or(t.d_in), t.d_in);
  for (int k = 2; k <= top; ++k) {
    Certificate c = k_positivity_search(t, k, tol.restarts, derive_seed(options.seed, 1000 + k), tol.psd, tol.max_iter);
    const bool violated = c.label.verdict == Verdict::NOT_K_POSITIVE;
    if (violated || k == top) {
      report.certificates.push_back(std::move(c));
      break;
    }
  }

  Certificate pos = positivity_search(t, tol.restarts, derive_seed(options.seed, 1), tol.psd, tol.max_iter);
  report.certificates.push_back(std::move(pos));
  report.certificates.push_back(decomposability_decide(t, tol));

  report.agreement = report.expected ? agrees(report.certificates, *report.expected) : true;
  report.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

bool agrees(const std::vector<Certificate>& certs, const Expectation& expected) {
  for (const auto& c : certs) {
    switch (c.test) {
    case Test::CompletePositivity:
      if (expected.complete_positivity && c.label.verdict != *expected.complete_positivity) return false;
      break;
    case Test::Positivity:
      if (expected.positivity && c.label.verdict != *expected.positivity) return false;
      break;
    case Test::KPositivity:
      if (expected.first_non_k_positive) {
        const int k0 = *expected.first_non_k_positive;
        const bool ok = c.label.verdict == Verdict::NOT_K_POSITIVE ? c.label.k == k0 : c.label.k < k0;
        if (!ok) return false;
      }
      break;
    case Test::Decomposability:
      if (expected.decomposability && c.label.verdict != *expected.decomposability) return false;
      break;
    }
  }
  return true;
}

std::vector<Label> labels(const AnalysisReport& r) {
  std::vector<Label> out;
  for (const auto& c : r.certificates) out.push_back(c.label);
  return out;
}

bool any_inconclusive(const std::vector<Certificate>& certs) {
  for (const auto& c : certs)
    if (c.label.verdict == Verdict::INCONCLUSIVE) return true;
  return false;
}

Json expectation_to_json(const Expectation& e) {
  Json j = Json::object();
  if (e.complete_positivity) j["complete_positivity"] = to_string(*e.complete_positivity);
  if (e.first_non_k_positive) j["k_positivity"] = to_string(Label{Verdict::NOT_K_POSITIVE, *e.first_non_k_positive});
  if (e.positivity) j["positivity"] = to_string(*e.positivity);
  if (e.decomposability) j["decomposability"] = to_string(*e.decomposability);
  if (!e.note.empty()) j["note"] = e.note;
  return j;
}

Json report_to_json(const AnalysisReport& r) {
  Json verdicts = Json::array();
  Json certs = Json::array();
  for (const auto& c : r.certificates) {
    verdicts.push_back(to_string(c.label));
    certs.push_back(certificate_to_json(c));
  }
  Json j{{"map", r.descriptor}, {"verdicts", std::move(verdicts)}, {"certificates", std::move(certs)}};
  if (r.expected) j["expected"] = expectation_to_json(*r.expected);
  j["agreement"] = r.agreement;
  j["seed"] = r.seed;
  j["wall_ms"] = r.wall_ms;
  return j;
}

} // namespace posmap
