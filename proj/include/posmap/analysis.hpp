#pragma once

// Classification pipeline behind `posmap analyze` and `posmap witness`.

#include <cstdint>
#include <optional>
#include <vector>

#include "posmap/catalog.hpp"
#include "posmap/certify.hpp"
#include "posmap/io.hpp"

namespace posmap {

struct AnalyzeOptions {
  std::uint64_t seed = 0;
  Tolerances tol;
  /// Largest k tried on the k-positivity ladder; defaults to d_in.
  std::optional<int> max_k;
};

struct AnalysisReport {
  Json descriptor; // map JSON or named-map JSON
  std::vector<Certificate> certificates;
  std::optional<Expectation> expected;
  bool agreement = true;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

/// Runs, in order: is_cp, the k-positivity ladder k = 2..d_in (stopping at the
/// first violation), positivity_search, decomposability_decide.
AnalysisReport analyze(const SuperOp& t, Json descriptor, std::optional<Expectation> expected,
                       const AnalyzeOptions& options);

/// True iff every certificate whose question has an expected answer matches it.
bool agrees(const std::vector<Certificate>& certs, const Expectation& expected);

std::vector<Label> labels(const AnalysisReport& r);
bool any_inconclusive(const std::vector<Certificate>& certs);

Json expectation_to_json(const Expectation& e);
Json report_to_json(const AnalysisReport& r);

} // namespace posmap
