#pragma once

// The reproduction suite: one entry per acceptance criterion.

#include <cstdint>
#include <string>
#include <vector>

#include "posmap/io.hpp"

namespace posmap {

struct SuiteOptions {
  bool full = false; // include the 64x64 spin-factor decomposability case
  std::uint64_t seed = 0;
  bool determinism_check = true; // criterion 10 reruns the quick suite twice
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  Json values = Json::object(); // deterministic numeric evidence
  double seconds = 0.0;
};

struct SuiteResult {
  std::vector<CriterionResult> criteria;
  bool passed() const;
};

SuiteResult run_suite(const SuiteOptions& options);

Json suite_to_json(const SuiteResult& r, const SuiteOptions& options);
std::string suite_to_junit(const SuiteResult& r);

/// Copy of j with every "seconds" and "wall_ms" member removed.
Json strip_timings(const Json& j);

} // namespace posmap
