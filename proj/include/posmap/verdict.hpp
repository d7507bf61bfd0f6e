#pragma once

#include <optional>
#include <string>

namespace posmap {

enum class Verdict {
  CP,
  NOT_CP,
  K_POSITIVE_UP_TO,
  NOT_K_POSITIVE,
  POSITIVE_PROBED,
  NOT_POSITIVE,
  DECOMPOSABLE,
  NON_DECOMPOSABLE,
  INCONCLUSIVE,
};

std::string to_string(Verdict v);
Verdict verdict_from_string(const std::string& s);

/// A verdict together with the k it refers to (only meaningful for the
/// k-positivity verdicts). Rendered as e.g. "NOT_K_POSITIVE(2)".
struct Label {
  Verdict verdict = Verdict::INCONCLUSIVE;
  int k = 0;

  friend bool operator==(const Label&, const Label&) = default;
};

std::string to_string(const Label& l);

/// Which classification question a certificate answers.
enum class Test { CompletePositivity, KPositivity, Positivity, Decomposability };

std::string to_string(Test t);

} // namespace posmap
