#include "posmap/verdict.hpp"

#include <array>
#include <utility>

#include "posmap/matrix.hpp"

namespace posmap {

namespace {

constexpr std::array<std::pair<Verdict, const char*>, 9> kNames{{
    {Verdict::CP, "CP"},
    {Verdict::NOT_CP, "NOT_CP"},
    {Verdict::K_POSITIVE_UP_TO, "K_POSITIVE_UP_TO"},
    {Verdict::NOT_K_POSITIVE, "NOT_K_POSITIVE"},
    {Verdict::POSITIVE_PROBED, "POSITIVE_PROBED"},
    {Verdict::NOT_POSITIVE, "NOT_POSITIVE"},
    {Verdict::DECOMPOSABLE, "DECOMPOSABLE"},
    {Verdict::NON_DECOMPOSABLE, "NON_DECOMPOSABLE"},
    {Verdict::INCONCLUSIVE, "INCONCLUSIVE"},
}};

} // namespace

std::string to_string(Verdict v) {
  for (const auto& [value, name] : kNames)
    if (value == v) return name;
  return "INCONCLUSIVE";
}

Verdict verdict_from_string(const std::string& s) {
  for (const auto& [value, name] : kNames)
    if (s == name) return value;
  throw Error("unknown verdict '" + s + "'");
}

std::string to_string(const Label& l) {
  if (l.verdict == Verdict::K_POSITIVE_UP_TO || l.verdict == Verdict::NOT_K_POSITIVE)
    return to_string(l.verdict) + "(" + std::to_string(l.k) + ")";
  return to_string(l.verdict);
}

std::string to_string(Test t) {
  switch (t) {
  case Test::CompletePositivity: return "complete_positivity";
  case Test::KPositivity: return "k_positivity";
  case Test::Positivity: return "positivity";
  case Test::Decomposability: return "decomposability";
  }
  return "unknown";
}

} // namespace posmap
