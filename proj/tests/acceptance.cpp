// Runs every acceptance criterion and prints one line per criterion.
// Usage: acceptance [--quick] [--seed N] [--junit FILE]

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <iostream>

#include "posmap/suite.hpp"

int main(int argc, char** argv) {
  posmap::SuiteOptions opts;
  opts.full = true;
  const char* junit = nullptr;
  for (int i = 1; i < argc; ++i) {
    if (!std::strcmp(argv[i], "--quick")) opts.full = false;
    else if (!std::strcmp(argv[i], "--seed") && i + 1 < argc) opts.seed = std::strtoull(argv[++i], nullptr, 10);
    else if (!std::strcmp(argv[i], "--junit") && i + 1 < argc) junit = argv[++i];
  }
  const posmap::SuiteResult r = posmap::run_suite(opts);
  for (const auto& c : r.criteria) {
    std::cout << (c.passed ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.title << "  (" << c.seconds
              << " s)\n";
    if (!c.passed) std::cout << "      " << c.detail << "\n";
  }
  if (junit) std::ofstream(junit) << posmap::suite_to_junit(r);
  return r.passed() ? 0 : 1;
}
