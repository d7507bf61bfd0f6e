#include <doctest.h>

#include "posmap/suite.hpp"

using namespace posmap;

TEST_CASE("suite: verdicts do not depend on the seed") {
  SuiteOptions a, b;
  a.seed = 1;
  b.seed = 2;
  a.determinism_check = b.determinism_check = false;
  const SuiteResult ra = run_suite(a), rb = run_suite(b);
  REQUIRE(ra.criteria.size() == rb.criteria.size());
  for (std::size_t i = 0; i < ra.criteria.size(); ++i) {
    CAPTURE(ra.criteria[i].id);
    CHECK(ra.criteria[i].passed == rb.criteria[i].passed);
    if (ra.criteria[i].values.contains("verdicts"))
      CHECK(ra.criteria[i].values["verdicts"] == rb.criteria[i].values["verdicts"]);
  }
}

TEST_CASE("suite: timing fields are stripped recursively") {
  const Json j{{"seconds", 1.0}, {"x", {{"wall_ms", 2.0}, {"y", 3}}}, {"list", {{{"seconds", 4}}}}};
  const Json s = strip_timings(j);
  CHECK_FALSE(s.contains("seconds"));
  CHECK_FALSE(s["x"].contains("wall_ms"));
  CHECK(s["x"]["y"] == 3);
  CHECK(s["list"][0].empty());
}

TEST_CASE("suite: JUnit output counts failures") {
  SuiteResult r;
  r.criteria.push_back({1, "a & b", true, "", Json::object(), 0.5});
  r.criteria.push_back({2, "c", false, "x < y", Json::object(), 0.25});
  const std::string xml = suite_to_junit(r);
  CHECK(xml.find("tests=\"2\" failures=\"1\"") != std::string::npos);
  CHECK(xml.find("a &amp; b") != std::string::npos);
  CHECK(xml.find("x &lt; y") != std::string::npos);
}
