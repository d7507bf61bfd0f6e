#include <doctest.h>

#include "helpers.hpp"
#include "posmap/analysis.hpp"
#include "posmap/io.hpp"

using namespace posmap;
using testutil::dist;

TEST_CASE("matrix JSON") {
  const CMatrix m = rand_gaussian(1, 2, 3);
  const Json j = matrix_to_json(m);
  CHECK(j["rows"] == 2);
  CHECK(j["cols"] == 3);
  CHECK(j["re"][1][2].get<double>() == m(1, 2).real());
  CHECK(j["im"][0][1].get<double>() == m(0, 1).imag());
  CHECK(matrix_from_json(Json::parse(j.dump())) == m);
  CHECK_THROWS(matrix_from_json(Json{{"rows", 2}, {"cols", 2}, {"re", {{1, 2}}}, {"im", {{0, 0}}}}));
}

TEST_CASE("map JSON") {
  const SuperOp g = build_named({"choi", {3, 1}, {}});
  const SuperOp back = map_from_json(Json::parse(map_to_json(g).dump()));
  CHECK(dist(back.rep, g.rep) < 1e-14);

  const SuperOp named = map_from_json(Json{{"named", "transpose"}, {"params", {2}}});
  CHECK(dist(named.rep, build_named({"transpose", {2}, {}}).rep) == 0.0);

  // no stored Kraus data: written through the Choi split
  const SuperOp rob = build_named({"robertson", {}, {}});
  CHECK(dist(map_from_json(map_to_json(rob)).rep, rob.rep) < 1e-12);
  CHECK_THROWS(map_from_json(Json{{"named", "nope"}}));
}

TEST_CASE("certificates round-trip and re-verify") {
  const SuperOp g = build_named({"choi", {3, 1}, {}});
  const std::vector<Certificate> certs{is_cp(g), positivity_search(g, 20, 1),
                                       k_positivity_search(build_named({"transpose", {2}, {}}), 2, 5, 2),
                                       decomposability_decide(g),
                                       decomposability_decide(build_named({"reduction", {3}, {}}))};
  for (const auto& c : certs) {
    const Certificate back = certificate_from_json(Json::parse(certificate_to_json(c).dump()));
    CHECK(back.label == c.label);
    CHECK(back.test == c.test);
    CHECK(back.seed == c.seed);
    CHECK(verify_certificate(back).ok == verify_certificate(c).ok);
    CHECK(verify_certificate(back).ok);
  }
}

TEST_CASE("verdict strings") {
  CHECK(to_string(Label{Verdict::NOT_K_POSITIVE, 2}) == "NOT_K_POSITIVE(2)");
  CHECK(to_string(Label{Verdict::NON_DECOMPOSABLE, 0}) == "NON_DECOMPOSABLE");
  CHECK(verdict_from_string("POSITIVE_PROBED") == Verdict::POSITIVE_PROBED);
  CHECK_THROWS(verdict_from_string("MAYBE"));
}

TEST_CASE("analyze") {
  const NamedMapSpec tau{"transpose", {2}, {}};
  const AnalysisReport r = analyze(build_named(tau), named_map_to_json(tau), expected_for(tau), {});
  const std::vector<Label> want{{Verdict::NOT_CP, 0},
                                {Verdict::NOT_K_POSITIVE, 2},
                                {Verdict::POSITIVE_PROBED, 0},
                                {Verdict::DECOMPOSABLE, 0}};
  CHECK(labels(r) == want);
  CHECK(r.agreement);

  const NamedMapSpec gamma{"choi", {3, 1}, {}};
  const AnalysisReport rg = analyze(build_named(gamma), named_map_to_json(gamma), expected_for(gamma), {});
  CHECK(rg.agreement);
  CHECK(labels(rg).back().verdict == Verdict::NON_DECOMPOSABLE);

  // reports re-verify from their JSON alone
  const Json j = Json::parse(report_to_json(rg).dump());
  for (const auto& c : j["certificates"]) {
    const Certificate cert = certificate_from_json(c);
    if (cert.label.verdict != Verdict::POSITIVE_PROBED && cert.label.verdict != Verdict::K_POSITIVE_UP_TO)
      CHECK(verify_certificate(cert).ok);
  }

  // a deliberately wrong expectation is flagged
  Expectation wrong;
  wrong.decomposability = Verdict::DECOMPOSABLE;
  CHECK_FALSE(agrees(rg.certificates, wrong));
}
