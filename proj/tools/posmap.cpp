// posmap: command-line front end.
//
// Exit status: 0 success, 1 usage or input error, 2 when a verdict came out
// INCONCLUSIVE (or, for `suite`, when a criterion failed).

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "posmap/analysis.hpp"
#include "posmap/suite.hpp"

using namespace posmap;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInconclusive = 2;

struct MapArgs {
  std::string map;
  std::string params;
};

struct Resolved {
  SuperOp op;
  Json descriptor;
  std::optional<Expectation> expected;
};

std::vector<double> parse_params(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw Error("bad parameter '" + item + "'");
    out.push_back(v);
  }
  return out;
}

void print_catalog(std::ostream& os) {
  os << "available maps:\n";
  for (const auto& e : catalog()) os << "  " << e.signature << "  " << e.description << "\n";
}

bool is_catalog_name(const std::string& name) {
  for (const auto& e : catalog())
    if (e.name == name) return true;
  return false;
}

Resolved resolve(const MapArgs& a) {
  if (!is_catalog_name(a.map) && std::filesystem::exists(a.map)) {
    const Json j = read_json_file(a.map);
    Resolved r{map_from_json(j), j, std::nullopt};
    if (j.contains("named")) {
      NamedMapSpec spec{j.at("named").get<std::string>(), j.value("params", std::vector<double>{}), std::nullopt};
      r.expected = expected_for(spec);
    }
    return r;
  }
  if (!is_catalog_name(a.map)) throw Error("unknown map '" + a.map + "'");
  NamedMapSpec spec{a.map, parse_params(a.params), std::nullopt};
  if (spec.params.empty())
    for (const auto& e : catalog())
      if (e.name == a.map) spec.params = e.default_params;
  return {build_named(spec), named_map_to_json(spec), expected_for(spec)};
}

void emit(const Json& j, bool pretty) { std::cout << (pretty ? j.dump(2) : j.dump()) << "\n"; }

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construct and classify linear maps between matrix algebras"};
  app.require_subcommand(1);

  MapArgs margs;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::optional<int> max_k;
  bool json = false;

  auto add_map = [&](CLI::App* sub) {
    sub->add_option("--map", margs.map, "catalog name or map JSON file")->required();
    sub->add_option("--params", margs.params, "comma separated parameters, e.g. 3,1");
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "random seed")->capture_default_str();
    sub->add_option("--tol", tol.psd, "PSD tolerance")->capture_default_str();
    sub->add_option("--delta", tol.delta, "witness threshold")->capture_default_str();
    sub->add_option("--restarts", tol.restarts, "see-saw restarts")->capture_default_str();
    sub->add_option("--max-iter", tol.max_iter, "see-saw iterations per restart")->capture_default_str();
    sub->add_flag("--json", json, "pretty-print JSON");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "run the full classification pipeline");
  add_map(analyze_cmd);
  add_common(analyze_cmd);
  analyze_cmd->add_option("--k", max_k, "largest k on the k-positivity ladder");

  auto* catalog_cmd = app.add_subcommand("catalog", "list named maps");
  catalog_cmd->add_flag("--json", json, "JSON output");

  auto* witness_cmd = app.add_subcommand("witness", "decomposability certificate only");
  add_map(witness_cmd);
  add_common(witness_cmd);

  int samples = 10000;
  std::string c_file, d_file;
  auto* hou_cmd = app.add_subcommand("hou", "local contractive-combination check; defaults to the Choi map operators");
  hou_cmd->add_option("--map", margs.map, "map JSON file; its plus/minus Kraus lists are used as c_i / d_j");
  hou_cmd->add_option("--samples", samples, "number of vectors x")->capture_default_str();
  hou_cmd->add_option("--seed", seed, "random seed");
  hou_cmd->add_flag("--json", json, "pretty-print JSON");
  bool hou_all = false;
  hou_cmd->add_flag("--all-samples", hou_all, "include every sample in the output");

  std::string blocks_file;
  auto* stormer_cmd = app.add_subcommand("stormer", "block-matrix criterion; defaults to V_i V_j^* for the Choi map");
  MapArgs stormer_map{"choi", "3,1"};
  stormer_cmd->add_option("--map", stormer_map.map, "catalog name or map JSON file")->capture_default_str();
  stormer_cmd->add_option("--params", stormer_map.params, "map parameters")->capture_default_str();
  stormer_cmd->add_option("--blocks", blocks_file, "JSON file: array of rows of matrices");
  stormer_cmd->add_flag("--json", json, "pretty-print JSON");

  std::string map2, out_file;
  double alpha = 1.0, beta = 1.0;
  auto* combine_cmd = app.add_subcommand("combine", "write alpha*T + beta*S as a map file");
  combine_cmd->add_option("--map", margs.map, "first map (name or file)")->required();
  combine_cmd->add_option("--params", margs.params, "parameters of the first map");
  combine_cmd->add_option("--map2", map2, "second map (name or file)")->required();
  std::string params2;
  combine_cmd->add_option("--params2", params2, "parameters of the second map");
  combine_cmd->add_option("--alpha", alpha)->capture_default_str();
  combine_cmd->add_option("--beta", beta)->capture_default_str();
  combine_cmd->add_option("--out", out_file, "output file; stdout when absent");

  bool quick = false, full = false;
  std::string junit_file, json_file;
  auto* suite_cmd = app.add_subcommand("suite", "run the acceptance criteria");
  auto* q = suite_cmd->add_flag("--quick", quick, "skip the 64x64 spin-projection case (default)");
  suite_cmd->add_flag("--full", full, "include every case")->excludes(q);
  suite_cmd->add_option("--seed", seed, "random seed");
  suite_cmd->add_option("--junit", junit_file, "write a JUnit XML summary");
  suite_cmd->add_option("--json-out", json_file, "write the JSON summary to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*analyze_cmd) {
      const Resolved r = resolve(margs);
      AnalyzeOptions opts{seed, tol, max_k};
      const AnalysisReport report = analyze(r.op, r.descriptor, r.expected, opts);
      const Json j = report_to_json(report);
      if (json) {
        emit(j, true);
      } else {
        std::cout << j["verdicts"].dump() << " agreement=" << (report.agreement ? "true" : "false") << "\n";
      }
      return any_inconclusive(report.certificates) ? kInconclusive : kOk;
    }
    if (*catalog_cmd) {
      Json list = Json::array();
      for (const auto& e : catalog()) {
        NamedMapSpec spec{e.name, e.default_params, std::nullopt};
        const SuperOp t = build_named(spec);
        list.push_back({{"name", e.name},
                        {"signature", e.signature},
                        {"default_params", e.default_params},
                        {"d_in", t.d_in},
                        {"d_out", t.d_out},
                        {"expected", expectation_to_json(expected_for(spec))},
                        {"description", e.description}});
      }
      if (json) {
        emit(list, true);
      } else {
        for (const auto& e : list)
          std::cout << e["signature"].get<std::string>() << "  M_" << e["d_in"] << " -> M_" << e["d_out"] << "  "
                    << e["expected"].dump() << "\n";
      }
      return kOk;
    }
    if (*witness_cmd) {
      const Resolved r = resolve(margs);
      Certificate c = decomposability_decide(r.op, tol);
      c.seed = seed;
      emit(certificate_to_json(c), json);
      return c.label.verdict == Verdict::INCONCLUSIVE ? kInconclusive : kOk;
    }
    if (*hou_cmd) {
      std::vector<CMatrix> cs = choi_v_operators(), ds{CMatrix::Identity(3, 3)};
      if (!margs.map.empty()) {
        const SuperOp t = map_from_json(read_json_file(margs.map));
        if (!t.kraus) throw Error("map file carries no Kraus operators");
        cs = t.kraus->plus;
        ds = t.kraus->minus;
      }
      const HouReport rep = hou_contractive_check(cs, ds, samples, seed);
      emit(hou_report_to_json(rep, hou_all), json);
      return kOk;
    }
    if (*stormer_cmd) {
      const Resolved r = resolve(stormer_map);
      std::vector<std::vector<CMatrix>> blocks;
      if (!blocks_file.empty()) {
        for (const auto& row : read_json_file(blocks_file)) {
          blocks.emplace_back();
          for (const auto& m : row) blocks.back().push_back(matrix_from_json(m));
        }
      } else {
        const auto vs = choi_v_operators();
        for (int i = 2; i < 6; ++i) {
          blocks.emplace_back();
          for (int j = 2; j < 6; ++j) blocks.back().push_back(vs[i] * vs[j].adjoint());
        }
      }
      emit(stormer_report_to_json(stormer_probe(r.op, blocks)), json);
      return kOk;
    }
    if (*combine_cmd) {
      const Resolved t = resolve(margs);
      const Resolved s = resolve({map2, params2});
      const Json j = map_to_json(linear_combine(alpha, t.op, beta, s.op));
      if (out_file.empty()) {
        emit(j, true);
      } else {
        std::ofstream os(out_file);
        if (!os) throw Error("cannot write " + out_file);
        os << j.dump(2) << "\n";
      }
      return kOk;
    }
    if (*suite_cmd) {
      SuiteOptions opts;
      opts.full = full;
      opts.seed = seed;
      const SuiteResult r = run_suite(opts);
      for (const auto& c : r.criteria)
        std::cerr << (c.passed ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << c.detail
                  << "]\n";
      const Json j = suite_to_json(r, opts);
      emit(j, true);
      if (!json_file.empty()) std::ofstream(json_file) << j.dump(2) << "\n";
      if (!junit_file.empty()) std::ofstream(junit_file) << suite_to_junit(r);
      return r.passed() ? kOk : kInconclusive;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (std::string(e.what()).rfind("unknown map", 0) == 0) print_catalog(std::cerr);
    return kUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed JSON: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
