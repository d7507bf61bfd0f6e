#include "posmap/io.hpp"

#include <fstream>

namespace posmap {

namespace {

Json kraus_list(const std::vector<CMatrix>& ops) {
  Json out = Json::array();
  for (const auto& m : ops) out.push_back(matrix_to_json(m));
  return out;
}

std::vector<CMatrix> kraus_list_from(const Json& j, const char* key) {
  std::vector<CMatrix> out;
  if (!j.contains(key)) return out;
  for (const auto& m : j.at(key)) out.push_back(matrix_from_json(m));
  return out;
}

Json vector_to_json(const CVector& v) { return matrix_to_json(CMatrix(v)); }
CVector vector_from_json(const Json& j) { return matrix_from_json(j).col(0); }

} // namespace

Json matrix_to_json(const CMatrix& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rr = Json::array(), ii = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      rr.push_back(m(i, k).real());
      ii.push_back(m(i, k).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ii));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

CMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Eigen::Index>();
    const auto cols = j.at("cols").get<Eigen::Index>();
    if (rows < 1 || cols < 1) throw Error("matrix JSON: rows and cols must be positive");
    const Json& re = j.at("re");
    const bool has_im = j.contains("im");
    if (re.size() != static_cast<std::size_t>(rows)) throw Error("matrix JSON: 're' has the wrong number of rows");
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (re[i].size() != static_cast<std::size_t>(cols)) throw Error("matrix JSON: ragged 're' row");
      if (has_im && j["im"][i].size() != static_cast<std::size_t>(cols)) throw Error("matrix JSON: ragged 'im' row");
      for (Eigen::Index k = 0; k < cols; ++k)
        m(i, k) = Complex(re[i][k].get<double>(), has_im ? j["im"][i][k].get<double>() : 0.0);
    }
    return m;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("matrix JSON: ") + ex.what());
  }
}

Json map_to_json(const SuperOp& t) {
  KrausForm form;
  if (t.kraus) {
    form = *t.kraus;
  } else {
    auto split = kraus_from_choi(choi_of(t));
    form.plus = std::move(split.plus);
    form.minus = std::move(split.minus);
  }
  return Json{{"d_in", t.d_in},
              {"d_out", t.d_out},
              {"kraus_plus", kraus_list(form.plus)},
              {"kraus_minus", kraus_list(form.minus)},
              {"pre_transpose", form.pre_transpose}};
}

Json named_map_to_json(const NamedMapSpec& spec) {
  Json j{{"named", spec.name}, {"params", spec.params}};
  if (spec.unitary) j["unitary"] = matrix_to_json(*spec.unitary);
  return j;
}

SuperOp map_from_json(const Json& j) {
  try {
    if (j.contains("named")) {
      NamedMapSpec spec{j.at("named").get<std::string>(), {}, std::nullopt};
      if (j.contains("params")) spec.params = j.at("params").get<std::vector<double>>();
      if (j.contains("unitary")) spec.unitary = matrix_from_json(j.at("unitary"));
      return build_named(spec);
    }
    auto plus = kraus_list_from(j, "kraus_plus");
    auto minus = kraus_list_from(j, "kraus_minus");
    const bool pre = j.value("pre_transpose", false);
    const int d_in = j.at("d_in").get<int>();
    const int d_out = j.at("d_out").get<int>();
    if (plus.empty() && minus.empty()) return from_rep(d_in, d_out, CMatrix::Zero(d_out * d_out, d_in * d_in));
    SuperOp t = from_kraus(std::move(plus), std::move(minus), pre);
    if (t.d_in != d_in || t.d_out != d_out) throw Error("map JSON: Kraus shapes disagree with d_in/d_out");
    return t;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("map JSON: ") + ex.what());
  }
}

Json certificate_to_json(const Certificate& c) {
  const Evidence& e = c.evidence;
  Json ev{{"d_in", e.d_in}, {"d_out", e.d_out}, {"choi", matrix_to_json(e.choi)}};
  if (e.min_choi_eigenvalue) ev["min_choi_eigenvalue"] = *e.min_choi_eigenvalue;
  if (e.objective_value) ev["objective_value"] = *e.objective_value;
  if (e.residual) ev["residual"] = *e.residual;
  if (e.witness) ev["witness_state"] = matrix_to_json(*e.witness);
  if (e.A && e.B) ev["decomposition"] = Json{{"A", matrix_to_json(*e.A)}, {"B", matrix_to_json(*e.B)}};
  if (e.x && e.y) ev["violating_vectors"] = Json{{"x", vector_to_json(*e.x)}, {"y", vector_to_json(*e.y)}};
  if (e.schmidt_vector) ev["schmidt_vector"] = matrix_to_json(*e.schmidt_vector);
  const Tolerances& t = c.tolerances;
  return Json{{"test", to_string(c.test)},
              {"verdict", to_string(c.label.verdict)},
              {"k", c.label.k},
              {"label", to_string(c.label)},
              {"evidence", std::move(ev)},
              {"tolerances",
               {{"algebraic", t.algebraic},
                {"psd", t.psd},
                {"delta", t.delta},
                {"residual", t.residual},
                {"restarts", t.restarts},
                {"max_iter", t.max_iter},
                {"dykstra_iter", t.dykstra_iter}}},
              {"seed", c.seed},
              {"wall_ms", c.wall_ms},
              {"note", c.note}};
}

Certificate certificate_from_json(const Json& j) {
  try {
    Certificate c;
    const std::string test = j.at("test").get<std::string>();
    for (Test t : {Test::CompletePositivity, Test::KPositivity, Test::Positivity, Test::Decomposability})
      if (to_string(t) == test) c.test = t;
    c.label = {verdict_from_string(j.at("verdict").get<std::string>()), j.value("k", 0)};
    const Json& ev = j.at("evidence");
    Evidence& e = c.evidence;
    e.d_in = ev.at("d_in").get<int>();
    e.d_out = ev.at("d_out").get<int>();
    e.choi = matrix_from_json(ev.at("choi"));
    if (ev.contains("min_choi_eigenvalue")) e.min_choi_eigenvalue = ev["min_choi_eigenvalue"].get<double>();
    if (ev.contains("objective_value")) e.objective_value = ev["objective_value"].get<double>();
    if (ev.contains("residual")) e.residual = ev["residual"].get<double>();
    if (ev.contains("witness_state")) e.witness = matrix_from_json(ev["witness_state"]);
    if (ev.contains("decomposition")) {
      e.A = matrix_from_json(ev["decomposition"].at("A"));
      e.B = matrix_from_json(ev["decomposition"].at("B"));
    }
    if (ev.contains("violating_vectors")) {
      e.x = vector_from_json(ev["violating_vectors"].at("x"));
      e.y = vector_from_json(ev["violating_vectors"].at("y"));
    }
    if (ev.contains("schmidt_vector")) e.schmidt_vector = matrix_from_json(ev["schmidt_vector"]);
    const Json& t = j.at("tolerances");
    c.tolerances.algebraic = t.at("algebraic").get<double>();
    c.tolerances.psd = t.at("psd").get<double>();
    c.tolerances.delta = t.at("delta").get<double>();
    c.tolerances.residual = t.at("residual").get<double>();
    c.tolerances.restarts = t.at("restarts").get<int>();
    c.tolerances.max_iter = t.at("max_iter").get<int>();
    c.tolerances.dykstra_iter = t.value("dykstra_iter", 20000);
    c.seed = j.at("seed").get<std::uint64_t>();
    c.wall_ms = j.value("wall_ms", 0.0);
    c.note = j.value("note", std::string());
    return c;
  } catch (const nlohmann::json::exception& ex) {
    throw Error(std::string("certificate JSON: ") + ex.what());
  }
}

Json hou_report_to_json(const HouReport& r, bool include_samples) {
  Json j{{"max_operator_norm", r.max_operator_norm},
         {"max_frobenius_norm", r.max_frobenius_norm},
         {"worst_x", vector_to_json(r.worst_x)},
         {"representable", r.representable},
         {"sample_count", r.samples.size()}};
  if (r.non_representable_x) j["non_representable_x"] = vector_to_json(*r.non_representable_x);
  if (include_samples) {
    Json s = Json::array();
    for (const auto& h : r.samples)
      s.push_back({{"x", vector_to_json(h.x)},
                   {"alpha", matrix_to_json(h.alpha)},
                   {"operator_norm", h.operator_norm},
                   {"frobenius_norm", h.frobenius_norm},
                   {"representable", h.representable}});
    j["samples"] = std::move(s);
  }
  return j;
}

Json stormer_report_to_json(const StormerReport& r) {
  return Json{{"premises_hold", r.premises_hold},
              {"conclusion_holds", r.conclusion_holds},
              {"refutes_decomposability", r.premises_hold && !r.conclusion_holds},
              {"min_eig_blocks", r.min_eig_blocks},
              {"min_eig_transposed", r.min_eig_transposed},
              {"min_eig_applied", r.min_eig_applied}};
}

Json reversibility_report_to_json(const ReversibilityReport& r) {
  Json j{{"passed", r.passed},
         {"residual", r.residual},
         {"basis_dimension", r.basis_dimension},
         {"words_checked", r.words_checked}};
  if (r.violating_word) j["violating_word"] = *r.violating_word;
  if (r.violating_coefficients) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < r.violating_coefficients->rows(); ++i) {
      Json row = Json::array();
      for (Eigen::Index k = 0; k < r.violating_coefficients->cols(); ++k) row.push_back((*r.violating_coefficients)(i, k));
      rows.push_back(std::move(row));
    }
    j["violating_coefficients"] = std::move(rows);
  }
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& ex) {
    throw Error("'" + path + "' is not valid JSON: " + ex.what());
  }
}

} // namespace posmap
