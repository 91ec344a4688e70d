#include "qep/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qep/errors.hpp"

namespace qep {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::InvalidInput, "malformed JSON");
  return j;
}

json matrix_to_obj(const Matrix& M) {
  const int d = static_cast<int>(M.rows());
  json re = json::array(), im = json::array();
  for (int i = 0; i < d; ++i) {
    json rrow = json::array(), irow = json::array();
    for (int j = 0; j < M.cols(); ++j) {
      rrow.push_back(M(i, j).real());
      irow.push_back(M(i, j).imag());
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return json{{"dim", d}, {"re", re}, {"im", im}};
}

Matrix matrix_from_obj(const json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re"))
    fail(ErrorCode::InvalidInput, "matrix JSON needs dim and re fields");
  const int d = j.at("dim").get<int>();
  if (d < 1 || d > 64)
    fail(ErrorCode::InvalidInput, "matrix dim out of range [1, 64]");
  const json& re = j.at("re");
  const bool has_im = j.contains("im");
  if (static_cast<int>(re.size()) != d)
    fail(ErrorCode::InvalidInput, "re has wrong number of rows");
  Matrix M(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(re.at(i).size()) != d)
      fail(ErrorCode::InvalidInput, "re row has wrong length");
    for (int k = 0; k < d; ++k) {
      const double rv = re.at(i).at(k).get<double>();
      const double iv = has_im ? j.at("im").at(i).at(k).get<double>() : 0.0;
      M(i, k) = Complex(rv, iv);
    }
  }
  if (!M.allFinite()) fail(ErrorCode::InvalidInput, "non-finite matrix entry");
  return M;
}

json state_to_obj(const DensityOperator& s) {
  const bool normalized = std::abs(s.trace - 1.0) <= 1e-9;
  return json{{"matrix", matrix_to_obj(s.matrix)}, {"normalized", normalized}};
}

DensityOperator state_from_obj(const json& j) {
  if (j.is_object() && j.contains("matrix")) {
    const bool normalized = j.value("normalized", true);
    return validate_state(matrix_from_obj(j.at("matrix")), normalized);
  }
  // A bare matrix object is accepted as a normalized state.
  return validate_state(matrix_from_obj(j), true);
}

OrthogonalResolution resolution_from_obj(const json& j) {
  if (j.contains("projectors")) {
    std::vector<Matrix> ps;
    for (const json& p : j.at("projectors")) ps.push_back(matrix_from_obj(p));
    return validate_resolution(ps);
  }
  if (j.contains("basis") && j.contains("groups")) {
    const Matrix basis = matrix_from_obj(j.at("basis"));
    std::vector<std::vector<int>> groups;
    for (const json& g : j.at("groups")) {
      std::vector<int> group;
      for (const json& idx : g) group.push_back(idx.get<int>() - 1);
      groups.push_back(std::move(group));
    }
    return resolution_from_groups(basis, groups);
  }
  fail(ErrorCode::InvalidInput,
       "resolution JSON needs projectors or basis+groups");
}

json extended_to_obj(const ExtendedReal& v) {
  if (v.infinite) return json("inf");
  return json(v.value);
}

}  // namespace

std::string matrix_to_json(const Matrix& M) { return matrix_to_obj(M).dump(); }

Matrix matrix_from_json(const std::string& text) {
  return matrix_from_obj(parse(text));
}

std::string state_to_json(const DensityOperator& state) {
  return state_to_obj(state).dump();
}

DensityOperator state_from_json(const std::string& text) {
  return state_from_obj(parse(text));
}

OrthogonalResolution resolution_from_json(const std::string& text) {
  return resolution_from_obj(parse(text));
}

Projector projector_from_json(const std::string& text) {
  const json j = parse(text);
  if (j.is_object() && j.contains("projector"))
    return validate_projector(matrix_from_obj(j.at("projector")));
  return validate_projector(matrix_from_obj(j));
}

ConstraintSet constraint_from_json(const std::string& text) {
  const json j = parse(text);
  const std::string type = j.value("type", "");
  if (type == "commutant")
    return CommutantQL{resolution_from_obj(j.at("resolution"))};
  if (type == "trace-pinned") {
    std::vector<double> w;
    for (const json& x : j.at("weights")) w.push_back(x.get<double>());
    return TracePinnedQqJ{resolution_from_obj(j.at("resolution")),
                          validate_weights(w)};
  }
  if (type == "face")
    return FaceQsL{validate_projector(matrix_from_obj(j.at("projector")))};
  if (type == "support-block")
    return SupportBlock{
        validate_projector(matrix_from_obj(j.at("projector")))};
  fail(ErrorCode::InvalidInput, "unknown constraint type '" + type + "'");
}

JointTable table_from_json(const std::string& text) {
  const json j = parse(text);
  const json& rows = j.is_object() && j.contains("table") ? j.at("table") : j;
  if (!rows.is_array() || rows.empty())
    fail(ErrorCode::InvalidInput, "table JSON must be a nonempty array");
  const int nx = static_cast<int>(rows.size());
  const int nt = static_cast<int>(rows.at(0).size());
  Eigen::MatrixXd p(nx, nt);
  for (int i = 0; i < nx; ++i) {
    if (static_cast<int>(rows.at(i).size()) != nt)
      fail(ErrorCode::InvalidInput, "table rows have unequal lengths");
    for (int k = 0; k < nt; ++k) p(i, k) = rows.at(i).at(k).get<double>();
  }
  return validate_table(p);
}

Vector vector_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("re"))
    fail(ErrorCode::InvalidInput, "vector JSON needs a re field");
  const json& re = j.at("re");
  const bool has_im = j.contains("im");
  Vector v(re.size());
  for (size_t i = 0; i < re.size(); ++i) {
    const double iv = has_im ? j.at("im").at(i).get<double>() : 0.0;
    v(static_cast<int>(i)) = Complex(re.at(i).get<double>(), iv);
  }
  return v;
}

std::vector<double> real_list_from_json(const std::string& text) {
  const json j = parse(text);
  if (!j.is_array()) fail(ErrorCode::InvalidInput, "expected a JSON array");
  std::vector<double> out;
  for (const json& x : j) out.push_back(x.get<double>());
  return out;
}

std::string vector_to_json(const Vector& v) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < v.size(); ++i) {
    re.push_back(v(i).real());
    im.push_back(v(i).imag());
  }
  return json{{"re", re}, {"im", im}}.dump();
}

std::string real_list_to_json(const std::vector<double>& v) {
  return json(v).dump();
}

std::string extended_to_json(const ExtendedReal& v) {
  return extended_to_obj(v).dump();
}

std::string projection_result_to_json(const ProjectionResult& r) {
  return json{{"minimizer", parse(state_to_json(r.minimizer))},
              {"objective", extended_to_obj(r.objective)},
              {"grad_residual", r.grad_residual},
              {"feas_residual", r.feas_residual},
              {"iterations", r.iterations},
              {"converged", r.converged}}
      .dump();
}

std::string mre_result_to_json(const MreResult& r) {
  json table = json::array();
  for (int i = 0; i < r.posterior_table.rows(); ++i) {
    json row = json::array();
    for (int k = 0; k < r.posterior_table.cols(); ++k)
      row.push_back(r.posterior_table(i, k));
    table.push_back(std::move(row));
  }
  json theta = json::array();
  for (int k = 0; k < r.posterior_theta.size(); ++k)
    theta.push_back(r.posterior_theta(k));
  return json{{"posterior_table", table},
              {"posterior_theta", theta},
              {"objective", r.objective},
              {"grad_residual", r.grad_residual},
              {"iterations", r.iterations},
              {"converged", r.converged}}
      .dump();
}

std::string report_to_json(const HarnessReport& r) {
  json rows = json::array();
  for (const TrialRow& row : r.rows)
    rows.push_back(json{{"theorem", row.theorem},
                        {"dim", row.dim},
                        {"seed", row.seed},
                        {"deviation", row.deviation},
                        {"iterations", row.iterations},
                        {"converged", row.converged},
                        {"pass", row.pass},
                        {"note", row.note}});
  return json{{"theorem", r.theorem},
              {"dims", r.dims},
              {"trials", r.trials},
              {"seed", r.seed},
              {"threshold", r.threshold},
              {"max_deviation", r.max_deviation},
              {"all_pass", r.all_pass},
              {"rows", rows}}
      .dump(2);
}

std::string slurp_input(const std::string& path_or_json) {
  if (!path_or_json.empty() &&
      (path_or_json[0] == '{' || path_or_json[0] == '[')) {
    return path_or_json;
  }
  std::ifstream in(path_or_json);
  if (!in) fail(ErrorCode::InvalidInput, "cannot open " + path_or_json);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qep
