// qep — batch front end: apply update rules, compute divergences, run
// entropic projections and the theorem-verification harness.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "qep/classical.hpp"
#include "qep/divergences.hpp"
#include "qep/errors.hpp"
#include "qep/harness.hpp"
#include "qep/io.hpp"
#include "qep/projection.hpp"
#include "qep/rules.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitNoConverge = 3;
constexpr int kExitSupport = 4;

int exit_code_for(const qep::Error& e) {
  switch (e.code()) {
    case qep::ErrorCode::SupportViolation:
    case qep::ErrorCode::InfiniteDivergence:
      return kExitSupport;
    default:
      return kExitInvalid;
  }
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) out.push_back(std::stoi(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  if (!text.empty() && text[0] == '[')
    return qep::real_list_from_json(text);
  std::vector<double> out;
  std::string token;
  for (char c : text + ",") {
    if (c == ',') {
      if (!token.empty()) out.push_back(std::stod(token));
      token.clear();
    } else {
      token += c;
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) qep::fail(qep::ErrorCode::InvalidInput, "cannot write " + out_path);
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum state-update rules and entropic-projection checks"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 0;
  std::string report_format = "json";
  std::string out_path;
  double tol = 0.0;
  int max_iter = 0;
  int jobs = 1;
  app.add_option("--seed", seed, "master seed")->envname("QEP_SEED");
  app.add_option("--report", report_format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--out", out_path, "write output to a file");
  app.add_option("--tol", tol, "solver gradient tolerance override");
  app.add_option("--max-iter", max_iter, "solver iteration cap override");
  app.add_option("--jobs", jobs, "parallel trials in verify")
      ->check(CLI::PositiveNumber);

  // --- update ---------------------------------------------------------
  auto* update = app.add_subcommand("update", "apply a state-update rule");
  std::string rule, state_arg, resolution_arg, projector_arg, weights_arg,
      subset_arg, vector_arg;
  update->add_option("--rule", rule, "rule name")
      ->required()
      ->check(CLI::IsMember({"weak-lueders", "strong-lueders", "semi-strong",
                             "von-neumann", "quantum-jeffrey"}));
  update->add_option("--state", state_arg, "state JSON or path");
  update->add_option("--resolution", resolution_arg, "resolution JSON or path");
  update->add_option("--projector", projector_arg, "projector JSON or path");
  update->add_option("--weights", weights_arg, "comma list or JSON array");
  update->add_option("--subset", subset_arg, "1-indexed comma list");
  update->add_option("--vector", vector_arg, "vector JSON (von-neumann)");

  // --- distance -------------------------------------------------------
  auto* distance = app.add_subcommand("distance", "evaluate a divergence");
  std::string kind_arg, a_arg, b_arg;
  distance->add_option("--kind", kind_arg, "divergence kind")->required();
  distance->add_option("--a", a_arg, "first argument (JSON or path)")
      ->required();
  distance->add_option("--b", b_arg, "second argument (JSON or path)")
      ->required();

  // --- project --------------------------------------------------------
  auto* project = app.add_subcommand("project", "entropic projection");
  std::string constraint_arg;
  project->add_option("--kind", kind_arg, "divergence kind")->required();
  project->add_option("--state", state_arg, "state JSON or path")->required();
  project->add_option("--constraint", constraint_arg, "constraint JSON or path")
      ->required();

  // --- verify ---------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run a theorem harness");
  std::string theorem, dims_arg;
  int trials = 0;
  verify_cmd->add_option("--theorem", theorem, "T1..T11")->required();
  verify_cmd->add_option("--dims", dims_arg, "comma list of dimensions");
  verify_cmd->add_option("--trials", trials, "trials per dimension");

  // --- classical ------------------------------------------------------
  auto* classical = app.add_subcommand("classical", "finite Bayes/Jeffrey");
  std::string evidence, table_arg, dist_arg;
  int index = 1;
  classical->add_option("--evidence", evidence, "sharp or soft")
      ->required()
      ->check(CLI::IsMember({"sharp", "soft"}));
  classical->add_option("--table", table_arg, "joint table JSON or path")
      ->required();
  classical->add_option("--index", index, "observed point (1-indexed, sharp)");
  classical->add_option("--dist", dist_arg, "new marginal (soft)");

  CLI11_PARSE(app, argc, argv);

  try {
    qep::SolverConfig cfg;
    cfg.seed = seed;
    if (tol > 0.0) cfg.grad_tol = tol;
    if (max_iter > 0) cfg.max_iter = max_iter;

    if (*update) {
      using qep::slurp_input;
      std::string out;
      if (rule == "von-neumann") {
        const qep::Vector xi = qep::vector_from_json(slurp_input(vector_arg));
        const qep::Projector P =
            qep::projector_from_json(slurp_input(projector_arg));
        out = qep::vector_to_json(qep::strong_von_neumann(xi, P));
      } else {
        const qep::DensityOperator rho =
            qep::state_from_json(slurp_input(state_arg));
        if (rule == "weak-lueders") {
          const auto R = qep::resolution_from_json(slurp_input(resolution_arg));
          out = qep::state_to_json(qep::weak_lueders(rho, R));
        } else if (rule == "strong-lueders") {
          const auto P = qep::projector_from_json(slurp_input(projector_arg));
          out = qep::state_to_json(qep::strong_lueders(rho, P));
        } else if (rule == "semi-strong") {
          const auto R = qep::resolution_from_json(slurp_input(resolution_arg));
          std::vector<int> J;
          for (int j : parse_int_list(subset_arg)) J.push_back(j - 1);
          out = qep::state_to_json(qep::semi_strong_lueders(rho, R, J));
        } else {  // quantum-jeffrey
          const auto R = qep::resolution_from_json(slurp_input(resolution_arg));
          const auto w = qep::validate_weights(parse_double_list(weights_arg));
          out = qep::state_to_json(qep::quantum_jeffrey(rho, R, w));
        }
      }
      emit(out, out_path);
      return kExitOk;
    }

    if (*distance) {
      const qep::DivergenceKind kind = qep::divergence_kind_from_name(kind_arg);
      std::string out;
      if (kind == qep::DivergenceKind::WGKL) {
        const auto p = qep::real_list_from_json(qep::slurp_input(a_arg));
        const auto q = qep::real_list_from_json(qep::slurp_input(b_arg));
        out = qep::extended_to_json(qep::wgkl(p, q));
      } else {
        const auto a = qep::state_from_json(qep::slurp_input(a_arg));
        const auto b = qep::state_from_json(qep::slurp_input(b_arg));
        out = qep::extended_to_json(qep::evaluate_divergence(kind, a, b));
      }
      emit(out, out_path);
      return kExitOk;
    }

    if (*project) {
      const qep::DivergenceKind kind = qep::divergence_kind_from_name(kind_arg);
      const auto psi = qep::state_from_json(qep::slurp_input(state_arg));
      const auto K =
          qep::constraint_from_json(qep::slurp_input(constraint_arg));
      const qep::ProjectionResult res =
          qep::entropic_project(kind, psi, K, cfg);
      emit(qep::projection_result_to_json(res), out_path);
      return res.converged ? kExitOk : kExitNoConverge;
    }

    if (*verify_cmd) {
      const std::vector<int> dims =
          dims_arg.empty() ? std::vector<int>{} : parse_int_list(dims_arg);
      const qep::HarnessReport report =
          qep::verify(theorem, dims, trials, seed, cfg, jobs);
      emit(report_format == "csv" ? qep::report_csv(report)
                                  : qep::report_to_json(report),
           out_path);
      return kExitOk;
    }

    if (*classical) {
      const qep::JointTable prior =
          qep::table_from_json(qep::slurp_input(table_arg));
      Eigen::VectorXd posterior;
      if (evidence == "sharp") {
        posterior = qep::bayes_update(prior, qep::SharpEvidence{index - 1});
      } else {
        const auto f = parse_double_list(dist_arg);
        posterior = qep::jeffrey_update(prior, qep::SoftEvidence{f});
      }
      std::vector<double> out(posterior.data(),
                              posterior.data() + posterior.size());
      emit(qep::real_list_to_json(out), out_path);
      return kExitOk;
    }
  } catch (const qep::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
  return kExitOk;
}
