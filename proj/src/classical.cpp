#include "qep/classical.hpp"

#include <cmath>
#include <vector>

#include "qep/errors.hpp"
#include "minimize.hpp"

namespace qep {

namespace {

// Row-wise softmax parametrization of the feasible tables: for each row x
// with target marginal f_x > 0, q(x, theta) = f_x softmax(h_x) over the
// columns where p(x, theta) > 0 (elsewhere the minimizer is exactly zero).
struct RowLayout {
  int row = 0;
  double mass = 0.0;
  std::vector<int> cols;  // support columns of the prior row
  int offset = 0;         // position in the flat parameter vector
};

}  // namespace

MreResult mre_project(const JointTable& prior, const Eigen::VectorXd& target_x,
                      const SolverConfig& cfg) {
  const int nx = prior.nx();
  const int nt = prior.ntheta();
  if (target_x.size() != nx)
    fail(ErrorCode::LengthMismatch, "target marginal length != nx");

  std::vector<RowLayout> rows;
  int params = 0;
  for (int x = 0; x < nx; ++x) {
    const double f = target_x(x);
    if (f < 0.0) fail(ErrorCode::InvalidInput, "target marginal must be >= 0");
    if (f <= 0.0) continue;
    RowLayout rl;
    rl.row = x;
    rl.mass = f;
    for (int t = 0; t < nt; ++t)
      if (prior.p(x, t) > 0.0) rl.cols.push_back(t);
    if (rl.cols.empty())
      fail(ErrorCode::SupportViolation,
           "evidence charges a row with zero prior mass");
    rl.offset = params;
    params += static_cast<int>(rl.cols.size());
    rows.push_back(std::move(rl));
  }

  const auto realize_table = [&](const Eigen::VectorXd& h) {
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(nx, nt);
    for (const RowLayout& rl : rows) {
      const int m = static_cast<int>(rl.cols.size());
      double hmax = -1e300;
      for (int k = 0; k < m; ++k) hmax = std::max(hmax, h(rl.offset + k));
      double z = 0.0;
      for (int k = 0; k < m; ++k) z += std::exp(h(rl.offset + k) - hmax);
      for (int k = 0; k < m; ++k)
        q(rl.row, rl.cols[k]) =
            rl.mass * std::exp(h(rl.offset + k) - hmax) / z;
    }
    return q;
  };

  const detail::ValueFn fval = [&](const Eigen::VectorXd& h) {
    const Eigen::MatrixXd q = realize_table(h);
    double sum = 0.0;
    for (const RowLayout& rl : rows)
      for (int t : rl.cols) {
        const double qv = q(rl.row, t);
        if (qv > 0.0) sum += qv * std::log(qv / prior.p(rl.row, t));
      }
    return sum;
  };

  const detail::GradFn fgrad = [&](const Eigen::VectorXd& h) {
    const Eigen::MatrixXd q = realize_table(h);
    Eigen::VectorXd g(params);
    for (const RowLayout& rl : rows) {
      const int m = static_cast<int>(rl.cols.size());
      // grad_k = q_k (a_k - <a>_q / f) with a = log(q/p).
      double mean = 0.0;
      std::vector<double> a(m);
      for (int k = 0; k < m; ++k) {
        const double qv = q(rl.row, rl.cols[k]);
        a[k] = qv > 0.0 ? std::log(qv / prior.p(rl.row, rl.cols[k])) : 0.0;
        mean += qv * a[k];
      }
      mean /= rl.mass;
      for (int k = 0; k < m; ++k)
        g(rl.offset + k) = q(rl.row, rl.cols[k]) * (a[k] - mean);
    }
    return g;
  };

  detail::MinimizeOutcome run = detail::minimize_smooth(
      fval, fgrad, Eigen::VectorXd::Zero(params), cfg);

  MreResult out;
  out.posterior_table = realize_table(run.x);
  out.posterior_theta = out.posterior_table.colwise().sum();
  out.objective = run.f;
  out.grad_residual = run.grad_norm;
  out.iterations = run.iterations;
  out.converged = run.converged;
  return out;
}

MreResult mre_project_sharp(const JointTable& prior, const SharpEvidence& e,
                            const SolverConfig& cfg) {
  if (e.index < 0 || e.index >= prior.nx())
    fail(ErrorCode::InvalidInput, "evidence index out of range");
  if (prior.p.row(e.index).sum() <= tol::prob)
    fail(ErrorCode::ZeroEvidence, "observed point has zero prior marginal");
  Eigen::VectorXd f = Eigen::VectorXd::Zero(prior.nx());
  f(e.index) = 1.0;
  return mre_project(prior, f, cfg);
}

MreResult mre_project_soft(const JointTable& prior, const SoftEvidence& e,
                           const SolverConfig& cfg) {
  if (static_cast<int>(e.distribution.size()) != prior.nx())
    fail(ErrorCode::LengthMismatch, "soft evidence length != nx");
  Eigen::VectorXd f(prior.nx());
  for (int i = 0; i < prior.nx(); ++i) f(i) = e.distribution[i];
  if (std::abs(f.sum() - 1.0) > 1e-12)
    fail(ErrorCode::NotNormalized, "soft evidence must sum to 1");
  return mre_project(prior, f, cfg);
}

}  // namespace qep
