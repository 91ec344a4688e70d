#ifndef QEP_CLASSICAL_HPP
#define QEP_CLASSICAL_HPP

#include "qep/projection.hpp"
#include "qep/rules.hpp"

namespace qep {

struct MreResult {
  Eigen::MatrixXd posterior_table;   // minimizing joint q(x, theta)
  Eigen::VectorXd posterior_theta;   // its Theta marginal
  double objective = 0.0;            // WGKL(q, p)
  double grad_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Minimum relative entropy update of a joint table: minimizes
// sum q log(q/p) over joint tables q whose X-marginal is pinned to the
// evidence (one-hot for sharp evidence, f for soft). The classical rules in
// rules.hpp are the closed forms this solver is checked against.
MreResult mre_project(const JointTable& prior, const Eigen::VectorXd& target_x,
                      const SolverConfig& cfg = {});

MreResult mre_project_sharp(const JointTable& prior, const SharpEvidence& e,
                            const SolverConfig& cfg = {});

MreResult mre_project_soft(const JointTable& prior, const SoftEvidence& e,
                           const SolverConfig& cfg = {});

}  // namespace qep

#endif  // QEP_CLASSICAL_HPP
