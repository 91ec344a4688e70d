#ifndef QEP_RULES_HPP
#define QEP_RULES_HPP

#include <vector>

#include "qep/states.hpp"

namespace qep {

// ===========================================================================
// Quantum update rules
// ===========================================================================

// Pinching rho -> sum_i P_i rho P_i. Trace preserving, positivity
// preserving, idempotent; the HS-orthogonal projection onto the commutant of
// the resolution.
DensityOperator weak_lueders(const DensityOperator& rho,
                             const OrthogonalResolution& R);

// rho -> P rho P / tr(P rho P). Throws ZeroProbability when tr(P rho) is
// below tol::prob.
DensityOperator strong_lueders(const DensityOperator& rho, const Projector& P);

// Partial collapse onto the index subset J (0-indexed):
// sum_{j in J} P_j rho P_j / sum_{j in J} tr(P_j rho P_j).
DensityOperator semi_strong_lueders(const DensityOperator& rho,
                                    const OrthogonalResolution& R,
                                    const std::vector<int>& J);

// State-vector reduction xi -> P xi / <xi, P xi>^{1/2}.
Vector strong_von_neumann(const Vector& xi, const Projector& P);

// rho -> sum_i lambda_i P_i rho P_i / tr(rho P_i). Requires tr(rho P_i) >
// tol::prob wherever lambda_i > 0.
DensityOperator quantum_jeffrey(const DensityOperator& rho,
                                const OrthogonalResolution& R,
                                const JeffreyWeights& lambda);

struct ConsistencyResult {
  bool consistent = false;
  double residual = 0.0;
};

// Checks that rho_new conditions like rho on every block: [rho_new, P_i] = 0
// and P_i rho_new P_i / tr(rho_new P_i) = P_i rho P_i / tr(rho P_i)
// entrywise, blocks with tr(rho_new P_i) <= tol::prob exempt.
ConsistencyResult qj_consistency(const DensityOperator& rho_new,
                                 const DensityOperator& rho,
                                 const OrthogonalResolution& R,
                                 double tolerance = tol::member);

// ===========================================================================
// Classical branch: finite joint tables
// ===========================================================================

// Nonnegative grid p(x, theta) summing to 1; rows index X, columns Theta.
struct JointTable {
  Eigen::MatrixXd p;

  int nx() const { return static_cast<int>(p.rows()); }
  int ntheta() const { return static_cast<int>(p.cols()); }
  Eigen::VectorXd marginal_x() const { return p.rowwise().sum(); }
  Eigen::VectorXd marginal_theta() const { return p.colwise().sum(); }
};

JointTable validate_table(const Eigen::MatrixXd& p);

struct SharpEvidence {
  int index = 0;  // observed point b in X
};

struct SoftEvidence {
  std::vector<double> distribution;  // new marginal f over X
};

// p_new(theta) = p(b, theta) / p(b). Throws ZeroEvidence when p(b) = 0.
Eigen::VectorXd bayes_update(const JointTable& prior, const SharpEvidence& e);

// p_new(theta) = sum_x f(x) p(theta | x). Throws SupportViolation when f
// charges a row of zero marginal.
Eigen::VectorXd jeffrey_update(const JointTable& prior, const SoftEvidence& e);

}  // namespace qep

#endif  // QEP_RULES_HPP
