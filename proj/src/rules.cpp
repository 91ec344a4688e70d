#include "qep/rules.hpp"

#include <cmath>

#include "qep/errors.hpp"

namespace qep {

DensityOperator weak_lueders(const DensityOperator& rho,
                             const OrthogonalResolution& R) {
  if (rho.dim() != R.dim)
    fail(ErrorCode::DimensionMismatch, "weak_lueders: dims differ");
  return DensityOperator{pinch(rho.matrix, R), rho.trace};
}

DensityOperator strong_lueders(const DensityOperator& rho,
                               const Projector& P) {
  if (rho.dim() != P.dim())
    fail(ErrorCode::DimensionMismatch, "strong_lueders: dims differ");
  const double prob = (P.matrix * rho.matrix).trace().real();
  if (prob <= tol::prob)
    fail(ErrorCode::ZeroProbability,
         "tr(P rho) = " + std::to_string(prob));
  Matrix out = P.matrix * rho.matrix * P.matrix / prob;
  return DensityOperator{out, 1.0};
}

DensityOperator semi_strong_lueders(const DensityOperator& rho,
                                    const OrthogonalResolution& R,
                                    const std::vector<int>& J) {
  if (rho.dim() != R.dim)
    fail(ErrorCode::DimensionMismatch, "semi_strong_lueders: dims differ");
  Matrix sum = Matrix::Zero(R.dim, R.dim);
  double prob = 0.0;
  for (int j : J) {
    if (j < 0 || j >= R.size())
      fail(ErrorCode::InvalidInput, "subset index out of range");
    const Matrix& P = R.members[j].matrix;
    sum += P * rho.matrix * P;
    prob += (P * rho.matrix).trace().real();
  }
  if (prob <= tol::prob)
    fail(ErrorCode::ZeroProbability,
         "subset probability = " + std::to_string(prob));
  return DensityOperator{sum / prob, 1.0};
}

Vector strong_von_neumann(const Vector& xi, const Projector& P) {
  if (xi.size() != P.dim())
    fail(ErrorCode::DimensionMismatch, "strong_von_neumann: dims differ");
  const Vector proj = P.matrix * xi;
  const double overlap = proj.squaredNorm();  // <xi, P xi> for a projector
  if (overlap <= tol::prob)
    fail(ErrorCode::ZeroProbability,
         "<xi, P xi> = " + std::to_string(overlap));
  return proj / std::sqrt(overlap);
}

DensityOperator quantum_jeffrey(const DensityOperator& rho,
                                const OrthogonalResolution& R,
                                const JeffreyWeights& lambda) {
  if (rho.dim() != R.dim)
    fail(ErrorCode::DimensionMismatch, "quantum_jeffrey: dims differ");
  if (lambda.size() != R.size())
    fail(ErrorCode::WeightMismatch,
         "weights and resolution have different lengths");
  Matrix out = Matrix::Zero(R.dim, R.dim);
  for (int i = 0; i < R.size(); ++i) {
    const double li = lambda.weights[i];
    if (li == 0.0) continue;
    const Matrix& P = R.members[i].matrix;
    const double prob = (P * rho.matrix).trace().real();
    if (prob <= tol::prob)
      fail(ErrorCode::ZeroProbability,
           "tr(rho P_" + std::to_string(i) + ") = " + std::to_string(prob));
    out += li * (P * rho.matrix * P) / prob;
  }
  return DensityOperator{out, 1.0};
}

ConsistencyResult qj_consistency(const DensityOperator& rho_new,
                                 const DensityOperator& rho,
                                 const OrthogonalResolution& R,
                                 double tolerance) {
  if (rho_new.dim() != R.dim || rho.dim() != R.dim)
    fail(ErrorCode::DimensionMismatch, "qj_consistency: dims differ");
  double residual = 0.0;
  for (const Projector& P : R.members) {
    const Matrix comm = P.matrix * rho_new.matrix - rho_new.matrix * P.matrix;
    residual = std::max(residual, comm.cwiseAbs().maxCoeff());

    const double tr_new = (P.matrix * rho_new.matrix).trace().real();
    if (tr_new <= tol::prob) continue;  // lambda_i = 0 block, exempt
    const double tr_old = (P.matrix * rho.matrix).trace().real();
    if (tr_old <= tol::prob)
      fail(ErrorCode::ZeroProbability,
           "reference state gives zero probability to an occupied block");
    const Matrix diff = P.matrix * rho_new.matrix * P.matrix / tr_new -
                        P.matrix * rho.matrix * P.matrix / tr_old;
    residual = std::max(residual, diff.cwiseAbs().maxCoeff());
  }
  return ConsistencyResult{residual <= tolerance, residual};
}

JointTable validate_table(const Eigen::MatrixXd& p) {
  if (p.rows() < 1 || p.cols() < 1)
    fail(ErrorCode::InvalidInput, "joint table must be nonempty");
  if (p.minCoeff() < 0.0)
    fail(ErrorCode::InvalidInput, "joint table has negative entries");
  if (std::abs(p.sum() - 1.0) > 1e-12)
    fail(ErrorCode::NotNormalized,
         "joint table sums to " + std::to_string(p.sum()));
  return JointTable{p};
}

Eigen::VectorXd bayes_update(const JointTable& prior, const SharpEvidence& e) {
  if (e.index < 0 || e.index >= prior.nx())
    fail(ErrorCode::InvalidInput, "evidence index out of range");
  const Eigen::VectorXd row = prior.p.row(e.index);
  const double marginal = row.sum();
  if (marginal <= tol::prob)
    fail(ErrorCode::ZeroEvidence, "observed point has zero prior marginal");
  return row / marginal;
}

Eigen::VectorXd jeffrey_update(const JointTable& prior, const SoftEvidence& e) {
  if (static_cast<int>(e.distribution.size()) != prior.nx())
    fail(ErrorCode::LengthMismatch, "soft evidence length != nx");
  double fsum = 0.0;
  for (double f : e.distribution) {
    if (f < 0.0) fail(ErrorCode::InvalidInput, "soft evidence must be >= 0");
    fsum += f;
  }
  if (std::abs(fsum - 1.0) > 1e-12)
    fail(ErrorCode::NotNormalized, "soft evidence sums to " +
                                       std::to_string(fsum));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(prior.ntheta());
  for (int x = 0; x < prior.nx(); ++x) {
    const double f = e.distribution[x];
    if (f == 0.0) continue;
    const double marginal = prior.p.row(x).sum();
    if (marginal <= tol::prob)
      fail(ErrorCode::SupportViolation,
           "soft evidence charges a zero-probability row");
    out += f * prior.p.row(x).transpose() / marginal;
  }
  return out;
}

}  // namespace qep
