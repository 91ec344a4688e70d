#include "qep/states.hpp"

#include <cmath>

#include "qep/errors.hpp"

namespace qep {

DensityOperator validate_state(const Matrix& M, bool normalized) {
  if (M.rows() != M.cols())
    fail(ErrorCode::DimensionMismatch, "state matrix must be square");
  if (!M.allFinite())
    fail(ErrorCode::InvalidInput, "state matrix has non-finite entries");
  if (!is_hermitian(M))
    fail(ErrorCode::NonHermitian, "state matrix is not Hermitian");
  SpectralDecomposition dec = eigh(M);
  if (dec.values.minCoeff() < -tol::psd)
    fail(ErrorCode::NotPSD,
         "min eigenvalue " + std::to_string(dec.values.minCoeff()));
  const double tr = M.trace().real();
  if (normalized && std::abs(tr - 1.0) > 1e-9)
    fail(ErrorCode::NotNormalized, "trace = " + std::to_string(tr));
  if (!normalized && tr <= 0.0)
    fail(ErrorCode::NotPSD, "positive functional must have positive trace");
  return DensityOperator{M, tr};
}

Matrix hs_vector(const DensityOperator& state) { return state.sqrt(); }

bool absolutely_continuous(const DensityOperator& omega,
                           const DensityOperator& phi) {
  if (omega.dim() != phi.dim())
    fail(ErrorCode::DimensionMismatch, "absolutely_continuous: dims differ");
  // Every eigenvector of omega above the kernel cutoff must lie in ran(phi).
  SpectralDecomposition dec = eigh(omega.matrix);
  const double cutoff = tol::rank_tol * dec.values.cwiseAbs().maxCoeff();
  Matrix Pphi = phi.support();
  for (int i = 0; i < dec.values.size(); ++i) {
    if (dec.values(i) <= cutoff) continue;
    const Vector v = dec.vectors.col(i);
    if ((v - Pphi * v).norm() > 1e-7) return false;
  }
  return true;
}

int Projector::rank() const {
  return static_cast<int>(std::lround(matrix.trace().real()));
}

Projector validate_projector(const Matrix& P) {
  if (P.rows() != P.cols())
    fail(ErrorCode::DimensionMismatch, "projector must be square");
  if (!is_hermitian(P, tol::proj))
    fail(ErrorCode::NonHermitian, "projector is not Hermitian");
  if ((P * P - P).cwiseAbs().maxCoeff() > tol::proj)
    fail(ErrorCode::InvalidInput, "matrix is not idempotent");
  return Projector{P};
}

OrthogonalResolution validate_resolution(
    const std::vector<Matrix>& projectors) {
  if (projectors.empty())
    fail(ErrorCode::InvalidInput, "resolution needs at least one projector");
  OrthogonalResolution R;
  R.dim = static_cast<int>(projectors.front().rows());
  Matrix sum = Matrix::Zero(R.dim, R.dim);
  for (const Matrix& P : projectors) {
    if (P.rows() != R.dim || P.cols() != R.dim)
      fail(ErrorCode::DimensionMismatch, "projector dimensions differ");
    R.members.push_back(validate_projector(P));
    sum += P;
  }
  for (size_t i = 0; i < projectors.size(); ++i)
    for (size_t j = i + 1; j < projectors.size(); ++j)
      if ((projectors[i] * projectors[j]).cwiseAbs().maxCoeff() > tol::proj)
        fail(ErrorCode::InvalidInput, "projectors are not mutually orthogonal");
  if ((sum - Matrix::Identity(R.dim, R.dim)).cwiseAbs().maxCoeff() > tol::proj)
    fail(ErrorCode::InvalidInput, "projectors do not sum to the identity");
  return R;
}

OrthogonalResolution resolution_from_groups(
    const Matrix& basis, const std::vector<std::vector<int>>& groups) {
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d)
    fail(ErrorCode::DimensionMismatch, "basis must be square");
  if ((basis.adjoint() * basis - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() >
      tol::proj)
    fail(ErrorCode::NotUnitary, "basis columns are not orthonormal");

  std::vector<bool> seen(d, false);
  for (const auto& g : groups) {
    for (int k : g) {
      if (k < 0 || k >= d || seen[k])
        fail(ErrorCode::NotPartition, "groups must partition the basis indices");
      seen[k] = true;
    }
  }
  for (bool s : seen)
    if (!s) fail(ErrorCode::NotPartition, "groups must cover every index");

  std::vector<Matrix> projectors;
  for (const auto& g : groups) {
    Matrix P = Matrix::Zero(d, d);
    for (int k : g) P += basis.col(k) * basis.col(k).adjoint();
    projectors.push_back(P);
  }
  return validate_resolution(projectors);
}

OrthogonalResolution computational_resolution(int dim) {
  std::vector<std::vector<int>> groups;
  for (int i = 0; i < dim; ++i) groups.push_back({i});
  return resolution_from_groups(Matrix::Identity(dim, dim), groups);
}

JeffreyWeights validate_weights(const std::vector<double>& w) {
  double sum = 0.0;
  for (double x : w) {
    if (x < 0.0) fail(ErrorCode::WeightMismatch, "weights must be nonnegative");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    fail(ErrorCode::WeightMismatch, "weights sum to " + std::to_string(sum));
  return JeffreyWeights{w};
}

int constraint_dim(const ConstraintSet& K) {
  return std::visit(
      [](const auto& c) -> int {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, CommutantQL> ||
                      std::is_same_v<T, TracePinnedQqJ>)
          return c.resolution.dim;
        else
          return c.projector.dim();
      },
      K);
}

MembershipResult in_constraint(const DensityOperator& omega,
                               const ConstraintSet& K, double tolerance) {
  if (omega.dim() != constraint_dim(K))
    fail(ErrorCode::DimensionMismatch, "in_constraint: dims differ");

  double residual = 0.0;
  if (const auto* ql = std::get_if<CommutantQL>(&K)) {
    for (const Projector& P : ql->resolution.members) {
      const Matrix comm = P.matrix * omega.matrix - omega.matrix * P.matrix;
      residual = std::max(residual, operator_norm(comm));
    }
  } else if (const auto* qj = std::get_if<TracePinnedQqJ>(&K)) {
    if (qj->weights.size() != qj->resolution.size())
      fail(ErrorCode::WeightMismatch, "weights/resolution length mismatch");
    for (int i = 0; i < qj->resolution.size(); ++i) {
      const double tr =
          (omega.matrix * qj->resolution.members[i].matrix).trace().real();
      residual = std::max(residual, std::abs(tr - qj->weights.weights[i]));
    }
  } else if (const auto* face = std::get_if<FaceQsL>(&K)) {
    const double trP = (omega.matrix * face->projector.matrix).trace().real();
    residual = std::max(std::abs(trP - 1.0), std::abs(omega.trace - 1.0));
  } else if (const auto* blk = std::get_if<SupportBlock>(&K)) {
    const Matrix& P = blk->projector.matrix;
    residual = operator_norm(omega.matrix - P * omega.matrix * P);
  }
  return MembershipResult{residual <= tolerance, residual};
}

BlockDecomposition block_decompose(const Matrix& A,
                                   const OrthogonalResolution& R) {
  if (A.rows() != R.dim || A.cols() != R.dim)
    fail(ErrorCode::DimensionMismatch, "block_decompose: dims differ");
  BlockDecomposition out;
  Matrix sum = Matrix::Zero(R.dim, R.dim);
  for (const Projector& P : R.members) {
    Matrix block = P.matrix * A * P.matrix;
    sum += block;
    out.blocks.push_back(std::move(block));
  }
  out.remainder = A - sum;
  return out;
}

Matrix pinch(const Matrix& A, const OrthogonalResolution& R) {
  Matrix sum = Matrix::Zero(R.dim, R.dim);
  for (const Projector& P : R.members) sum += P.matrix * A * P.matrix;
  return sum;
}

Matrix range_isometry(const Projector& P) {
  SpectralDecomposition dec = eigh(P.matrix);
  const int d = P.dim();
  const int r = P.rank();
  // Eigenvalues ascend, so the range vectors are the last r columns.
  Matrix B(d, r);
  for (int k = 0; k < r; ++k) B.col(k) = dec.vectors.col(d - r + k);
  return B;
}

}  // namespace qep
