#ifndef QEP_STATES_HPP
#define QEP_STATES_HPP

#include <variant>
#include <vector>

#include "qep/spectral.hpp"

namespace qep {

// ===========================================================================
// States
// ===========================================================================

// Positive semidefinite Hermitian matrix with a recorded trace. Normalized
// states have trace 1; unnormalized positive functionals (e.g. a state
// compressed to a block) are first-class and keep their actual trace.
struct DensityOperator {
  Matrix matrix;
  double trace = 0.0;

  int dim() const { return static_cast<int>(matrix.rows()); }
  Matrix sqrt() const { return fn_on_support(matrix, ScalarFunctionKind::Sqrt); }
  Matrix log_on_support() const {
    return fn_on_support(matrix, ScalarFunctionKind::Log);
  }
  Matrix support() const { return support_projector(matrix); }
};

// Validates Hermiticity, positivity and (optionally) normalization. Never
// rescales: a matrix whose trace is off is rejected, not fixed.
DensityOperator validate_state(const Matrix& M, bool normalized = true);

// Hilbert–Schmidt square-root representative rho^{1/2} of a state; satisfies
// hs_norm(rep)^2 = trace.
Matrix hs_vector(const DensityOperator& state);

// supp(omega) <= supp(phi), decided with the global rank_tol convention.
bool absolutely_continuous(const DensityOperator& omega,
                           const DensityOperator& phi);

// ===========================================================================
// Projectors and resolutions
// ===========================================================================

struct Projector {
  Matrix matrix;
  int dim() const { return static_cast<int>(matrix.rows()); }
  int rank() const;
};

// Checks P = P^dagger and P^2 = P within tol::proj.
Projector validate_projector(const Matrix& P);

// Finite family of mutually orthogonal projectors summing to the identity.
struct OrthogonalResolution {
  std::vector<Projector> members;
  int dim = 0;
  int size() const { return static_cast<int>(members.size()); }
};

OrthogonalResolution validate_resolution(const std::vector<Matrix>& projectors);

// P_i = sum over the i-th group of |basis_k><basis_k|. Groups are 0-indexed
// here; the JSON layer converts from the 1-indexed wire format.
OrthogonalResolution resolution_from_groups(
    const Matrix& basis, const std::vector<std::vector<int>>& groups);

// Convenience: rank-1 resolution in the computational basis.
OrthogonalResolution computational_resolution(int dim);

// Weights lambda_i >= 0 summing to 1, paired with a resolution of the same
// length.
struct JeffreyWeights {
  std::vector<double> weights;
  int size() const { return static_cast<int>(weights.size()); }
};

JeffreyWeights validate_weights(const std::vector<double>& w);

// ===========================================================================
// Constraint sets
// ===========================================================================

// omega commutes with every member of the resolution.
struct CommutantQL {
  OrthogonalResolution resolution;
};

// tr(omega P_i) = lambda_i for every member.
struct TracePinnedQqJ {
  OrthogonalResolution resolution;
  JeffreyWeights weights;
};

// tr(omega P) = tr(omega) = 1: the face of the state space cut out by P.
struct FaceQsL {
  Projector projector;
};

// omega = P omega P, trace unconstrained.
struct SupportBlock {
  Projector projector;
};

using ConstraintSet =
    std::variant<CommutantQL, TracePinnedQqJ, FaceQsL, SupportBlock>;

int constraint_dim(const ConstraintSet& K);

struct MembershipResult {
  bool member = false;
  double residual = 0.0;
};

// Maximum violation of the defining conditions of K; member iff residual
// does not exceed the given tolerance.
MembershipResult in_constraint(const DensityOperator& omega,
                               const ConstraintSet& K,
                               double tolerance = tol::member);

// ===========================================================================
// Block decomposition
// ===========================================================================

struct BlockDecomposition {
  std::vector<Matrix> blocks;  // P_i A P_i, full-dimension matrices
  Matrix remainder;            // A - sum of blocks; zero iff [A, P_i] = 0
};

BlockDecomposition block_decompose(const Matrix& A,
                                   const OrthogonalResolution& R);

// Pinching sum_i P_i A P_i as a single matrix.
Matrix pinch(const Matrix& A, const OrthogonalResolution& R);

// Orthonormal basis of ran(P) as a dim x rank isometry. Used to compress
// operators to a block: B^dagger A B.
Matrix range_isometry(const Projector& P);

}  // namespace qep

#endif  // QEP_STATES_HPP
