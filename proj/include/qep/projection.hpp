#ifndef QEP_PROJECTION_HPP
#define QEP_PROJECTION_HPP

#include <cstdint>
#include <vector>

#include "qep/divergences.hpp"
#include "qep/states.hpp"

namespace qep {

// ===========================================================================
// Solver configuration and results
// ===========================================================================

struct SolverConfig {
  int max_iter = 50000;
  double step_init = 1.0;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  double grad_tol = 1e-10;
  double feas_tol = 1e-8;
  std::uint64_t seed = 0;
  int restarts = 1;
  int oracle_budget = 20000;  // used when a kind routes to the sampling path
  bool record_trace = false;  // keep accepted objective values per iteration
};

struct ProjectionResult {
  DensityOperator minimizer;
  ExtendedReal objective;      // D(minimizer, psi)
  double grad_residual = 0.0;
  double feas_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> objective_trace;  // accepted values, when recorded
};

// ===========================================================================
// Entropic projection
// ===========================================================================

// Minimizes D(phi, psi) over phi in K — the variable state sits in the FIRST
// slot. The feasible set of every supported constraint family is a product
// of scaled state simplices over blocks; phi is parametrized per block as
// exp(H)/Z, which keeps iterates positive and the traces exactly pinned.
// L1_JMGK is non-smooth and routes to the sampling oracle. Throws
// InfiniteDivergence when the objective is +infinity on the whole feasible
// set (e.g. D0 onto a face that cannot dominate psi).
ProjectionResult entropic_project(DivergenceKind kind,
                                  const DensityOperator& psi,
                                  const ConstraintSet& K,
                                  const SolverConfig& cfg = {});

// Derivative-free corroboration path: random feasible states (flat simplex
// eigenvalues + Haar block unitaries) refined by a shrinking perturbation
// search. Shares only the divergence evaluation with the solver.
ProjectionResult sampling_oracle(DivergenceKind kind,
                                 const DensityOperator& psi,
                                 const ConstraintSet& K, int budget,
                                 std::uint64_t seed);

// ===========================================================================
// Theorem-support operations
// ===========================================================================

// |D(phi, rho) + D(rho, psi) - D(phi, psi)|. Throws InfiniteDivergence if
// any of the three is infinite.
double triangle_residual(DivergenceKind kind, const DensityOperator& phi,
                         const DensityOperator& rho,
                         const DensityOperator& psi);

// Iterates entropic_project over the list of constraints, feeding each
// minimizer to the next projection.
DensityOperator sequential_projection(const DensityOperator& psi,
                                      const std::vector<ConstraintSet>& Ks,
                                      DivergenceKind kind,
                                      const SolverConfig& cfg = {});

// Regularized distance D0^P: both arguments compressed to the ran(P) block,
// unnormalized D0 evaluated there. Throws ZeroProbability when
// tr(P psi) <= tol::prob.
ExtendedReal regularized_d0P(const DensityOperator& phi,
                             const DensityOperator& psi, const Projector& P);

// Minimizes D0^P(phi, psi) over the face tr(phi P) = tr(phi) = 1 by solving
// the compressed problem; the minimizer is embedded back into the full
// space.
ProjectionResult project_regularized_d0(const DensityOperator& psi,
                                        const Projector& P,
                                        const SolverConfig& cfg = {});

// Intersection of two commutant constraints with commuting generating
// projectors: the commutant of the common refinement {P_i Q_j}.
ConstraintSet intersect_commutants(const CommutantQL& a, const CommutantQL& b);

}  // namespace qep

#endif  // QEP_PROJECTION_HPP
