#ifndef QEP_TOLERANCES_HPP
#define QEP_TOLERANCES_HPP

namespace qep {
namespace tol {

// Relative spectral cutoff: eigenvalues below rank_tol * lambda_max count as
// exact kernel. Support comparisons everywhere route through this single
// constant so that absolute-continuity decisions are consistent.
inline constexpr double rank_tol = 1e-10;

// Hermiticity check on inputs (max |A - A^dagger| entry).
inline constexpr double herm = 1e-9;

// PSD check on inputs (min eigenvalue >= -psd).
inline constexpr double psd = 1e-9;

// Projector idempotence / orthogonality checks.
inline constexpr double proj = 1e-8;

// Constraint-set membership: looser than spectral tolerances so that solver
// outputs pass without accepting wrong subspaces.
inline constexpr double member = 1e-8;

// Probability threshold below which a conditioning event counts as zero.
inline constexpr double prob = 1e-12;

// Recorded-trace consistency for states.
inline constexpr double trace = 1e-10;

}  // namespace tol
}  // namespace qep

#endif  // QEP_TOLERANCES_HPP
