#ifndef QEP_MODULAR_HPP
#define QEP_MODULAR_HPP

#include <vector>

#include "qep/divergences.hpp"
#include "qep/states.hpp"

namespace qep {

// ===========================================================================
// Superoperators on Hilbert–Schmidt space
// ===========================================================================

// Linear map on d x d matrices stored densely as a d^2 x d^2 matrix acting
// on column-stacked inputs: vec(A X B) = (B^T kron A) vec(X).
struct Superoperator {
  int dim = 0;        // d, the dimension of the underlying space
  Matrix matrix;      // d^2 x d^2

  Matrix apply(const Matrix& X) const;
};

Matrix vec(const Matrix& X);
Matrix unvec(const Matrix& v, int dim);

// Relative modular operator Delta_{phi,omega}: x -> rho_phi x rho_omega^{-1}
// with the inverse taken on supp(omega) and zero extension elsewhere. PSD on
// HS space; eigenvalues are the ratios lambda_i(phi)/lambda_j(omega) over
// support index pairs.
Superoperator relative_modular(const DensityOperator& phi,
                               const DensityOperator& omega);

// Araki form of D1 evaluated through the superoperator:
// (tr phi - tr omega) - <vec(sqrt rho_omega), log(Delta_{phi,omega})
// vec(sqrt rho_omega)>, with the logarithm taken on Delta's support.
// +infinity when omega is not absolutely continuous w.r.t. phi. Independent
// of the trace-formula path in d1_umegaki apart from the support test.
ExtendedReal araki_d1(const DensityOperator& omega, const DensityOperator& phi);

// ===========================================================================
// Connes cocycles
// ===========================================================================

struct CocycleSample {
  double t = 0.0;
  Matrix matrix;  // rho_phi^{it} rho_omega^{-it}, partial isometry on supports
};

// Requires the support projectors of phi and omega to commute (the general
// non-commuting case has no finite-dimensional recipe here).
CocycleSample connes_cocycle(const DensityOperator& phi,
                             const DensityOperator& omega, double t);

// Modular automorphism sigma^omega_t(x) = rho_omega^{it} x rho_omega^{-it}.
Matrix modular_automorphism(const DensityOperator& omega, const Matrix& x,
                            double t);

// ===========================================================================
// Petz limit
// ===========================================================================

struct PetzSample {
  double t = 0.0;
  double value = 0.0;      // Re[ i (omega(cocycle_t) - omega(I)) / t ]
  double imag_residual = 0.0;
};

struct PetzResult {
  double estimate = 0.0;   // Richardson-extrapolated t -> 0 limit
  double error_bar = 0.0;  // magnitude of the last extrapolation correction
  double observed_order = 0.0;  // log-log slope of |f(t) - estimate|
  std::vector<PetzSample> samples;
};

// Default grid: geometric from 1e-2 down to 1e-5.
std::vector<double> default_petz_grid();

// Evaluates i omega((Dphi:Domega)_t - I)/t on the grid and extrapolates to
// t -> 0 with two Richardson levels. Throws SupportViolation unless
// omega << phi.
PetzResult petz_limit_d1(const DensityOperator& omega,
                         const DensityOperator& phi,
                         const std::vector<double>& t_grid = default_petz_grid());

}  // namespace qep

#endif  // QEP_MODULAR_HPP
