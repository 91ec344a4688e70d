#ifndef QEP_DIVERGENCES_HPP
#define QEP_DIVERGENCES_HPP

#include <string>
#include <vector>

#include "qep/states.hpp"

namespace qep {

// ===========================================================================
// Extended reals
// ===========================================================================

// Finite value or +infinity. Infinity only ever records a support violation;
// it is a legitimate value of the divergences, not an error.
struct ExtendedReal {
  double value = 0.0;
  bool infinite = false;

  static ExtendedReal finite(double v) { return {v, false}; }
  static ExtendedReal infinity() { return {0.0, true}; }
  bool is_finite() const { return !infinite; }
};

// ===========================================================================
// Divergence kinds
// ===========================================================================

enum class DivergenceKind {
  D0,
  D1_Umegaki,
  D_half,
  Bures,
  L1_JMGK,
  L2_HS_states,
  L2_HS_sqrt,
  WGKL,
};

std::string divergence_kind_name(DivergenceKind kind);
DivergenceKind divergence_kind_from_name(const std::string& name);

// ===========================================================================
// Quantum divergences
// ===========================================================================

// Umegaki form of D1: (tr phi - tr omega) + tr(rho_omega (log rho_omega -
// log rho_phi)) when omega << phi, +infinity otherwise. The linear terms
// vanish for normalized states.
ExtendedReal d1_umegaki(const DensityOperator& omega,
                        const DensityOperator& phi);

// D0(omega, phi) = D1(phi, omega): finite iff phi << omega.
ExtendedReal d0(const DensityOperator& omega, const DensityOperator& phi);

// 2(tr phi + tr omega) - 4 tr(sqrt(rho_phi) sqrt(rho_omega)); equals twice
// the squared HS distance between square roots, so always finite and
// symmetric.
double d_half(const DensityOperator& omega, const DensityOperator& phi);

// Transition probabilities: Raggio tr(sqrt(rho_phi) sqrt(rho_psi)) and
// Cantoni–Uhlmann (tr sqrt(sqrt(rho_phi) rho_psi sqrt(rho_phi)))^2.
double tp_raggio(const DensityOperator& phi, const DensityOperator& psi);
double tp_cu(const DensityOperator& phi, const DensityOperator& psi);

// sqrt(tr phi + tr psi - 2 sqrt(TP_CU)).
double bures(const DensityOperator& phi, const DensityOperator& psi);

// Jauch–Misra–Gibson–Kronfli distance: half the trace norm of the
// difference.
double l1_jmgk(const DensityOperator& phi, const DensityOperator& psi);

// HS distance between the density matrices themselves.
double l2_states(const DensityOperator& phi, const DensityOperator& psi);

// HS distance between the square-root representatives.
double l2_sqrt(const DensityOperator& phi, const DensityOperator& psi);

// ===========================================================================
// Classical divergence
// ===========================================================================

// sum p_i log(p_i / q_i), with 0 log(0/q) = 0 and +infinity when p charges
// a point q does not.
ExtendedReal wgkl(const std::vector<double>& p, const std::vector<double>& q);

// Uniform dispatcher for the quantum kinds (WGKL excluded: different
// signature).
ExtendedReal evaluate_divergence(DivergenceKind kind,
                                 const DensityOperator& omega,
                                 const DensityOperator& phi);

}  // namespace qep

#endif  // QEP_DIVERGENCES_HPP
