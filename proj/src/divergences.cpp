#include "qep/divergences.hpp"

#include <cmath>

#include "qep/errors.hpp"

namespace qep {

std::string divergence_kind_name(DivergenceKind kind) {
  switch (kind) {
    case DivergenceKind::D0: return "d0";
    case DivergenceKind::D1_Umegaki: return "d1-umegaki";
    case DivergenceKind::D_half: return "d-half";
    case DivergenceKind::Bures: return "bures";
    case DivergenceKind::L1_JMGK: return "l1-jmgk";
    case DivergenceKind::L2_HS_states: return "l2-states";
    case DivergenceKind::L2_HS_sqrt: return "l2-sqrt";
    case DivergenceKind::WGKL: return "wgkl";
  }
  return "unknown";
}

DivergenceKind divergence_kind_from_name(const std::string& name) {
  if (name == "d0") return DivergenceKind::D0;
  if (name == "d1-umegaki") return DivergenceKind::D1_Umegaki;
  if (name == "d-half") return DivergenceKind::D_half;
  if (name == "bures") return DivergenceKind::Bures;
  if (name == "l1-jmgk") return DivergenceKind::L1_JMGK;
  if (name == "l2-states") return DivergenceKind::L2_HS_states;
  if (name == "l2-sqrt") return DivergenceKind::L2_HS_sqrt;
  if (name == "wgkl") return DivergenceKind::WGKL;
  fail(ErrorCode::InvalidInput, "unknown divergence kind '" + name + "'");
}

ExtendedReal d1_umegaki(const DensityOperator& omega,
                        const DensityOperator& phi) {
  if (omega.dim() != phi.dim())
    fail(ErrorCode::DimensionMismatch, "d1_umegaki: dims differ");
  if (!absolutely_continuous(omega, phi)) return ExtendedReal::infinity();
  const Matrix log_omega = omega.log_on_support();
  const Matrix log_phi = phi.log_on_support();
  // omega << phi, so log_phi's kernel never meets omega's support and the
  // support-restricted logs give the exact trace functional.
  const double kernel =
      (omega.matrix * (log_omega - log_phi)).trace().real();
  return ExtendedReal::finite(phi.trace - omega.trace + kernel);
}

ExtendedReal d0(const DensityOperator& omega, const DensityOperator& phi) {
  return d1_umegaki(phi, omega);
}

double d_half(const DensityOperator& omega, const DensityOperator& phi) {
  if (omega.dim() != phi.dim())
    fail(ErrorCode::DimensionMismatch, "d_half: dims differ");
  const double cross = (phi.sqrt() * omega.sqrt()).trace().real();
  return 2.0 * (phi.trace + omega.trace) - 4.0 * cross;
}

double tp_raggio(const DensityOperator& phi, const DensityOperator& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimensionMismatch, "tp_raggio: dims differ");
  return (phi.sqrt() * psi.sqrt()).trace().real();
}

double tp_cu(const DensityOperator& phi, const DensityOperator& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimensionMismatch, "tp_cu: dims differ");
  const Matrix sphi = phi.sqrt();
  const Matrix M = sphi * psi.matrix * sphi;
  const double root_fidelity =
      fn_on_support(M, ScalarFunctionKind::Sqrt).trace().real();
  return root_fidelity * root_fidelity;
}

double bures(const DensityOperator& phi, const DensityOperator& psi) {
  const double inside =
      phi.trace + psi.trace - 2.0 * std::sqrt(std::max(0.0, tp_cu(phi, psi)));
  return std::sqrt(std::max(0.0, inside));
}

double l1_jmgk(const DensityOperator& phi, const DensityOperator& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimensionMismatch, "l1_jmgk: dims differ");
  return 0.5 * trace_norm(phi.matrix - psi.matrix);
}

double l2_states(const DensityOperator& phi, const DensityOperator& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimensionMismatch, "l2_states: dims differ");
  return hs_norm(phi.matrix - psi.matrix);
}

double l2_sqrt(const DensityOperator& phi, const DensityOperator& psi) {
  if (phi.dim() != psi.dim())
    fail(ErrorCode::DimensionMismatch, "l2_sqrt: dims differ");
  return hs_norm(phi.sqrt() - psi.sqrt());
}

ExtendedReal wgkl(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size())
    fail(ErrorCode::LengthMismatch, "wgkl: lengths differ");
  double sum = 0.0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0)
      fail(ErrorCode::InvalidInput, "wgkl: negative entry");
    if (p[i] <= 0.0) continue;  // 0 log(0/q) = 0
    if (q[i] <= 0.0) return ExtendedReal::infinity();
    sum += p[i] * std::log(p[i] / q[i]);
  }
  return ExtendedReal::finite(sum);
}

ExtendedReal evaluate_divergence(DivergenceKind kind,
                                 const DensityOperator& omega,
                                 const DensityOperator& phi) {
  switch (kind) {
    case DivergenceKind::D0: return d0(omega, phi);
    case DivergenceKind::D1_Umegaki: return d1_umegaki(omega, phi);
    case DivergenceKind::D_half:
      return ExtendedReal::finite(d_half(omega, phi));
    case DivergenceKind::Bures:
      return ExtendedReal::finite(bures(omega, phi));
    case DivergenceKind::L1_JMGK:
      return ExtendedReal::finite(l1_jmgk(omega, phi));
    case DivergenceKind::L2_HS_states:
      return ExtendedReal::finite(l2_states(omega, phi));
    case DivergenceKind::L2_HS_sqrt:
      return ExtendedReal::finite(l2_sqrt(omega, phi));
    case DivergenceKind::WGKL:
      fail(ErrorCode::InvalidInput,
           "wgkl takes probability vectors, not operators");
  }
  fail(ErrorCode::InvalidInput, "unhandled divergence kind");
}

}  // namespace qep
