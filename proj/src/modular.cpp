#include "qep/modular.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <cmath>

#include "qep/errors.hpp"

namespace qep {

Matrix vec(const Matrix& X) {
  Matrix v(X.size(), 1);
  int k = 0;
  for (int j = 0; j < X.cols(); ++j)
    for (int i = 0; i < X.rows(); ++i) v(k++, 0) = X(i, j);
  return v;
}

Matrix unvec(const Matrix& v, int dim) {
  Matrix X(dim, dim);
  int k = 0;
  for (int j = 0; j < dim; ++j)
    for (int i = 0; i < dim; ++i) X(i, j) = v(k++, 0);
  return X;
}

Matrix Superoperator::apply(const Matrix& X) const {
  return unvec(matrix * vec(X), dim);
}

Superoperator relative_modular(const DensityOperator& phi,
                               const DensityOperator& omega) {
  if (phi.dim() != omega.dim())
    fail(ErrorCode::DimensionMismatch, "relative_modular: dims differ");
  const Matrix inv_omega =
      fn_on_support(omega.matrix, ScalarFunctionKind::Power, -1.0);
  Superoperator s;
  s.dim = phi.dim();
  s.matrix = Eigen::kroneckerProduct(inv_omega.transpose(), phi.matrix).eval();
  return s;
}

ExtendedReal araki_d1(const DensityOperator& omega,
                      const DensityOperator& phi) {
  if (!absolutely_continuous(omega, phi)) return ExtendedReal::infinity();
  const Superoperator delta = relative_modular(phi, omega);
  const Matrix log_delta =
      fn_on_support(delta.matrix, ScalarFunctionKind::Log);
  const Matrix xi = vec(omega.sqrt());
  const double quad = (xi.adjoint() * log_delta * xi)(0, 0).real();
  return ExtendedReal::finite(phi.trace - omega.trace - quad);
}

CocycleSample connes_cocycle(const DensityOperator& phi,
                             const DensityOperator& omega, double t) {
  if (phi.dim() != omega.dim())
    fail(ErrorCode::DimensionMismatch, "connes_cocycle: dims differ");
  const Matrix Pphi = phi.support();
  const Matrix Pomega = omega.support();
  if ((Pphi * Pomega - Pomega * Pphi).cwiseAbs().maxCoeff() > 1e-9)
    fail(ErrorCode::NonCommutingSupports,
         "cocycle needs commuting support projectors");
  const Matrix left =
      fn_on_support(phi.matrix, ScalarFunctionKind::ImaginaryPower, t);
  const Matrix right =
      fn_on_support(omega.matrix, ScalarFunctionKind::ImaginaryPower, -t);
  return CocycleSample{t, left * right};
}

Matrix modular_automorphism(const DensityOperator& omega, const Matrix& x,
                            double t) {
  const Matrix u =
      fn_on_support(omega.matrix, ScalarFunctionKind::ImaginaryPower, t);
  const Matrix u_inv =
      fn_on_support(omega.matrix, ScalarFunctionKind::ImaginaryPower, -t);
  return u * x * u_inv;
}

std::vector<double> default_petz_grid() {
  // 1e-2 ... 1e-5, ratio 10^{-1/2}.
  std::vector<double> grid;
  for (int k = 0; k <= 6; ++k) grid.push_back(std::pow(10.0, -2.0 - 0.5 * k));
  return grid;
}

PetzResult petz_limit_d1(const DensityOperator& omega,
                         const DensityOperator& phi,
                         const std::vector<double>& t_grid) {
  if (!absolutely_continuous(omega, phi))
    fail(ErrorCode::SupportViolation, "petz_limit_d1 needs omega << phi");
  if (t_grid.size() < 3)
    fail(ErrorCode::InvalidInput, "petz_limit_d1 needs at least 3 grid points");
  for (size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] > 0.0) || t_grid[k] >= t_grid[k - 1])
      fail(ErrorCode::InvalidInput, "t_grid must be positive and decreasing");

  PetzResult out;
  for (double t : t_grid) {
    const CocycleSample u = connes_cocycle(phi, omega, t);
    const Complex z = Complex(0.0, 1.0) *
                      ((omega.matrix * u.matrix).trace() - omega.trace) / t;
    out.samples.push_back(PetzSample{t, z.real(), std::abs(z.imag())});
  }

  // Two Richardson levels on the geometric grid: the first assumes a O(t)
  // error, the second O(t^2).
  const size_t m = out.samples.size();
  std::vector<double> level0(m), level1(m - 1), level2;
  for (size_t k = 0; k < m; ++k) level0[k] = out.samples[k].value;
  for (size_t k = 0; k + 1 < m; ++k) {
    const double r = t_grid[k + 1] / t_grid[k];
    level1[k] = (level0[k + 1] - r * level0[k]) / (1.0 - r);
  }
  level2.resize(level1.size() - 1);
  for (size_t k = 0; k + 1 < level1.size(); ++k) {
    const double r = t_grid[k + 2] / t_grid[k + 1];
    const double r2 = r * r;
    level2[k] = (level1[k + 1] - r2 * level1[k]) / (1.0 - r2);
  }
  out.estimate = level2.back();
  out.error_bar = std::abs(level2.back() - level1.back());

  // Observed order: least-squares slope of log|f(t) - estimate| vs log t,
  // ignoring samples already at roundoff level.
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const PetzSample& s : out.samples) {
    const double err = std::abs(s.value - out.estimate);
    if (err < 1e-13) continue;
    const double x = std::log(s.t), y = std::log(err);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  out.observed_order =
      n >= 2 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : 0.0;
  return out;
}

}  // namespace qep
