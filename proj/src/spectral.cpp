#include "qep/spectral.hpp"

#include <cmath>

#include "qep/errors.hpp"

namespace qep {

bool is_hermitian(const Matrix& A, double tolerance) {
  if (A.rows() != A.cols()) return false;
  return (A - A.adjoint()).cwiseAbs().maxCoeff() <= tolerance;
}

SpectralDecomposition eigh(const Matrix& H, double herm_tol) {
  if (H.rows() != H.cols())
    fail(ErrorCode::DimensionMismatch, "eigh expects a square matrix");
  const double dev = (H - H.adjoint()).cwiseAbs().maxCoeff();
  if (dev > herm_tol)
    fail(ErrorCode::NonHermitian,
         "max |H - H^dagger| = " + std::to_string(dev));

  // Symmetrize so roundoff in the input cannot leak into the solver.
  Matrix Hs = 0.5 * (H + H.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(Hs);
  SpectralDecomposition out;
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();

  // Phase fixing: rotate each column so its first nonzero component is real
  // positive. Unit columns always have a component >= 1/sqrt(d), so the
  // threshold only skips genuine zeros.
  const int d = static_cast<int>(out.vectors.rows());
  for (int k = 0; k < d; ++k) {
    int lead = 0;
    while (lead < d - 1 && std::abs(out.vectors(lead, k)) < 1e-8) ++lead;
    const Complex z = out.vectors(lead, k);
    if (std::abs(z) > 0) out.vectors.col(k) *= std::conj(z) / std::abs(z);
  }
  return out;
}

namespace {

void require_psd(const RealVector& values, const char* who) {
  if (values.size() > 0 && values.minCoeff() < -tol::psd)
    fail(ErrorCode::NotPSD, std::string(who) + ": min eigenvalue " +
                                std::to_string(values.minCoeff()));
}

}  // namespace

Matrix fn_on_support(const Matrix& A, ScalarFunctionKind f, double t,
                     double rank_tol) {
  SpectralDecomposition dec = eigh(A);
  const int d = static_cast<int>(dec.values.size());
  if (f != ScalarFunctionKind::Exp) require_psd(dec.values, "fn_on_support");

  const double lead = dec.values.cwiseAbs().maxCoeff();
  const double cutoff = rank_tol * lead;
  Vector fv = Vector::Zero(d);
  for (int i = 0; i < d; ++i) {
    const double lam = dec.values(i);
    const bool live = (f == ScalarFunctionKind::Exp) ? std::abs(lam) > cutoff
                                                     : lam > cutoff;
    if (!live) continue;
    switch (f) {
      case ScalarFunctionKind::Log: fv(i) = std::log(lam); break;
      case ScalarFunctionKind::Sqrt: fv(i) = std::sqrt(lam); break;
      case ScalarFunctionKind::Exp: fv(i) = std::exp(lam); break;
      case ScalarFunctionKind::Power: fv(i) = std::pow(lam, t); break;
      case ScalarFunctionKind::ImaginaryPower:
        fv(i) = std::exp(Complex(0.0, t * std::log(lam)));
        break;
    }
  }
  return dec.vectors * fv.asDiagonal() * dec.vectors.adjoint();
}

Matrix support_projector(const Matrix& A, double rank_tol) {
  SpectralDecomposition dec = eigh(A);
  require_psd(dec.values, "support_projector");
  const double cutoff = rank_tol * dec.values.cwiseAbs().maxCoeff();
  Matrix P = Matrix::Zero(A.rows(), A.cols());
  for (int i = 0; i < dec.values.size(); ++i)
    if (dec.values(i) > cutoff)
      P += dec.vectors.col(i) * dec.vectors.col(i).adjoint();
  return P;
}

int support_rank(const Matrix& A, double rank_tol) {
  SpectralDecomposition dec = eigh(A);
  require_psd(dec.values, "support_rank");
  const double cutoff = rank_tol * dec.values.cwiseAbs().maxCoeff();
  int r = 0;
  for (int i = 0; i < dec.values.size(); ++i)
    if (dec.values(i) > cutoff) ++r;
  return r;
}

Matrix hermitian_exp(const Matrix& H) {
  SpectralDecomposition dec = eigh(H);
  Vector ev = dec.values.array().exp().matrix().cast<Complex>();
  return dec.vectors * ev.asDiagonal() * dec.vectors.adjoint();
}

Matrix unitary_exp(const Matrix& K, double t) {
  SpectralDecomposition dec = eigh(K);
  Vector ph(dec.values.size());
  for (int i = 0; i < dec.values.size(); ++i)
    ph(i) = std::exp(Complex(0.0, t * dec.values(i)));
  return dec.vectors * ph.asDiagonal() * dec.vectors.adjoint();
}

Matrix frechet_fn(const Matrix& A, const Matrix& V,
                  const std::function<double(double)>& f,
                  const std::function<double(double)>& df) {
  if (A.rows() != V.rows() || A.cols() != V.cols())
    fail(ErrorCode::DimensionMismatch, "frechet_fn: A and V sizes differ");
  SpectralDecomposition dec = eigh(A);
  const int d = static_cast<int>(dec.values.size());
  Matrix Vt = dec.vectors.adjoint() * V * dec.vectors;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double li = dec.values(i), lj = dec.values(j);
      // First divided difference; collapse to f' on near-degenerate pairs to
      // avoid catastrophic cancellation.
      const double gap = li - lj;
      const double scale = std::max(std::abs(li), std::abs(lj));
      double k;
      if (std::abs(gap) <= 1e-10 * std::max(1.0, scale))
        k = df(0.5 * (li + lj));
      else
        k = (f(li) - f(lj)) / gap;
      Vt(i, j) *= k;
    }
  }
  return dec.vectors * Vt * dec.vectors.adjoint();
}

namespace {

void require_strictly_pd(const Matrix& A, double rank_tol, const char* who) {
  SpectralDecomposition dec = eigh(A);
  require_psd(dec.values, who);
  const double lead = dec.values.cwiseAbs().maxCoeff();
  if (dec.values.minCoeff() <= rank_tol * lead)
    fail(ErrorCode::SingularInput,
         std::string(who) + ": matrix not strictly positive definite");
}

}  // namespace

Matrix frechet_log(const Matrix& A, const Matrix& V, double rank_tol) {
  require_strictly_pd(A, rank_tol, "frechet_log");
  return frechet_fn(
      A, V, [](double x) { return std::log(x); },
      [](double x) { return 1.0 / x; });
}

Matrix frechet_sqrt(const Matrix& A, const Matrix& V, double rank_tol) {
  require_strictly_pd(A, rank_tol, "frechet_sqrt");
  return frechet_fn(
      A, V, [](double x) { return std::sqrt(x); },
      [](double x) { return 0.5 / std::sqrt(x); });
}

Matrix frechet_exp(const Matrix& A, const Matrix& V) {
  return frechet_fn(
      A, V, [](double x) { return std::exp(x); },
      [](double x) { return std::exp(x); });
}

double trace_norm(const Matrix& A) {
  if (is_hermitian(A, 1e-12)) {
    // Hermitian case: sum of |eigenvalues|, cheaper and more accurate.
    return eigh(A, 1e-11).values.cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues().sum();
}

double hs_norm(const Matrix& A) { return A.norm(); }

double operator_norm(const Matrix& A) {
  Eigen::JacobiSVD<Matrix> svd(A);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

Complex trace_of(const Matrix& A) { return A.trace(); }

Complex hs_inner(const Matrix& A, const Matrix& B) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    fail(ErrorCode::DimensionMismatch, "hs_inner: sizes differ");
  return (A.adjoint() * B).trace();
}

}  // namespace qep
