#ifndef QEP_SPECTRAL_HPP
#define QEP_SPECTRAL_HPP

#include <Eigen/Dense>
#include <complex>
#include <functional>

#include "qep/tolerances.hpp"

namespace qep {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Complex = std::complex<double>;

// ===========================================================================
// Spectral decomposition
// ===========================================================================

// Eigendecomposition of a Hermitian matrix: eigenvalues ascending, columns of
// `vectors` orthonormal, and each eigenvector's phase fixed so that its first
// component above threshold is real positive. The phase fix makes repeated
// runs on identical inputs bit-identical.
struct SpectralDecomposition {
  RealVector values;
  Matrix vectors;

  Matrix reconstruct() const {
    return vectors * values.asDiagonal() * vectors.adjoint();
  }
};

// Throws NonHermitian if max |H - H^dagger| entry exceeds herm_tol.
SpectralDecomposition eigh(const Matrix& H, double herm_tol = tol::herm);

// ===========================================================================
// Matrix functions restricted to the support
// ===========================================================================

enum class ScalarFunctionKind {
  Log,
  Sqrt,
  Exp,
  Power,           // lambda^t
  ImaginaryPower,  // lambda^{it}, unitary on the support
};

// Applies f to the eigenvalues of A above rank_tol * lambda_max and zeroes
// the rest. Log/Sqrt/Power/ImaginaryPower require A PSD; Exp accepts any
// Hermitian input (its support is then decided by |lambda|).
Matrix fn_on_support(const Matrix& A, ScalarFunctionKind f, double t = 0.0,
                     double rank_tol = tol::rank_tol);

// Orthogonal projector onto the range of a PSD matrix.
Matrix support_projector(const Matrix& A, double rank_tol = tol::rank_tol);

// Rank by the same cutoff convention.
int support_rank(const Matrix& A, double rank_tol = tol::rank_tol);

// Plain matrix functions of a Hermitian argument (no support convention).
Matrix hermitian_exp(const Matrix& H);

// exp(i t K) for Hermitian K; unitary.
Matrix unitary_exp(const Matrix& K, double t = 1.0);

// ===========================================================================
// Frechet derivatives (Daleckii–Krein divided differences)
// ===========================================================================

// Derivative of the matrix function f at A in direction V: in A's eigenbasis
// (Df)_{ij} = V_{ij} * (f(l_i) - f(l_j)) / (l_i - l_j), with f'(l_i) on the
// diagonal and within degenerate clusters. Self-adjoint as a map on Hermitian
// matrices, so it doubles as the gradient adjoint.
Matrix frechet_fn(const Matrix& A, const Matrix& V,
                  const std::function<double(double)>& f,
                  const std::function<double(double)>& df);

// Derivative of log at a strictly positive definite A. Throws SingularInput
// if the smallest eigenvalue is below rank_tol * lambda_max.
Matrix frechet_log(const Matrix& A, const Matrix& V,
                   double rank_tol = tol::rank_tol);

// Derivative of sqrt at a strictly positive definite A.
Matrix frechet_sqrt(const Matrix& A, const Matrix& V,
                    double rank_tol = tol::rank_tol);

// Derivative of exp at a Hermitian A.
Matrix frechet_exp(const Matrix& A, const Matrix& V);

// ===========================================================================
// Norms and inner products
// ===========================================================================

double trace_norm(const Matrix& A);     // sum of singular values
double hs_norm(const Matrix& A);        // Frobenius
double operator_norm(const Matrix& A);  // largest singular value
Complex trace_of(const Matrix& A);
Complex hs_inner(const Matrix& A, const Matrix& B);  // tr(A^dagger B)

bool is_hermitian(const Matrix& A, double tolerance = tol::herm);

}  // namespace qep

#endif  // QEP_SPECTRAL_HPP
