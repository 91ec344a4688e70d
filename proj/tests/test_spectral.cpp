#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qep/errors.hpp"
#include "qep/random.hpp"
#include "qep/spectral.hpp"

using namespace qep;

namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix diag2(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

}  // namespace

TEST_CASE("eigh identity") {
  const SpectralDecomposition dec = eigh(Matrix::Identity(2, 2));
  CHECK(dec.values(0) == doctest::Approx(1.0));
  CHECK(dec.values(1) == doctest::Approx(1.0));
  CHECK((dec.vectors.adjoint() * dec.vectors - Matrix::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() < 1e-12);
}

TEST_CASE("eigh orders diagonal matrices ascending") {
  const SpectralDecomposition dec = eigh(diag2(2, 1));
  CHECK(dec.values(0) == doctest::Approx(1.0));
  CHECK(dec.values(1) == doctest::Approx(2.0));
}

TEST_CASE("eigh of pauli-x: hand 2x2 eigensolve") {
  const SpectralDecomposition dec = eigh(pauli_x());
  CHECK(dec.values(0) == doctest::Approx(-1.0));
  CHECK(dec.values(1) == doctest::Approx(1.0));
  const double s = 1.0 / std::sqrt(2.0);
  // Phase-fixed columns: (1, -1)/sqrt(2) then (1, 1)/sqrt(2).
  CHECK(std::abs(dec.vectors(0, 0) - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(dec.vectors(1, 0) - Complex(-s, 0)) < 1e-12);
  CHECK(std::abs(dec.vectors(0, 1) - Complex(s, 0)) < 1e-12);
  CHECK(std::abs(dec.vectors(1, 1) - Complex(s, 0)) < 1e-12);
}

TEST_CASE("eigh rejects non-hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(eigh(m), Error);
}

TEST_CASE("reconstruction property on random hermitian matrices") {
  for (int dim = 2; dim <= 8; ++dim) {
    Rng rng(derive_seed(12345, dim));
    for (int t = 0; t < 20; ++t) {
      const Matrix H = random_hermitian(dim, rng);
      const SpectralDecomposition dec = eigh(H);
      CHECK(hs_norm(dec.reconstruct() - H) <= 1e-10 * hs_norm(H));
      CHECK((dec.vectors.adjoint() * dec.vectors -
             Matrix::Identity(dim, dim))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("fn_on_support log zeroes the kernel") {
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 1.0;
  A(1, 1) = std::exp(1.0);
  const Matrix L = fn_on_support(A, ScalarFunctionKind::Log);
  CHECK(std::abs(L(0, 0)) < 1e-12);
  CHECK(std::abs(L(1, 1) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(L(2, 2)) < 1e-12);
}

TEST_CASE("fn_on_support sqrt") {
  const Matrix S = fn_on_support(diag2(4, 0), ScalarFunctionKind::Sqrt);
  CHECK(std::abs(S(0, 0) - Complex(2, 0)) < 1e-12);
  CHECK(std::abs(S(1, 1)) < 1e-12);
}

TEST_CASE("imaginary power of a projector is the projector") {
  for (double t : {0.3, 1.7, -2.5}) {
    const Matrix U =
        fn_on_support(diag2(1, 0), ScalarFunctionKind::ImaginaryPower, t);
    CHECK((U - diag2(1, 0)).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("imaginary power is unitary on the support") {
  Rng rng(7);
  const DensityOperator rho = random_state(4, rng);
  const Matrix U =
      fn_on_support(rho.matrix, ScalarFunctionKind::ImaginaryPower, 0.8);
  CHECK((U * U.adjoint() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <
        1e-10);
}

TEST_CASE("exp-log composition recovers the operator on its support") {
  Rng rng(99);
  for (int t = 0; t < 10; ++t) {
    // Condition number bounded by construction.
    const Matrix U = random_unitary(4, rng);
    Vector ev(4);
    ev << 1.0, 0.03, 2.5, 1e-6;
    const Matrix A = U * ev.asDiagonal() * U.adjoint();
    const Matrix L = fn_on_support(A, ScalarFunctionKind::Log);
    const Matrix back = hermitian_exp(L);
    const Matrix S = support_projector(A);
    CHECK(hs_norm(back * S - A * S) < 1e-9);
  }
}

TEST_CASE("frechet_log at the identity is the identity map") {
  Rng rng(3);
  const Matrix V = random_hermitian(3, rng);
  CHECK(hs_norm(frechet_log(Matrix::Identity(3, 3), V) - V) < 1e-12);
}

TEST_CASE("frechet_log scalar case") {
  Rng rng(4);
  const Matrix V = random_hermitian(2, rng);
  const Matrix A = 0.7 * Matrix::Identity(2, 2);
  CHECK(hs_norm(frechet_log(A, V) - V / 0.7) < 1e-12);
}

TEST_CASE("frechet_log is linear") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const DensityOperator rho = random_state(4, rng);
    const Matrix A = rho.matrix + 0.2 * Matrix::Identity(4, 4);
    const Matrix V = random_hermitian(4, rng);
    const Matrix W = random_hermitian(4, rng);
    const Matrix lhs = frechet_log(A, 0.3 * V + 1.7 * W);
    const Matrix rhs = 0.3 * frechet_log(A, V) + 1.7 * frechet_log(A, W);
    CHECK(hs_norm(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("frechet_log against central finite differences") {
  Rng rng(6);
  for (int t = 0; t < 5; ++t) {
    const DensityOperator rho = random_state(3, rng);
    const Matrix A = rho.matrix + 0.5 * Matrix::Identity(3, 3);
    const Matrix V = random_hermitian(3, rng);
    const Matrix D = frechet_log(A, V);
    for (double h : {1e-4, 1e-5}) {
      const Matrix fd = (fn_on_support(A + h * V, ScalarFunctionKind::Log) -
                         fn_on_support(A - h * V, ScalarFunctionKind::Log)) /
                        (2.0 * h);
      CHECK(hs_norm(fd - D) / hs_norm(D) < 1e-5);
    }
  }
}

TEST_CASE("frechet_log commuting case reduces to V A^{-1}") {
  // A = diag(a, a) gives V / a; checked above. Diagonal A with diagonal V:
  Matrix A = diag2(0.5, 2.0);
  Matrix V = diag2(3.0, -1.0);
  const Matrix D = frechet_log(A, V);
  CHECK(std::abs(D(0, 0) - Complex(6.0, 0)) < 1e-12);
  CHECK(std::abs(D(1, 1) - Complex(-0.5, 0)) < 1e-12);
}

TEST_CASE("frechet_log rejects singular input") {
  CHECK_THROWS_AS(frechet_log(diag2(1, 0), Matrix::Identity(2, 2)), Error);
}

TEST_CASE("norms: frozen values") {
  CHECK(trace_norm(diag2(1, -2)) == doctest::Approx(3.0));
  CHECK(hs_norm(Matrix::Identity(2, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(hs_inner(pauli_x(), pauli_z())) < 1e-14);
  CHECK(operator_norm(diag2(1, -2)) == doctest::Approx(2.0));
  CHECK(trace_of(diag2(1, -2)).real() == doctest::Approx(-1.0));
}

TEST_CASE("norm ordering sanity") {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Matrix H = random_hermitian(4, rng);
    CHECK(trace_norm(H) >= hs_norm(H) - 1e-12);
    CHECK(hs_norm(H) >= operator_norm(H) - 1e-12);
  }
}

TEST_CASE("unitary_exp produces a unitary") {
  Rng rng(9);
  const Matrix K = random_hermitian(3, rng);
  const Matrix U = unitary_exp(K, 0.37);
  CHECK((U * U.adjoint() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() <
        1e-12);
}
