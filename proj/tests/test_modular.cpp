#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>
#include <algorithm>
#include <cmath>
#include <vector>

#include "qep/errors.hpp"
#include "qep/modular.hpp"
#include "qep/random.hpp"

using namespace qep;

namespace {

DensityOperator diag_state(double a, double b) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return validate_state(m);
}

}  // namespace

TEST_CASE("vec/unvec round-trip and superoperator action") {
  Rng rng(1);
  const Matrix X = random_hermitian(3, rng);
  CHECK(hs_norm(unvec(vec(X), 3) - X) < 1e-15);

  const Matrix A = random_hermitian(3, rng);
  const Matrix B = random_hermitian(3, rng);
  Superoperator s;
  s.dim = 3;
  s.matrix = Eigen::kroneckerProduct(B.transpose(), A).eval();
  CHECK(hs_norm(s.apply(X) - A * X * B) < 1e-12);
}

TEST_CASE("relative modular operator of the maximally mixed pair") {
  const DensityOperator mixed = diag_state(0.5, 0.5);
  const Superoperator delta = relative_modular(mixed, mixed);
  CHECK(hs_norm(delta.matrix - Matrix::Identity(4, 4)) < 1e-12);
}

TEST_CASE("relative modular spectrum is the eigenvalue-ratio multiset") {
  const double a = 0.7, b = 0.4;
  const Superoperator delta =
      relative_modular(diag_state(a, 1 - a), diag_state(b, 1 - b));
  SpectralDecomposition dec = eigh(delta.matrix);
  std::vector<double> expected{a / b, a / (1 - b), (1 - a) / b,
                               (1 - a) / (1 - b)};
  std::sort(expected.begin(), expected.end());
  for (int i = 0; i < 4; ++i)
    CHECK(dec.values(i) == doctest::Approx(expected[i]).epsilon(1e-10));
}

TEST_CASE("relative modular spectrum on random full-rank pairs") {
  for (int dim : {2, 3, 4}) {
    Rng rng(derive_seed(2, dim));
    for (int t = 0; t < 5; ++t) {
      const DensityOperator phi = random_state(dim, rng);
      const DensityOperator omega = random_state(dim, rng);
      const Superoperator delta = relative_modular(phi, omega);
      const RealVector lp = eigh(phi.matrix).values;
      const RealVector lo = eigh(omega.matrix).values;
      std::vector<double> expected;
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) expected.push_back(lp(i) / lo(j));
      std::sort(expected.begin(), expected.end());
      const RealVector got = eigh(delta.matrix).values;
      for (int k = 0; k < dim * dim; ++k)
        CHECK(std::abs(got(k) - expected[k]) <
              1e-9 * std::max(1.0, expected[k]));
    }
  }
}

TEST_CASE("rank-deficient omega restricts the superoperator support") {
  const DensityOperator omega = diag_state(1, 0);
  const DensityOperator phi = diag_state(0.5, 0.5);
  const Superoperator delta = relative_modular(phi, omega);
  // The pseudo-inverse kills columns outside supp(omega).
  Matrix X = Matrix::Zero(2, 2);
  X(0, 1) = 1.0;
  CHECK(hs_norm(delta.apply(X)) < 1e-12);
  X.setZero();
  X(0, 0) = 1.0;
  CHECK(hs_norm(delta.apply(X) - 0.5 * X) < 1e-12);
}

TEST_CASE("araki_d1: frozen values") {
  Rng rng(3);
  const DensityOperator rho = random_state(3, rng);
  CHECK(araki_d1(rho, rho).value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(araki_d1(diag_state(1, 0), diag_state(0.5, 0.5)).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
  CHECK_FALSE(araki_d1(diag_state(0.5, 0.5), diag_state(1, 0)).is_finite());
}

TEST_CASE("araki_d1 agrees with the Umegaki trace formula") {
  for (int dim : {2, 3, 4}) {
    Rng rng(derive_seed(4, dim));
    for (int t = 0; t < 30; ++t) {
      const DensityOperator omega = random_state(dim, rng);
      const DensityOperator phi = random_state(dim, rng);
      const ExtendedReal a = araki_d1(omega, phi);
      const ExtendedReal u = d1_umegaki(omega, phi);
      REQUIRE(a.is_finite());
      REQUIRE(u.is_finite());
      CHECK(std::abs(a.value - u.value) <= 1e-9);
    }
  }
}

TEST_CASE("araki_d1 agreement for rank-deficient omega << phi") {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const DensityOperator phi = random_state(3, rng);  // full rank
    const Projector P = random_projector(3, 2, rng);
    Matrix M = P.matrix * random_state(3, rng).matrix * P.matrix;
    M /= M.trace().real();
    const DensityOperator omega{0.5 * (M + M.adjoint()), 1.0};
    const ExtendedReal a = araki_d1(omega, phi);
    const ExtendedReal u = d1_umegaki(omega, phi);
    REQUIRE(a.is_finite());
    CHECK(std::abs(a.value - u.value) <= 1e-8);
  }
}

TEST_CASE("cocycle: identity cases") {
  Rng rng(6);
  const DensityOperator rho = random_state(3, rng);
  for (double t : {0.0, 0.4, -1.3}) {
    const CocycleSample u = connes_cocycle(rho, rho, t);
    CHECK(hs_norm(u.matrix - Matrix::Identity(3, 3)) < 1e-10);
  }
  const DensityOperator phi = random_state(3, rng);
  const CocycleSample u0 = connes_cocycle(phi, rho, 0.0);
  CHECK(hs_norm(u0.matrix - Matrix::Identity(3, 3)) < 1e-10);
}

TEST_CASE("cocycle on commuting diagonal states: scalar imaginary powers") {
  const double a = 0.3, b = 0.6, t = 0.9;
  const CocycleSample u =
      connes_cocycle(diag_state(a, 1 - a), diag_state(b, 1 - b), t);
  CHECK(std::abs(u.matrix(0, 0) - std::exp(Complex(0, t * std::log(a / b)))) <
        1e-12);
  CHECK(std::abs(u.matrix(1, 1) -
                 std::exp(Complex(0, t * std::log((1 - a) / (1 - b))))) <
        1e-12);
  CHECK(std::abs(u.matrix(0, 1)) < 1e-14);
}

TEST_CASE("cocycle identity with the modular automorphism") {
  Rng rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityOperator phi = random_state(3, rng);
    const DensityOperator omega = random_state(3, rng);  // faithful
    const double t = 0.37, s = -0.81;
    const Matrix lhs = connes_cocycle(phi, omega, t + s).matrix;
    const Matrix rhs =
        connes_cocycle(phi, omega, t).matrix *
        modular_automorphism(omega, connes_cocycle(phi, omega, s).matrix, t);
    CHECK(hs_norm(lhs - rhs) < 1e-9);
  }
}

TEST_CASE("cocycle chain rule for faithful triples") {
  Rng rng(8);
  for (int trial = 0; trial < 5; ++trial) {
    const DensityOperator phi = random_state(3, rng);
    const DensityOperator psi = random_state(3, rng);
    const DensityOperator omega = random_state(3, rng);
    const double t = 0.53;
    const Matrix chained = connes_cocycle(phi, psi, t).matrix *
                           connes_cocycle(psi, omega, t).matrix;
    CHECK(hs_norm(chained - connes_cocycle(phi, omega, t).matrix) < 1e-9);
  }
}

TEST_CASE("cocycle rejects non-commuting supports") {
  Matrix m0 = Matrix::Zero(2, 2);
  m0(0, 0) = 1.0;
  Matrix mp(2, 2);
  mp << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(connes_cocycle(validate_state(m0), validate_state(mp), 0.5),
                  Error);
}

TEST_CASE("petz limit: zero for identical states") {
  Rng rng(9);
  const DensityOperator rho = random_state(3, rng);
  const PetzResult res = petz_limit_d1(rho, rho);
  // Dividing by t amplifies roundoff to about eps/t_min ~ 1e-11.
  CHECK(std::abs(res.estimate) < 1e-10);
  for (const PetzSample& s : res.samples) CHECK(std::abs(s.value) < 1e-10);
}

TEST_CASE("petz limit: diagonal pair matches the classical divergence") {
  const DensityOperator omega = diag_state(0.3, 0.7);
  const DensityOperator phi = diag_state(0.6, 0.4);
  const PetzResult res = petz_limit_d1(omega, phi);
  const double expected = 0.3 * std::log(0.3 / 0.6) + 0.7 * std::log(0.7 / 0.4);
  CHECK(std::abs(res.estimate - expected) < 1e-6);
}

TEST_CASE("petz limit: random faithful pairs converge, order >= 1") {
  for (int dim : {2, 3}) {
    Rng rng(derive_seed(10, dim));
    for (int t = 0; t < 5; ++t) {
      const DensityOperator omega = random_state(dim, rng);
      const DensityOperator phi = random_state(dim, rng);
      const PetzResult res = petz_limit_d1(omega, phi);
      const double expected = d1_umegaki(omega, phi).value;
      CHECK(std::abs(res.estimate - expected) <= 1e-6);
      CHECK(res.observed_order >= 1.0);
      CHECK(res.samples.back().imag_residual <
            res.samples.front().imag_residual + 1e-12);
    }
  }
}

TEST_CASE("petz limit rejects support violations") {
  const DensityOperator omega = diag_state(0.5, 0.5);
  const DensityOperator phi = diag_state(1, 0);
  CHECK_THROWS_AS(petz_limit_d1(omega, phi), Error);
}
