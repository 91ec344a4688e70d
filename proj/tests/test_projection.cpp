#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qep/divergences.hpp"
#include "qep/errors.hpp"
#include "qep/projection.hpp"
#include "qep/random.hpp"
#include "qep/rules.hpp"

using namespace qep;

namespace {

double tdist(const DensityOperator& a, const DensityOperator& b) {
  return 0.5 * trace_norm(a.matrix - b.matrix);
}

DensityOperator plus_state() {
  Matrix m(2, 2);
  m << 0.5, 0.5, 0.5, 0.5;
  return validate_state(m);
}

// Closed form for the D_half projection onto a commutant: normalize the
// squared pinching of sqrt(psi).
DensityOperator sqrt_pinch_state(const DensityOperator& psi,
                                 const OrthogonalResolution& R) {
  const Matrix Y = pinch(psi.sqrt(), R);
  Matrix M = Y * Y;
  M /= M.trace().real();
  return DensityOperator{0.5 * (M + M.adjoint()), 1.0};
}

// Closed form for the D1 projection onto a commutant: the Gibbs state of
// the pinched logarithm.
DensityOperator log_pinch_state(const DensityOperator& psi,
                                const OrthogonalResolution& R) {
  const Matrix L = pinch(psi.log_on_support(), R);
  Matrix M = hermitian_exp(L);
  M /= M.trace().real();
  return DensityOperator{0.5 * (M + M.adjoint()), 1.0};
}

}  // namespace

TEST_CASE("D0/QL: state already in the commutant is its own projection") {
  const OrthogonalResolution R = computational_resolution(2);
  const DensityOperator psi =
      validate_state((Matrix(2, 2) << 0.3, 0, 0, 0.7).finished());
  const ProjectionResult res =
      entropic_project(DivergenceKind::D0, psi, CommutantQL{R});
  CHECK(res.converged);
  CHECK(tdist(res.minimizer, psi) < 1e-8);
  CHECK(res.objective.value < 1e-10);
}

TEST_CASE("D0/QL: |+><+| projects to the maximally mixed state") {
  const OrthogonalResolution R = computational_resolution(2);
  const ProjectionResult res =
      entropic_project(DivergenceKind::D0, plus_state(), CommutantQL{R});
  CHECK(res.converged);
  CHECK(tdist(res.minimizer,
              validate_state(0.5 * Matrix::Identity(2, 2))) < 1e-7);
}

TEST_CASE("D0/QqJ: |+><+| with weights (0.3, 0.7)") {
  const OrthogonalResolution R = computational_resolution(2);
  const TracePinnedQqJ K{R, validate_weights({0.3, 0.7})};
  const ProjectionResult res =
      entropic_project(DivergenceKind::D0, plus_state(), K);
  CHECK(res.converged);
  CHECK(tdist(res.minimizer, validate_state((Matrix(2, 2) << 0.3, 0, 0, 0.7)
                                                .finished())) < 1e-7);
}

TEST_CASE("D0/QL equals pinching on random instances") {
  for (int dim : {2, 3, 4}) {
    Rng rng(derive_seed(100, dim));
    for (int t = 0; t < 5; ++t) {
      const DensityOperator psi = random_state(dim, rng);
      std::uniform_int_distribution<int> parts(2, dim);
      const OrthogonalResolution R = random_resolution(dim, parts(rng), rng);
      SolverConfig cfg;
      cfg.seed = derive_seed(100, dim, t);
      const ProjectionResult res =
          entropic_project(DivergenceKind::D0, psi, CommutantQL{R}, cfg);
      CHECK(res.converged);
      CHECK(tdist(res.minimizer, weak_lueders(psi, R)) < 1e-7);
    }
  }
}

TEST_CASE("D0/QqJ equals the quantum Jeffrey rule on random instances") {
  for (int dim : {2, 3, 4}) {
    Rng rng(derive_seed(200, dim));
    for (int t = 0; t < 5; ++t) {
      const DensityOperator psi = random_state(dim, rng);
      std::uniform_int_distribution<int> parts(2, dim);
      const int n = parts(rng);
      const OrthogonalResolution R = random_resolution(dim, n, rng);
      std::vector<double> lam = random_simplex(n, rng);
      for (double& l : lam) l = 0.05 + (1.0 - 0.05 * n) * l;
      const JeffreyWeights w = validate_weights(lam);
      SolverConfig cfg;
      cfg.seed = derive_seed(200, dim, t);
      const ProjectionResult res = entropic_project(
          DivergenceKind::D0, psi, TracePinnedQqJ{R, w}, cfg);
      CHECK(res.converged);
      CHECK(tdist(res.minimizer, quantum_jeffrey(psi, R, w)) < 1e-7);
    }
  }
}

TEST_CASE("D1/QL converges to the Gibbs state of the pinched logarithm") {
  Rng rng(300);
  for (int t = 0; t < 5; ++t) {
    const DensityOperator psi = random_state(3, rng);
    const OrthogonalResolution R = random_resolution(3, 2, rng);
    const ProjectionResult res =
        entropic_project(DivergenceKind::D1_Umegaki, psi, CommutantQL{R});
    CHECK(res.converged);
    CHECK(tdist(res.minimizer, log_pinch_state(psi, R)) < 1e-7);
  }
}

TEST_CASE("Herbut: L2 projection onto a commutant is the pinching") {
  Rng rng(400);
  for (int t = 0; t < 5; ++t) {
    const DensityOperator psi = random_state(4, rng);
    const OrthogonalResolution R = random_resolution(4, 3, rng);
    const ProjectionResult res =
        entropic_project(DivergenceKind::L2_HS_states, psi, CommutantQL{R});
    CHECK(res.converged);
    CHECK(tdist(res.minimizer, weak_lueders(psi, R)) < 1e-7);
  }
}

TEST_CASE("D_half/QL converges to the normalized squared sqrt-pinching") {
  Rng rng(500);
  for (int t = 0; t < 5; ++t) {
    const DensityOperator psi = random_state(3, rng);
    const OrthogonalResolution R = random_resolution(3, 2, rng);
    const ProjectionResult res =
        entropic_project(DivergenceKind::D_half, psi, CommutantQL{R});
    CHECK(res.converged);
    CHECK(tdist(res.minimizer, sqrt_pinch_state(psi, R)) < 1e-7);
    // Same minimizer through the L2_HS_sqrt kind.
    const ProjectionResult res2 =
        entropic_project(DivergenceKind::L2_HS_sqrt, psi, CommutantQL{R});
    CHECK(tdist(res2.minimizer, res.minimizer) < 1e-7);
  }
}

TEST_CASE("Bures/face: fidelity ascent recovers the strong Lueders state") {
  Rng rng(600);
  for (int t = 0; t < 5; ++t) {
    const DensityOperator psi = random_state(3, rng);
    const Projector P = random_projector(3, 2, rng);
    const ProjectionResult res =
        entropic_project(DivergenceKind::Bures, psi, FaceQsL{P});
    CHECK(tdist(res.minimizer, strong_lueders(psi, P)) < 1e-6);
  }
}

TEST_CASE("D0 onto a face that cannot dominate psi is infinite") {
  Rng rng(700);
  const DensityOperator psi = random_state(3, rng);  // full rank
  const Projector P = random_projector(3, 2, rng);
  CHECK_THROWS_AS(entropic_project(DivergenceKind::D0, psi, FaceQsL{P}),
                  Error);
}

TEST_CASE("regularized D0^P: value vanishes only at the compressed state") {
  Rng rng(800);
  const Projector P = random_projector(4, 2, rng);
  const Matrix B = range_isometry(P);
  Rng rng2(801);
  const DensityOperator inner = random_state(2, rng2);
  Matrix M = B * inner.matrix * B.adjoint();
  const DensityOperator psi = validate_state(0.5 * (M + M.adjoint()));
  CHECK(regularized_d0P(psi, psi, P).value ==
        doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("regularized D0^P: minimizer equals the strong Lueders update") {
  for (int dim : {3, 4}) {
    Rng rng(derive_seed(900, dim));
    for (int t = 0; t < 5; ++t) {
      const DensityOperator psi = random_state(dim, rng);
      std::uniform_int_distribution<int> rank(1, dim - 1);
      const Projector P = random_projector(dim, rank(rng), rng);
      const ProjectionResult res = project_regularized_d0(psi, P);
      CHECK(res.converged);
      CHECK(tdist(res.minimizer, strong_lueders(psi, P)) < 1e-7);
    }
  }
}

TEST_CASE("rank-1 face is a single point; the oracle returns it exactly") {
  const DensityOperator psi = plus_state();
  Matrix pm = Matrix::Zero(2, 2);
  pm(0, 0) = 1.0;
  const Projector P = validate_projector(pm);
  const ProjectionResult res = project_regularized_d0(psi, P);
  CHECK(tdist(res.minimizer, validate_state(pm)) < 1e-9);
  const ProjectionResult oracle =
      sampling_oracle(DivergenceKind::L2_HS_states, psi, FaceQsL{P}, 100, 7);
  CHECK(tdist(oracle.minimizer, validate_state(pm)) < 1e-12);
}

TEST_CASE("triangle residual: frozen cases and the Pythagorean identity") {
  Rng rng(1100);
  const DensityOperator psi = random_state(3, rng);
  const DensityOperator rho = random_state(3, rng);
  CHECK(triangle_residual(DivergenceKind::D0, rho, rho, psi) < 1e-12);
  CHECK(triangle_residual(DivergenceKind::D0, rho, rho, rho) < 1e-12);

  // D0(phi,psi) = D0(phi,rho*) + D0(rho*,psi) for rho* = pinching(psi) and
  // every feasible phi.
  for (int t = 0; t < 10; ++t) {
    const DensityOperator psi2 = random_state(3, rng);
    const OrthogonalResolution R = random_resolution(3, 2, rng);
    const DensityOperator rho_star = weak_lueders(psi2, R);
    DensityOperator phi = weak_lueders(random_state(3, rng), R);
    CHECK(triangle_residual(DivergenceKind::D0, phi, rho_star, psi2) < 1e-9);
  }
}

TEST_CASE("triangle residual rejects infinite divergences") {
  const DensityOperator pure =
      validate_state((Matrix(2, 2) << 1, 0, 0, 0).finished());
  const DensityOperator mixed = validate_state(0.5 * Matrix::Identity(2, 2));
  CHECK_THROWS_AS(
      triangle_residual(DivergenceKind::D0, pure, mixed, mixed), Error);
}

TEST_CASE("sequential projection: iterated equals joint, order-independent") {
  Rng rng(1200);
  for (int t = 0; t < 4; ++t) {
    const DensityOperator psi = random_state(3, rng);
    // Two commutant constraints sharing an eigenbasis: projectors commute.
    const Matrix U = random_unitary(3, rng);
    const OrthogonalResolution R1 = resolution_from_groups(U, {{0, 1}, {2}});
    const OrthogonalResolution R2 = resolution_from_groups(U, {{0}, {1, 2}});
    const ConstraintSet K1 = CommutantQL{R1};
    const ConstraintSet K2 = CommutantQL{R2};

    const DensityOperator seq12 =
        sequential_projection(psi, {K1, K2}, DivergenceKind::D0);
    const DensityOperator seq21 =
        sequential_projection(psi, {K2, K1}, DivergenceKind::D0);
    const ConstraintSet joint =
        intersect_commutants(CommutantQL{R1}, CommutantQL{R2});
    const ProjectionResult res =
        entropic_project(DivergenceKind::D0, psi, joint);
    CHECK(tdist(seq12, res.minimizer) < 1e-6);
    CHECK(tdist(seq12, seq21) < 1e-7);
  }
}

TEST_CASE("solver objective is monotone across accepted iterations") {
  Rng rng(1300);
  const DensityOperator psi = random_state(4, rng);
  const OrthogonalResolution R = random_resolution(4, 2, rng);
  SolverConfig cfg;
  cfg.record_trace = true;
  const ProjectionResult res =
      entropic_project(DivergenceKind::D0, psi, CommutantQL{R}, cfg);
  REQUIRE(res.objective_trace.size() > 2);
  for (size_t i = 1; i < res.objective_trace.size(); ++i)
    CHECK(res.objective_trace[i] <= res.objective_trace[i - 1] + 1e-15);
}

TEST_CASE("uniqueness probe: independent initializations agree") {
  Rng rng(1400);
  for (int t = 0; t < 3; ++t) {
    const DensityOperator psi = random_state(4, rng);
    const OrthogonalResolution R = random_resolution(4, 3, rng);
    SolverConfig a, b;
    a.seed = 1;
    a.restarts = 2;  // second start is random
    b.seed = 999 + t;
    b.restarts = 2;
    const ProjectionResult ra =
        entropic_project(DivergenceKind::D0, psi, CommutantQL{R}, a);
    const ProjectionResult rb =
        entropic_project(DivergenceKind::D0, psi, CommutantQL{R}, b);
    CHECK(tdist(ra.minimizer, rb.minimizer) < 1e-6);
  }
}

TEST_CASE("sampling oracle never beats the solver by more than 1e-4") {
  Rng rng(1500);
  for (int t = 0; t < 3; ++t) {
    const int dim = 2 + t;
    const DensityOperator psi = random_state(dim, rng);
    const OrthogonalResolution R =
        random_resolution(dim, std::min(2 + t % 2, dim), rng);
    const ConstraintSet K = CommutantQL{R};
    const ProjectionResult solver =
        entropic_project(DivergenceKind::D0, psi, K);
    const ProjectionResult oracle =
        sampling_oracle(DivergenceKind::D0, psi, K, 20000, 17 + t);
    REQUIRE(solver.objective.is_finite());
    REQUIRE(oracle.objective.is_finite());
    CHECK(oracle.objective.value >= solver.objective.value - 1e-4);
    CHECK(oracle.objective.value <= solver.objective.value + 1e-2);
  }
}

TEST_CASE("L1 projection routes through the sampling oracle") {
  Rng rng(1600);
  const DensityOperator psi = random_pure_state(3, rng);
  const Projector P = random_projector(3, 2, rng);
  SolverConfig cfg;
  cfg.oracle_budget = 20000;
  cfg.seed = 3;
  const ProjectionResult res =
      entropic_project(DivergenceKind::L1_JMGK, psi, FaceQsL{P}, cfg);
  // Hadjisavvas: for pure psi the minimizer is the strong Lueders update.
  CHECK(tdist(res.minimizer, strong_lueders(psi, P)) < 1e-3);
}
