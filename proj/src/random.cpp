#include "qep/random.hpp"

#include <algorithm>
#include <cmath>

#include "qep/errors.hpp"

namespace qep {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Matrix complex_gaussian(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix G(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      G(i, j) = Complex(re, im);
    }
  return G;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b) {
  return splitmix64(splitmix64(master ^ splitmix64(a)) ^ splitmix64(~b));
}

Matrix random_unitary(int dim, Rng& rng) {
  Matrix G = complex_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<Matrix> qr(G);
  Matrix Q = qr.householderQ();
  Matrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the phase ambiguity so the distribution is Haar.
  for (int k = 0; k < dim; ++k) {
    const Complex r = R(k, k);
    if (std::abs(r) > 0) Q.col(k) *= r / std::abs(r);
  }
  return Q;
}

DensityOperator random_state(int dim, Rng& rng) {
  Matrix G = complex_gaussian(dim, dim, rng);
  Matrix M = G * G.adjoint();
  M /= M.trace().real();
  M = 0.5 * (M + M.adjoint());
  return DensityOperator{M, 1.0};
}

Vector random_unit_vector(int dim, Rng& rng) {
  Matrix g = complex_gaussian(dim, 1, rng);
  Vector v = g.col(0);
  return v / v.norm();
}

DensityOperator random_pure_state(int dim, Rng& rng) {
  Vector v = random_unit_vector(dim, rng);
  Matrix M = v * v.adjoint();
  return DensityOperator{M, 1.0};
}

Matrix random_hermitian(int dim, Rng& rng) {
  Matrix G = complex_gaussian(dim, dim, rng);
  return 0.5 * (G + G.adjoint());
}

Projector random_projector(int dim, int rank, Rng& rng) {
  if (rank < 1 || rank > dim)
    fail(ErrorCode::InvalidInput, "projector rank out of range");
  Matrix U = random_unitary(dim, rng);
  Matrix P = Matrix::Zero(dim, dim);
  for (int k = 0; k < rank; ++k) P += U.col(k) * U.col(k).adjoint();
  return Projector{0.5 * (P + P.adjoint())};
}

OrthogonalResolution random_resolution(int dim, int parts, Rng& rng) {
  if (parts < 1 || parts > dim)
    fail(ErrorCode::InvalidInput, "resolution size out of range");
  Matrix U = random_unitary(dim, rng);
  // Assign each index a group; force the first `parts` indices to distinct
  // groups so none is empty, then shuffle the assignment.
  std::vector<int> assign(dim);
  std::uniform_int_distribution<int> pick(0, parts - 1);
  for (int i = 0; i < dim; ++i) assign[i] = i < parts ? i : pick(rng);
  std::shuffle(assign.begin(), assign.end(), rng);
  std::vector<std::vector<int>> groups(parts);
  for (int i = 0; i < dim; ++i) groups[assign[i]].push_back(i);
  return resolution_from_groups(U, groups);
}

std::vector<double> random_simplex(int n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  double sum = 0.0;
  for (double& x : w) {
    x = expo(rng);
    sum += x;
  }
  for (double& x : w) x /= sum;
  return w;
}

}  // namespace qep
