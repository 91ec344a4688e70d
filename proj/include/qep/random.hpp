#ifndef QEP_RANDOM_HPP
#define QEP_RANDOM_HPP

#include <cstdint>
#include <random>

#include "qep/states.hpp"

namespace qep {

using Rng = std::mt19937_64;

// Stable mixing of a master seed with trial coordinates, so per-trial
// streams are independent and the whole run is reproducible from one seed.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b = 0);

// Haar-distributed unitary (QR of a complex Gaussian with phase-fixed R).
Matrix random_unitary(int dim, Rng& rng);

// Full-rank density matrix from the Hilbert–Schmidt ensemble: G G^dagger
// normalized to unit trace.
DensityOperator random_state(int dim, Rng& rng);

// Rank-one pure state.
DensityOperator random_pure_state(int dim, Rng& rng);
Vector random_unit_vector(int dim, Rng& rng);

// Random Hermitian matrix with independent Gaussian entries.
Matrix random_hermitian(int dim, Rng& rng);

// Random rank-r projector (span of r Haar columns).
Projector random_projector(int dim, int rank, Rng& rng);

// Random orthogonal resolution: Haar basis plus a random partition of the
// index set into `parts` groups (every group nonempty).
OrthogonalResolution random_resolution(int dim, int parts, Rng& rng);

// Flat (Dirichlet(1,...,1)) point on the probability simplex.
std::vector<double> random_simplex(int n, Rng& rng);

}  // namespace qep

#endif  // QEP_RANDOM_HPP
