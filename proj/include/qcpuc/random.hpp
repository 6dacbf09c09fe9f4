#pragma once

#include <cstdint>
#include <random>

#include "qcpuc/channels.hpp"

namespace qcpuc {

using Rng = std::mt19937_64;

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phase-fixed).
ComplexMatrix random_unitary(int dim, Rng& rng);

/// Random state of the given rank (rank <= dim); full rank by default.
DensityMatrix random_density_matrix(int dim, Rng& rng, int rank = -1);

/// Random CPTP map from a Haar-random isometry dim_in -> dim_out * n_kraus.
KrausChannel random_channel(int dim_in, int dim_out, int n_kraus, Rng& rng);

}  // namespace qcpuc
