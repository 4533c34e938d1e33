// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rcs/linalg.hpp"

#include <cstddef>
#include <cstdint>

namespace rcs {

/// Haar-distributed unitary of the given dimension: QR of a complex Ginibre
/// matrix with the diagonal-phase correction that makes the factorization
/// unique (and the measure right).
CMatrix haar_unitary(std::size_t dim, std::uint64_t seed);
CMatrix haar_unitary(std::size_t dim, class Rng& rng);

/// Largest singular value of U - V; the worst-case amplitude deflection any
/// state can see between the two operators. Output probabilities then differ
/// by at most twice this number.
double unitary_error(const CMatrix& u, const CMatrix& v);

} // namespace rcs
