// SPDX-License-Identifier: Apache-2.0
#include "rcs/haar.hpp"

#include "rcs/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace rcs {

CMatrix haar_unitary(std::size_t dim, Rng& rng) {
    if (dim < 1) throw std::invalid_argument("haar_unitary: dim must be >= 1");
    CMatrix z(dim, dim);
    const double scale = 1.0 / std::sqrt(2.0);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            z.at(r, c) = cplx{rng.normal() * scale, rng.normal() * scale};
        }
    }
    QrFactors f = qr_decompose(z);
    // Fold the phases of R's diagonal into Q; without this the raw QR output
    // is biased toward the reflector convention rather than Haar.
    CMatrix u = f.q;
    for (std::size_t c = 0; c < dim; ++c) {
        cplx d = f.r.at(c, c);
        double mag = std::abs(d);
        cplx phase = mag > 0.0 ? d / mag : cplx{1.0, 0.0};
        for (std::size_t r = 0; r < dim; ++r) u.at(r, c) *= phase;
    }
    return u;
}

CMatrix haar_unitary(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    return haar_unitary(dim, rng);
}

double unitary_error(const CMatrix& u, const CMatrix& v) {
    if (u.rows() != v.rows() || u.cols() != v.cols()) {
        throw std::invalid_argument("unitary_error: dimension mismatch");
    }
    return operator_norm(subtract(u, v));
}

} // namespace rcs
