// SPDX-License-Identifier: Apache-2.0
#include "rcs/linalg.hpp"
#include "rcs/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace rcs;

namespace {

Matrix random_symmetric(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double v = rng.normal();
            a.at(i, j) = v;
            a.at(j, i) = v;
        }
    }
    return a;
}

CMatrix random_complex(std::size_t n, std::uint64_t seed) {
    Rng rng(seed);
    CMatrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a.at(i, j) = cplx{rng.normal(), rng.normal()};
    }
    return a;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            worst = std::max(worst, std::abs(a.at(i, j) - b.at(i, j)));
        }
    }
    return worst;
}

} // namespace

TEST_SUITE("linalg") {

TEST_CASE("2x2 analytic eigenvalues") {
    Matrix a(2, 2);
    a.at(0, 0) = 2;
    a.at(0, 1) = 1;
    a.at(1, 0) = 1;
    a.at(1, 1) = 2;
    SymEigen e = sym_eigen(a);
    REQUIRE(e.values.size() == 2);
    CHECK(e.values[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("tridiagonal Toeplitz has closed-form spectrum") {
    // diag 4, off-diag 1, size 3: eigenvalues 4 + 2 cos(k pi / 4), k = 1..3
    Matrix a(3, 3);
    for (int i = 0; i < 3; ++i) a.at(i, i) = 4.0;
    a.at(0, 1) = a.at(1, 0) = a.at(1, 2) = a.at(2, 1) = 1.0;
    SymEigen e = sym_eigen(a);
    CHECK(e.values[0] == doctest::Approx(4.0 - std::sqrt(2.0)).epsilon(1e-12));
    CHECK(e.values[1] == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(e.values[2] == doctest::Approx(4.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("diagonal and rank-one special cases") {
    Matrix d(4, 4);
    d.at(0, 0) = 3;
    d.at(1, 1) = -1;
    d.at(2, 2) = 7;
    d.at(3, 3) = 0.5;
    SymEigen e = sym_eigen(d);
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(0.5));
    CHECK(e.values[2] == doctest::Approx(3.0));
    CHECK(e.values[3] == doctest::Approx(7.0));

    const std::size_t n = 10;
    Matrix ones(n, n, 1.0);
    SymEigen j = sym_eigen(ones);
    for (std::size_t i = 0; i + 1 < n; ++i) CHECK(std::abs(j.values[i]) < 1e-12);
    CHECK(j.values[n - 1] == doctest::Approx(double(n)).epsilon(1e-12));
}

TEST_CASE("random symmetric: residuals, orthogonality, trace") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const std::size_t n = 20;
        Matrix a = random_symmetric(n, seed);
        SymEigen e = sym_eigen(a, true);
        REQUIRE(e.values.size() == n);
        REQUIRE(e.vectors.rows() == n);

        // ascending order
        for (std::size_t i = 0; i + 1 < n; ++i) CHECK(e.values[i] <= e.values[i + 1]);

        // trace preserved
        double tr = 0.0, sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            tr += a.at(i, i);
            sum += e.values[i];
        }
        CHECK(sum == doctest::Approx(tr).epsilon(1e-10));

        // residual ||A v - lambda v|| per pair
        for (std::size_t c = 0; c < n; ++c) {
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double av = 0.0;
                for (std::size_t l = 0; l < n; ++l) av += a.at(i, l) * e.vectors.at(l, c);
                double r = av - e.values[c] * e.vectors.at(i, c);
                acc += r * r;
            }
            CHECK(std::sqrt(acc) < 1e-10);
        }

        // V^T V = I
        for (std::size_t c1 = 0; c1 < n; ++c1) {
            for (std::size_t c2 = c1; c2 < n; ++c2) {
                double dot = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    dot += e.vectors.at(i, c1) * e.vectors.at(i, c2);
                }
                CHECK(std::abs(dot - (c1 == c2 ? 1.0 : 0.0)) < 1e-10);
            }
        }
    }
}

TEST_CASE("identity is a fixed point") {
    SymEigen e = sym_eigen(Matrix::identity(6));
    for (double v : e.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("qr decomposition reconstructs and is unitary") {
    for (std::uint64_t seed : {5ULL, 6ULL}) {
        for (std::size_t n : {1UL, 2UL, 5UL, 8UL}) {
            CMatrix a = random_complex(n, seed + n);
            QrFactors f = qr_decompose(a);
            CHECK(unitarity_defect(f.q) < 1e-12);
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < i; ++j) CHECK(std::abs(f.r.at(i, j)) < 1e-12);
            }
            CHECK(max_abs_diff(multiply(f.q, f.r), a) < 1e-12);
        }
    }
}

TEST_CASE("conjugate transpose reverses products") {
    CMatrix a = random_complex(4, 9), b = random_complex(4, 10);
    CMatrix lhs = conjugate_transpose(multiply(a, b));
    CMatrix rhs = multiply(conjugate_transpose(b), conjugate_transpose(a));
    CHECK(max_abs_diff(lhs, rhs) < 1e-12);
}

TEST_CASE("operator norm reference values") {
    // diagonal: norm = largest |entry|
    CMatrix d(2, 2);
    d.at(0, 0) = cplx{0.0, -4.0};
    d.at(1, 1) = cplx{3.0, 0.0};
    CHECK(operator_norm(d) == doctest::Approx(4.0).epsilon(1e-10));

    // [[1,1],[0,1]] has largest singular value equal to the golden ratio
    CMatrix s(2, 2);
    s.at(0, 0) = 1;
    s.at(0, 1) = 1;
    s.at(1, 1) = 1;
    CHECK(operator_norm(s) == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0).epsilon(1e-10));

    // unitary matrices have norm 1
    QrFactors f = qr_decompose(random_complex(6, 77));
    CHECK(operator_norm(f.q) == doctest::Approx(1.0).epsilon(1e-10));

    // homogeneity
    CMatrix a = random_complex(5, 12);
    double base = operator_norm(a);
    CMatrix scaled = a;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) scaled.at(i, j) *= 2.5;
    }
    CHECK(operator_norm(scaled) == doctest::Approx(2.5 * base).epsilon(1e-10));
}

TEST_CASE("matrix multiply checks shapes") {
    CMatrix a(2, 3), b(2, 2);
    CHECK_THROWS_AS(multiply(a, b), std::invalid_argument);
    CHECK_THROWS_AS(subtract(a, b), std::invalid_argument);
}

} // TEST_SUITE
