// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace rcs {

/// Dense row-major real matrix. Only what the pipelines need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class CMatrix {
public:
    CMatrix() = default;
    CMatrix(std::size_t rows, std::size_t cols, cplx fill = {})
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static CMatrix identity(std::size_t n);

    cplx& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    cplx at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<cplx> data_;
};

CMatrix multiply(const CMatrix& a, const CMatrix& b);
CMatrix subtract(const CMatrix& a, const CMatrix& b);
CMatrix conjugate_transpose(const CMatrix& a);

/// max |(A A^dag - I)_ij| — zero for a unitary matrix.
double unitarity_defect(const CMatrix& a);

struct SymEigen {
    std::vector<double> values; // ascending
    Matrix vectors;             // column j pairs with values[j]; empty unless requested
};

/// Eigendecomposition of a real symmetric matrix: Householder reduction to
/// tridiagonal form followed by implicit-shift QL. Throws std::runtime_error
/// if an eigenvalue fails to converge within the iteration cap.
SymEigen sym_eigen(const Matrix& a, bool want_vectors = false);

struct QrFactors {
    CMatrix q; // unitary
    CMatrix r; // upper triangular
};

/// Householder QR of a square complex matrix, A = Q R.
QrFactors qr_decompose(const CMatrix& a);

/// Largest singular value of a complex matrix (operator norm).
double operator_norm(const CMatrix& a);

} // namespace rcs
