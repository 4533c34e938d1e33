// SPDX-License-Identifier: Apache-2.0
#include "rcs/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace rcs {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = {1.0, 0.0};
    return m;
}

CMatrix multiply(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("multiply: inner dimensions differ");
    CMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            cplx aik = a.at(i, k);
            if (aik == cplx{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) {
                c.at(i, j) += aik * b.at(k, j);
            }
        }
    }
    return c;
}

CMatrix subtract(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument("subtract: dimension mismatch");
    }
    CMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c.at(i, j) = a.at(i, j) - b.at(i, j);
        }
    }
    return c;
}

CMatrix conjugate_transpose(const CMatrix& a) {
    CMatrix c(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            c.at(j, i) = std::conj(a.at(i, j));
        }
    }
    return c;
}

double unitarity_defect(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("unitarity_defect: square matrix required");
    const std::size_t n = a.rows();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            cplx s{};
            for (std::size_t k = 0; k < n; ++k) s += a.at(i, k) * std::conj(a.at(j, k));
            if (i == j) s -= 1.0;
            worst = std::max(worst, std::abs(s));
        }
    }
    return worst;
}

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form.
// d receives the diagonal, e the subdiagonal (e[0] = 0). When accumulate is
// set, a is replaced by the orthogonal matrix Q with A = Q T Q^t.
void tridiagonalize(Matrix& a, std::vector<double>& d, std::vector<double>& e, bool accumulate) {
    const int n = static_cast<int>(a.rows());
    d.assign(n, 0.0);
    e.assign(n, 0.0);
    if (n == 1) {
        d[0] = a.at(0, 0);
        if (accumulate) a.at(0, 0) = 1.0;
        return;
    }

    for (int i = n - 1; i >= 1; --i) {
        int l = i - 1;
        double h = 0.0, scale = 0.0;
        if (l > 0) {
            for (int k = 0; k <= l; ++k) scale += std::abs(a.at(i, k));
            if (scale == 0.0) {
                e[i] = a.at(i, l);
            } else {
                for (int k = 0; k <= l; ++k) {
                    a.at(i, k) /= scale;
                    h += a.at(i, k) * a.at(i, k);
                }
                double f = a.at(i, l);
                double g = (f >= 0.0) ? -std::sqrt(h) : std::sqrt(h);
                e[i] = scale * g;
                h -= f * g;
                a.at(i, l) = f - g;
                f = 0.0;
                for (int j = 0; j <= l; ++j) {
                    if (accumulate) a.at(j, i) = a.at(i, j) / h;
                    g = 0.0;
                    for (int k = 0; k <= j; ++k) g += a.at(j, k) * a.at(i, k);
                    for (int k = j + 1; k <= l; ++k) g += a.at(k, j) * a.at(i, k);
                    e[j] = g / h;
                    f += e[j] * a.at(i, j);
                }
                double hh = f / (h + h);
                for (int j = 0; j <= l; ++j) {
                    f = a.at(i, j);
                    g = e[j] - hh * f;
                    e[j] = g;
                    for (int k = 0; k <= j; ++k) {
                        a.at(j, k) -= f * e[k] + g * a.at(i, k);
                    }
                }
            }
        } else {
            e[i] = a.at(i, l);
        }
        d[i] = h;
    }

    e[0] = 0.0;
    if (accumulate) {
        d[0] = 0.0;
        for (int i = 0; i < n; ++i) {
            int l = i - 1;
            if (d[i] != 0.0) {
                for (int j = 0; j <= l; ++j) {
                    double g = 0.0;
                    for (int k = 0; k <= l; ++k) g += a.at(i, k) * a.at(k, j);
                    for (int k = 0; k <= l; ++k) a.at(k, j) -= g * a.at(k, i);
                }
            }
            d[i] = a.at(i, i);
            a.at(i, i) = 1.0;
            for (int j = 0; j <= l; ++j) {
                a.at(j, i) = 0.0;
                a.at(i, j) = 0.0;
            }
        }
    } else {
        for (int i = 0; i < n; ++i) d[i] = a.at(i, i);
    }
}

// Implicit-shift QL on a tridiagonal matrix. d/e as produced by
// tridiagonalize; z, when non-null, accumulates the rotations so its columns
// become eigenvectors.
void tridiag_ql(std::vector<double>& d, std::vector<double>& e, Matrix* z) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    for (int i = 1; i < n; ++i) e[i - 1] = e[i];
    e[n - 1] = 0.0;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(e[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (iter++ == 50) {
                    throw std::runtime_error("sym_eigen: QL iteration did not converge");
                }
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
                double s = 1.0, c = 1.0, p = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    if (z) {
                        for (int k = 0; k < n; ++k) {
                            f = z->at(k, i + 1);
                            z->at(k, i + 1) = s * z->at(k, i) + c * f;
                            z->at(k, i) = c * z->at(k, i) - s * f;
                        }
                    }
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= p;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
}

} // namespace

SymEigen sym_eigen(const Matrix& a, bool want_vectors) {
    if (a.rows() != a.cols()) throw std::invalid_argument("sym_eigen: square matrix required");
    if (a.rows() == 0) throw std::invalid_argument("sym_eigen: empty matrix");
    const std::size_t n = a.rows();

    Matrix work = a;
    std::vector<double> d, e;
    tridiagonalize(work, d, e, want_vectors);
    tridiag_ql(d, e, want_vectors ? &work : nullptr);

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });

    SymEigen out;
    out.values.resize(n);
    for (std::size_t j = 0; j < n; ++j) out.values[j] = d[order[j]];
    if (want_vectors) {
        out.vectors = Matrix(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = 0; i < n; ++i) out.vectors.at(i, j) = work.at(i, order[j]);
        }
    }
    return out;
}

QrFactors qr_decompose(const CMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("qr_decompose: square matrix required");
    const std::size_t n = a.rows();
    QrFactors out{CMatrix::identity(n), a};
    CMatrix& q = out.q;
    CMatrix& r = out.r;
    std::vector<cplx> v(n);

    for (std::size_t k = 0; k < n; ++k) {
        double xnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) xnorm2 += std::norm(r.at(i, k));
        if (xnorm2 == 0.0) continue;
        double xnorm = std::sqrt(xnorm2);

        cplx x0 = r.at(k, k);
        double x0abs = std::abs(x0);
        cplx phase = (x0abs == 0.0) ? cplx{1.0, 0.0} : x0 / x0abs;
        cplx alpha = -phase * xnorm;

        double vnorm2 = 0.0;
        for (std::size_t i = k; i < n; ++i) v[i] = r.at(i, k);
        v[k] -= alpha;
        for (std::size_t i = k; i < n; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) continue;

        // R <- (I - 2 v v^H / |v|^2) R on rows k..n-1
        for (std::size_t j = k; j < n; ++j) {
            cplx dot{};
            for (std::size_t i = k; i < n; ++i) dot += std::conj(v[i]) * r.at(i, j);
            cplx f = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < n; ++i) r.at(i, j) -= f * v[i];
        }
        // Q <- Q (I - 2 v v^H / |v|^2) on columns k..n-1
        for (std::size_t i = 0; i < n; ++i) {
            cplx dot{};
            for (std::size_t j = k; j < n; ++j) dot += q.at(i, j) * v[j];
            cplx f = 2.0 * dot / vnorm2;
            for (std::size_t j = k; j < n; ++j) q.at(i, j) -= f * std::conj(v[j]);
        }
    }
    return out;
}

double operator_norm(const CMatrix& a) {
    if (a.rows() == 0 || a.cols() == 0) throw std::invalid_argument("operator_norm: empty matrix");
    const std::size_t c = a.cols();
    // B = A^H A is Hermitian PSD; embed into the real symmetric form
    // [[Re B, -Im B], [Im B, Re B]] whose spectrum equals B's (doubled).
    CMatrix b = multiply(conjugate_transpose(a), a);
    Matrix m(2 * c, 2 * c);
    for (std::size_t i = 0; i < c; ++i) {
        for (std::size_t j = 0; j < c; ++j) {
            double re = b.at(i, j).real();
            double im = b.at(i, j).imag();
            m.at(i, j) = re;
            m.at(i + c, j + c) = re;
            m.at(i, j + c) = -im;
            m.at(i + c, j) = im;
        }
    }
    SymEigen eig = sym_eigen(m, false);
    double top = eig.values.back();
    return std::sqrt(std::max(0.0, top));
}

} // namespace rcs
