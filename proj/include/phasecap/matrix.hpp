/*
 * Copyright 2026 the phasecap authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "phasecap/errors.hpp"

namespace phasecap {

/// Dense real matrix, row-major. Sized for desk-scale problems; no view
/// or expression machinery, every operation returns a fresh value.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& rhs) const {
        if (cols_ != rhs.rows_)
            throw BadInputError("matrix product dimension mismatch");
        Matrix out(rows_, rhs.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const double a = (*this)(i, k);
                if (a == 0.0) continue;
                for (std::size_t j = 0; j < rhs.cols_; ++j) out(i, j) += a * rhs(k, j);
            }
        return out;
    }

    std::vector<double> operator*(const std::vector<double>& v) const {
        if (cols_ != v.size())
            throw BadInputError("matrix-vector dimension mismatch");
        std::vector<double> out(rows_, 0.0);
        for (std::size_t i = 0; i < rows_; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < cols_; ++j) acc += (*this)(i, j) * v[j];
            out[i] = acc;
        }
        return out;
    }

    Matrix operator+(const Matrix& rhs) const {
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += rhs.data_[i];
        return out;
    }

    Matrix operator-(const Matrix& rhs) const {
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= rhs.data_[i];
        return out;
    }

    Matrix scaled(double s) const {
        Matrix out = *this;
        for (double& x : out.data_) x *= s;
        return out;
    }

    /// Largest absolute entry.
    double max_abs() const {
        double m = 0.0;
        for (double x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    double trace() const {
        double t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

inline Matrix matrix_from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw BadInputError("matrix needs at least one row");
    Matrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size())
            throw BadInputError("ragged matrix rows");
        for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

namespace tol {
inline constexpr double symmetry = 1e-10;      // relative, |a_ij - a_ji| vs max entry
inline constexpr double positivity = 1e-12;    // relative eigenvalue floor
inline constexpr double pairing = 1e-8;        // relative, doubled symplectic pairs
} // namespace tol

/// Real symmetric matrix. Construction rejects inputs whose asymmetry
/// exceeds the relative tolerance and then symmetrizes as (A + A^T)/2,
/// so downstream factorizations never see representation noise.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(Matrix a, double sym_tol = tol::symmetry) : mat_(std::move(a)) {
        if (!mat_.square() || mat_.rows() == 0)
            throw NonSymmetricError("symmetric matrix must be square with dim >= 1");
        const double scale = mat_.max_abs();
        for (std::size_t i = 0; i < mat_.rows(); ++i)
            for (std::size_t j = i + 1; j < mat_.cols(); ++j)
                if (std::abs(mat_(i, j) - mat_(j, i)) > sym_tol * scale)
                    throw NonSymmetricError("matrix entry (" + std::to_string(i) + "," +
                                            std::to_string(j) + ") breaks symmetry tolerance");
        for (std::size_t i = 0; i < mat_.rows(); ++i)
            for (std::size_t j = i + 1; j < mat_.cols(); ++j) {
                const double v = 0.5 * (mat_(i, j) + mat_(j, i));
                mat_(i, j) = v;
                mat_(j, i) = v;
            }
    }

    static SymmetricMatrix from_rows(const std::vector<std::vector<double>>& rows) {
        return SymmetricMatrix(matrix_from_rows(rows));
    }

    static SymmetricMatrix identity(std::size_t n) { return SymmetricMatrix(Matrix::identity(n)); }

    std::size_t dim() const { return mat_.rows(); }
    const Matrix& mat() const { return mat_; }
    double operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    SymmetricMatrix scaled(double s) const { return SymmetricMatrix(mat_.scaled(s)); }

private:
    Matrix mat_;
};

struct EighResult {
    std::vector<double> values; // ascending
    Matrix vectors;             // orthogonal, columns are eigenvectors
};

/// Symmetric eigendecomposition by cyclic Jacobi rotations.
///
/// The Jacobi method is used deliberately: the matrices in this library
/// are small (a handful of degrees of freedom) and the rotation scheme
/// preserves orthogonality of the accumulated eigenvector matrix to
/// machine precision, which the symplectic constructions downstream
/// lean on. Eigenvalues are returned in ascending order with A = Q D Q^T.
inline EighResult eigh_sym(const SymmetricMatrix& sym) {
    const std::size_t n = sym.dim();
    Matrix a = sym.mat();
    Matrix q = Matrix::identity(n);

    auto off_norm = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t r = p + 1; r < n; ++r) s += a(p, r) * a(p, r);
        return std::sqrt(2.0 * s);
    };
    auto frob = [&]() {
        double s = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t r = 0; r < n; ++r) s += a(p, r) * a(p, r);
        return std::sqrt(s);
    };

    const double scale = frob();
    const int max_sweeps = 100;
    bool converged = scale == 0.0;
    for (int sweep = 0; sweep < max_sweeps && !converged; ++sweep) {
        if (off_norm() <= 1e-14 * scale) {
            converged = true;
            break;
        }
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t r = p + 1; r < n; ++r) {
                const double apr = a(p, r);
                if (std::abs(apr) <= 1e-300) continue;
                const double theta = (a(r, r) - a(p, p)) / (2.0 * apr);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const double tau = s / (1.0 + c);

                const double app = a(p, p);
                const double arr = a(r, r);
                a(p, p) = app - t * apr;
                a(r, r) = arr + t * apr;
                a(p, r) = 0.0;
                a(r, p) = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k != p && k != r) {
                        const double akp = a(k, p);
                        const double akr = a(k, r);
                        a(k, p) = a(p, k) = akp - s * (akr + tau * akp);
                        a(k, r) = a(r, k) = akr + s * (akp - tau * akr);
                    }
                    const double qkp = q(k, p);
                    const double qkr = q(k, r);
                    q(k, p) = qkp - s * (qkr + tau * qkp);
                    q(k, r) = qkr + s * (qkp - tau * qkr);
                }
            }
        }
        if (off_norm() <= 1e-14 * scale) converged = true;
    }
    if (!converged)
        throw NoConvergenceError("Jacobi sweep limit exceeded");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

    EighResult out;
    out.values.resize(n);
    out.vectors = Matrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = q(i, order[j]);
    }
    return out;
}

namespace detail {

/// Q f(D) Q^T for an SPD input; throws if any eigenvalue falls at or
/// below the relative positivity floor.
template <typename F>
Matrix spd_function(const SymmetricMatrix& a, F&& f, const char* what) {
    const EighResult eig = eigh_sym(a);
    const double floor = tol::positivity * a.mat().max_abs();
    for (double v : eig.values)
        if (v <= floor)
            throw NotPositiveDefiniteError(std::string(what) +
                                           " requires a positive definite matrix");
    const std::size_t n = a.dim();
    Matrix out(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += eig.vectors(i, k) * f(eig.values[k]) * eig.vectors(j, k);
            out(i, j) = acc;
            out(j, i) = acc;
        }
    return out;
}

} // namespace detail

/// Principal square root of a symmetric positive definite matrix.
inline SymmetricMatrix sqrt_spd(const SymmetricMatrix& a) {
    return SymmetricMatrix(
        detail::spd_function(a, [](double v) { return std::sqrt(v); }, "sqrt_spd"));
}

/// Inverse of a symmetric positive definite matrix.
inline SymmetricMatrix inv_spd(const SymmetricMatrix& a) {
    return SymmetricMatrix(
        detail::spd_function(a, [](double v) { return 1.0 / v; }, "inv_spd"));
}

/// Inverse square root of a symmetric positive definite matrix.
inline SymmetricMatrix inv_sqrt_spd(const SymmetricMatrix& a) {
    return SymmetricMatrix(detail::spd_function(
        a, [](double v) { return 1.0 / std::sqrt(v); }, "inv_sqrt_spd"));
}

/// Determinant of an SPD matrix via its eigenvalues.
inline double det_spd(const SymmetricMatrix& a) {
    const EighResult eig = eigh_sym(a);
    const double floor = tol::positivity * a.mat().max_abs();
    double d = 1.0;
    for (double v : eig.values) {
        if (v <= floor) throw NotPositiveDefiniteError("det_spd requires positive definiteness");
        d *= v;
    }
    return d;
}

/// Assemble a square matrix from four equal-sized blocks.
inline Matrix block2x2(const Matrix& tl, const Matrix& tr, const Matrix& bl, const Matrix& br) {
    const std::size_t n = tl.rows();
    Matrix out(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            out(i, j) = tl(i, j);
            out(i, n + j) = tr(i, j);
            out(n + i, j) = bl(i, j);
            out(n + i, n + j) = br(i, j);
        }
    return out;
}

} // namespace phasecap
