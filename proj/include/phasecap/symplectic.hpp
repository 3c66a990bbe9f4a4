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
#include <string>
#include <vector>

#include "phasecap/errors.hpp"
#include "phasecap/matrix.hpp"

namespace phasecap {

// Coordinate order is (x_1..x_n, p_1..p_n) everywhere in this library.

/// Standard symplectic matrix J = [[0, I], [-I, 0]] on 2n coordinates.
inline Matrix standard_form(std::size_t n) {
    if (n == 0) throw BadInputError("standard_form needs n >= 1");
    Matrix j(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

/// sigma(z, z') = Jz . z' = p.x' - p'.x
inline double symplectic_form(const std::vector<double>& z, const std::vector<double>& zp) {
    if (z.size() != zp.size() || z.size() % 2 != 0)
        throw OddDimensionError("symplectic form needs two vectors of equal even dimension");
    const std::size_t n = z.size() / 2;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += z[n + i] * zp[i] - zp[n + i] * z[i];
    return s;
}

/// True iff ||S^T J S - J||_max <= tol.
inline bool is_symplectic(const Matrix& s, double tol) {
    if (!s.square()) throw BadInputError("is_symplectic needs a square matrix");
    if (s.rows() % 2 != 0) throw OddDimensionError("symplectic matrices have even dimension");
    const Matrix j = standard_form(s.rows() / 2);
    return (s.transposed() * j * s - j).max_abs() <= tol;
}

/// Sorted positive symplectic eigenvalues of a positive definite matrix.
struct SymplecticSpectrum {
    std::vector<double> values; // ascending, size n
    std::size_t n() const { return values.size(); }
    double max() const { return values.back(); }
};

/// Symplectic eigenvalues of an SPD matrix M: the n positive numbers
/// lambda_j such that JM has eigenvalues +-i lambda_j.
///
/// Works entirely in real arithmetic: L = M^{1/2} J M^{1/2} is skew and
/// similar to JM, so L^T L = -L^2 is symmetric PSD with eigenvalues
/// lambda_j^2, each doubled. The doubled pairs are collapsed under a
/// relative tolerance; a failed pairing means the input was far from
/// symmetric positive definite in the first place.
inline SymplecticSpectrum symplectic_spectrum(const SymmetricMatrix& m) {
    if (m.dim() % 2 != 0)
        throw OddDimensionError("symplectic spectrum needs an even-dimensional matrix");
    const std::size_t n = m.dim() / 2;
    const SymmetricMatrix root = sqrt_spd(m);
    const Matrix l = root.mat() * standard_form(n) * root.mat();
    const SymmetricMatrix ltl(l.transposed() * l, 1e-8);
    const EighResult eig = eigh_sym(ltl);

    SymplecticSpectrum out;
    out.values.reserve(n);
    for (std::size_t i = 0; i < 2 * n; i += 2) {
        const double a = std::sqrt(std::max(eig.values[i], 0.0));
        const double b = std::sqrt(std::max(eig.values[i + 1], 0.0));
        if (std::abs(a - b) > tol::pairing * std::max(a, b))
            throw PairingError("eigenvalues of the skew product do not pair");
        out.values.push_back(0.5 * (a + b));
    }
    return out;
}

struct WilliamsonResult {
    Matrix s;                   // symplectic, S^T M S = diag(lambda, lambda)
    std::vector<double> lambda; // ascending symplectic eigenvalues
};

namespace detail {

// Remove from v its projection onto each column in basis[0..count), in place.
inline void project_out(std::vector<double>& v, const std::vector<std::vector<double>>& basis) {
    for (const auto& b : basis) {
        const double c = dot(b, v);
        for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
    }
}

} // namespace detail

/// Williamson symplectic diagonalization of an SPD matrix M:
/// returns S with S^T M S = diag(Lambda, Lambda) and S^T J S = J.
///
/// Construction: K = M^{-1/2} J M^{-1/2} is skew with eigenvalues
/// +-i/lambda_j. The SPD matrix K^T K has each 1/lambda_j^2 twice; its
/// eigenvectors span K-invariant planes. For each plane pick a unit u,
/// set v = -K u / |K u| (then K u = -|Ku| v and K v = |Ku| u), and
/// orthonormalize greedily so degenerate clusters cause no trouble.
/// With O = [u_1..u_n v_1..v_n], S = M^{-1/2} O diag(Lambda,Lambda)^{1/2}
/// satisfies both identities; the contract is the postcondition, not
/// this particular construction.
inline WilliamsonResult williamson(const SymmetricMatrix& m) {
    if (m.dim() % 2 != 0)
        throw OddDimensionError("williamson needs an even-dimensional matrix");
    const std::size_t dim = m.dim();
    const std::size_t n = dim / 2;

    const SymmetricMatrix inv_root = inv_sqrt_spd(m);
    const Matrix k = inv_root.mat() * standard_form(n) * inv_root.mat();
    const SymmetricMatrix ktk(k.transposed() * k, 1e-8);
    const EighResult eig = eigh_sym(ktk);

    std::vector<std::vector<double>> pool;
    pool.reserve(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        std::vector<double> col(dim);
        for (std::size_t i = 0; i < dim; ++i) col[i] = eig.vectors(i, j);
        pool.push_back(std::move(col));
    }

    struct Pair {
        std::vector<double> u, v;
        double lambda;
    };
    std::vector<Pair> pairs;
    std::vector<std::vector<double>> chosen; // u's and v's picked so far

    for (std::size_t step = 0; step < n; ++step) {
        // Greedy: seed from the pool vector with the largest residual after
        // removing what is already spanned. Guarantees progress even when
        // symplectic eigenvalues are degenerate.
        double best_norm = -1.0;
        std::size_t best = 0;
        std::vector<double> best_resid;
        for (std::size_t c = 0; c < pool.size(); ++c) {
            std::vector<double> r = pool[c];
            detail::project_out(r, chosen);
            const double nr = norm2(r);
            if (nr > best_norm) {
                best_norm = nr;
                best = c;
                best_resid = std::move(r);
            }
        }
        if (best_norm < 1e-6)
            throw DegeneracyError("could not extract a fresh symplectic plane");
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(best));

        std::vector<double> u = best_resid;
        for (double& x : u) x /= best_norm;

        std::vector<double> w = k * u;
        for (double& x : w) x = -x;
        const double wn = norm2(w);
        if (wn < 1e-300) throw DegeneracyError("skew image vanished");
        std::vector<double> v = w;
        for (double& x : v) x /= wn;
        detail::project_out(v, chosen);
        {
            const double c = dot(u, v);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
        }
        const double vn = norm2(v);
        if (vn < 0.5) throw DegeneracyError("symplectic partner collapsed under projection");
        for (double& x : v) x /= vn;

        chosen.push_back(u);
        chosen.push_back(v);
        pairs.push_back(Pair{std::move(u), std::move(v), 1.0 / wn});
    }

    std::sort(pairs.begin(), pairs.end(),
              [](const Pair& a, const Pair& b) { return a.lambda < b.lambda; });

    Matrix o(dim, dim);
    WilliamsonResult out;
    out.lambda.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        out.lambda[j] = pairs[j].lambda;
        for (std::size_t i = 0; i < dim; ++i) {
            o(i, j) = pairs[j].u[i];
            o(i, n + j) = pairs[j].v[i];
        }
    }

    Matrix d_half(dim, dim);
    for (std::size_t j = 0; j < n; ++j) {
        const double r = std::sqrt(out.lambda[j]);
        d_half(j, j) = r;
        d_half(n + j, n + j) = r;
    }
    out.s = inv_root.mat() * o * d_half;
    return out;
}

} // namespace phasecap
