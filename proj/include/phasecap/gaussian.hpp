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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "phasecap/capacity.hpp"
#include "phasecap/errors.hpp"
#include "phasecap/matrix.hpp"
#include "phasecap/symplectic.hpp"

namespace phasecap {

/// Generalized coherent state Psi_{X,Y}: the normalized Gaussian
/// (pi hbar)^{-n/4} (det X)^{1/4} exp[-(X + iY) x.x / (2 hbar)] with X
/// positive definite and Y symmetric.
struct GaussianState {
    std::size_t n;
    double hbar;
    SymmetricMatrix x; // n x n, SPD
    SymmetricMatrix y; // n x n

    GaussianState(std::size_t n_, double hbar_, SymmetricMatrix x_, SymmetricMatrix y_)
        : n(n_), hbar(hbar_), x(std::move(x_)), y(std::move(y_)) {
        if (n == 0) throw BadInputError("state needs n >= 1");
        if (!(hbar > 0.0)) throw BadInputError("hbar must be positive");
        if (x.dim() != n || y.dim() != n)
            throw BadInputError("state matrices must be n x n");
        const EighResult eig = eigh_sym(x);
        if (eig.values.front() <= tol::positivity * x.mat().max_abs())
            throw NotPositiveDefiniteError("X must be positive definite");
    }

    /// The fiducial state X = I, Y = 0.
    static GaussianState fiducial(std::size_t n, double hbar) {
        return GaussianState(n, hbar, SymmetricMatrix::identity(n),
                             SymmetricMatrix(Matrix(n, n)));
    }
};

/// Value of Psi_{X,Y} at a configuration point.
inline std::complex<double> eval_wavefunction(const GaussianState& g,
                                              const std::vector<double>& point) {
    if (point.size() != g.n) throw BadInputError("point must have n entries");
    const double xq = dot(g.x.mat() * point, point);
    const double yq = dot(g.y.mat() * point, point);
    const double amp = std::pow(std::numbers::pi * g.hbar, -0.25 * static_cast<double>(g.n)) *
                       std::pow(det_spd(g.x), 0.25) * std::exp(-xq / (2.0 * g.hbar));
    const double phase = -yq / (2.0 * g.hbar);
    return std::complex<double>(amp * std::cos(phase), amp * std::sin(phase));
}

/// Fermi form of a Gaussian state: g_F(z) = M_F z.z - hbar Tr X with
/// M_F = [[X^2 + Y^2, Y], [Y, I]]. The sublevel set g_F <= 0 is the
/// Fermi ellipsoid of the state.
struct FermiForm {
    std::size_t n;
    double hbar;
    SymmetricMatrix matrix; // M_F, 2n x 2n
    double level;           // hbar * Tr X

    PhaseSpaceEllipsoid as_ellipsoid() const {
        return PhaseSpaceEllipsoid::centered(n, matrix, level);
    }

    double value_at(const std::vector<double>& z) const {
        std::vector<double> zz = z;
        return dot(matrix.mat() * zz, zz) - level;
    }
};

inline FermiForm fermi_form(const GaussianState& g) {
    const Matrix x2 = g.x.mat() * g.x.mat();
    const Matrix y2 = g.y.mat() * g.y.mat();
    const Matrix mf = block2x2(x2 + y2, g.y.mat(), g.y.mat(), Matrix::identity(g.n));
    return FermiForm{g.n, g.hbar, SymmetricMatrix(mf, 1e-8), g.hbar * g.x.mat().trace()};
}

/// Symplectic factor S = [[X^{1/2}, 0], [X^{-1/2} Y, X^{-1/2}]] with
/// S^T diag(X, X) S = M_F.
inline Matrix fermi_factorization(const GaussianState& g) {
    const Matrix xs = sqrt_spd(g.x).mat();
    const Matrix xis = inv_sqrt_spd(g.x).mat();
    return block2x2(xs, Matrix(g.n, g.n), xis * g.y.mat(), xis);
}

/// Wigner shape matrix G = S^T S = [[X + Y X^{-1} Y, Y X^{-1}],
/// [X^{-1} Y, X^{-1}]]; symmetric, positive definite and symplectic.
inline SymmetricMatrix wigner_matrix(const GaussianState& g) {
    const Matrix xi = inv_spd(g.x).mat();
    const Matrix yxi = g.y.mat() * xi;
    return SymmetricMatrix(
        block2x2(g.x.mat() + yxi * g.y.mat(), yxi, xi * g.y.mat(), xi), 1e-8);
}

/// W Psi_{X,Y}(z) = (pi hbar)^{-n} exp(-G z.z / hbar).
inline double wigner_closed_form(const GaussianState& g, const std::vector<double>& z) {
    if (z.size() != 2 * g.n) throw BadInputError("phase-space point must have 2n entries");
    std::vector<double> zz = z;
    const double q = dot(wigner_matrix(g).mat() * zz, zz);
    return std::pow(std::numbers::pi * g.hbar, -static_cast<double>(g.n)) *
           std::exp(-q / g.hbar);
}

/// Capacity of the Fermi ellipsoid: pi hbar Tr X / omega_max where
/// omega_max is the largest eigenvalue of X. Always between h/2 and n h/2.
inline double fermi_capacity(const GaussianState& g) {
    const EighResult eig = eigh_sym(g.x);
    return std::numbers::pi * g.hbar * g.x.mat().trace() / eig.values.back();
}

struct RsAxis {
    double lhs; // (Delta X_j)^2 (Delta P_j)^2
    double rhs; // Delta(X_j, P_j)^2 + hbar^2/4
};

/// Schroedinger-Robertson report for a Gaussian state. The covariance
/// matrix is Sigma = (hbar/2) G^{-1}, the moment matrix of the Wigner
/// Gaussian; `saturated` is true when every axis meets its bound as an
/// equality within 1e-9.
struct RsReport {
    SymmetricMatrix covariance;
    std::vector<RsAxis> per_axis;
    bool saturated;
};

inline RsReport rs_check(const GaussianState& g) {
    const SymmetricMatrix sigma = inv_spd(wigner_matrix(g)).scaled(g.hbar / 2.0);
    std::vector<RsAxis> axes;
    bool saturated = true;
    for (std::size_t j = 0; j < g.n; ++j) {
        const double lhs = sigma(j, j) * sigma(g.n + j, g.n + j);
        const double rhs = sigma(j, g.n + j) * sigma(j, g.n + j) + g.hbar * g.hbar / 4.0;
        axes.push_back(RsAxis{lhs, rhs});
        if (std::abs(lhs - rhs) > 1e-9 * std::max(1.0, std::abs(rhs))) saturated = false;
    }
    return RsReport{sigma, std::move(axes), saturated};
}

} // namespace phasecap
