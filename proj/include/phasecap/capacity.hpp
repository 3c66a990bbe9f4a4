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

#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <random>
#include <vector>

#include "phasecap/errors.hpp"
#include "phasecap/matrix.hpp"
#include "phasecap/symplectic.hpp"

namespace phasecap {

/// Phase-space ellipsoid { z : M (z - z0) . (z - z0) <= r } with M
/// positive definite. Positive definiteness is checked at construction.
struct PhaseSpaceEllipsoid {
    std::size_t n;
    std::vector<double> center; // 2n
    SymmetricMatrix shape;      // 2n x 2n, SPD
    double level;

    PhaseSpaceEllipsoid(std::size_t n_, std::vector<double> center_, SymmetricMatrix shape_,
                        double level_)
        : n(n_), center(std::move(center_)), shape(std::move(shape_)), level(level_) {
        if (n == 0) throw BadInputError("ellipsoid needs n >= 1");
        if (center.size() != 2 * n) throw BadInputError("ellipsoid center must have 2n entries");
        if (shape.dim() != 2 * n) throw BadInputError("ellipsoid shape must be 2n x 2n");
        if (!(level > 0.0)) throw BadInputError("ellipsoid level must be positive");
        const EighResult eig = eigh_sym(shape);
        if (eig.values.front() <= tol::positivity * shape.mat().max_abs())
            throw NotPositiveDefiniteError("ellipsoid shape must be positive definite");
    }

    static PhaseSpaceEllipsoid centered(std::size_t n, SymmetricMatrix shape, double level) {
        return PhaseSpaceEllipsoid(n, std::vector<double>(2 * n, 0.0), std::move(shape), level);
    }

    /// Same point set at level 1 (shape divided by the level).
    PhaseSpaceEllipsoid normalized() const {
        return PhaseSpaceEllipsoid(n, center, shape.scaled(1.0 / level), 1.0);
    }

    /// M (z - z0) . (z - z0), the quadratic form evaluated at z.
    double form_at(const std::vector<double>& z) const {
        std::vector<double> d(2 * n);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] = z[i] - center[i];
        return dot(shape.mat() * d, d);
    }
};

/// Gromov width / Hofer-Zehnder capacity of an ellipsoid: all intrinsic
/// capacities agree here and equal pi r / lambda_max where lambda_max is
/// the largest symplectic eigenvalue of the shape matrix. Translation
/// invariant; the center plays no role.
inline double capacity(const PhaseSpaceEllipsoid& e) {
    return std::numbers::pi * e.level / symplectic_spectrum(e.shape).max();
}

/// First k Ekeland-Hofer capacities of an ellipsoid: the sorted multiset
/// { N pi r / lambda_j : N >= 1, j = 1..n } with repetitions, produced by
/// a lazy k-way merge over the n arithmetic progressions.
inline std::vector<double> eh_capacities(const PhaseSpaceEllipsoid& e, int k) {
    if (k < 1) throw BadInputError("eh_capacities needs k >= 1");
    const SymplecticSpectrum spec = symplectic_spectrum(e.shape);
    std::vector<double> step(spec.n());
    for (std::size_t j = 0; j < spec.n(); ++j)
        step[j] = std::numbers::pi * e.level / spec.values[j];

    using Entry = std::pair<double, std::pair<long, std::size_t>>; // (value, (N, j))
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    for (std::size_t j = 0; j < step.size(); ++j) heap.push({step[j], {1, j}});

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(k));
    while (static_cast<int>(out.size()) < k) {
        auto [value, nj] = heap.top();
        heap.pop();
        out.push_back(value);
        // Multiples are recomputed as N * step, not accumulated, so ties
        // between progressions stay exact.
        heap.push({static_cast<double>(nj.first + 1) * step[nj.second],
                   {nj.first + 1, nj.second}});
    }
    return out;
}

/// Euclidean area of the central section of an ellipsoid by the plane
/// z0 + span{u, v}. The basis is orthonormalized internally, which makes
/// the result depend only on the plane, not on the basis presented.
inline double plane_section_area(const PhaseSpaceEllipsoid& e, std::vector<double> u,
                                 std::vector<double> v) {
    if (u.size() != 2 * e.n || v.size() != 2 * e.n)
        throw BadInputError("plane basis vectors must have 2n entries");
    const double gram = dot(u, u) * dot(v, v) - dot(u, v) * dot(u, v);
    if (gram <= 1e-12 * dot(u, u) * dot(v, v))
        throw DegeneratePlaneError("plane basis vectors are nearly collinear");

    const double un = norm2(u);
    for (double& x : u) x /= un;
    const double c = dot(u, v);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * u[i];
    const double vn = norm2(v);
    for (double& x : v) x /= vn;

    const std::vector<double> mu = e.shape.mat() * u;
    const std::vector<double> mv = e.shape.mat() * v;
    const double q11 = dot(mu, u);
    const double q12 = dot(mu, v);
    const double q22 = dot(mv, v);
    return std::numbers::pi * e.level / std::sqrt(q11 * q22 - q12 * q12);
}

/// Quantum blob: the image of the ball of radius sqrt(hbar) under a
/// linear symplectic map plus a translation. As an ellipsoid its shape
/// is (S S^T)^{-1} at level hbar, whose symplectic spectrum is all ones.
struct QuantumBlob {
    std::vector<double> center; // 2n
    Matrix map;                 // symplectic
    double hbar;

    PhaseSpaceEllipsoid as_ellipsoid() const {
        const std::size_t n = map.rows() / 2;
        return PhaseSpaceEllipsoid(n, center,
                                   inv_spd(SymmetricMatrix(map * map.transposed(), 1e-8)), hbar);
    }
};

/// True iff every symplectic eigenvalue of shape/level equals 1/hbar
/// within the relative tolerance, i.e. the ellipsoid is S(B(sqrt(hbar)))
/// + center for some symplectic S.
inline bool is_quantum_blob(const PhaseSpaceEllipsoid& e, double tolerance, double hbar = 1.0) {
    const SymplecticSpectrum spec = symplectic_spectrum(e.shape);
    for (double v : spec.values)
        if (std::abs(v * hbar / e.level - 1.0) > tolerance) return false;
    return true;
}

/// Smallest relative slack of the ellipsoid inequality over sampled blob
/// boundary points: min over samples of 1 - M(z - z0).(z - z0)/r.
/// Nonnegative (up to tolerance) certifies containment. Deterministic
/// for a fixed seed.
inline double containment_margin(const PhaseSpaceEllipsoid& e, const QuantumBlob& blob,
                                 int samples = 10000, unsigned seed = 0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t dim = 2 * e.n;
    const double radius = std::sqrt(blob.hbar);
    double margin = 1.0;
    std::vector<double> w(dim), z(dim);
    for (int s = 0; s < samples; ++s) {
        double nn = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            w[i] = gauss(rng);
            nn += w[i] * w[i];
        }
        nn = std::sqrt(nn);
        if (nn < 1e-12) continue;
        for (std::size_t i = 0; i < dim; ++i) w[i] *= radius / nn;
        const std::vector<double> sw = blob.map * w;
        for (std::size_t i = 0; i < dim; ++i) z[i] = blob.center[i] + sw[i];
        margin = std::min(margin, 1.0 - e.form_at(z) / e.level);
    }
    return margin;
}

/// Quantum blob of capacity pi*hbar contained in the ellipsoid, built in
/// the ellipsoid's Williamson frame. Requires capacity(e) >= pi*hbar;
/// when they are equal this is the unique inscribed blob. Containment is
/// certified on sampled boundary points before returning.
inline QuantumBlob inscribed_quantum_blob(const PhaseSpaceEllipsoid& e, double hbar = 1.0,
                                          unsigned seed = 0) {
    const double cap = capacity(e);
    const double want = std::numbers::pi * hbar;
    if (cap < want * (1.0 - 1e-9))
        throw BlobTooSmallError("ellipsoid capacity is below pi*hbar; no quantum blob fits");

    const WilliamsonResult w = williamson(e.normalized().shape);
    QuantumBlob blob{e.center, w.s, hbar};
    if (containment_margin(e, blob, 10000, seed) < -1e-9)
        throw NumericalError("ContainmentFailure",
                             "inscribed blob failed boundary containment certification");
    return blob;
}

} // namespace phasecap
