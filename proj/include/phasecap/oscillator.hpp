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
#include <cstddef>
#include <numbers>
#include <vector>

#include "phasecap/capacity.hpp"
#include "phasecap/errors.hpp"
#include "phasecap/matrix.hpp"
#include "phasecap/symplectic.hpp"

namespace phasecap {

/// Physicists' Hermite polynomial H_N(x) by the three-term recurrence
/// H_{N+1} = 2x H_N - 2N H_{N-1}. Double precision is adequate through
/// N of a few tens; Rodrigues-style differentiation is deliberately
/// avoided as unstable.
inline double hermite_polynomial(int n, double x) {
    if (n < 0) throw BadInputError("Hermite index must be >= 0");
    double prev = 1.0; // H_0
    if (n == 0) return prev;
    double cur = 2.0 * x; // H_1
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * cur - 2.0 * static_cast<double>(k) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Multi-index (N_1, ..., N_n) of oscillator excitation numbers.
struct MultiIndex {
    std::vector<int> n;

    explicit MultiIndex(std::vector<int> values) : n(std::move(values)) {
        if (n.empty()) throw BadInputError("multi-index needs at least one entry");
        for (int v : n)
            if (v < 0) throw BadInputError("multi-index entries must be >= 0");
    }

    std::size_t size() const { return n.size(); }
};

/// E_(N) = sum_j (N_j + 1/2) hbar omega_j.
inline double energy_level(const std::vector<double>& omegas, const MultiIndex& idx,
                           double hbar) {
    if (omegas.size() != idx.size())
        throw LengthMismatchError("frequency list and multi-index differ in length");
    double e = 0.0;
    for (std::size_t j = 0; j < omegas.size(); ++j) {
        if (!(omegas[j] > 0.0)) throw BadInputError("frequencies must be positive");
        e += (static_cast<double>(idx.n[j]) + 0.5) * hbar * omegas[j];
    }
    return e;
}

/// Quadratic Hamiltonian H(z) = (1/2) M z.z with M positive definite.
struct QuadraticHamiltonian {
    std::size_t n;
    double hbar;
    SymmetricMatrix m; // 2n x 2n, SPD

    QuadraticHamiltonian(std::size_t n_, double hbar_, SymmetricMatrix m_)
        : n(n_), hbar(hbar_), m(std::move(m_)) {
        if (n == 0) throw BadInputError("Hamiltonian needs n >= 1");
        if (!(hbar > 0.0)) throw BadInputError("hbar must be positive");
        if (m.dim() != 2 * n) throw BadInputError("Hamiltonian matrix must be 2n x 2n");
        const EighResult eig = eigh_sym(m);
        if (eig.values.front() <= tol::positivity * m.mat().max_abs())
            throw NotPositiveDefiniteError("Hamiltonian matrix must be positive definite");
    }

    /// Williamson frequencies omega_1 <= ... <= omega_n of M.
    std::vector<double> frequencies() const { return williamson(m).lambda; }
};

/// Energy region { H <= E_(N) } of the eigenstate with multi-index N:
/// shape M at level 2 E. The multi-index pairs with the ascending
/// Williamson frequencies of M.
inline PhaseSpaceEllipsoid excited_fermi_ellipsoid(const QuadraticHamiltonian& h,
                                                   const MultiIndex& idx) {
    const std::vector<double> omega = h.frequencies();
    const double e = energy_level(omega, idx, h.hbar);
    return PhaseSpaceEllipsoid::centered(h.n, h.m, 2.0 * e);
}

/// Comparison of the capacity of an excited-state energy ellipsoid with
/// the integer-quantized value sum_j (N_j + 1/2) h. The two agree for
/// n = 1 and for isotropic spectra; for anisotropic spectra the capacity
/// is h sum_j (N_j + 1/2) omega_j / omega_max (carried as expected_lhs),
/// which is strictly smaller. The report states the facts; it does not
/// assert.
struct ClaimReport {
    double lhs;          // capacity of the energy ellipsoid
    double rhs;          // sum_j (N_j + 1/2) h
    double ratio;        // lhs / rhs
    double expected_lhs; // h sum_j (N_j + 1/2) omega_j / omega_max
    bool match;          // |ratio - 1| <= 1e-9
};

inline ClaimReport claim_check(const QuadraticHamiltonian& h, const MultiIndex& idx) {
    const std::vector<double> omega = h.frequencies();
    const double planck = 2.0 * std::numbers::pi * h.hbar;

    ClaimReport r{};
    r.lhs = capacity(excited_fermi_ellipsoid(h, idx));

    double quanta = 0.0;
    double weighted = 0.0;
    for (std::size_t j = 0; j < omega.size(); ++j) {
        quanta += static_cast<double>(idx.n[j]) + 0.5;
        weighted += (static_cast<double>(idx.n[j]) + 0.5) * omega[j];
    }
    r.rhs = quanta * planck;
    r.expected_lhs = planck * weighted / omega.back();
    r.ratio = r.lhs / r.rhs;
    r.match = std::abs(r.ratio - 1.0) <= 1e-9;
    return r;
}

} // namespace phasecap
