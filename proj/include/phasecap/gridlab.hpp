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
#include <complex>
#include <numbers>
#include <optional>
#include <vector>

#include "phasecap/errors.hpp"
#include "phasecap/gaussian.hpp"
#include "phasecap/matrix.hpp"
#include "phasecap/oscillator.hpp"
#include "phasecap/symplectic.hpp"

namespace phasecap {

using Complex = std::complex<double>;

/// Uniform 1D grid including both endpoints.
struct Grid1D {
    double xmin;
    double xmax;
    int count;

    Grid1D(double xmin_, double xmax_, int count_) : xmin(xmin_), xmax(xmax_), count(count_) {
        if (!(xmax > xmin)) throw BadInputError("grid needs xmax > xmin");
        if (count < 16) throw BadInputError("grid needs at least 16 points");
    }

    double spacing() const { return (xmax - xmin) / (count - 1); }
    double point(int i) const { return xmin + spacing() * i; }
};

/// Reference grid: 2048 points on [-12 sqrt(hbar), 12 sqrt(hbar)].
inline Grid1D default_grid(double hbar, int count = 2048) {
    const double half = 12.0 * std::sqrt(hbar);
    return Grid1D(-half, half, count);
}

/// Complex wavefunction samples on a uniform grid.
struct SampledWavefunction {
    Grid1D grid;
    std::vector<Complex> values;
    double hbar;

    SampledWavefunction(Grid1D grid_, std::vector<Complex> values_, double hbar_)
        : grid(grid_), values(std::move(values_)), hbar(hbar_) {
        if (values.size() != static_cast<std::size_t>(grid.count))
            throw BadInputError("sample count must match the grid");
        if (!(hbar > 0.0)) throw BadInputError("hbar must be positive");
        double nrm = 0.0;
        for (const Complex& v : values) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw BadInputError("wavefunction samples must be finite");
            nrm += std::norm(v);
        }
        if (!(nrm > 0.0)) throw BadInputError("wavefunction samples must not all vanish");
    }

    double max_abs() const {
        double m = 0.0;
        for (const Complex& v : values) m = std::max(m, std::abs(v));
        return m;
    }

    /// Trapezoid L2 norm.
    double norm() const {
        const double dx = grid.spacing();
        double s = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double w = (i == 0 || i + 1 == values.size()) ? 0.5 : 1.0;
            s += w * std::norm(values[i]);
        }
        return std::sqrt(s * dx);
    }
};

/// Samples of a one-dimensional Gaussian state on a grid.
inline SampledWavefunction sample_gaussian(const GaussianState& g, const Grid1D& grid) {
    if (g.n != 1) throw BadInputError("grid sampling covers one degree of freedom only");
    std::vector<Complex> vals(grid.count);
    for (int i = 0; i < grid.count; ++i)
        vals[i] = eval_wavefunction(g, {grid.point(i)});
    return SampledWavefunction(grid, std::move(vals), g.hbar);
}

/// Normalized N-th oscillator eigenstate exp(-omega x^2 / 2 hbar)
/// H_N(x sqrt(omega/hbar)), sampled and trapezoid-normalized.
inline SampledWavefunction sample_hermite(int n, double omega, const Grid1D& grid, double hbar) {
    if (n < 0) throw BadInputError("Hermite index must be >= 0");
    if (!(omega > 0.0)) throw BadInputError("omega must be positive");
    std::vector<Complex> vals(grid.count);
    const double s = std::sqrt(omega / hbar);
    double peak = 0.0;
    for (int i = 0; i < grid.count; ++i) {
        const double x = grid.point(i);
        const double v = std::exp(-omega * x * x / (2.0 * hbar)) * hermite_polynomial(n, x * s);
        vals[i] = v;
        peak = std::max(peak, std::abs(v));
    }
    for (Complex& v : vals) v /= peak;
    SampledWavefunction psi(grid, std::move(vals), hbar);
    const double nrm = psi.norm();
    for (Complex& v : psi.values) v /= nrm;
    return psi;
}

namespace detail {

inline void require_decay(const SampledWavefunction& psi) {
    const double peak = psi.max_abs();
    if (std::abs(psi.values.front()) > 1e-12 * peak ||
        std::abs(psi.values.back()) > 1e-12 * peak)
        throw InsufficientDecayError("samples do not decay below 1e-12 of peak at grid ends");
}

// Node mask: true where the residual may be evaluated. Points with
// R below 1e-6 of the peak are excluded together with a 4-cell dilation
// (the curvature term R''/R blows up at nodes), plus a stencil margin.
// Nodes of a sampled |psi| usually fall between samples, leaving a
// V-shaped kink instead of a tiny value; those are caught by a
// local-minimum test whose second difference is comparable to the
// neighboring values themselves, which no C^2 field can produce.
inline std::vector<bool> node_mask(const std::vector<double>& r, int margin) {
    const int n = static_cast<int>(r.size());
    double peak = 0.0;
    for (double v : r) peak = std::max(peak, v);
    if (!(peak > 0.0)) throw AllMaskedError("amplitude field vanishes identically");

    std::vector<bool> node(n, false);
    for (int i = 0; i < n; ++i) node[i] = r[i] < 1e-6 * peak;
    for (int i = 1; i + 1 < n; ++i) {
        const bool local_min = r[i] <= r[i - 1] && r[i] <= r[i + 1];
        const bool kink = r[i - 1] + r[i + 1] - 2.0 * r[i] > 0.25 * (r[i - 1] + r[i + 1]);
        if (local_min && kink && r[i] < 0.1 * peak) node[i] = true;
    }

    std::vector<bool> ok(n, true);
    for (int i = 0; i < n; ++i)
        if (node[i])
            for (int k = std::max(0, i - 4); k <= std::min(n - 1, i + 4); ++k) ok[k] = false;
    for (int i = 0; i < n; ++i)
        if (i < margin || i >= n - margin) ok[i] = false;
    return ok;
}

template <typename T>
double masked_l2(const std::vector<T>& v, const std::vector<bool>& ok, double dx) {
    double s = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (ok[i]) s += std::norm(Complex(v[i]));
    return std::sqrt(s * dx);
}

} // namespace detail

struct FermiResidualReport {
    double residual_norm;
    std::vector<bool> mask; // true where the residual was evaluated
};

/// Finite-difference residual of the Fermi identity for Psi = R e^{i Phi/hbar}:
/// [(-i hbar d/dx - Phi')^2 + hbar^2 R''/R] Psi = 0 for any C^2 fields.
///
/// The squared momentum operator is applied as two successive centered
/// first-derivative applications. That keeps the discrete kinetic and
/// curvature stencils genuinely independent, so the residual measures
/// the O(dx^2) truncation of the identity instead of cancelling
/// algebraically; for R = const the gauge case degenerates to a
/// fourth-order-small residual. The norm is taken relative to the sum of
/// the characteristic magnitudes of the operator pieces.
inline FermiResidualReport fermi_operator_residual(const std::vector<double>& r,
                                                   const std::vector<double>& phi,
                                                   const Grid1D& grid, double hbar) {
    const int n = grid.count;
    if (r.size() != static_cast<std::size_t>(n) || phi.size() != static_cast<std::size_t>(n))
        throw BadInputError("field sample count must match the grid");
    for (double v : r)
        if (v < 0.0) throw BadInputError("amplitude field must be nonnegative");

    const double dx = grid.spacing();
    const std::vector<bool> ok = detail::node_mask(r, 2);
    bool any = false;
    for (bool b : ok) any = any || b;
    if (!any) throw AllMaskedError("no grid point survives the node mask");

    std::vector<Complex> psi(n);
    for (int i = 0; i < n; ++i) psi[i] = r[i] * std::polar(1.0, phi[i] / hbar);

    std::vector<double> phip(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) phip[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * dx);

    const Complex ih(0.0, hbar);
    std::vector<Complex> p1(n, 0.0), p2(n, 0.0), kin(n, 0.0);
    for (int i = 1; i + 1 < n; ++i)
        p1[i] = -ih * (psi[i + 1] - psi[i - 1]) / (2.0 * dx) - phip[i] * psi[i];
    for (int i = 2; i + 2 < n; ++i) {
        p2[i] = -ih * (p1[i + 1] - p1[i - 1]) / (2.0 * dx) - phip[i] * p1[i];
        kin[i] = -hbar * hbar * (psi[i + 2] - 2.0 * psi[i] + psi[i - 2]) / (4.0 * dx * dx);
    }

    std::vector<Complex> g(n, 0.0), centr(n, 0.0), curvterm(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        if (!ok[i]) continue;
        const double curv =
            hbar * hbar * (r[i + 1] - 2.0 * r[i] + r[i - 1]) / (dx * dx) / r[i];
        g[i] = p2[i] + curv * psi[i];
        centr[i] = phip[i] * phip[i] * psi[i];
        curvterm[i] = curv * psi[i];
    }

    const double num = detail::masked_l2(g, ok, dx);
    const double den = detail::masked_l2(kin, ok, dx) + detail::masked_l2(centr, ok, dx) +
                       detail::masked_l2(curvterm, ok, dx);
    if (den < 1e-300) {
        if (num > 1e-300) throw NumericalError("ZeroScale", "residual scale vanished");
        return FermiResidualReport{0.0, ok};
    }
    return FermiResidualReport{num / den, ok};
}

/// Relative L2 residual of H psi_N = (N + 1/2) hbar omega psi_N for the
/// sampled oscillator eigenstate, H = (1/2)(-hbar^2 d^2/dx^2 + omega^2 x^2)
/// with a fourth-order centered second-difference stencil. `energy`
/// overrides the eigenvalue to probe the spectral gap.
inline double eigen_residual(int n, double omega, const Grid1D& grid, double hbar,
                             std::optional<double> energy = std::nullopt) {
    if (!(omega > 0.0)) throw BadInputError("omega must be positive");
    const double reach = 3.6 * std::sqrt((2.0 * n + 1.0) * hbar / omega);
    if (std::min(grid.xmax, -grid.xmin) < reach)
        throw GridTooNarrowError("grid must extend past 3.6 classical turning points");

    const SampledWavefunction psi = sample_hermite(n, omega, grid, hbar);
    const double dx = grid.spacing();
    const double e = energy.value_or((n + 0.5) * hbar * omega);

    double num = 0.0, den = 0.0;
    for (int i = 2; i + 2 < grid.count; ++i) {
        const double x = grid.point(i);
        const Complex d2 = (-psi.values[i - 2] + 16.0 * psi.values[i - 1] -
                            30.0 * psi.values[i] + 16.0 * psi.values[i + 1] -
                            psi.values[i + 2]) /
                           (12.0 * dx * dx);
        const Complex h = 0.5 * (-hbar * hbar * d2 + omega * omega * x * x * psi.values[i]);
        num += std::norm(h - e * psi.values[i]);
        den += std::norm(psi.values[i]);
    }
    return std::sqrt(num / den) / e;
}

struct PhaseSpaceGrid {
    Grid1D x;
    Grid1D p;
};

/// Real scalar field sampled on a phase-space grid, x-major.
struct ScalarField {
    PhaseSpaceGrid grid;
    std::vector<double> values;

    double at(int ix, int ip) const { return values[ix * grid.p.count + ip]; }

    /// Trapezoid integral over the grid rectangle.
    double integral() const {
        const double dx = grid.x.spacing();
        const double dp = grid.p.spacing();
        double s = 0.0;
        for (int ix = 0; ix < grid.x.count; ++ix) {
            const double wx = (ix == 0 || ix + 1 == grid.x.count) ? 0.5 : 1.0;
            for (int ip = 0; ip < grid.p.count; ++ip) {
                const double wp = (ip == 0 || ip + 1 == grid.p.count) ? 0.5 : 1.0;
                s += wx * wp * at(ix, ip);
            }
        }
        return s * dx * dp;
    }
};

/// Wigner transform by direct quadrature:
/// W(x,p) = (1/2 pi hbar) Int e^{-i p y / hbar} Psi(x + y/2) Psi*(x - y/2) dy
/// with the samples linearly interpolated (zero outside the grid) and a
/// symmetric y-lattice of pitch dx, so the conjugate symmetry of the
/// integrand cancels the imaginary part to rounding. The imaginary part
/// is checked against 1e-10 before being discarded.
inline ScalarField wigner_numeric(const SampledWavefunction& psi, const PhaseSpaceGrid& zgrid) {
    detail::require_decay(psi);
    const int count = psi.grid.count;
    const double dx = psi.grid.spacing();
    const double hbar = psi.hbar;
    const double xmin = psi.grid.xmin;
    const double xmax = psi.grid.xmax;

    auto interp = [&](double pt) -> Complex {
        if (pt < xmin || pt > xmax) return Complex(0.0, 0.0);
        const double t = (pt - xmin) / dx;
        int i0 = static_cast<int>(std::floor(t));
        if (i0 >= count - 1) i0 = count - 2;
        const double th = t - i0;
        return (1.0 - th) * psi.values[i0] + th * psi.values[i0 + 1];
    };

    ScalarField out{zgrid, std::vector<double>(
                               static_cast<std::size_t>(zgrid.x.count) * zgrid.p.count, 0.0)};
    const int m_full = count - 1;
    double max_im = 0.0, max_re = 0.0;
    std::vector<Complex> f;
    f.reserve(2 * m_full + 1);

    for (int ix = 0; ix < zgrid.x.count; ++ix) {
        const double x = zgrid.x.point(ix);
        // Both factors vanish once x +- y/2 leaves the sample range.
        const double ylim = 2.0 * std::min(xmax - x, x - xmin);
        if (ylim <= 0.0) continue;
        const int mw = std::min(m_full, static_cast<int>(std::ceil(ylim / dx)));
        f.assign(2 * mw + 1, Complex(0.0, 0.0));
        for (int m = -mw; m <= mw; ++m) {
            const double y = m * dx;
            f[m + mw] = interp(x + 0.5 * y) * std::conj(interp(x - 0.5 * y));
        }
        for (int ip = 0; ip < zgrid.p.count; ++ip) {
            const double p = zgrid.p.point(ip);
            const Complex rot = std::polar(1.0, -p * dx / hbar);
            Complex ph = std::polar(1.0, p * mw * dx / hbar); // phase at y = -mw*dx
            Complex acc(0.0, 0.0);
            for (int m = 0; m <= 2 * mw; ++m) {
                acc += f[m] * ph;
                ph *= rot;
            }
            const Complex w = acc * (dx / (2.0 * std::numbers::pi * hbar));
            out.values[ix * zgrid.p.count + ip] = w.real();
            max_im = std::max(max_im, std::abs(w.imag()));
            max_re = std::max(max_re, std::abs(w.real()));
        }
    }
    if (max_im > 1e-10 * std::max(1.0 / (std::numbers::pi * hbar), max_re))
        throw NumericalError("WignerReality", "Wigner quadrature produced an imaginary part");
    return out;
}

/// Free symplectic 2x2 block data (A B; C D) with det B != 0, plus the
/// Maslov index selecting one of the two metaplectic lifts.
struct MetaplecticData {
    double a, b, c, d;
    int maslov;

    MetaplecticData(double a_, double b_, double c_, double d_, int maslov_)
        : a(a_), b(b_), c(c_), d(d_), maslov(maslov_) {
        if (std::abs(a * d - b * c - 1.0) > 1e-9 * std::max(1.0, std::abs(a * d) + std::abs(b * c)))
            throw BadInputError("blocks must satisfy AD - BC = 1");
        if (std::abs(b) <= 1e-9)
            throw SingularBError(
                "upper-right block is singular; a general symplectic matrix factors into two "
                "free-type matrices with invertible B, but that factorization is not performed "
                "here");
        if (maslov < 0 || maslov > 3) throw BadInputError("Maslov index must be in {0,1,2,3}");
        const bool even = maslov % 2 == 0;
        if ((b > 0.0) != even)
            throw BadInputError("Maslov parity must match the sign of det B^{-1}");
    }

    Matrix matrix() const {
        Matrix s(2, 2);
        s(0, 0) = a;
        s(0, 1) = b;
        s(1, 0) = c;
        s(1, 1) = d;
        return s;
    }
};

/// Default Maslov branch: m = 0 for det B^{-1} > 0, m = 1 for < 0; the
/// alternate lift (+2) is the opposite sign of the same operator.
inline MetaplecticData metaplectic_data(double a, double b, double c, double d,
                                        bool alternate = false) {
    const int m = (b > 0.0 ? 0 : 1) + (alternate ? 2 : 0);
    return MetaplecticData(a, b, c, d, m);
}

/// Free metaplectic block data for the Williamson factor of a 2x2
/// Hamiltonian. At one degree of freedom the normal form is isotropic,
/// so the factor may be rotated freely; the rotation angle is chosen to
/// maximize |B|, which keeps the quadrature kernel well defined.
inline MetaplecticData metaplectic_from_hamiltonian(const QuadraticHamiltonian& h,
                                                    bool alternate = false) {
    if (h.n != 1) throw BadInputError("free metaplectic data covers n = 1 only");
    const WilliamsonResult w = williamson(h.m);
    const double s00 = w.s(0, 0), s01 = w.s(0, 1);
    const double s10 = w.s(1, 0), s11 = w.s(1, 1);
    const double rn = std::hypot(s00, s01);
    const double sth = s00 / rn, cth = s01 / rn;
    return metaplectic_data(s00 * cth - s01 * sth, s00 * sth + s01 * cth,
                            s10 * cth - s11 * sth, s10 * sth + s11 * cth, alternate);
}

/// Metaplectic operator by oscillatory quadrature:
/// (S^ Psi)(x) = (1/2 pi i hbar)^{1/2} Delta(W) Int e^{i W(x,x')/hbar} Psi(x') dx'
/// with W(x,x') = D x^2/(2B) - x x'/B + A x'^2/(2B) and
/// Delta(W) = i^m / sqrt(|B|). The principal branch of the prefactor
/// square root is fixed; the two Maslov lifts differ by an exact sign.
inline SampledWavefunction metaplectic_apply(const MetaplecticData& s,
                                             const SampledWavefunction& psi) {
    detail::require_decay(psi);
    const double hbar = psi.hbar;
    const double dx = psi.grid.spacing();
    const int n = psi.grid.count;

    static const Complex ipow[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
    const Complex pref = ipow[s.maslov] * std::polar(1.0, -std::numbers::pi / 4.0) /
                         std::sqrt(2.0 * std::numbers::pi * hbar * std::abs(s.b));

    const double ca = 0.5 * s.d / s.b; // x^2 coefficient
    const double cb = -1.0 / s.b;      // x x' coefficient
    const double cc = 0.5 * s.a / s.b; // x'^2 coefficient

    std::vector<Complex> out(n);
    std::vector<Complex> inner(n);
    for (int j = 0; j < n; ++j) {
        const double xp = psi.grid.point(j);
        const double wj = (j == 0 || j + 1 == n) ? 0.5 : 1.0;
        inner[j] = wj * psi.values[j] * std::polar(1.0, cc * xp * xp / hbar);
    }
    for (int k = 0; k < n; ++k) {
        const double x = psi.grid.point(k);
        Complex acc(0.0, 0.0);
        for (int j = 0; j < n; ++j) {
            const double xp = psi.grid.point(j);
            acc += inner[j] * std::polar(1.0, (ca * x * x + cb * x * xp) / hbar);
        }
        out[k] = pref * acc * dx;
    }
    return SampledWavefunction(psi.grid, std::move(out), hbar);
}

struct CovarianceReport {
    double max_error;
};

/// Symplectic covariance of the Wigner transform: compares
/// W(S^ Psi)(z), computed by metaplectic quadrature followed by Wigner
/// quadrature, with W Psi(S^{-1} z) from the closed form, over a z-grid
/// covering four standard deviations of the transformed state.
inline CovarianceReport covariance_check(const MetaplecticData& s, const GaussianState& g,
                                         int base_count = 2048, int z_count = 48) {
    if (g.n != 1) throw BadInputError("covariance check covers n = 1 only");
    const SymmetricMatrix sigma = inv_spd(wigner_matrix(g)).scaled(g.hbar / 2.0);
    const Matrix smat = s.matrix();
    const Matrix sig_out = smat * sigma.mat() * smat.transposed();

    // The transformed state can be wider than the input; size the sample
    // grid so both states decay below the Wigner quadrature threshold.
    // The amplitude falls as exp(-x^2 / 4 Sigma_xx), so 11 spreads reach
    // below 1e-12 of the peak.
    const double spread = std::sqrt(std::max(sig_out(0, 0), sigma(0, 0)));
    const double half = std::max(12.0 * std::sqrt(g.hbar), 11.0 * spread);
    const Grid1D grid(-half, half, base_count);
    const SampledWavefunction psi = sample_gaussian(g, grid);
    const SampledWavefunction phi = metaplectic_apply(s, psi);

    const double sx = 4.0 * std::sqrt(sig_out(0, 0));
    const double sp = 4.0 * std::sqrt(sig_out(1, 1));

    const PhaseSpaceGrid zgrid{Grid1D(-sx, sx, z_count), Grid1D(-sp, sp, z_count)};
    const ScalarField num = wigner_numeric(phi, zgrid);

    double max_err = 0.0;
    for (int ix = 0; ix < z_count; ++ix)
        for (int ip = 0; ip < z_count; ++ip) {
            const double x = zgrid.x.point(ix);
            const double p = zgrid.p.point(ip);
            // S^{-1} = (D -B; -C A)
            const double ref =
                wigner_closed_form(g, {s.d * x - s.b * p, -s.c * x + s.a * p});
            max_err = std::max(max_err, std::abs(num.at(ix, ip) - ref));
        }
    return CovarianceReport{max_err};
}

struct TransportReport {
    double residual;
};

/// Ground state of a quadratic Hamiltonian by metaplectic transport of
/// the fiducial Gaussian: Psi = S^ Psi_0 with S the Williamson factor of
/// M. Returns the finite-difference eigen-residual of H Psi = (hbar
/// omega / 2) Psi, with the Weyl-symmetrized cross term.
inline TransportReport ground_state_transport(const MetaplecticData& s,
                                              const QuadraticHamiltonian& h,
                                              int base_count = 2048) {
    if (h.n != 1) throw BadInputError("ground-state transport covers n = 1 only");
    const SampledWavefunction psi0 =
        sample_gaussian(GaussianState::fiducial(1, h.hbar), default_grid(h.hbar, base_count));
    const SampledWavefunction phi = metaplectic_apply(s, psi0);

    const double m00 = h.m(0, 0), m01 = h.m(0, 1), m11 = h.m(1, 1);
    const double omega = std::sqrt(m00 * m11 - m01 * m01);
    const double e = 0.5 * h.hbar * omega;
    const double dx = phi.grid.spacing();
    const Complex ih(0.0, h.hbar);

    double num = 0.0, den = 0.0;
    for (int i = 2; i + 2 < phi.grid.count; ++i) {
        const double x = phi.grid.point(i);
        const Complex d1 = (-phi.values[i + 2] + 8.0 * phi.values[i + 1] -
                            8.0 * phi.values[i - 1] + phi.values[i - 2]) /
                           (12.0 * dx);
        const Complex d2 = (-phi.values[i - 2] + 16.0 * phi.values[i - 1] -
                            30.0 * phi.values[i] + 16.0 * phi.values[i + 1] -
                            phi.values[i + 2]) /
                           (12.0 * dx * dx);
        const Complex hval = 0.5 * m00 * x * x * phi.values[i] -
                             0.5 * m11 * h.hbar * h.hbar * d2 -
                             ih * m01 * (x * d1 + 0.5 * phi.values[i]);
        num += std::norm(hval - e * phi.values[i]);
        den += std::norm(phi.values[i]);
    }
    return TransportReport{std::sqrt(num / den) / e};
}

/// Zero contour of the Fermi observable
/// g_F(x,p) = (p - Phi'(x))^2 + hbar^2 R''(x)/R(x)
/// on the masked (x,p) lattice, by linear interpolation along lattice
/// edges. Columns too close to nodes of R are skipped.
inline std::vector<std::array<double, 2>> fermi_contour(const std::vector<double>& r,
                                                        const std::vector<double>& phi,
                                                        const Grid1D& grid, const Grid1D& prange,
                                                        double hbar) {
    const int n = grid.count;
    if (r.size() != static_cast<std::size_t>(n) || phi.size() != static_cast<std::size_t>(n))
        throw BadInputError("field sample count must match the grid");
    for (double v : r)
        if (v < 0.0) throw BadInputError("amplitude field must be nonnegative");

    const double dx = grid.spacing();
    const std::vector<bool> ok = detail::node_mask(r, 1);
    bool any = false;
    for (bool b : ok) any = any || b;
    if (!any) throw AllMaskedError("no grid point survives the node mask");

    std::vector<double> phip(n, 0.0), curv(n, 0.0);
    for (int i = 1; i + 1 < n; ++i) {
        if (!ok[i]) continue;
        phip[i] = (phi[i + 1] - phi[i - 1]) / (2.0 * dx);
        curv[i] = hbar * hbar * (r[i + 1] - 2.0 * r[i] + r[i - 1]) / (dx * dx) / r[i];
    }

    auto gf = [&](int j, int k) {
        const double dp = prange.point(k) - phip[j];
        return dp * dp + curv[j];
    };

    std::vector<std::array<double, 2>> points;
    bool saw_pos = false, saw_neg = false;
    for (int j = 0; j < n; ++j) {
        if (!ok[j]) continue;
        double column_scale = 0.0;
        for (int k = 0; k < prange.count; ++k)
            column_scale = std::max(column_scale, std::abs(gf(j, k)));
        for (int k = 0; k < prange.count; ++k) {
            const double g1 = gf(j, k);
            saw_pos = saw_pos || g1 > 0.0;
            saw_neg = saw_neg || g1 < 0.0;
            if (g1 == 0.0) {
                points.push_back({grid.point(j), prange.point(k)});
            } else if (k > 0 && k + 1 < prange.count && std::abs(g1) <= 1e-10 * column_scale &&
                       g1 <= gf(j, k - 1) && g1 <= gf(j, k + 1)) {
                // Doubled root: the field touches zero without changing sign.
                points.push_back({grid.point(j), prange.point(k)});
            }
            if (k + 1 < prange.count) {
                const double g2 = gf(j, k + 1);
                if (g1 * g2 < 0.0) {
                    const double t = g1 / (g1 - g2);
                    points.push_back({grid.point(j), prange.point(k) + t * prange.spacing()});
                }
            }
        }
        // Horizontal edges toward the next unmasked column.
        if (j + 1 < n && ok[j + 1]) {
            for (int k = 0; k < prange.count; ++k) {
                const double g1 = gf(j, k);
                const double g2 = gf(j + 1, k);
                if (g1 * g2 < 0.0) {
                    const double t = g1 / (g1 - g2);
                    points.push_back({grid.point(j) + t * dx, prange.point(k)});
                }
            }
        }
    }
    if (points.empty()) {
        if (saw_pos != saw_neg)
            throw NoContourError("Fermi field has constant sign on the grid");
        throw NoContourError("no contour points found");
    }
    return points;
}

} // namespace phasecap
