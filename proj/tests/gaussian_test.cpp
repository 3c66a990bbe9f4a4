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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "phasecap/gaussian.hpp"
#include "test_helpers.hpp"

using namespace phasecap;
using phasecap::testing::max_abs_diff;
using std::numbers::pi;

namespace {

// Quadrature oracle: second moments of a sampled 1D state by trapezoid
// quadrature, momentum moments via centered differences. Independent of
// the covariance route under test.
struct Moments {
    double xx, pp, xp;
};

Moments quadrature_moments(const GaussianState& g, double half_width = 10.0, int count = 32001) {
    const double dx = 2.0 * half_width / (count - 1);
    const double hbar = g.hbar;
    std::vector<std::complex<double>> psi(count);
    for (int i = 0; i < count; ++i)
        psi[i] = eval_wavefunction(g, {-half_width + i * dx});

    std::vector<double> fxx(count, 0.0), fpp(count, 0.0), fxp(count, 0.0);
    for (int i = 1; i + 1 < count; ++i) {
        const double x = -half_width + i * dx;
        const std::complex<double> dpsi = (psi[i + 1] - psi[i - 1]) / (2.0 * dx);
        const std::complex<double> ppsi(hbar * dpsi.imag(), -hbar * dpsi.real()); // -i hbar d/dx
        fxx[i] = x * x * std::norm(psi[i]);
        fpp[i] = std::norm(ppsi);
        // <(x p + p x)/2> = Re conj(psi) * (x p^ psi - i hbar psi / 2)
        fxp[i] = (std::conj(psi[i]) *
                  (x * ppsi - std::complex<double>(0.0, 0.5 * hbar) * psi[i]))
                     .real();
    }
    return Moments{testing::trapezoid(fxx, dx), testing::trapezoid(fpp, dx),
                   testing::trapezoid(fxp, dx)};
}

} // namespace

TEST_CASE("fiducial wavefunction value at the origin") {
    const GaussianState g = GaussianState::fiducial(1, 1.0);
    const auto v = eval_wavefunction(g, {0.0});
    CHECK(v.real() == Catch::Approx(std::pow(pi, -0.25)).epsilon(1e-14));
    CHECK(v.imag() == 0.0);
}

TEST_CASE("flipping the sign of Y conjugates the wavefunction") {
    testing::Rng rng(41);
    for (int t = 0; t < 5; ++t) {
        const std::size_t n = 1 + t % 3;
        const GaussianState g = testing::random_state(n, rng);
        const GaussianState conj(n, g.hbar, g.x, g.y.scaled(-1.0));
        std::vector<double> x(n);
        std::uniform_real_distribution<double> u(-2.0, 2.0);
        for (double& c : x) c = u(rng);
        const auto a = eval_wavefunction(g, x);
        const auto b = eval_wavefunction(conj, x);
        CHECK(b.real() == Catch::Approx(a.real()).margin(1e-14));
        CHECK(b.imag() == Catch::Approx(-a.imag()).margin(1e-14));
    }
}

TEST_CASE("1D wavefunction is normalized under trapezoid quadrature") {
    for (double xval : {1.0, 0.5, 2.5}) {
        const GaussianState g(1, 1.0, SymmetricMatrix::from_rows({{xval}}),
                              SymmetricMatrix::from_rows({{0.7}}));
        const int count = 2048;
        const double dx = 16.0 / (count - 1);
        std::vector<double> density(count);
        for (int i = 0; i < count; ++i)
            density[i] = std::norm(eval_wavefunction(g, {-8.0 + i * dx}));
        CHECK(testing::trapezoid(density, dx) == Catch::Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("fermi form of the fiducial state is the disk") {
    for (double hbar : {1.0, 0.5}) {
        const FermiForm f = fermi_form(GaussianState::fiducial(1, hbar));
        CHECK(max_abs_diff(f.matrix.mat(), Matrix::identity(2)) == 0.0);
        CHECK(f.level == hbar);
    }
}

TEST_CASE("fermi form with Y = 0 is diag(X^2, I)") {
    const SymmetricMatrix x = SymmetricMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}});
    const GaussianState g(2, 1.0, x, SymmetricMatrix(Matrix(2, 2)));
    const FermiForm f = fermi_form(g);
    const Matrix expect = block2x2(x.mat() * x.mat(), Matrix(2, 2), Matrix(2, 2),
                                   Matrix::identity(2));
    CHECK(max_abs_diff(f.matrix.mat(), expect) == 0.0);
    CHECK(f.level == Catch::Approx(3.0));
}

TEST_CASE("fermi form for X = Y = I at n = 2") {
    const GaussianState g(2, 1.0, SymmetricMatrix::identity(2), SymmetricMatrix::identity(2));
    const FermiForm f = fermi_form(g);
    const Matrix expect = block2x2(Matrix::identity(2).scaled(2.0), Matrix::identity(2),
                                   Matrix::identity(2), Matrix::identity(2));
    CHECK(max_abs_diff(f.matrix.mat(), expect) == 0.0);
    CHECK(f.level == Catch::Approx(2.0));
}

TEST_CASE("fermi form agrees with the expanded scalar observable") {
    testing::Rng rng(42);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 1 + t % 3;
        const GaussianState g = testing::random_state(n, rng);
        const FermiForm f = fermi_form(g);
        std::vector<double> z(2 * n);
        for (double& c : z) c = u(rng);

        // (p + Yx)^2 + X^2 x.x - hbar Tr X evaluated directly.
        std::vector<double> xpart(z.begin(), z.begin() + n);
        std::vector<double> ppart(z.begin() + n, z.end());
        const std::vector<double> yx = g.y.mat() * xpart;
        double direct = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            direct += (ppart[i] + yx[i]) * (ppart[i] + yx[i]);
        const std::vector<double> x2x = (g.x.mat() * g.x.mat()) * xpart;
        direct += dot(x2x, xpart) - g.hbar * g.x.mat().trace();

        CHECK(f.value_at(z) == Catch::Approx(direct).margin(1e-12 * (1.0 + std::abs(direct))));
    }
}

TEST_CASE("fermi factorization on closed-form cases") {
    const GaussianState fid = GaussianState::fiducial(2, 1.0);
    CHECK(max_abs_diff(fermi_factorization(fid), Matrix::identity(4)) == 0.0);

    const GaussianState squeezed(1, 1.0, SymmetricMatrix::from_rows({{4.0}}),
                                 SymmetricMatrix::from_rows({{0.0}}));
    const Matrix s = fermi_factorization(squeezed);
    CHECK(s(0, 0) == Catch::Approx(2.0).epsilon(1e-14));
    CHECK(s(1, 1) == Catch::Approx(0.5).epsilon(1e-14));
    CHECK(s(0, 1) == 0.0);
    CHECK(s(1, 0) == 0.0);
}

TEST_CASE("fermi factorization identity S^T diag(X,X) S = M_F") {
    testing::Rng rng(43);
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = 1 + t % 3;
        const GaussianState g = testing::random_state(n, rng);
        const Matrix s = fermi_factorization(g);
        CHECK(is_symplectic(s, 1e-9));
        const Matrix dxx = block2x2(g.x.mat(), Matrix(n, n), Matrix(n, n), g.x.mat());
        const FermiForm f = fermi_form(g);
        CHECK(max_abs_diff(s.transposed() * dxx * s, f.matrix.mat()) <=
              1e-9 * std::max(1.0, f.matrix.mat().max_abs()));
    }
}

TEST_CASE("wigner matrix closed forms") {
    const GaussianState fid = GaussianState::fiducial(2, 1.0);
    CHECK(max_abs_diff(wigner_matrix(fid).mat(), Matrix::identity(4)) == 0.0);

    for (double y : {-0.8, 0.3, 1.4}) {
        const GaussianState g(1, 1.0, SymmetricMatrix::from_rows({{1.0}}),
                              SymmetricMatrix::from_rows({{y}}));
        const SymmetricMatrix gm = wigner_matrix(g);
        CHECK(gm(0, 0) == Catch::Approx(1.0 + y * y).epsilon(1e-14));
        CHECK(gm(0, 1) == Catch::Approx(y).epsilon(1e-14));
        CHECK(gm(1, 1) == Catch::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("wigner matrix is S^T S and symplectic with unit spectrum") {
    testing::Rng rng(44);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 3;
        const GaussianState g = testing::random_state(n, rng);
        const SymmetricMatrix gm = wigner_matrix(g);
        const Matrix s = fermi_factorization(g);
        CHECK(max_abs_diff(gm.mat(), s.transposed() * s) <= 1e-10 * (1.0 + gm.mat().max_abs()));
        for (double v : symplectic_spectrum(gm).values)
            CHECK(v == Catch::Approx(1.0).margin(1e-8));
    }
}

TEST_CASE("wigner closed form values and symmetry") {
    const GaussianState fid = GaussianState::fiducial(1, 1.0);
    CHECK(wigner_closed_form(fid, {0.0, 0.0}) == Catch::Approx(1.0 / pi).epsilon(1e-14));

    testing::Rng rng(45);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const GaussianState g = testing::random_state(2, rng);
    for (int t = 0; t < 5; ++t) {
        std::vector<double> z(4), mz(4);
        for (std::size_t i = 0; i < 4; ++i) {
            z[i] = u(rng);
            mz[i] = -z[i];
        }
        CHECK(wigner_closed_form(g, z) == Catch::Approx(wigner_closed_form(g, mz)));
        CHECK(wigner_closed_form(g, z) > 0.0);
        CHECK(wigner_closed_form(g, z) <= wigner_closed_form(g, {0.0, 0.0, 0.0, 0.0}));
    }
}

TEST_CASE("wigner closed form integrates to one at n = 1") {
    testing::Rng rng(46);
    const GaussianState g = testing::random_state(1, rng);
    const int count = 201;
    const double half = 8.0;
    const double step = 2.0 * half / (count - 1);
    double total = 0.0;
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) {
            const double wx = (i == 0 || i + 1 == count) ? 0.5 : 1.0;
            const double wp = (j == 0 || j + 1 == count) ? 0.5 : 1.0;
            total += wx * wp * wigner_closed_form(g, {-half + i * step, -half + j * step});
        }
    CHECK(total * step * step == Catch::Approx(1.0).margin(1e-8));
}

TEST_CASE("fermi capacity closed form and equality cases") {
    testing::Rng rng(47);

    // n = 1: always h/2 regardless of X and Y.
    for (int t = 0; t < 5; ++t) {
        const GaussianState g = testing::random_state(1, rng, 1.0);
        CHECK(fermi_capacity(g) == Catch::Approx(pi).epsilon(1e-12));
    }

    // Isotropic X: n h / 2.
    for (std::size_t n : {2u, 3u}) {
        const GaussianState g(n, 1.0, SymmetricMatrix::identity(n).scaled(1.7),
                              testing::random_symmetric(n, rng));
        CHECK(fermi_capacity(g) ==
              Catch::Approx(static_cast<double>(n) * pi).epsilon(1e-12));
    }

    // X = diag(1,2), Y = 0: 3 pi / 2.
    const GaussianState g(2, 1.0, SymmetricMatrix::from_rows({{1.0, 0.0}, {0.0, 2.0}}),
                          SymmetricMatrix(Matrix(2, 2)));
    CHECK(fermi_capacity(g) == Catch::Approx(1.5 * pi).epsilon(1e-12));
}

TEST_CASE("fermi capacity equals the ellipsoid capacity pipeline") {
    testing::Rng rng(48);
    for (int t = 0; t < 20; ++t) {
        const std::size_t n = 1 + t % 3;
        const GaussianState g = testing::random_state(n, rng);
        CHECK(fermi_capacity(g) ==
              Catch::Approx(capacity(fermi_form(g).as_ellipsoid())).epsilon(1e-9));
    }
}

TEST_CASE("fermi capacity bounds h/2 <= c <= n h / 2") {
    testing::Rng rng(49);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + t % 3;
        const GaussianState g = testing::random_state(n, rng);
        const double c = fermi_capacity(g);
        const double h = 2.0 * pi * g.hbar;
        CHECK(c >= 0.5 * h * (1.0 - 1e-12));
        CHECK(c <= 0.5 * static_cast<double>(n) * h * (1.0 + 1e-12));
    }
}

TEST_CASE("fermi ellipsoid is a quantum blob only at n = 1") {
    testing::Rng rng(50);
    for (int t = 0; t < 10; ++t) {
        const GaussianState g1 = testing::random_state(1, rng);
        CHECK(is_quantum_blob(fermi_form(g1).as_ellipsoid(), 1e-8, 1.0));

        const std::size_t n = 2 + t % 2;
        const GaussianState gn = testing::random_state(n, rng);
        CHECK_FALSE(is_quantum_blob(fermi_form(gn).as_ellipsoid(), 1e-6, 1.0));

        // But it always contains one.
        const QuantumBlob blob = inscribed_quantum_blob(fermi_form(gn).as_ellipsoid(), 1.0, t);
        CHECK(containment_margin(fermi_form(gn).as_ellipsoid(), blob, 4000, t + 1) >= -1e-9);
    }
}

TEST_CASE("rs_check on the three reference states") {
    // Fiducial: Sigma = diag(1/2, 1/2), saturated.
    {
        const RsReport r = rs_check(GaussianState::fiducial(1, 1.0));
        CHECK(r.covariance(0, 0) == Catch::Approx(0.5).epsilon(1e-14));
        CHECK(r.covariance(1, 1) == Catch::Approx(0.5).epsilon(1e-14));
        CHECK(r.covariance(0, 1) == Catch::Approx(0.0).margin(1e-14));
        CHECK(r.per_axis[0].lhs == Catch::Approx(0.25).epsilon(1e-13));
        CHECK(r.per_axis[0].rhs == Catch::Approx(0.25).epsilon(1e-13));
        CHECK(r.saturated);
    }
    // X = 4, Y = 0: Sigma = diag(1/8, 2), product 1/4, saturated.
    {
        const GaussianState g(1, 1.0, SymmetricMatrix::from_rows({{4.0}}),
                              SymmetricMatrix::from_rows({{0.0}}));
        const RsReport r = rs_check(g);
        CHECK(r.covariance(0, 0) == Catch::Approx(0.125).epsilon(1e-13));
        CHECK(r.covariance(1, 1) == Catch::Approx(2.0).epsilon(1e-13));
        CHECK(r.per_axis[0].lhs == Catch::Approx(0.25).epsilon(1e-12));
        CHECK(r.saturated);
    }
    // X = 1, Y = 1: Sigma = (1/2)[[1,-1],[-1,2]], lhs = rhs = 1/2, saturated.
    {
        const GaussianState g(1, 1.0, SymmetricMatrix::from_rows({{1.0}}),
                              SymmetricMatrix::from_rows({{1.0}}));
        const RsReport r = rs_check(g);
        CHECK(r.covariance(0, 0) == Catch::Approx(0.5).epsilon(1e-13));
        CHECK(r.covariance(0, 1) == Catch::Approx(-0.5).epsilon(1e-13));
        CHECK(r.covariance(1, 1) == Catch::Approx(1.0).epsilon(1e-13));
        CHECK(r.per_axis[0].lhs == Catch::Approx(0.5).epsilon(1e-12));
        CHECK(r.per_axis[0].rhs == Catch::Approx(0.5).epsilon(1e-12));
        CHECK(r.saturated);
    }
}

TEST_CASE("rs_check covariance matches quadrature moments") {
    testing::Rng rng(51);
    for (int t = 0; t < 3; ++t) {
        const GaussianState g = testing::random_state(1, rng);
        const RsReport r = rs_check(g);
        const Moments m = quadrature_moments(g);
        CHECK(r.covariance(0, 0) == Catch::Approx(m.xx).margin(1e-6));
        CHECK(r.covariance(1, 1) == Catch::Approx(m.pp).margin(1e-6));
        CHECK(r.covariance(0, 1) == Catch::Approx(m.xp).margin(1e-6));
    }
}

TEST_CASE("rs inequality holds on every axis for random states") {
    testing::Rng rng(52);
    for (int t = 0; t < 40; ++t) {
        const std::size_t n = 1 + t % 3;
        const RsReport r = rs_check(testing::random_state(n, rng));
        for (const RsAxis& ax : r.per_axis) CHECK(ax.lhs >= ax.rhs - 1e-12);
        if (n == 1) CHECK(r.saturated); // det Sigma = hbar^2/4 at one degree of freedom
    }
}

TEST_CASE("gradient identities of the log-amplitude and phase fields") {
    // Phi(x) = -Y x.x / 2 has gradient -Yx; R = exp(-X x.x / 2 hbar) has
    // Laplacian ratio -Tr X/hbar + X^2 x.x / hbar^2. Verified by centered
    // finite differences at second order (error ratio ~4 when dx halves).
    const double hbar = 1.0;
    const SymmetricMatrix x2 = SymmetricMatrix::from_rows({{1.2, 0.3}, {0.3, 0.8}});
    const SymmetricMatrix y2 = SymmetricMatrix::from_rows({{0.4, -0.2}, {-0.2, 0.9}});
    const std::vector<double> pt{0.35, -0.6};

    auto phi = [&](double a, double b) {
        const std::vector<double> v{a, b};
        return -0.5 * dot(y2.mat() * v, v);
    };
    auto rfun = [&](double a, double b) {
        const std::vector<double> v{a, b};
        return std::exp(-dot(x2.mat() * v, v) / (2.0 * hbar));
    };

    const std::vector<double> grad_expect = y2.mat() * pt; // -grad Phi = Yx
    const std::vector<double> x2x = (x2.mat() * x2.mat()) * pt;
    const double lap_expect = -x2.mat().trace() / hbar + dot(x2x, pt) / (hbar * hbar);

    double prev_lerr = 0.0;
    for (int halving = 0; halving < 2; ++halving) {
        const double dx = 1e-2 / (1 << halving);
        // Phi is quadratic, so the centered difference reproduces -Yx exactly.
        const double gx = (phi(pt[0] + dx, pt[1]) - phi(pt[0] - dx, pt[1])) / (2 * dx);
        const double gy = (phi(pt[0], pt[1] + dx) - phi(pt[0], pt[1] - dx)) / (2 * dx);
        CHECK(std::abs(gx + grad_expect[0]) <= 1e-10);
        CHECK(std::abs(gy + grad_expect[1]) <= 1e-10);

        const double r0 = rfun(pt[0], pt[1]);
        const double lap = (rfun(pt[0] + dx, pt[1]) + rfun(pt[0] - dx, pt[1]) +
                            rfun(pt[0], pt[1] + dx) + rfun(pt[0], pt[1] - dx) - 4.0 * r0) /
                           (dx * dx);
        const double lerr = std::abs(lap / r0 - lap_expect);
        if (halving == 1) CHECK(prev_lerr / lerr == Catch::Approx(4.0).margin(0.5));
        prev_lerr = lerr;
    }
}
