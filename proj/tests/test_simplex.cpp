#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "chexpm/prng.hpp"
#include "chexpm/simplex.hpp"
#include "chexpm/spectrum.hpp"
#include "chexpm/spin.hpp"

using namespace chexpm;

namespace {

constexpr double kPi = std::numbers::pi;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double psum(const EigenvalueVector& ev, int p) {
    double s = 0.0;
    for (double v : ev.components) s += std::pow(v, p);
    return s;
}

}  // namespace

TEST_SUITE("simplex") {

TEST_CASE("vertex construction and gram relations") {
    const SimplexVertexSet v2 = simplex_vertices(2, 1.0);
    CHECK(std::abs(v2.vertices[0][0] - 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(v2.vertices[0][1] + 1.0 / std::sqrt(2.0)) < 1e-14);
    CHECK(std::abs(dot(v2.vertices[0], v2.vertices[1]) + 1.0) < 1e-14);

    for (int n = 2; n <= 12; ++n) {
        const double r = 0.7 + 0.3 * n;
        const SimplexVertexSet vs = simplex_vertices(n, r);
        std::vector<double> vertex_sum(n, 0.0);
        for (int a = 0; a < n; ++a) {
            for (int b = 0; b < n; ++b) {
                const double want = a == b ? r * r : r * r / (1.0 - n);
                CHECK(std::abs(dot(vs.vertices[a], vs.vertices[b]) - want) <= 1e-12 * r * r);
            }
            for (int i = 0; i < n; ++i) vertex_sum[i] += vs.vertices[a][i];
        }
        for (int i = 0; i < n; ++i) CHECK(std::abs(vertex_sum[i]) <= 1e-12 * r);
    }
    CHECK_THROWS_AS(simplex_vertices(1, 1.0), InvalidInputError);
    CHECK_THROWS_AS(simplex_vertices(3, 0.0), InvalidInputError);
}

TEST_CASE("projection reproduces the eigenvalue direction") {
    // axis along a known traceless spectrum recovers it exactly
    const std::vector<double> lam{1.0, -0.5, -0.5};
    const double r = std::sqrt(1.0 + 0.25 + 0.25);
    std::vector<double> axis(3);
    for (int i = 0; i < 3; ++i) axis[i] = lam[i] / r;
    const EigenvalueVector ev = project_spectrum(simplex_vertices(3, r), axis);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(ev.components[i] - lam[i]) < 1e-12);

    const EigenvalueVector e2 = project_spectrum(
        simplex_vertices(2, std::sqrt(2.0)),
        std::vector<double>{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)});
    CHECK(std::abs(e2.components[0] - 1.0) < 1e-12);
    CHECK(std::abs(e2.components[1] + 1.0) < 1e-12);

    // axis locked to a face normal forces a degenerate pair
    const std::vector<double> face{std::sqrt(2.0 / 3.0), -std::sqrt(1.0 / 6.0),
                                   -std::sqrt(1.0 / 6.0)};
    const EigenvalueVector ef = project_spectrum(simplex_vertices(3, 1.0), face);
    CHECK(std::abs(ef.components[1] - ef.components[2]) < 1e-12);

    CHECK_THROWS_AS(project_spectrum(simplex_vertices(3, 1.0),
                                     std::vector<double>{1.0, 0.0, 0.0}),
                    InvalidInputError);
    CHECK_THROWS_AS(project_spectrum(simplex_vertices(3, 1.0),
                                     std::vector<double>{0.4, 0.0, -0.4}),
                    InvalidInputError);
}

TEST_CASE("projection matches the eigensolver") {
    for (int n : {3, 4, 5}) {
        for (int rep = 0; rep < 25; ++rep) {
            const HermitianTraceless h = random_traceless_hermitian(n, 37 * n + rep);
            const Spectrum s = eig_hermitian(h);
            double r2 = 0.0;
            for (const Complex& v : s.values) r2 += std::norm(v);
            const double r = std::sqrt(r2);
            std::vector<double> axis(n);
            for (int k = 0; k < n; ++k) axis[k] = s.values[k].real() / r;
            const EigenvalueVector ev = project_spectrum(simplex_vertices(n, r), axis);
            std::vector<double> got = ev.components;
            std::vector<double> want(n);
            for (int k = 0; k < n; ++k) want[k] = s.values[k].real();
            std::sort(got.begin(), got.end());
            std::sort(want.begin(), want.end());
            for (int k = 0; k < n; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-9);
        }
    }
}

TEST_CASE("angle parameterization component formulas") {
    // N=3 at theta = 0: r chosen so the amplitude is 1
    const double r3 = std::sqrt(1.5);
    const EigenvalueVector e3 = angles_to_spectrum(AngleParams{3, r3, {0.0}, false});
    CHECK(std::abs(e3.components[0] + 0.5) < 1e-14);
    CHECK(std::abs(e3.components[1] + 0.5) < 1e-14);
    CHECK(std::abs(e3.components[2] - 1.0) < 1e-14);
    double prod = 1.0;
    for (double v : e3.components) prod *= v;
    CHECK(std::abs(prod - 0.25) < 1e-14);
    CHECK(std::abs(prod - std::pow(r3, 3) / (3.0 * std::sqrt(6.0))) < 1e-14);

    // N=4 at theta = pi/2, phi = pi/4
    const EigenvalueVector e4 =
        angles_to_spectrum(AngleParams{4, 2.0, {kPi / 2.0, kPi / 4.0}, false});
    CHECK(std::abs(e4.components[0] + 1.0) < 1e-13);
    CHECK(std::abs(e4.components[1] - 1.0) < 1e-13);
    CHECK(std::abs(e4.components[2] + 1.0) < 1e-13);
    CHECK(std::abs(e4.components[3] - 1.0) < 1e-13);

    // N=5 at psi = 0
    const EigenvalueVector e5 =
        angles_to_spectrum(AngleParams{5, 1.0, {0.0, 0.4, 1.3}, false});
    CHECK(std::abs(e5.components[0] + 2.0 / std::sqrt(5.0)) < 1e-14);
    for (int k = 1; k < 5; ++k)
        CHECK(std::abs(e5.components[k] - 0.5 / std::sqrt(5.0)) < 1e-14);

    CHECK_THROWS_AS(angles_to_spectrum(AngleParams{6, 1.0, {0, 0, 0, 0}, false}),
                    UnsupportedOrderError);
}

TEST_CASE("component maps satisfy the sphere constraints") {
    SplitMix64 rng(41);
    for (int n : {3, 4, 5}) {
        for (int rep = 0; rep < 50; ++rep) {
            AngleParams p{n, 0.2 + 2.5 * rng.uniform(), {}, false};
            p.angles.resize(n - 2);
            for (double& a : p.angles) a = 2.0 * kPi * rng.uniform();
            const EigenvalueVector ev = angles_to_spectrum(p);
            CHECK(std::abs(psum(ev, 1)) <= 1e-12 * p.r * n);
            CHECK(std::abs(psum(ev, 2) - p.r * p.r) <= 1e-12 * p.r * p.r);
        }
    }
}

TEST_CASE("invariant closed forms") {
    // N=4 at theta = pi/2, phi = 0: trH3 = 0 and detH = 0
    const AngleInvariants i4 =
        invariants_from_angles(AngleParams{4, 1.3, {kPi / 2.0, 0.0}, false});
    CHECK(std::abs(i4.tr_h3) < 1e-12);
    CHECK(std::abs(*i4.det_h) < 1e-12);

    // N=5 at psi = 0: trH3 = -3 r^3 / (2 sqrt 5)
    const AngleInvariants i5 =
        invariants_from_angles(AngleParams{5, 1.1, {0.0, 0.7, 0.2}, false});
    const double r3 = 1.1 * 1.1 * 1.1;
    CHECK(std::abs(i5.tr_h3 + 3.0 * r3 / (2.0 * std::sqrt(5.0))) < 1e-12);

    // N=3 at theta = pi/6: detH = 0
    const AngleInvariants i3 = invariants_from_angles(AngleParams{3, 0.9, {kPi / 6.0}, false});
    CHECK(std::abs(*i3.det_h) < 1e-12);

    SplitMix64 rng(43);
    for (int n : {3, 4, 5}) {
        for (int rep = 0; rep < 200; ++rep) {
            AngleParams p{n, 0.2 + 2.5 * rng.uniform(), {}, false};
            p.angles.resize(n - 2);
            for (double& a : p.angles) a = 2.0 * kPi * rng.uniform();
            const AngleInvariants inv = invariants_from_angles(p);
            const EigenvalueVector ev = angles_to_spectrum(p);
            const double s3 = std::max(std::pow(p.r, 3), 1e-300);
            CHECK(std::abs(inv.tr_h3 - psum(ev, 3)) <= 1e-11 * s3);
            if (inv.tr_h4)
                CHECK(std::abs(*inv.tr_h4 - psum(ev, 4)) <= 1e-11 * std::pow(p.r, 4));
        }
    }
}

TEST_CASE("su3 angle from invariants") {
    const double r = std::sqrt(1.5);
    CHECK(std::abs(su3_angle_from_invariants(r * r, 0.25)) < 1e-12);
    CHECK(std::abs(su3_angle_from_invariants(1.0, 0.0) - kPi / 6.0) < 1e-12);
    // arccos loses half the digits at the domain edge, so the extremal det
    // only pins theta to ~sqrt(eps)
    const double det_min = -1.0 / (3.0 * std::sqrt(6.0));
    CHECK(std::abs(su3_angle_from_invariants(1.0, det_min) - kPi / 3.0) < 1e-7);
    CHECK_THROWS_AS(su3_angle_from_invariants(1.0, 1.0), InconsistentInvariantsError);

    // Viete product identity over random (r, theta)
    SplitMix64 rng(47);
    for (int rep = 0; rep < 200; ++rep) {
        const double rr = 0.3 + 2.0 * rng.uniform();
        const double theta = kPi / 3.0 * rng.uniform();
        const EigenvalueVector ev = angles_to_spectrum(AngleParams{3, rr, {theta}, false});
        double prod = 1.0;
        for (double v : ev.components) prod *= v;
        const double want = std::pow(rr, 3) * std::cos(3.0 * theta) / (3.0 * std::sqrt(6.0));
        CHECK(std::abs(prod - want) <= 1e-12 * std::max(1.0, std::pow(rr, 3)));
        CHECK(std::abs(su3_angle_from_invariants(rr * rr, prod) - theta) <= 1e-9);
    }
}

TEST_CASE("su4 angles from invariants") {
    SplitMix64 rng(53);
    for (int rep = 0; rep < 100; ++rep) {
        const double r = 0.4 + 2.0 * rng.uniform();
        const double theta = 0.1 + (kPi - 0.2) * rng.uniform();
        const double phi = 2.0 * kPi * rng.uniform();
        const AngleInvariants inv =
            invariants_from_angles(AngleParams{4, r, {theta, phi}, false});
        const AngleParams rec = su4_angles_from_invariants(inv.tr_h2, inv.tr_h3, *inv.tr_h4);
        const AngleInvariants fwd = invariants_from_angles(rec);
        CHECK(std::abs(fwd.tr_h3 - inv.tr_h3) <= 1e-9 * std::max(std::pow(r, 3), std::abs(inv.tr_h3)));
        CHECK(std::abs(*fwd.tr_h4 - *inv.tr_h4) <= 1e-9 * std::pow(r, 4));
        // canonical ranges
        CHECK(rec.angles[0] >= 0.0);
        CHECK(rec.angles[0] <= kPi / 2.0 + 1e-12);
        CHECK(rec.angles[1] >= 0.0);
        CHECK(rec.angles[1] <= kPi / 2.0 + 1e-12);
        if (inv.tr_h3 > 1e-9) CHECK(rec.angles[1] <= kPi / 4.0 + 1e-9);
    }

    // spectrum multiset reproduction for the paired degenerate layout
    const double r = 1.7;
    std::vector<double> lam{-r / 2.0, -r / 2.0, r / 2.0, r / 2.0};
    double p3 = 0.0, p4 = 0.0;
    for (double v : lam) {
        p3 += v * v * v;
        p4 += v * v * v * v;
    }
    const AngleParams rec = su4_angles_from_invariants(r * r, p3, p4);
    std::vector<double> got = angles_to_spectrum(rec).components;
    std::sort(got.begin(), got.end());
    for (int k = 0; k < 4; ++k) CHECK(std::abs(got[k] - lam[k]) <= 1e-9 * r);

    CHECK_THROWS_AS(su4_angles_from_invariants(1.0, 10.0, 0.0), InconsistentInvariantsError);
}

TEST_CASE("spectrum to angles roundtrips") {
    SplitMix64 rng(59);
    for (int rep = 0; rep < 100; ++rep) {
        // N=3 on the fundamental domain
        {
            const double r = 0.3 + 2.0 * rng.uniform();
            const double theta = 0.02 + (kPi / 3.0 - 0.04) * rng.uniform();
            const AngleParams p{3, r, {theta}, false};
            const AngleParams back = spectrum_to_angles(angles_to_spectrum(p));
            CHECK(std::abs(back.r - r) <= 1e-12 * r);
            CHECK(std::abs(back.angles[0] - theta) <= 1e-10);
        }
        // N=4 interior angles
        {
            const double r = 0.3 + 2.0 * rng.uniform();
            const double theta = 0.1 + (kPi - 0.2) * rng.uniform();
            const double phi = 0.1 + (2.0 * kPi - 0.2) * rng.uniform();
            const AngleParams p{4, r, {theta, phi}, false};
            const AngleParams back = spectrum_to_angles(angles_to_spectrum(p));
            CHECK(std::abs(back.angles[0] - theta) <= 1e-10);
            CHECK(std::abs(back.angles[1] - phi) <= 1e-10);
        }
        // N=5 interior angles
        {
            const double r = 0.3 + 2.0 * rng.uniform();
            const double psi = 0.1 + (kPi - 0.2) * rng.uniform();
            const double theta = 0.1 + (kPi - 0.2) * rng.uniform();
            const double phi = 0.1 + (2.0 * kPi - 0.2) * rng.uniform();
            const AngleParams p{5, r, {psi, theta, phi}, false};
            const AngleParams back = spectrum_to_angles(angles_to_spectrum(p));
            CHECK(std::abs(back.angles[0] - psi) <= 1e-10);
            CHECK(std::abs(back.angles[1] - theta) <= 1e-10);
            CHECK(std::abs(back.angles[2] - phi) <= 1e-10);
        }
    }
}

TEST_CASE("roundtrip example values") {
    const double r = 1.4;
    const EigenvalueVector e3 = angles_to_spectrum(AngleParams{3, r, {0.3}, false});
    CHECK(std::abs(spectrum_to_angles(e3).angles[0] - 0.3) < 1e-10);
    const EigenvalueVector e4 = angles_to_spectrum(AngleParams{4, r, {1.0, 0.7}, false});
    const AngleParams b4 = spectrum_to_angles(e4);
    CHECK(std::abs(b4.angles[0] - 1.0) < 1e-10);
    CHECK(std::abs(b4.angles[1] - 0.7) < 1e-10);
}

TEST_CASE("gimbal conventions") {
    // N=5 with psi = 0: theta and phi are unconstrained, returned as 0
    const EigenvalueVector ev =
        angles_to_spectrum(AngleParams{5, 1.2, {0.0, 0.9, 2.2}, false});
    const AngleParams back = spectrum_to_angles(ev);
    CHECK(back.gimbal);
    CHECK(back.angles[0] == 0.0);
    CHECK(back.angles[1] == 0.0);
    CHECK(back.angles[2] == 0.0);
    // the multiset still roundtrips through the gimbal representative
    std::vector<double> got = angles_to_spectrum(back).components;
    std::vector<double> want = ev.components;
    std::sort(got.begin(), got.end());
    std::sort(want.begin(), want.end());
    for (int k = 0; k < 5; ++k) CHECK(std::abs(got[k] - want[k]) <= 1e-10);

    // N=4 with theta = 0: phi unconstrained
    const EigenvalueVector e4 = angles_to_spectrum(AngleParams{4, 1.0, {0.0, 1.1}, false});
    CHECK(spectrum_to_angles(e4).gimbal);

    // inconsistent input: components that cannot satisfy the constraints
    EigenvalueVector bad;
    bad.components = {2.0, 1.0, 1.0, 1.0};
    CHECK_THROWS_AS(spectrum_to_angles(bad), InconsistentInvariantsError);

    // non-finite components are rejected up front
    EigenvalueVector nan_ev;
    nan_ev.components = {std::numeric_limits<double>::quiet_NaN(), 0.0, 0.0};
    CHECK_THROWS_AS(spectrum_to_angles(nan_ev), InvalidInputError);
    CHECK_THROWS_AS(angles_to_spectrum(AngleParams{4, 1.0,
                        {std::numeric_limits<double>::infinity(), 0.0}, false}),
                    InvalidInputError);
    CHECK_THROWS_AS(su4_angles_from_invariants(1.0, std::numeric_limits<double>::quiet_NaN(), 0.3),
                    InvalidInputError);
}

}  // TEST_SUITE
