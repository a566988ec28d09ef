#include "chexpm/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "chexpm/expm.hpp"
#include "chexpm/prng.hpp"
#include "chexpm/simplex.hpp"
#include "chexpm/spin.hpp"

namespace chexpm {

namespace {

struct Recorder {
    SuiteResult res;

    void check(bool ok, double normalized_dev, const std::string& note) {
        ++res.checks;
        if (!ok) ++res.failures;
        if (normalized_dev > res.worst) {
            res.worst = normalized_dev;
            res.worst_note = note;
        }
    }
    // Deviation against a tolerance; pass iff dev <= tol.
    void within(double dev, double tol, const std::string& note) {
        check(dev <= tol, dev / tol, note);
    }
};

ComplexMatrix random_complex(int n, SplitMix64& rng) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex{rng.gaussian(), rng.gaussian()};
    return m;
}

double spectral_radius(const Spectrum& s) {
    double m = 0.0;
    for (const Complex& v : s.values) m = std::max(m, std::abs(v));
    return m;
}

SuiteResult suite_matrix_core(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "matrix_core";
    SplitMix64 rng(seed);
    for (int it = 0; it < samples; ++it) {
        const ComplexMatrix a = random_complex(5, rng);
        const ComplexMatrix b = random_complex(5, rng);
        const Complex tab = (a * b).trace();
        const Complex tba = (b * a).trace();
        r.within(std::abs(tab - tba), 1e-12 * std::max(1.0, std::abs(tab)), "tr(AB)=tr(BA)");

        const HermitianTraceless h = random_traceless_hermitian(4 + (it % 3), seed + 1000 + it);
        bool rejected = false;
        try {
            ComplexMatrix shifted = h.matrix();
            for (int i = 0; i < shifted.n(); ++i) shifted(i, i) += 0.5;
            HermitianTraceless bad(shifted);
        } catch (const InvalidInputError&) {
            rejected = true;
        }
        r.check(rejected, rejected ? 0.0 : 1.0, "traced matrix rejected");
    }
    return r.res;
}

SuiteResult suite_spectra(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "spectra";
    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 7;
        const HermitianTraceless h = random_traceless_hermitian(n, seed + it);
        const Spectrum s = eig_hermitian(h);
        const double fro = h.matrix().frobenius_norm();
        Complex sum{}, prod{1.0, 0.0};
        double sum2 = 0.0;
        for (const Complex& v : s.values) {
            sum += v;
            prod *= v;
            sum2 += std::norm(v);
        }
        r.within(std::abs(sum), 1e-10 * fro, "sum of eigenvalues");
        r.within(std::abs(sum2 - fro * fro), 1e-9 * fro * fro, "sum of squares = tr H^2");
        const Complex det = determinant(h.matrix());
        r.within(std::abs(prod - det), 1e-8 * std::max(1.0, std::abs(det)), "product = det");

        if (n <= 6) {
            const Spectrum g = char_roots_general(h.matrix());
            double worst = 0.0;
            for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(g.values[k] - s.values[k]));
            r.within(worst, 1e-7, "char roots match jacobi");
        }
    }
    return r.res;
}

SuiteResult suite_invariants(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "invariants";
    SplitMix64 rng(seed);
    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 5;
        const ComplexMatrix m = random_complex(n, rng);
        const SymmetricInvariants si = sym_from_traces(trace_powers(m, n), n);
        for (int rep = 0; rep < 4; ++rep) {
            const Complex t{rng.gaussian() * 0.4, rng.gaussian() * 0.4};
            Complex rhs{}, tp{1.0, 0.0};
            for (int k = 0; k <= n; ++k) {
                rhs += tp * si.s[k];
                tp *= t;
            }
            ComplexMatrix itm = ComplexMatrix::identity(n);
            itm += m * t;
            const Complex lhs = determinant(itm);
            r.within(std::abs(lhs - rhs), 1e-9 * std::max(1.0, std::abs(lhs)),
                     "det(I+tM) generating function");
        }
        const HermitianTraceless h = random_traceless_hermitian(n, seed + 7000 + it);
        const SymmetricInvariants ht = sym_from_traces(trace_powers(h.matrix(), n), n);
        r.check(ht.s[1] == Complex{}, std::abs(ht.s[1]), "S_1 exactly 0 for traceless");
        const SymmetricInvariants hs = sym_from_spectrum(eig_hermitian(h));
        double worst = 0.0;
        for (int k = 0; k <= n; ++k)
            worst = std::max(worst, std::abs(ht.s[k] - hs.s[k]) / std::max(1.0, std::abs(ht.s[k])));
        r.within(worst, 1e-8, "traces vs spectrum route");
        for (int k = 0; k <= std::min(4, n); ++k) {
            double fact = 1.0;
            for (int q = 2; q <= k; ++q) fact *= q;
            const Complex ik = explicit_low_invariants(ht.power_sums, k);
            r.within(std::abs(ik - fact * ht.s[k]), 1e-10 * std::max(1.0, std::abs(ik)),
                     "I_m = m! S_m");
        }
    }
    return r.res;
}

SuiteResult suite_response(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "response";
    SplitMix64 rng(seed);
    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 5;
        const HermitianTraceless h = random_traceless_hermitian(n, seed + it);
        const Spectrum s = eig_hermitian(h);
        const double t = -3.0 + 6.0 * rng.uniform();
        const ResponseDerivs rd = response_derivs(s, t, n);
        if (!s.degenerate()) {
            // moderate |t| keeps the e^{|t| R} contour cancellation benign
            const double tc = -1.5 + 3.0 * rng.uniform();
            const Complex direct = response_derivs(s, tc, 0).derivs[0];
            const Complex oracle =
                response_contour_oracle(s, tc, default_contour_radius(s), 512);
            r.within(std::abs(direct - oracle), 1e-9, "residue sum vs contour");
        }
        // derivative consistency via central difference of the stack below
        const double hstep = 1e-5;
        const ResponseDerivs lo = response_derivs(s, t - hstep, n);
        const ResponseDerivs hi = response_derivs(s, t + hstep, n);
        for (int p = 0; p + 1 <= n; ++p) {
            const Complex fd = -kI * (hi.derivs[p] - lo.derivs[p]) / (2.0 * hstep);
            r.within(std::abs(fd - rd.derivs[p + 1]),
                     1e-6 * std::max(1.0, std::abs(rd.derivs[p + 1])) + 1e-5 * hstep,
                     "derivative stack vs finite difference");
        }
    }
    for (int two_j = 1; two_j <= 8; ++two_j) {
        std::vector<Complex> vals;
        for (int k = 0; k <= two_j; ++k) vals.emplace_back(0.5 * two_j - k, 0.0);
        const Spectrum s = make_spectrum(vals);
        const double theta = 0.3 + 0.2 * two_j;
        const Complex direct = response_derivs(s, theta, 0).derivs[0];
        r.within(std::abs(direct - spin_response(two_j, theta)), 1e-10, "spin closed form");
    }
    return r.res;
}

SuiteResult suite_expm(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "expm";
    SplitMix64 rng(seed);
    for (int it = 0; it < samples; ++it) {
        const int n = 2 + it % 7;
        const HermitianTraceless h = random_traceless_hermitian(n, seed + it);
        const double t = -2.0 + 4.0 * rng.uniform();
        const ComplexMatrix u = expm_ch(h, t);
        const ComplexMatrix ref = expm_oracle(h.matrix(), t);
        const double rho = spectral_radius(eig_hermitian(h));
        r.within(max_abs_diff(u, ref), 1e-9 * std::exp(std::abs(t) * rho), "ch vs oracle");
        r.within(max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(n)), 1e-10, "unitarity");
        r.within(std::abs(determinant(u) - Complex{1.0, 0.0}), 1e-9, "det U = 1");

        const double t2 = -1.0 + 2.0 * rng.uniform();
        r.within(max_abs_diff(expm_ch(h, t + t2), expm_ch(h, t) * expm_ch(h, t2)), 1e-9,
                 "group law");

        const ComplexMatrix g = random_complex(n, rng);
        const Spectrum gs = char_roots_general(g);
        const Complex s{0.4 * rng.uniform() / std::max(spectral_radius(gs), 0.1),
                        0.4 * rng.uniform() / std::max(spectral_radius(gs), 0.1)};
        try {
            auto [mat, rc] = resolvent_poly(g, s);
            ComplexMatrix lhs = ComplexMatrix::identity(n);
            lhs -= g * s;
            r.within(max_abs_diff(lhs * mat, ComplexMatrix::identity(n)), 1e-10,
                     "resolvent identity");
        } catch (const PoleProximityError&) {
            // admissible for an unlucky s draw
        }

        const detail::PowerLadder ladder = detail::power_ladder(h.matrix(), n - 1);
        const SymmetricInvariants si = sym_from_traces(ladder.power_sums, n);
        const ResponseDerivs rd = response_derivs(eig_hermitian(h), t, n - 1);
        const ExpPolyCoeffs c = exp_coeffs(si, rd);
        const Complex u0 = unit_term(si, rd);
        double term_scale = 0.0;
        for (int k = 0; k < n; ++k)
            term_scale = std::max(term_scale, std::abs(si.s[k] * rd.derivs[n - 1 - k]));
        r.check(std::abs(u0 - c.e[0]) <=
                    std::max(1e-12 * std::max(std::abs(u0), std::abs(c.e[0])),
                             64.0 * std::numeric_limits<double>::epsilon() * term_scale),
                std::abs(u0 - c.e[0]) / std::max(term_scale, 1e-300), "unit term = E_0");

        if (n >= 2 && n <= 5)
            r.within(max_abs_diff(su_explicit(h, t), u), 1e-10, "explicit form vs pipeline");
        if (n >= 3 && n <= 5) {
            const HierarchyReport rep = sun_hierarchy_check(h, t);
            r.check(rep.pass, rep.max_deviation, "rank decrement");
        }
    }
    return r.res;
}

SuiteResult suite_simplex(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "simplex";
    SplitMix64 rng(seed);
    for (int n = 2; n <= 12; ++n) {
        const SimplexVertexSet vs = simplex_vertices(n, 1.0 + 0.1 * n);
        const double r2 = vs.r * vs.r;
        double worst = 0.0;
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                double dot = 0.0;
                for (int i = 0; i < n; ++i) dot += vs.vertices[a][i] * vs.vertices[b][i];
                const double want = a == b ? r2 : r2 / (1.0 - n);
                worst = std::max(worst, std::abs(dot - want) / r2);
            }
        r.within(worst, 1e-12, "gram relations");
    }
    for (int it = 0; it < samples; ++it) {
        const int n = 3 + it % 3;
        const HermitianTraceless h = random_traceless_hermitian(n, seed + it);
        const Spectrum s = eig_hermitian(h);
        double r2 = 0.0;
        for (const Complex& v : s.values) r2 += std::norm(v);
        const double rad = std::sqrt(r2);
        std::vector<double> axis(n);
        for (int k = 0; k < n; ++k) axis[k] = s.values[k].real() / rad;
        const EigenvalueVector ev = project_spectrum(simplex_vertices(n, rad), axis);
        std::vector<double> got = ev.components, want(n);
        for (int k = 0; k < n; ++k) want[k] = s.values[k].real();
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        double worst = 0.0;
        for (int k = 0; k < n; ++k) worst = std::max(worst, std::abs(got[k] - want[k]));
        r.within(worst, 1e-9, "projection reproduces eigensolver");

        AngleParams p;
        p.n = n;
        p.r = 0.3 + 2.0 * rng.uniform();
        p.angles.resize(n - 2);
        // interior draws keep clear of the angle locks and domain edges
        if (n == 3) {
            p.angles[0] = 0.05 + (std::numbers::pi / 3.0 - 0.1) * rng.uniform();
        } else {
            for (int k = 0; k < n - 3; ++k)
                p.angles[k] = 0.2 + (std::numbers::pi - 0.4) * rng.uniform();
            p.angles[n - 3] = 0.2 + 5.8 * rng.uniform();  // azimuthal, [0, 2pi)
        }
        const EigenvalueVector f = angles_to_spectrum(p);
        const AngleParams back = spectrum_to_angles(f);
        double aworst = std::abs(back.r - p.r) / p.r;
        for (int k = 0; k < n - 2; ++k)
            aworst = std::max(aworst, std::abs(back.angles[k] - p.angles[k]));
        r.within(aworst, 1e-10, "angle roundtrip");

        invariants_from_angles(p);  // throws if the closed forms drift

        if (n == 3) {
            const AngleInvariants inv = invariants_from_angles(p);
            const double theta = su3_angle_from_invariants(inv.tr_h2, *inv.det_h);
            const AngleInvariants again =
                invariants_from_angles(AngleParams{3, p.r, {theta}, false});
            r.within(std::abs(*again.det_h - *inv.det_h),
                     1e-12 * std::max(1.0, std::abs(*inv.det_h)), "su3 angle inverse");
        }
        if (n == 4) {
            const AngleInvariants inv = invariants_from_angles(p);
            const AngleParams rec =
                su4_angles_from_invariants(inv.tr_h2, inv.tr_h3, *inv.tr_h4);
            const AngleInvariants fwd = invariants_from_angles(rec);
            const double s3 = std::max(1.0, std::abs(inv.tr_h3));
            r.within(std::abs(fwd.tr_h3 - inv.tr_h3), 1e-9 * s3, "su4 inverse forward residual");
        }
    }
    return r.res;
}

SuiteResult suite_spin(int samples, std::uint64_t seed) {
    Recorder r;
    r.res.name = "spin";
    SplitMix64 rng(seed);
    for (int two_j = 1; two_j <= 8; ++two_j) {
        const double j = 0.5 * two_j;
        for (int rep = 0; rep < std::max(1, samples / 8); ++rep) {
            double ax[3];
            double norm = 0.0;
            for (double& a : ax) {
                a = rng.gaussian();
                norm += a * a;
            }
            norm = std::sqrt(norm);
            const SpinGenerator g =
                spin_generator(two_j, {ax[0] / norm, ax[1] / norm, ax[2] / norm});
            const Spectrum s = eig_hermitian(g.matrix);
            double worst = 0.0;
            for (int k = 0; k <= two_j; ++k)
                worst = std::max(worst, std::abs(s.values[k].real() - (j - k)));
            r.within(worst, 1e-10, "spectrum j..-j");

            const std::vector<Complex> ps = trace_powers(g.matrix.matrix(), 7);
            r.within(std::abs(ps[1] - j * (j + 1.0) * (two_j + 1) / 3.0), 1e-10,
                     "casimir trace norm");
            double odd = 0.0;
            for (int p : {1, 3, 5, 7}) odd = std::max(odd, std::abs(ps[p - 1]));
            r.within(odd, 1e-10 * std::max(1.0, std::abs(ps[3])), "odd traces vanish");

            const double theta = -2.5 + 5.0 * rng.uniform();
            const ComplexMatrix u = expm_ch(g.matrix, theta);
            Complex tr{};
            for (int i = 0; i < u.n(); ++i) tr += u(i, i);
            const Complex chi = character(two_j, kI * theta);
            r.within(std::abs(tr - chi), 1e-9 * std::max(1.0, std::abs(chi)),
                     "character consistency");
        }
        const CheckReport cp = spin_charpoly_check(two_j);
        r.check(cp.pass, cp.max_deviation, "charpoly product form");
    }
    return r.res;
}

}  // namespace

std::vector<std::string> selftest_suite_names() {
    return {"matrix_core", "spectra", "invariants", "response", "expm", "simplex", "spin"};
}

std::vector<SuiteResult> run_selftest(const std::vector<std::string>& suites, int samples,
                                      std::uint64_t seed) {
    if (samples < 1) throw InvalidInputError("run_selftest: samples must be >= 1");
    using Runner = std::function<SuiteResult(int, std::uint64_t)>;
    const std::vector<std::pair<std::string, Runner>> all = {
        {"matrix_core", suite_matrix_core}, {"spectra", suite_spectra},
        {"invariants", suite_invariants},   {"response", suite_response},
        {"expm", suite_expm},               {"simplex", suite_simplex},
        {"spin", suite_spin}};
    std::vector<std::string> wanted = suites;
    if (wanted.empty())
        for (const auto& [name, fn] : all) wanted.push_back(name);
    std::vector<SuiteResult> out;
    for (const std::string& name : wanted) {
        bool found = false;
        for (const auto& [n, fn] : all)
            if (n == name) {
                out.push_back(fn(samples, seed));
                found = true;
                break;
            }
        if (!found) throw InvalidInputError("run_selftest: unknown suite '" + name + "'");
    }
    return out;
}

}  // namespace chexpm
