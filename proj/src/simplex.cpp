#include "chexpm/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace chexpm {

namespace {

constexpr double kPi = std::numbers::pi;

double clamped_acos(double x, const char* where) {
    if (std::abs(x) > 1.0 + 1e-12)
        throw InconsistentInvariantsError(std::string(where) +
                                          ": arccos argument outside [-1, 1]");
    return std::acos(std::clamp(x, -1.0, 1.0));
}

double wrap_2pi(double a) {
    const double tau = 2.0 * kPi;
    a = std::fmod(a, tau);
    return a < 0.0 ? a + tau : a;
}

void require_n(int n, const char* where) {
    if (n < 3 || n > 5)
        throw UnsupportedOrderError(std::string(where) + ": supported for N = 3, 4, 5");
}

void require_finite_reals(std::span<const double> v, const char* where) {
    for (double x : v)
        if (!std::isfinite(x))
            throw InvalidInputError(std::string(where) + ": non-finite component");
}

double power_sum(const EigenvalueVector& ev, int p) {
    double acc = 0.0;
    for (double v : ev.components) acc += std::pow(v, p);
    return acc;
}

// Angle-lock threshold: once sin(angle) drops below the sqrt(eps) noise floor
// of the arccos recovery, the dependent angles are no longer determined. The
// locked angle snaps to its exact pole and the dependents become zeros.
constexpr double kGimbalTol = 1e-7;

}  // namespace

double EigenvalueVector::radius() const {
    double s = 0.0;
    for (double v : components) s += v * v;
    return std::sqrt(s);
}

SimplexVertexSet simplex_vertices(int n, double r) {
    if (n < 2) throw InvalidInputError("simplex_vertices: need n >= 2");
    if (!(r > 0.0)) throw InvalidInputError("simplex_vertices: need r > 0");
    SimplexVertexSet vs;
    vs.n = n;
    vs.r = r;
    const double scale = r * std::sqrt(static_cast<double>(n) / (n - 1));
    vs.vertices.assign(n, std::vector<double>(n, -scale / n));
    for (int k = 0; k < n; ++k) vs.vertices[k][k] += scale;
    return vs;
}

EigenvalueVector project_spectrum(const SimplexVertexSet& vs, std::span<const double> axis) {
    const int n = vs.n;
    if (static_cast<int>(axis.size()) != n)
        throw InvalidInputError("project_spectrum: axis dimension mismatch");
    require_finite_reals(axis, "project_spectrum");
    double sum = 0.0, norm2 = 0.0;
    for (double a : axis) {
        sum += a;
        norm2 += a * a;
    }
    if (std::abs(sum) > 1e-10)
        throw InvalidInputError("project_spectrum: axis must lie in the traceless hyperplane");
    if (std::abs(norm2 - 1.0) > 1e-12 * 2.0)
        throw InvalidInputError("project_spectrum: axis must be a unit vector");

    EigenvalueVector ev;
    ev.components.resize(n);
    const double factor = std::sqrt(static_cast<double>(n - 1) / n);
    for (int k = 0; k < n; ++k) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += vs.vertices[k][i] * axis[i];
        ev.components[k] = factor * dot;
    }
    return ev;
}

EigenvalueVector angles_to_spectrum(const AngleParams& p) {
    require_n(p.n, "angles_to_spectrum");
    if (static_cast<int>(p.angles.size()) != p.n - 2)
        throw InvalidInputError("angles_to_spectrum: need N-2 angles");
    require_finite_reals(p.angles, "angles_to_spectrum");
    if (!(p.r >= 0.0)) throw InvalidInputError("angles_to_spectrum: need finite r >= 0");
    const double r = p.r;
    EigenvalueVector ev;
    ev.components.resize(p.n);
    if (p.n == 3) {
        const double theta = p.angles[0];
        const double amp = std::sqrt(2.0 / 3.0) * r;
        for (int k = 1; k <= 3; ++k)
            ev.components[k - 1] = amp * std::cos(theta + 2.0 * kPi * k / 3.0);
    } else if (p.n == 4) {
        const double theta = p.angles[0], phi = p.angles[1];
        const double st = std::sin(theta), ct = std::cos(theta);
        const double sp = std::sin(phi), cp = std::cos(phi);
        const double a = sp * st / std::sqrt(2.0), b = cp * st / std::sqrt(2.0);
        ev.components = {r * (-a - 0.5 * ct), r * (a - 0.5 * ct), r * (-b + 0.5 * ct),
                         r * (b + 0.5 * ct)};
    } else {
        const double psi = p.angles[0], theta = p.angles[1], phi = p.angles[2];
        const double cps = std::cos(psi), sps = std::sin(psi);
        const double ct = std::cos(theta), st = std::sin(theta);
        const double cp = std::cos(phi), sp = std::sin(phi);
        const double base = cps / (2.0 * std::sqrt(5.0));
        const double t1 = ct * sps / (2.0 * std::sqrt(3.0));
        const double t2 = cp * st * sps / std::sqrt(6.0);
        const double t3 = sp * st * sps / std::sqrt(2.0);
        ev.components = {r * (-4.0 * base),          r * (base - 3.0 * t1),
                         r * (base + t1 - 2.0 * t2), r * (base + t1 + t2 - t3),
                         r * (base + t1 + t2 + t3)};
    }
    return ev;
}

AngleInvariants invariants_from_angles(const AngleParams& p) {
    require_n(p.n, "invariants_from_angles");
    const double r = p.r;
    AngleInvariants inv;
    inv.tr_h2 = r * r;
    if (p.n == 3) {
        const double theta = p.angles.at(0);
        inv.det_h = r * r * r * std::cos(3.0 * theta) / (3.0 * std::sqrt(6.0));
        inv.tr_h3 = 3.0 * *inv.det_h;
    } else if (p.n == 4) {
        const double theta = p.angles.at(0), phi = p.angles.at(1);
        const double st = std::sin(theta), sp = std::sin(phi), cp = std::cos(phi);
        inv.tr_h3 =
            0.75 * r * r * r * st * std::sin(2.0 * theta) * std::cos(2.0 * phi);
        const double s2t = st * st;
        inv.det_h = r * r * r * r / 16.0 * (1.0 + (2.0 * sp * sp - 3.0) * s2t) *
                    (1.0 + (2.0 * cp * cp - 3.0) * s2t);
        inv.tr_h4 = (inv.tr_h2 * inv.tr_h2 - 8.0 * *inv.det_h) / 2.0;
    } else {
        const double psi = p.angles.at(0), theta = p.angles.at(1), phi = p.angles.at(2);
        const double cps = std::cos(psi), sps = std::sin(psi);
        const double ct = std::cos(theta), st = std::sin(theta);
        const double cp = std::cos(phi);
        inv.tr_h3 = r * r * r *
                    (3.0 / std::sqrt(5.0) * cps * (0.5 - cps * cps) +
                     5.0 / (2.0 * std::sqrt(3.0)) * sps * sps * sps * ct * (0.6 - ct * ct) +
                     2.0 * std::sqrt(2.0) / std::sqrt(3.0) * sps * sps * sps * st * st * st *
                         cp * (0.75 - cp * cp));
    }

    // Executable cross-check against the plain power sums of the component map.
    const EigenvalueVector ev = angles_to_spectrum(p);
    const double scale2 = std::max(r * r, 1e-300);
    const double scale3 = std::max(r * r * r, 1e-300);
    if (std::abs(power_sum(ev, 2) - inv.tr_h2) > 1e-11 * scale2 ||
        std::abs(power_sum(ev, 3) - inv.tr_h3) > 1e-11 * scale3)
        throw NumericalError("invariants_from_angles: closed form disagrees with power sums");
    if (inv.tr_h4 &&
        std::abs(power_sum(ev, 4) - *inv.tr_h4) > 1e-11 * scale2 * scale2)
        throw NumericalError("invariants_from_angles: tr(H^4) disagrees with power sums");
    if (inv.det_h) {
        double prod = 1.0;
        for (double v : ev.components) prod *= v;
        if (std::abs(prod - *inv.det_h) > 1e-11 * std::max(scale3 * (p.n == 4 ? r : 1.0), 1e-300))
            throw NumericalError("invariants_from_angles: det(H) disagrees with eigenvalue product");
    }
    return inv;
}

double su3_angle_from_invariants(double tr_h2, double det_h) {
    if (!(tr_h2 > 0.0) || !std::isfinite(tr_h2) || !std::isfinite(det_h))
        throw InvalidInputError("su3_angle_from_invariants: need finite invariants, tr(H^2) > 0");
    const double r3 = std::pow(tr_h2, 1.5);
    const double arg = 3.0 * std::sqrt(6.0) * det_h / r3;
    const double theta = clamped_acos(arg, "su3_angle_from_invariants") / 3.0;
    return theta;  // arccos/3 lands in [0, pi/3] by construction
}

namespace {

struct Su4Residual {
    double g1, g2;
};

// Normalized system in u = sin^2(theta), c = cos(2 phi):
//   g1 = 1.5 u sqrt(1-u) c            - trH3/r^3
//   g2 = (1 - (2+c)u)(1 - (2-c)u)/16  - det/r^4
Su4Residual su4_residual(double u, double c, double x3, double dhat) {
    const double root = std::sqrt(std::max(1.0 - u, 0.0));
    return {1.5 * u * root * c - x3,
            (1.0 - (2.0 + c) * u) * (1.0 - (2.0 - c) * u) / 16.0 - dhat};
}

}  // namespace

AngleParams su4_angles_from_invariants(double tr_h2, double tr_h3, double tr_h4) {
    AngleParams out;
    out.n = 4;
    if (!std::isfinite(tr_h2) || !std::isfinite(tr_h3) || !std::isfinite(tr_h4))
        throw InvalidInputError("su4_angles_from_invariants: non-finite invariant");
    if (tr_h2 == 0.0 && tr_h3 == 0.0 && tr_h4 == 0.0) {
        out.angles = {0.0, 0.0};
        out.gimbal = true;
        return out;
    }
    if (!(tr_h2 > 0.0))
        throw InconsistentInvariantsError("su4_angles_from_invariants: need tr(H^2) > 0");
    const double r = std::sqrt(tr_h2);
    out.r = r;
    const double x3 = tr_h3 / (r * r * r);
    const double x4 = tr_h4 / (tr_h2 * tr_h2);
    // Power-mean bounds for a traceless real 4-spectrum of unit norm:
    // |trH3|/r^3 <= 1/sqrt3, trH4/r^4 in [1/4, 7/12].
    if (x3 * x3 > 1.0 / 3.0 + 1e-6 || x4 > 7.0 / 12.0 + 1e-6 || x4 < 0.25 - 1e-6)
        throw InconsistentInvariantsError(
            "su4_angles_from_invariants: invariants violate power-mean bounds");
    const double dhat = (1.0 - 2.0 * x4) / 8.0;

    const double gscale = std::max({std::abs(x3), std::abs(dhat), 1.0});
    double best_u = -1.0, best_c = 0.0;
    for (int iu = 0; iu < 8 && best_u < 0.0; ++iu) {
        for (int ic = 0; ic < 8 && best_u < 0.0; ++ic) {
            double u = (iu + 0.5) / 8.0;
            double c = -1.0 + (ic + 0.5) / 4.0;
            Su4Residual g = su4_residual(u, c, x3, dhat);
            double gnorm = std::hypot(g.g1, g.g2);
            for (int iter = 0; iter < 60 && gnorm > 1e-14 * gscale; ++iter) {
                const double root = std::sqrt(std::max(1.0 - u, 1e-30));
                const double j11 = 1.5 * c * (root - 0.5 * u / root);
                const double j12 = 1.5 * u * root;
                const double j21 = ((2.0 + c) * ((2.0 - c) * u - 1.0) +
                                    (2.0 - c) * ((2.0 + c) * u - 1.0)) /
                                   16.0;
                const double j22 = -c * u * u / 8.0;
                const double det = j11 * j22 - j12 * j21;
                if (std::abs(det) < 1e-300) break;
                double du = (-g.g1 * j22 + g.g2 * j12) / det;
                double dc = (-j11 * g.g2 + j21 * g.g1) / det;
                double step = 1.0;
                for (int halve = 0; halve < 25; ++halve, step *= 0.5) {
                    const double nu = std::clamp(u + step * du, 0.0, 1.0 - 1e-15);
                    const double nc = std::clamp(c + step * dc, -1.0, 1.0);
                    const Su4Residual ng = su4_residual(nu, nc, x3, dhat);
                    const double nnorm = std::hypot(ng.g1, ng.g2);
                    if (nnorm < gnorm) {
                        u = nu;
                        c = nc;
                        g = ng;
                        gnorm = nnorm;
                        break;
                    }
                    if (halve == 24) iter = 60;  // stuck
                }
            }
            if (gnorm <= 1e-12 * gscale) {
                best_u = u;
                best_c = c;
            }
        }
    }
    if (best_u < 0.0)
        throw InconsistentInvariantsError(
            "su4_angles_from_invariants: no angle pair reproduces the invariants");

    double theta = std::atan2(std::sqrt(best_u), std::sqrt(std::max(1.0 - best_u, 0.0)));
    double phi = 0.5 * std::acos(std::clamp(best_c, -1.0, 1.0));
    bool gimbal = false;
    if (std::sqrt(best_u) < kGimbalTol) {
        theta = 0.0;
        phi = 0.0;
        gimbal = true;
    }
    out.angles = {theta, phi};
    out.gimbal = gimbal;

    // Final acceptance: forward invariants must reproduce the inputs.
    const AngleInvariants fwd = invariants_from_angles(out);
    const double s3 = std::max(r * r * r, std::abs(tr_h3));
    const double s4 = std::max(tr_h2 * tr_h2, std::abs(tr_h4));
    if (std::abs(fwd.tr_h3 - tr_h3) > 1e-9 * s3 || std::abs(*fwd.tr_h4 - tr_h4) > 1e-9 * s4)
        throw InconsistentInvariantsError(
            "su4_angles_from_invariants: converged root fails the forward check");
    return out;
}

AngleParams spectrum_to_angles(const EigenvalueVector& ev) {
    const int n = ev.n();
    require_n(n, "spectrum_to_angles");
    require_finite_reals(ev.components, "spectrum_to_angles");
    const double r = ev.radius();
    AngleParams out;
    out.n = n;
    out.r = r;
    if (r == 0.0) {
        out.angles.assign(n - 2, 0.0);
        out.gimbal = true;
        return out;
    }
    double sum = 0.0;
    for (double v : ev.components) sum += v;
    if (std::abs(sum) > 1e-8 * r * n)
        throw InconsistentInvariantsError("spectrum_to_angles: components do not sum to zero");

    if (n == 3) {
        const double amp = std::sqrt(2.0 / 3.0) * r;
        const double base = clamped_acos(ev.components[2] / amp, "spectrum_to_angles");
        // cos is even: both preimages of lambda_3 are candidates; pick the one
        // that reproduces the first two components as given.
        double best_theta = base, best_err = std::numeric_limits<double>::infinity();
        for (double theta : {base, wrap_2pi(-base)}) {
            AngleParams cand{3, r, {theta}, false};
            const EigenvalueVector f = angles_to_spectrum(cand);
            double err = 0.0;
            for (int k = 0; k < 3; ++k)
                err = std::max(err, std::abs(f.components[k] - ev.components[k]));
            if (err < best_err) {
                best_err = err;
                best_theta = theta;
            }
        }
        if (best_err > 1e-8 * r)
            throw InconsistentInvariantsError(
                "spectrum_to_angles: components are not a valid N=3 block");
        out.angles = {best_theta};
        return out;
    }

    if (n == 4) {
        const double ct = -(ev.components[0] + ev.components[1]) / r;
        const double theta = clamped_acos(ct, "spectrum_to_angles");
        const double st = std::sin(theta);
        if (st < kGimbalTol) {
            out.angles = {ct >= 0.0 ? 0.0 : kPi, 0.0};
            out.gimbal = true;
            return out;
        }
        const double sp = (ev.components[1] - ev.components[0]) / (std::sqrt(2.0) * r * st);
        const double cp = (ev.components[3] - ev.components[2]) / (std::sqrt(2.0) * r * st);
        out.angles = {theta, wrap_2pi(std::atan2(sp, cp))};
        return out;
    }

    // N = 5: psi from lambda_1, theta from lambda_2, phi magnitude from
    // lambda_3, sign of sin(phi) from lambda_5 - lambda_4.
    const double cps = -ev.components[0] * std::sqrt(5.0) / (2.0 * r);
    const double psi = clamped_acos(cps, "spectrum_to_angles");
    const double sps = std::sin(psi);
    if (sps < kGimbalTol) {
        out.angles = {cps >= 0.0 ? 0.0 : kPi, 0.0, 0.0};
        out.gimbal = true;
        return out;
    }
    const double base = r * std::cos(psi) / (2.0 * std::sqrt(5.0));
    const double ct =
        (base - ev.components[1]) * 2.0 * std::sqrt(3.0) / (3.0 * r * sps);
    const double theta = clamped_acos(ct, "spectrum_to_angles");
    const double st = std::sin(theta);
    if (st < kGimbalTol) {
        out.angles = {psi, ct >= 0.0 ? 0.0 : kPi, 0.0};
        out.gimbal = true;
        return out;
    }
    const double t1 = r * ct * sps / (2.0 * std::sqrt(3.0));
    const double cp =
        (base + t1 - ev.components[2]) * std::sqrt(6.0) / (2.0 * r * st * sps);
    const double sp =
        (ev.components[4] - ev.components[3]) / (std::sqrt(2.0) * r * st * sps);
    if (std::abs(cp) > 1.0 + 1e-12)
        throw InconsistentInvariantsError("spectrum_to_angles: components are not a valid N=5 block");
    out.angles = {psi, theta, wrap_2pi(std::atan2(sp, cp))};
    return out;
}

}  // namespace chexpm
