#include "chexpm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "chexpm/invariants.hpp"

namespace chexpm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

bool value_less(const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

double spectral_diameter(std::span<const Complex> values) {
    double d = 0.0;
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = i + 1; j < values.size(); ++j)
            d = std::max(d, std::abs(values[i] - values[j]));
    return d;
}

}  // namespace

bool Spectrum::degenerate() const {
    for (const auto& c : clusters)
        if (c.size() > 1) return true;
    return false;
}

int Spectrum::cluster_of(int k) const {
    for (int c = 0; c < static_cast<int>(clusters.size()); ++c)
        for (int idx : clusters[c])
            if (idx == k) return c;
    throw InvalidInputError("Spectrum::cluster_of: index outside spectrum");
}

std::vector<std::vector<int>> cluster_spectrum(std::span<const Complex> values, double tol) {
    if (tol < 0.0) throw InvalidInputError("cluster_spectrum: tol must be >= 0");
    const int n = static_cast<int>(values.size());
    UnionFind uf(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (std::abs(values[i] - values[j]) <= tol) uf.unite(i, j);
    std::vector<std::vector<int>> groups;
    std::vector<int> root_to_group(n, -1);
    for (int i = 0; i < n; ++i) {
        const int r = uf.find(i);
        if (root_to_group[r] < 0) {
            root_to_group[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[root_to_group[r]].push_back(i);
    }
    return groups;
}

double default_cluster_tol(std::span<const Complex> values) {
    double maxabs = 0.0;
    for (const Complex& v : values) maxabs = std::max(maxabs, std::abs(v));
    // The floor only merges values that are indistinguishable at machine precision.
    return 1e-8 * spectral_diameter(values) + 8.0 * kEps * (1.0 + maxabs);
}

Spectrum make_spectrum(std::vector<Complex> values, std::optional<double> tol) {
    std::sort(values.begin(), values.end(), value_less);
    Spectrum s;
    s.cluster_tol = tol ? *tol : default_cluster_tol(values);
    s.clusters = cluster_spectrum(values, s.cluster_tol);
    s.values = std::move(values);
    return s;
}

namespace detail {

std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h) {
    const int n = h.n();
    ComplexMatrix a = h;
    const double fro = a.frobenius_norm();
    if (n == 1 || fro == 0.0) {
        std::vector<double> vals(n);
        for (int i = 0; i < n; ++i) vals[i] = a(i, i).real();
        return vals;
    }
    const double target = 1e-14 * fro;
    constexpr int kMaxSweeps = 50;

    auto off_norm = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };

    double off = off_norm();
    int sweep = 0;
    while (off > target) {
        if (sweep++ >= kMaxSweeps)
            throw NumericalError("jacobi_eigenvalues: no convergence after 50 sweeps", off);
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double beta = std::abs(b);
                if (beta == 0.0) continue;
                const Complex phase = b / beta;
                // zeroing A'(p,q) needs t^2 - 2*theta2*t - 1 = 0; take the
                // smaller root for a rotation angle <= pi/4
                const double theta2 = (a(p, p).real() - a(q, q).real()) / (2.0 * beta);
                const double sgn = theta2 < 0.0 ? -1.0 : 1.0;
                const double t = -sgn / (std::abs(theta2) + std::hypot(theta2, 1.0));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Columns p, q of A <- A R.
                for (int i = 0; i < n; ++i) {
                    const Complex aip = a(i, p);
                    const Complex aiq = a(i, q);
                    a(i, p) = c * aip - s * std::conj(phase) * aiq;
                    a(i, q) = s * phase * aip + c * aiq;
                }
                // Rows p, q of A <- R^dag A.
                for (int j = 0; j < n; ++j) {
                    const Complex apj = a(p, j);
                    const Complex aqj = a(q, j);
                    a(p, j) = c * apj - s * phase * aqj;
                    a(q, j) = s * std::conj(phase) * apj + c * aqj;
                }
                a(p, q) = Complex{};
                a(q, p) = Complex{};
                a(p, p) = Complex{a(p, p).real(), 0.0};
                a(q, q) = Complex{a(q, q).real(), 0.0};
            }
        }
        off = off_norm();
    }
    std::vector<double> vals(n);
    for (int i = 0; i < n; ++i) vals[i] = a(i, i).real();
    return vals;
}

namespace {

// p(z) and p'(z) by one Horner pass over descending coefficients.
std::pair<Complex, Complex> horner(std::span<const Complex> c, Complex z) {
    Complex p = c[0];
    Complex dp{};
    for (size_t k = 1; k < c.size(); ++k) {
        dp = dp * z + p;
        p = p * z + c[k];
    }
    return {p, dp};
}

double coeff_scale(std::span<const Complex> c) {
    double m = 0.0;
    for (const Complex& z : c) m = std::max(m, std::abs(z));
    return m;
}

}  // namespace

std::vector<Complex> aberth_roots(std::span<const Complex> coeffs) {
    const int deg = static_cast<int>(coeffs.size()) - 1;
    if (deg < 1) return {};
    if (std::abs(coeffs[0] - Complex{1.0, 0.0}) > 1e-14)
        throw InvalidInputError("aberth_roots: polynomial must be monic");
    if (deg == 1) return {-coeffs[1]};

    const double cauchy = 1.0 + coeff_scale(coeffs.subspan(1));
    const double tail = std::pow(std::abs(coeffs[deg]), 1.0 / deg);
    double radius = std::clamp(tail, 1e-3 * cauchy, cauchy);
    if (radius == 0.0) radius = 0.5 * cauchy;

    std::vector<Complex> z(deg);
    const double scale_tol = std::max(1.0, cauchy);
    double worst_resid = std::numeric_limits<double>::infinity();
    const double resid_gate = 1e-8 * coeff_scale(coeffs);

    for (int attempt = 0; attempt < 3; ++attempt) {
        // Perturbed circle: irrational-ish angle offset breaks symmetry traps.
        for (int k = 0; k < deg; ++k) {
            const double ang = 2.0 * std::numbers::pi * k / deg + 0.4 + 0.11 * attempt;
            z[k] = radius * Complex{std::cos(ang), std::sin(ang)};
        }
        constexpr int kMaxIter = 800;
        for (int iter = 0; iter < kMaxIter; ++iter) {
            double max_step = 0.0;
            for (int k = 0; k < deg; ++k) {
                auto [p, dp] = horner(coeffs, z[k]);
                if (p == Complex{}) continue;
                if (dp == Complex{}) {
                    z[k] += Complex{1e-6 * scale_tol, 1e-6 * scale_tol};
                    max_step = scale_tol;
                    continue;
                }
                const Complex newton = p / dp;
                Complex repulse{};
                for (int j = 0; j < deg; ++j)
                    if (j != k) repulse += 1.0 / (z[k] - z[j]);
                const Complex denom = 1.0 - newton * repulse;
                const Complex w = std::abs(denom) > 1e-300 ? newton / denom : newton;
                z[k] -= w;
                max_step = std::max(max_step, std::abs(w));
            }
            if (max_step <= 64.0 * kEps * scale_tol) break;
        }
        // One Newton polish per root.
        for (int k = 0; k < deg; ++k) {
            auto [p, dp] = horner(coeffs, z[k]);
            if (dp != Complex{}) z[k] -= p / dp;
        }
        worst_resid = 0.0;
        for (int k = 0; k < deg; ++k)
            worst_resid = std::max(worst_resid, std::abs(horner(coeffs, z[k]).first));
        if (worst_resid <= resid_gate) return z;
        radius *= 3.0;  // restart wider
    }
    throw NumericalError("aberth_roots: iteration stagnated, worst residual " +
                             std::to_string(worst_resid),
                         worst_resid);
}

}  // namespace detail

Spectrum eig_hermitian(const HermitianTraceless& h) {
    const std::vector<double> vals = detail::jacobi_eigenvalues(h.matrix());
    std::vector<Complex> cv(vals.begin(), vals.end());
    return make_spectrum(std::move(cv));
}

Spectrum char_roots_general(const ComplexMatrix& m) {
    require_finite(m, "char_roots_general");
    const int n = m.n();
    const std::vector<Complex> ps = trace_powers(m, n);
    const SymmetricInvariants si = sym_from_traces(ps, n);
    const std::vector<Complex> coeffs = charpoly_coeffs(si);
    std::vector<Complex> roots = detail::aberth_roots(coeffs);

    // Roots recovered from coefficients scatter like eps^(1/m) around an
    // m-fold eigenvalue. The root-neighborhood radius (|C(z)| plus the Horner
    // roundoff bound, over |C'(z)|) sees that scatter even when the computed
    // residual underflows to zero, so widen the cluster tolerance to it.
    // Simple well-conditioned roots contribute machine-level radii.
    double maxabs = 0.0;
    double step_scale = 0.0;
    for (const Complex& z : roots) maxabs = std::max(maxabs, std::abs(z));
    for (const Complex& z : roots) {
        Complex p = coeffs[0], dp{};
        double bound = std::abs(coeffs[0]);
        for (size_t k = 1; k < coeffs.size(); ++k) {
            dp = dp * z + p;
            p = p * z + coeffs[k];
            bound = bound * std::abs(z) + std::abs(coeffs[k]);
        }
        const double radius =
            (std::abs(p) + kEps * static_cast<double>(n) * bound) / std::max(std::abs(dp), 1e-300);
        step_scale = std::max(step_scale, radius);
    }
    const double tol = std::max(default_cluster_tol(roots),
                                std::min(8.0 * step_scale, 0.01 * (1.0 + maxabs)));
    Spectrum spec = make_spectrum(std::move(roots), tol);

    // Refine each multiplicity-m cluster center by one Newton step on
    // C^(m-1), whose root there is simple; the scattered copies collapse onto
    // the limit point the confluent evaluation needs.
    bool refined = false;
    for (const auto& cluster : spec.clusters) {
        const int mult = static_cast<int>(cluster.size());
        if (mult < 2) continue;
        Complex center{};
        for (int idx : cluster) center += spec.values[idx];
        center /= static_cast<double>(mult);
        // extended Horner: d[k] = C^(k)(center) / k!
        std::vector<Complex> d(mult + 1, Complex{});
        d[0] = coeffs[0];
        for (size_t c = 1; c < coeffs.size(); ++c) {
            for (int k = mult; k >= 1; --k) d[k] = d[k] * center + d[k - 1];
            d[0] = d[0] * center + coeffs[c];
        }
        if (std::abs(d[mult]) < 1e-300) continue;
        const Complex step = d[mult - 1] / (d[mult] * static_cast<double>(mult));
        if (std::abs(step) > tol) continue;  // not actually an m-fold point
        for (int idx : cluster) spec.values[idx] = center - step;
        refined = true;
    }
    if (refined) return make_spectrum(std::move(spec.values), tol);
    return spec;
}

}  // namespace chexpm
