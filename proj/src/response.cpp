#include "chexpm/response.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace chexpm {

namespace {

double spectral_diameter(std::span<const Complex> values) {
    double d = 0.0;
    for (size_t i = 0; i < values.size(); ++i)
        for (size_t j = i + 1; j < values.size(); ++j)
            d = std::max(d, std::abs(values[i] - values[j]));
    return d;
}

// d^j/dz^j [z^p exp(izt)] / j!  evaluated at z. Leibniz over the two factors.
Complex monomial_exp_deriv_over_fact(Complex z, double t, int p, int j) {
    const Complex e = std::exp(kI * z * t);
    Complex acc{};
    // binom(p, l) * z^(p-l) * (it)^(j-l) / (j-l)!
    double binom = 1.0;
    for (int l = 0; l <= std::min(j, p); ++l) {
        Complex term = binom;
        for (int q = 0; q < p - l; ++q) term *= z;
        const Complex it = kI * t;
        double inv_fact = 1.0;
        for (int q = 2; q <= j - l; ++q) inv_fact *= q;
        Complex itpow{1.0, 0.0};
        for (int q = 0; q < j - l; ++q) itpow *= it;
        acc += term * itpow / inv_fact;
        binom *= static_cast<double>(p - l) / (l + 1);
    }
    return acc * e;
}

}  // namespace

Complex cprime(const Spectrum& spec, int k) {
    if (k < 0 || k >= spec.n()) throw InvalidInputError("cprime: index outside spectrum");
    if (spec.clusters[spec.cluster_of(k)].size() > 1)
        throw DegenerateSpectrumError(
            "cprime: eigenvalue lies in a degenerate cluster; use the confluent path");
    Complex prod{1.0, 0.0};
    for (int m = 0; m < spec.n(); ++m)
        if (m != k) prod *= spec.values[k] - spec.values[m];
    return prod;
}

namespace detail {

ResponseDerivs response_derivs_generic(std::span<const Complex> values, double t, int pmax) {
    const int n = static_cast<int>(values.size());
    ResponseDerivs rd;
    rd.t = t;
    rd.derivs.assign(pmax + 1, Complex{});
    for (int k = 0; k < n; ++k) {
        Complex cp{1.0, 0.0};
        for (int m = 0; m < n; ++m)
            if (m != k) cp *= values[k] - values[m];
        const Complex w = std::exp(kI * values[k] * t) / cp;
        Complex lampow{1.0, 0.0};
        for (int p = 0; p <= pmax; ++p) {
            rd.derivs[p] += lampow * w;
            lampow *= values[k];
        }
    }
    return rd;
}

ResponseDerivs response_derivs_confluent(std::span<const Complex> values,
                                         const std::vector<std::vector<int>>& clusters,
                                         double t, int pmax) {
    const int n = static_cast<int>(values.size());
    // Collapse each cluster to (mean, multiplicity); coincident means fuse so
    // that equal nodes are always one contiguous repeat group.
    std::vector<std::pair<Complex, int>> groups;
    for (const auto& cluster : clusters) {
        Complex mean{};
        for (int idx : cluster) mean += values[idx];
        mean /= static_cast<double>(cluster.size());
        bool fused = false;
        for (auto& g : groups)
            if (g.first == mean) {
                g.second += static_cast<int>(cluster.size());
                fused = true;
                break;
            }
        if (!fused) groups.emplace_back(mean, static_cast<int>(cluster.size()));
    }
    std::vector<Complex> nodes;
    nodes.reserve(n);
    for (const auto& [mean, mult] : groups)
        for (int r = 0; r < mult; ++r) nodes.push_back(mean);

    ResponseDerivs rd;
    rd.t = t;
    rd.derivs.assign(pmax + 1, Complex{});
    std::vector<Complex> col(n);
    for (int p = 0; p <= pmax; ++p) {
        // Divided-difference table of z^p exp(izt), derivative fill-in on
        // confluent diagonals.
        for (int i = 0; i < n; ++i) col[i] = monomial_exp_deriv_over_fact(nodes[i], t, p, 0);
        for (int j = 1; j < n; ++j) {
            for (int i = 0; i + j < n; ++i) {
                if (nodes[i + j] == nodes[i])
                    col[i] = monomial_exp_deriv_over_fact(nodes[i], t, p, j);
                else
                    col[i] = (col[i + 1] - col[i]) / (nodes[i + j] - nodes[i]);
            }
        }
        rd.derivs[p] = col[0];
    }
    return rd;
}

}  // namespace detail

ResponseDerivs response_derivs(const Spectrum& spec, double t, int pmax) {
    if (!std::isfinite(t)) throw InvalidInputError("response_derivs: t must be finite");
    if (pmax < 0 || pmax > 2 * spec.n())
        throw InvalidInputError("response_derivs: pmax outside 0..2N");

    // Crossover: residue denominators lose about half the significant digits
    // once a gap shrinks to ~1e-8 of the diameter, so switch to the confluent
    // path well before that. The caller's own clustering is honored by
    // clustering representatives instead of raw values.
    const double merge_tol = 1e-6 * spectral_diameter(spec.values);
    std::vector<Complex> reps(spec.values);
    for (const auto& c : spec.clusters)
        for (int idx : c) reps[idx] = spec.values[c.front()];
    const std::vector<std::vector<int>> groups = cluster_spectrum(reps, merge_tol);
    const bool confluent = groups.size() < spec.values.size();
    if (!confluent) return detail::response_derivs_generic(spec.values, t, pmax);
    return detail::response_derivs_confluent(spec.values, groups, t, pmax);
}

Complex spin_response(int two_j, double theta) {
    if (two_j < 0) throw InvalidInputError("spin_response: 2j must be >= 0");
    unsigned long long fact = 1;
    for (int k = 2; k <= two_j; ++k) fact *= static_cast<unsigned long long>(k);
    Complex num{1.0, 0.0};
    for (int k = 0; k < two_j; ++k) num *= Complex{0.0, 2.0};
    const double s = std::sin(theta / 2.0);
    double spow = 1.0;
    for (int k = 0; k < two_j; ++k) spow *= s;
    return num * spow / static_cast<double>(fact);
}

double default_contour_radius(const Spectrum& spec) {
    double m = 0.0;
    for (const Complex& v : spec.values) m = std::max(m, std::abs(v));
    return 1.5 * m + 1.0;
}

Complex response_contour_oracle(const Spectrum& spec, double t, double radius, int npoints) {
    if (npoints < 64) throw InvalidInputError("response_contour_oracle: npoints must be >= 64");
    double maxabs = 0.0;
    for (const Complex& v : spec.values) maxabs = std::max(maxabs, std::abs(v));
    if (!(radius > maxabs))
        throw InvalidInputError("response_contour_oracle: circle does not enclose the spectrum");

    // (1/2 pi i) \oint exp(itz)/C(z) dz on |z| = radius; with z = R e^{is} the
    // trapezoid rule reduces to a plain average over equispaced nodes.
    Complex acc{};
    for (int m = 0; m < npoints; ++m) {
        const double s = 2.0 * std::numbers::pi * m / npoints;
        const Complex zs{std::cos(s), std::sin(s)};
        const Complex z = radius * zs;
        Complex cz{1.0, 0.0};
        for (const Complex& lam : spec.values) cz *= z - lam;
        acc += std::exp(kI * z * t) / cz * zs;
    }
    return acc * (radius / npoints);
}

}  // namespace chexpm
