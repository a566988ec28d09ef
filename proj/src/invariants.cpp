#include "chexpm/invariants.hpp"

#include <algorithm>
#include <cmath>

namespace chexpm {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) f *= k;
    return f;
}

void set_scale_warning(SymmetricInvariants& si) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    for (const Complex& v : si.s) {
        const double a = std::abs(v);
        if (a == 0.0) continue;
        lo = std::min(lo, a);
        hi = std::max(hi, a);
    }
    si.scale_warning = hi > 0.0 && hi > 1e12 * lo;
}

}  // namespace

SymmetricInvariants sym_from_spectrum(std::span<const Complex> values) {
    const int n = static_cast<int>(values.size());
    SymmetricInvariants si;
    si.n = n;
    si.s.assign(n + 1, Complex{});
    si.s[0] = 1.0;
    // Coefficients of prod_k (1 + t*lambda_k), updated one factor at a time.
    int filled = 0;
    for (const Complex& lam : values) {
        ++filled;
        for (int m = filled; m >= 1; --m) si.s[m] += lam * si.s[m - 1];
    }
    si.power_sums.assign(n, Complex{});
    for (int p = 1; p <= n; ++p) {
        Complex acc{};
        for (const Complex& lam : values) acc += std::pow(lam, p);
        si.power_sums[p - 1] = acc;
    }
    set_scale_warning(si);
    return si;
}

SymmetricInvariants sym_from_spectrum(const Spectrum& spec) {
    return sym_from_spectrum(std::span<const Complex>(spec.values));
}

namespace detail {

Complex trace_invariant_determinant(std::span<const Complex> power_sums, int m) {
    if (m == 0) return 1.0;
    ComplexMatrix a(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) a(i, j) = power_sums[i - j];
        if (i + 1 < m) a(i, i + 1) = static_cast<double>(m - 1 - i);
    }
    return determinant(a);
}

}  // namespace detail

SymmetricInvariants sym_from_traces(std::span<const Complex> power_sums, int n) {
    if (static_cast<int>(power_sums.size()) < n)
        throw InvalidInputError("sym_from_traces: need power sums up to order n");
    if (n < 0) throw InvalidInputError("sym_from_traces: negative dimension");

    SymmetricInvariants si;
    si.n = n;
    si.power_sums.assign(power_sums.begin(), power_sums.begin() + n);
    si.s.assign(n + 1, Complex{});
    si.s[0] = 1.0;
    for (int m = 1; m <= n; ++m) {
        Complex acc{};
        double term_scale = 0.0;
        for (int k = 1; k <= m; ++k) {
            const Complex term = si.s[m - k] * power_sums[k - 1];
            acc += (k % 2 == 1) ? term : -term;
            term_scale = std::max(term_scale, std::abs(term));
        }
        si.s[m] = acc / static_cast<double>(m);

        // Cross-check against the banded trace determinant I_m = m! S_m.
        const Complex det_route =
            detail::trace_invariant_determinant(power_sums, m) / factorial(m);
        const double tol = 1e-10 * std::max({std::abs(si.s[m]), std::abs(det_route),
                                             term_scale / m, 1e-300});
        if (std::abs(si.s[m] - det_route) > tol)
            throw NumericalError(
                "sym_from_traces: determinant and recurrence routes disagree at order " +
                    std::to_string(m),
                std::abs(si.s[m] - det_route));
    }
    set_scale_warning(si);
    return si;
}

Complex explicit_low_invariants(std::span<const Complex> power_sums, int m) {
    if (m < 0 || m > 4)
        throw UnsupportedOrderError("explicit_low_invariants: closed forms cover m <= 4");
    if (static_cast<int>(power_sums.size()) < m)
        throw InvalidInputError("explicit_low_invariants: need power sums up to order m");
    if (m == 0) return 1.0;
    const Complex p1 = power_sums[0];
    if (m == 1) return p1;
    const Complex p2 = power_sums[1];
    if (m == 2) return p1 * p1 - p2;
    const Complex p3 = power_sums[2];
    if (m == 3) return p1 * p1 * p1 - 3.0 * p1 * p2 + 2.0 * p3;
    const Complex p4 = power_sums[3];
    return p1 * p1 * p1 * p1 - 6.0 * p1 * p1 * p2 + 8.0 * p1 * p3 + 3.0 * p2 * p2 - 6.0 * p4;
}

std::vector<Complex> charpoly_coeffs(const SymmetricInvariants& si) {
    std::vector<Complex> c(si.n + 1);
    for (int m = 0; m <= si.n; ++m) c[m] = (m % 2 == 0) ? si.s[m] : -si.s[m];
    c[0] = 1.0;  // exact leading coefficient
    return c;
}

}  // namespace chexpm
