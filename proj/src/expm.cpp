#include "chexpm/expm.hpp"

#include <algorithm>
#include <cmath>

namespace chexpm {

namespace {

double factorial(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) f *= k;
    return f;
}

// d^k F / dt^k from the stack rd[k] = (-i d/dt)^k F, i.e. multiply by i^k.
Complex dF(const ResponseDerivs& rd, int k) {
    Complex ipow{1.0, 0.0};
    for (int q = 0; q < k; ++q) ipow *= kI;
    return ipow * rd.derivs[k];
}

ComplexMatrix assemble(const detail::PowerLadder& ladder, std::span<const Complex> coeffs) {
    ComplexMatrix out(ladder.powers.front().n());
    for (size_t p = 0; p < coeffs.size(); ++p) out += ladder.powers[p] * coeffs[p];
    return out;
}

}  // namespace

namespace detail {

std::vector<Complex> exp_coeffs_at_rank(std::span<const Complex> s,
                                        std::span<const Complex> derivs, int rank) {
    std::vector<Complex> e(rank);
    for (int n = 0; n < rank; ++n) {
        Complex acc{};
        for (int m = 0; m <= rank - 1 - n; ++m) {
            const Complex term = s[m] * derivs[rank - 1 - n - m];
            acc += (m % 2 == 0) ? term : -term;
        }
        e[n] = acc;
    }
    return e;
}

Spectrum spectrum_for(const ComplexMatrix& m) {
    const double scale = m.max_abs();
    if (max_abs_diff(m, m.adjoint()) <= 1e-12 * scale) {
        const std::vector<double> vals = jacobi_eigenvalues(m);
        std::vector<Complex> cv(vals.begin(), vals.end());
        return make_spectrum(std::move(cv));
    }
    return char_roots_general(m);
}

}  // namespace detail

ExpPolyCoeffs exp_coeffs(const SymmetricInvariants& si, const ResponseDerivs& rd) {
    const int n = si.n;
    if (static_cast<int>(si.s.size()) != n + 1)
        throw InvalidInputError("exp_coeffs: invariant list must have length n+1");
    if (rd.pmax() + 1 < n)
        throw InvalidInputError("exp_coeffs: need response derivatives up to order N-1");
    ExpPolyCoeffs c;
    c.t = rd.t;
    c.e = detail::exp_coeffs_at_rank(si.s, rd.derivs, n);
    return c;
}

ComplexMatrix expm_ch(const ComplexMatrix& m, double t) {
    require_finite(m, "expm_ch");
    const int n = m.n();
    const detail::PowerLadder ladder = detail::power_ladder(m, n - 1);
    const SymmetricInvariants si = sym_from_traces(ladder.power_sums, n);
    const Spectrum spec = detail::spectrum_for(m);
    const ResponseDerivs rd = response_derivs(spec, t, n - 1);
    const ExpPolyCoeffs c = exp_coeffs(si, rd);
    return assemble(ladder, c.e);
}

ComplexMatrix expm_ch(const HermitianTraceless& h, double t) { return expm_ch(h.matrix(), t); }

ComplexMatrix expm_oracle(const ComplexMatrix& m, double t) {
    require_finite(m, "expm_oracle");
    const int n = m.n();
    ComplexMatrix b = m * (kI * t);
    // Scale so the max row sum is <= 1/2, Taylor, then square back.
    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double row = 0.0;
        for (int j = 0; j < n; ++j) row += std::abs(b(i, j));
        norm = std::max(norm, row);
    }
    int squarings = 0;
    while (norm > 0.5) {
        norm *= 0.5;
        ++squarings;
    }
    b *= std::ldexp(1.0, -squarings);

    ComplexMatrix sum = ComplexMatrix::identity(n);
    ComplexMatrix term = ComplexMatrix::identity(n);
    for (int k = 1; k <= 64; ++k) {
        term = term * b;
        term *= 1.0 / k;
        sum += term;
        if (term.max_abs() < 1e-20 * std::max(sum.max_abs(), 1.0)) break;
    }
    for (int q = 0; q < squarings; ++q) sum = sum * sum;
    return sum;
}

std::pair<ComplexMatrix, ResolventCoeffs> resolvent_poly(const ComplexMatrix& m, Complex s) {
    require_finite(m, "resolvent_poly");
    const int n = m.n();
    const detail::PowerLadder ladder = detail::power_ladder(m, n - 1);
    const SymmetricInvariants si = sym_from_traces(ladder.power_sums, n);

    // det(I - sM) = sum_m (-s)^m S_m; partial sums give the truncations.
    std::vector<Complex> terms(n + 1);
    Complex spow{1.0, 0.0};
    double term_scale = 0.0;
    for (int k = 0; k <= n; ++k) {
        terms[k] = spow * si.s[k];
        if (k % 2 == 1) terms[k] = -terms[k];
        term_scale = std::max(term_scale, std::abs(terms[k]));
        spow *= s;
    }
    Complex det{};
    for (int k = n; k >= 0; --k) det += terms[k];
    if (std::abs(det) <= 1e-12 * std::max(term_scale, 1.0))
        throw PoleProximityError("resolvent_poly: I - sM is numerically singular");

    ResolventCoeffs rc;
    rc.s = s;
    rc.r.assign(n, Complex{});
    Complex snum{1.0, 0.0};
    for (int k = 0; k < n; ++k) {
        Complex trunc{};
        for (int q = 0; q <= n - 1 - k; ++q) trunc += terms[q];
        rc.r[k] = snum * trunc / det;
        snum *= s;
    }
    return {assemble(ladder, rc.r), rc};
}

Complex unit_term(const SymmetricInvariants& si, const ResponseDerivs& rd) {
    const int n = si.n;
    if (rd.pmax() + 1 < n)
        throw InvalidInputError("unit_term: need response derivatives up to order N-1");
    // (-1)^{N-1} sum_k (1/k!) I_k (i d/dt)^{N-1-k} F, with
    // (i d/dt)^p = (-1)^p (-i d/dt)^p wired to the stack entries.
    Complex acc{};
    for (int k = 0; k < n; ++k) {
        const Complex invariant = factorial(k) * si.s[k];  // I_k
        const int p = n - 1 - k;
        Complex deriv = rd.derivs[p];
        if (p % 2 == 1) deriv = -deriv;
        acc += invariant * deriv / factorial(k);
    }
    if ((n - 1) % 2 == 1) acc = -acc;
    return acc;
}

ComplexMatrix su_explicit(const HermitianTraceless& h, double t) {
    const int n = h.n();
    if (n < 2 || n > 5)
        throw UnsupportedOrderError("su_explicit: explicit forms cover N = 2..5");
    const ComplexMatrix& hm = h.matrix();
    const detail::PowerLadder ladder = detail::power_ladder(hm, n - 1);
    const std::vector<double> vals = detail::jacobi_eigenvalues(hm);
    std::vector<Complex> cv(vals.begin(), vals.end());
    const Spectrum spec = make_spectrum(std::move(cv));
    const ResponseDerivs rd = response_derivs(spec, t, n - 1);

    const ComplexMatrix eye = ComplexMatrix::identity(n);
    const Complex f = rd.derivs[0];
    if (n == 2) {
        // [H - i I d/dt] F
        return ladder.powers[1] * f + eye * (-kI * dF(rd, 1));
    }
    const Complex tr2 = ladder.power_sums[1];
    if (n == 3) {
        // [H^2 - i H d/dt - I (tr(H^2)/2 + d^2/dt^2)] F
        return ladder.powers[2] * f + ladder.powers[1] * (-kI * dF(rd, 1)) +
               eye * (-(0.5 * tr2 * f + dF(rd, 2)));
    }
    const Complex tr3 = ladder.power_sums[2];
    const Complex unit4 = -tr3 / 3.0 * f + 0.5 * kI * tr2 * dF(rd, 1) + kI * dF(rd, 3);
    if (n == 4) {
        // [H^3 - i H^2 d/dt - H (tr(H^2)/2 + d^2/dt^2)
        //  + I (-tr(H^3)/3 + i tr(H^2)/2 d/dt + i d^3/dt^3)] F
        return ladder.powers[3] * f + ladder.powers[2] * (-kI * dF(rd, 1)) +
               ladder.powers[1] * (-(0.5 * tr2 * f + dF(rd, 2))) + eye * unit4;
    }
    const Complex tr4 = ladder.power_sums[3];
    // [H^4 - i H^3 d/dt - H^2 (tr(H^2)/2 + d^2/dt^2)
    //  + H (-tr(H^3)/3 + i tr(H^2)/2 d/dt + i d^3/dt^3)
    //  + I ((tr H^2)^2/8 - tr(H^4)/4 + tr(H^3)/3 i d/dt
    //       + tr(H^2)/2 d^2/dt^2 + d^4/dt^4)] F
    const Complex unit5 = (0.125 * tr2 * tr2 - 0.25 * tr4) * f + tr3 / 3.0 * kI * dF(rd, 1) +
                          0.5 * tr2 * dF(rd, 2) + dF(rd, 4);
    return ladder.powers[4] * f + ladder.powers[3] * (-kI * dF(rd, 1)) +
           ladder.powers[2] * (-(0.5 * tr2 * f + dF(rd, 2))) + ladder.powers[1] * unit4 +
           eye * unit5;
}

HierarchyReport sun_hierarchy_check(const HermitianTraceless& h, double t) {
    const int n = h.n();
    if (n < 3 || n > 5)
        throw UnsupportedOrderError("sun_hierarchy_check: rank decrement covers N = 3..5");
    const detail::PowerLadder ladder = detail::power_ladder(h.matrix(), n - 1);
    const SymmetricInvariants si = sym_from_traces(ladder.power_sums, n);
    const std::vector<double> vals = detail::jacobi_eigenvalues(h.matrix());
    std::vector<Complex> cv(vals.begin(), vals.end());
    const ResponseDerivs rd = response_derivs(make_spectrum(std::move(cv)), t, n - 1);

    const std::vector<Complex> full = detail::exp_coeffs_at_rank(si.s, rd.derivs, n);
    // Same invariants, one rank down, same response stack.
    const std::vector<Complex> reduced = detail::exp_coeffs_at_rank(si.s, rd.derivs, n - 1);

    HierarchyReport rep;
    for (int k = 0; k < n - 1; ++k) {
        const double dev =
            std::abs(full[k + 1] - reduced[k]) / std::max(1.0, std::abs(full[k + 1]));
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    rep.pass = rep.max_deviation <= 1e-12;
    return rep;
}

}  // namespace chexpm
