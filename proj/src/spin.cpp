#include "chexpm/spin.hpp"

#include <algorithm>
#include <cmath>

#include "chexpm/invariants.hpp"
#include "chexpm/prng.hpp"

namespace chexpm {

SpinGenerator spin_generator(int two_j, const std::array<double, 3>& axis) {
    if (two_j < 0) throw InvalidInputError("spin_generator: 2j must be >= 0");
    const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    if (std::abs(norm - 1.0) > 1e-12)
        throw InvalidInputError("spin_generator: axis must be a unit vector");

    const int d = two_j + 1;
    const double j = 0.5 * two_j;
    ComplexMatrix jz(d), jp(d);
    for (int i = 0; i < d; ++i) jz(i, i) = j - i;
    // <m+1|J+|m> = sqrt(j(j+1) - m(m+1)), basis ordered m = j..-j.
    for (int i = 1; i < d; ++i) {
        const double m = j - i;
        jp(i - 1, i) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const ComplexMatrix jm = jp.adjoint();
    ComplexMatrix h(d);
    h += (jp + jm) * Complex{0.5 * axis[0], 0.0};
    h += (jp - jm) * (axis[1] / (2.0 * kI));
    h += jz * Complex{axis[2], 0.0};
    return SpinGenerator{two_j, axis, HermitianTraceless(std::move(h))};
}

CheckReport spin_charpoly_check(int two_j) {
    if (two_j < 0 || two_j > 20)
        throw InvalidInputError("spin_charpoly_check: supported for 2j <= 20");
    // A tilted axis exercises the full matrix, not just the diagonal.
    const std::array<double, 3> axis{1.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0};
    const SpinGenerator g = spin_generator(two_j, axis);
    const int d = g.dim();
    const SymmetricInvariants si = sym_from_traces(trace_powers(g.matrix.matrix(), d), d);
    const std::vector<Complex> coeffs = charpoly_coeffs(si);

    // prod_{k=0}^{2j} (z - (j - k)), expanded coefficient by coefficient.
    std::vector<Complex> ref{1.0};
    for (int k = 0; k <= two_j; ++k) {
        const double root = 0.5 * two_j - k;
        ref.push_back(Complex{});
        for (int m = static_cast<int>(ref.size()) - 1; m >= 1; --m)
            ref[m] -= root * ref[m - 1];
    }

    double coeff_scale = 0.0;
    for (const Complex& c : ref) coeff_scale = std::max(coeff_scale, std::abs(c));
    CheckReport rep;
    for (size_t m = 0; m < ref.size(); ++m) {
        const double dev =
            std::abs(coeffs[m] - ref[m]) / std::max({std::abs(ref[m]), 1e-3 * coeff_scale, 1e-300});
        rep.max_deviation = std::max(rep.max_deviation, dev);
    }
    rep.pass = rep.max_deviation <= 1e-9;
    return rep;
}

Complex character(int two_j, Complex x) {
    if (two_j < 0) throw InvalidInputError("character: 2j must be >= 0");
    if (std::abs(x) < 1e-8) return static_cast<double>(two_j + 1);
    const Complex half = 0.5 * x;
    const Complex denom = std::sinh(half);
    if (std::abs(denom) < 1e-3) {
        // Near a removable singularity: fall back to the defining sum.
        Complex acc{};
        for (int k = 0; k <= two_j; ++k) acc += std::exp(x * (0.5 * two_j - k));
        return acc;
    }
    return std::sinh(static_cast<double>(two_j + 1) * half) / denom;
}

std::vector<double> spin_trace_moments(int two_j, int kmax) {
    if (two_j < 0 || two_j > 20)
        throw InvalidInputError("spin_trace_moments: supported for 2j <= 20");
    if (kmax < 1 || kmax > 5) throw InvalidInputError("spin_trace_moments: kmax in 1..5");
    const double j = 0.5 * two_j;
    std::vector<double> out(kmax, 0.0);
    for (int k = 1; k <= kmax; ++k) {
        double acc = 0.0;
        for (int i = 0; i <= two_j; ++i) acc += std::pow(j - i, 2 * k);
        out[k - 1] = acc;
    }
    // Closed forms in the quadratic Casimir c2 = j(j+1).
    const double c2 = j * (j + 1.0);
    const double m2 = c2 * (two_j + 1) / 3.0;
    if (std::abs(out[0] - m2) > 1e-12 * std::max(1.0, m2))
        throw NumericalError("spin_trace_moments: tr(J^2) disagrees with the Casimir form");
    if (kmax >= 2) {
        const double m4 = (two_j + 1) * c2 * (3.0 * c2 - 1.0) / 15.0;
        if (std::abs(out[1] - m4) > 1e-12 * std::max(1.0, m4))
            throw NumericalError("spin_trace_moments: tr(J^4) disagrees with the series form");
    }
    return out;
}

HermitianTraceless random_traceless_hermitian(int n, std::uint64_t seed) {
    if (n < 2) throw InvalidInputError("random_traceless_hermitian: need n >= 2");
    SplitMix64 rng(seed);
    ComplexMatrix a(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = Complex{rng.gaussian(), rng.gaussian()};
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (a(i, j) + std::conj(a(j, i)));
    const Complex shift = h.trace() / static_cast<double>(n);
    for (int i = 0; i < n; ++i) h(i, i) -= shift;
    // Pin the last diagonal entry so tr(H) sums to exactly zero in the order
    // trace() uses; the Newton recurrence then yields S_1 == 0 identically.
    Complex partial{};
    for (int i = 0; i < n - 1; ++i) partial += h(i, i);
    h(n - 1, n - 1) = -partial;
    return HermitianTraceless(std::move(h));
}

}  // namespace chexpm
