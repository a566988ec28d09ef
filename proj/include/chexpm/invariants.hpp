#pragma once

#include <span>
#include <vector>

#include "chexpm/spectrum.hpp"

namespace chexpm {

// Elementary symmetric polynomials S_0..S_n of a spectrum together with the
// power sums tr(M^p) they were derived from (or imply).
struct SymmetricInvariants {
    int n = 0;
    std::vector<Complex> s;           // S_0..S_n, S_0 == 1
    std::vector<Complex> power_sums;  // tr(M^p), p = 1..n
    // Set when |S_m| spans more than 12 orders of magnitude; downstream
    // polynomial assembly then mixes disparate scales.
    bool scale_warning = false;
};

// S_m by stable coefficient-wise expansion of prod_k (1 + t*lambda_k).
SymmetricInvariants sym_from_spectrum(const Spectrum& spec);
SymmetricInvariants sym_from_spectrum(std::span<const Complex> values);

// S_m from power sums two ways: the m x m banded trace determinant and the
// Newton-identity recurrence m*S_m = sum_k (-1)^(k-1) S_{m-k} tr(M^k).
// Returns the recurrence values after asserting both routes agree to 1e-10
// relative to the recurrence term scale; disagreement throws NumericalError.
SymmetricInvariants sym_from_traces(std::span<const Complex> power_sums, int n);

// The closed forms of the first trace invariants, e.g.
// I_2 = (tr M)^2 - tr(M^2). Supported for m <= 4 only; equals m! * S_m.
Complex explicit_low_invariants(std::span<const Complex> power_sums, int m);

// Coefficients of C(z) = sum_m (-1)^m S_m z^(n-m), in descending powers of z.
// Leading coefficient is exactly 1.
std::vector<Complex> charpoly_coeffs(const SymmetricInvariants& si);

namespace detail {

// The literal banded determinant of traces evaluating I_m (m x m, LU route).
Complex trace_invariant_determinant(std::span<const Complex> power_sums, int m);

}  // namespace detail

}  // namespace chexpm
