#pragma once

#include <utility>
#include <vector>

#include "chexpm/invariants.hpp"
#include "chexpm/response.hpp"

namespace chexpm {

// Coefficients of exp(itM) = sum_n M^n E_n(t).
struct ExpPolyCoeffs {
    double t = 0.0;
    std::vector<Complex> e;  // E_0..E_{N-1}
};

// Coefficients of (I - sM)^{-1} = sum_n M^n R_n(s).
struct ResolventCoeffs {
    Complex s{};
    std::vector<Complex> r;  // R_0..R_{N-1}
};

struct HierarchyReport {
    bool pass = false;
    double max_deviation = 0.0;
};

// E_n(t) = sum_{m=0}^{N-1-n} (-1)^m S_m (-i d/dt)^{N-1-n-m} F(t).
// The top coefficient E_{N-1} is always F(t) itself.
ExpPolyCoeffs exp_coeffs(const SymmetricInvariants& si, const ResponseDerivs& rd);

// exp(itM) as an order-(N-1) matrix polynomial: spectrum -> trace invariants ->
// response-derivative stack -> coefficient assembly over one power ladder.
// Hermitian inputs take the Jacobi spectral path, general ones the
// characteristic-polynomial root path. Max-norm error grows like e^{|t| rho(M)}.
ComplexMatrix expm_ch(const ComplexMatrix& m, double t);
ComplexMatrix expm_ch(const HermitianTraceless& h, double t);

// Independent reference: scaling-and-squaring Taylor summation, terms summed
// to < 1e-20 relative. Deliberately avoids the spectral machinery above.
ComplexMatrix expm_oracle(const ComplexMatrix& m, double t);

// (I - sM)^{-1} = sum_n M^n R_n(s) with
// R_n(s) = s^n / det(I - sM) * Trunc_{N-1-n}[det(I - sM)], the truncation
// realized on the coefficient list det(I - sM) = sum_m (-s)^m S_m.
std::pair<ComplexMatrix, ResolventCoeffs> resolvent_poly(const ComplexMatrix& m, Complex s);

// The unit-matrix coefficient evaluated as the trace-invariant series
// (-1)^{N-1} sum_n (1/n!) I_n (i d/dt)^{N-1-n} F(t); algebraically identical
// to exp_coeffs(...).e[0] via S_n = I_n / n!.
Complex unit_term(const SymmetricInvariants& si, const ResponseDerivs& rd);

// The explicit bracketed group-element forms for N = 2..5, each trace
// coefficient and d/dt power wired literally to the response stack.
ComplexMatrix su_explicit(const HermitianTraceless& h, double t);

// Checks the rank-decrement rule: dropping the unit term of the rank-N
// coefficient list and shifting the matrix powers down reproduces the
// rank-(N-1) coefficient structure applied to F_N. Supported for N = 3..5.
HierarchyReport sun_hierarchy_check(const HermitianTraceless& h, double t);

namespace detail {

// Coefficient formula at an explicit rank (rank <= si-size constraints are the
// caller's responsibility); used by the hierarchy check.
std::vector<Complex> exp_coeffs_at_rank(std::span<const Complex> s,
                                        std::span<const Complex> derivs, int rank);

// Spectrum selector shared by the polynomial routes: Jacobi when hermitian,
// characteristic-polynomial roots otherwise.
Spectrum spectrum_for(const ComplexMatrix& m);

}  // namespace detail

}  // namespace chexpm
