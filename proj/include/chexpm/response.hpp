#pragma once

#include <span>
#include <vector>

#include "chexpm/spectrum.hpp"

namespace chexpm {

// Values of (-i d/dt)^p F(t) for p = 0..pmax, where F is the response function
// F(t) = sum_k exp(i lambda_k t) / C'(lambda_k) of a spectrum.
//
// For a sign-symmetric real spectrum the entries alternate between purely real
// and purely imaginary: entry p is real when p == N-1 (mod 2).
struct ResponseDerivs {
    double t = 0.0;
    std::vector<Complex> derivs;

    int pmax() const { return static_cast<int>(derivs.size()) - 1; }
};

// C'(lambda_k) = prod_{m != k} (lambda_k - lambda_m). Eigenvalue k must sit in
// a singleton cluster; otherwise DegenerateSpectrumError (use the confluent path).
Complex cprime(const Spectrum& spec, int k);

// Derivative stack of the response function. Uses the residue formula when all
// eigenvalue gaps exceed 1e-6 * (spectral diameter); otherwise evaluates the
// confluent divided difference of z^p exp(izt) over the clustered nodes, which
// is the constructive limit for degenerate spectra. pmax <= 2N.
ResponseDerivs response_derivs(const Spectrum& spec, double t, int pmax);

// Closed form for the spin-j response: (2i)^(2j)/(2j)! * sin^(2j)(theta/2).
Complex spin_response(int two_j, double theta);

// (1/2 pi i) of the counter-clockwise circle integral of exp(itz)/C(z); the
// normalization makes the quadrature value equal the residue sum. The circle
// must enclose every eigenvalue; npoints >= 64.
Complex response_contour_oracle(const Spectrum& spec, double t, double radius, int npoints);

// 1.5 * max|lambda| + 1, keeping quadrature nodes away from the poles.
double default_contour_radius(const Spectrum& spec);

namespace detail {

// Residue-sum route; requires pairwise-distinct values.
ResponseDerivs response_derivs_generic(std::span<const Complex> values, double t, int pmax);

// Confluent divided-difference route over explicit clusters (each cluster is
// collapsed to its mean with the corresponding multiplicity).
ResponseDerivs response_derivs_confluent(std::span<const Complex> values,
                                         const std::vector<std::vector<int>>& clusters,
                                         double t, int pmax);

}  // namespace detail

}  // namespace chexpm
