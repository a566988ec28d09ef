#pragma once

#include <optional>
#include <span>
#include <vector>

#include "chexpm/matrix.hpp"

namespace chexpm {

// Eigenvalues sorted by descending real part, then descending imaginary part,
// plus the degeneracy clusters (index groups agreeing within cluster_tol).
struct Spectrum {
    std::vector<Complex> values;
    std::vector<std::vector<int>> clusters;  // partition of 0..N-1, ordered by first index
    double cluster_tol = 0.0;

    int n() const { return static_cast<int>(values.size()); }
    bool degenerate() const;
    // Cluster index for eigenvalue k.
    int cluster_of(int k) const;
};

// Transitive closure of |a - b| <= tol over the given values (order preserved).
std::vector<std::vector<int>> cluster_spectrum(std::span<const Complex> values, double tol);

// 1e-8 * (spectral diameter), with a machine-epsilon floor so that identical
// values always land in one cluster.
double default_cluster_tol(std::span<const Complex> values);

// Sort + cluster. Passing no tolerance uses default_cluster_tol.
Spectrum make_spectrum(std::vector<Complex> values, std::optional<double> tol = std::nullopt);

// Cyclic Jacobi rotations, iterated until the off-diagonal Frobenius norm drops
// below 1e-14 * ||H||_F. Throws NumericalError after 50 sweeps without convergence.
Spectrum eig_hermitian(const HermitianTraceless& h);

// Roots of the characteristic polynomial built from trace invariants, located by
// Aberth-Ehrlich simultaneous iteration with a final Newton polish. Accuracy is
// honest for n <= 16; beyond that the coefficient route degrades.
Spectrum char_roots_general(const ComplexMatrix& m);

namespace detail {

// Jacobi on an arbitrary hermitian matrix (possibly with trace); returns
// eigenvalues only, unsorted.
std::vector<double> jacobi_eigenvalues(const ComplexMatrix& h);

// Roots of the monic polynomial with the given coefficients in descending
// powers (coeffs[0] == 1). Throws NumericalError on stagnation, carrying the
// worst residual.
std::vector<Complex> aberth_roots(std::span<const Complex> coeffs);

}  // namespace detail

}  // namespace chexpm
