#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "chexpm/matrix.hpp"

namespace chexpm {

// Embedded spin-j generator n . J in the (2j+1)-dimensional representation,
// Condon-Shortley ladder phases, J_z diagonal as (j, j-1, ..., -j).
struct SpinGenerator {
    int two_j = 0;
    std::array<double, 3> axis{0.0, 0.0, 1.0};
    HermitianTraceless matrix;

    double j() const { return 0.5 * two_j; }
    int dim() const { return two_j + 1; }
};

SpinGenerator spin_generator(int two_j, const std::array<double, 3>& axis);

struct CheckReport {
    bool pass = false;
    double max_deviation = 0.0;
};

// Characteristic polynomial of the spin generator against the factored
// product over the spectrum (j, j-1, ..., -j), coefficient by coefficient.
CheckReport spin_charpoly_check(int two_j);

// sinh((2j+1)x/2) / sinh(x/2); removable singularities (x = 0 and other
// zeros of the denominator) fall back to the finite character sum.
Complex character(int two_j, Complex x);

// tr[(n.J)^(2k)] for k = 1..kmax via the eigenvalue sums; the k = 1 and k = 2
// entries are verified against their closed forms in the quadratic Casimir.
std::vector<double> spin_trace_moments(int two_j, int kmax);

// GUE-style draw: independent gaussian entries, hermitized, trace removed.
// Deterministic for a fixed seed (SplitMix64).
HermitianTraceless random_traceless_hermitian(int n, std::uint64_t seed);

}  // namespace chexpm
