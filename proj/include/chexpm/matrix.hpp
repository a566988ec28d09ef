#pragma once

#include <complex>
#include <span>
#include <vector>

#include "chexpm/errors.hpp"

namespace chexpm {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

// Dense square complex matrix, row-major.
class ComplexMatrix {
public:
    explicit ComplexMatrix(int n) : n_(n), a_(check_dim(n) * n, Complex{}) {}

    static ComplexMatrix identity(int n);
    static ComplexMatrix diagonal(std::span<const Complex> d);
    // Convenience for literals in tests and tools: rows of equal length.
    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>>& rows);

    int n() const { return n_; }

    Complex& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const Complex& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    std::span<const Complex> data() const { return a_; }
    std::span<Complex> data() { return a_; }

    Complex trace() const;
    ComplexMatrix adjoint() const;
    double max_abs() const;            // max-norm over entries
    double frobenius_norm() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
    friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
    friend ComplexMatrix operator*(ComplexMatrix lhs, Complex scalar) { return lhs *= scalar; }
    friend ComplexMatrix operator*(Complex scalar, ComplexMatrix rhs) { return rhs *= scalar; }
    friend ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);

private:
    static int check_dim(int n) {
        if (n < 1) throw InvalidInputError("matrix dimension must be >= 1");
        return n;
    }

    int n_;
    std::vector<Complex> a_;
};

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

// Throws InvalidInputError when any entry is NaN/Inf.
void require_finite(const ComplexMatrix& m, const char* where);

// [tr(M^p), p = 1..pmax], powers accumulated by one multiply per step.
std::vector<Complex> trace_powers(const ComplexMatrix& m, int pmax);

// LU with partial pivoting; row-swap signs tracked exactly. Singular inputs give 0.
Complex determinant(const ComplexMatrix& m);

// Traceless hermitian generator. Construction enforces, relative to the max-norm,
// hermiticity (1e-12) and tracelessness (1e-12 * n).
class HermitianTraceless {
public:
    explicit HermitianTraceless(ComplexMatrix m);

    // Hermitize (M + M^dag)/2 and subtract the trace; accepts any square matrix.
    static HermitianTraceless project(const ComplexMatrix& m);

    const ComplexMatrix& matrix() const { return m_; }
    int n() const { return m_.n(); }

private:
    ComplexMatrix m_;
};

namespace detail {

// Powers M^0..M^pmax plus the power sums tr(M^p), p = 1..pmax+1, reusing one
// ladder of multiplies (the last power sum comes from tr(M^pmax * M) directly).
struct PowerLadder {
    std::vector<ComplexMatrix> powers;   // size pmax+1
    std::vector<Complex> power_sums;     // size pmax+1, entry p-1 = tr(M^p)
};

PowerLadder power_ladder(const ComplexMatrix& m, int pmax);

}  // namespace detail

}  // namespace chexpm
