#include "chexpm/matrix.hpp"

#include <algorithm>
#include <cmath>

namespace chexpm {

ComplexMatrix ComplexMatrix::identity(int n) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
    ComplexMatrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.n(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>>& rows) {
    ComplexMatrix m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n(); ++i) {
        if (static_cast<int>(rows[i].size()) != m.n())
            throw InvalidInputError("from_rows: ragged row lengths");
        for (int j = 0; j < m.n(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t{};
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(i, j) = std::conj((*this)(j, i));
    return r;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : a_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : a_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    for (const Complex& z : a_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    return true;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    if (rhs.n_ != n_) throw InvalidInputError("matrix dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] += rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    if (rhs.n_ != n_) throw InvalidInputError("matrix dimension mismatch");
    for (size_t k = 0; k < a_.size(); ++k) a_[k] -= rhs.a_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scalar) {
    for (Complex& z : a_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.n_ != rhs.n_) throw InvalidInputError("matrix dimension mismatch");
    const int n = lhs.n_;
    ComplexMatrix out(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const Complex aik = lhs(i, k);
            if (aik == Complex{}) continue;
            for (int j = 0; j < n; ++j) out(i, j) += aik * rhs(k, j);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n() != b.n()) throw InvalidInputError("matrix dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.n(); ++i)
        for (int j = 0; j < a.n(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

void require_finite(const ComplexMatrix& m, const char* where) {
    if (!m.all_finite())
        throw InvalidInputError(std::string(where) + ": non-finite matrix entry");
}

std::vector<Complex> trace_powers(const ComplexMatrix& m, int pmax) {
    require_finite(m, "trace_powers");
    if (pmax < 1) throw InvalidInputError("trace_powers: pmax must be >= 1");
    std::vector<Complex> out;
    out.reserve(pmax);
    ComplexMatrix p = m;
    out.push_back(p.trace());
    for (int k = 2; k <= pmax; ++k) {
        p = p * m;
        out.push_back(p.trace());
    }
    return out;
}

Complex determinant(const ComplexMatrix& m) {
    require_finite(m, "determinant");
    const int n = m.n();
    ComplexMatrix a = m;
    int sign = 1;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(a(col, col));
        for (int r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best == 0.0) return Complex{};  // singular
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(a(piv, j), a(col, j));
            sign = -sign;
        }
        const Complex d = a(col, col);
        for (int r = col + 1; r < n; ++r) {
            const Complex f = a(r, col) / d;
            if (f == Complex{}) continue;
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    Complex det = static_cast<double>(sign);
    for (int i = 0; i < n; ++i) det *= a(i, i);
    return det;
}

HermitianTraceless::HermitianTraceless(ComplexMatrix m) : m_(std::move(m)) {
    require_finite(m_, "HermitianTraceless");
    const double scale = m_.max_abs();
    const ComplexMatrix adj = m_.adjoint();
    if (max_abs_diff(m_, adj) > 1e-12 * scale)
        throw InvalidInputError("HermitianTraceless: matrix is not hermitian within tolerance");
    if (std::abs(m_.trace()) > 1e-12 * scale * m_.n())
        throw InvalidInputError("HermitianTraceless: trace exceeds tolerance");
}

HermitianTraceless HermitianTraceless::project(const ComplexMatrix& m) {
    require_finite(m, "HermitianTraceless::project");
    const int n = m.n();
    ComplexMatrix h(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    const Complex shift = h.trace() / static_cast<double>(n);
    for (int i = 0; i < n; ++i) h(i, i) -= shift;
    return HermitianTraceless(std::move(h));
}

namespace detail {

PowerLadder power_ladder(const ComplexMatrix& m, int pmax) {
    require_finite(m, "power_ladder");
    PowerLadder l;
    l.powers.reserve(pmax + 1);
    l.powers.push_back(ComplexMatrix::identity(m.n()));
    for (int p = 1; p <= pmax; ++p) l.powers.push_back(l.powers.back() * m);
    l.power_sums.reserve(pmax + 1);
    for (int p = 1; p <= pmax; ++p) l.power_sums.push_back(l.powers[p].trace());
    // tr(M^{pmax+1}) without forming the power: tr(M^pmax * M).
    Complex t{};
    const int n = m.n();
    const ComplexMatrix& top = l.powers[pmax];
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t += top(i, j) * m(j, i);
    l.power_sums.push_back(t);
    return l;
}

}  // namespace detail

}  // namespace chexpm
