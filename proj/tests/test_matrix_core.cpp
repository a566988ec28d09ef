#include <doctest.h>

#include "chexpm/prng.hpp"
#include "chexpm/spin.hpp"
#include "oracles.hpp"

using namespace chexpm;

namespace {

ComplexMatrix random_complex(int n, SplitMix64& rng) {
    ComplexMatrix m(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = Complex{rng.gaussian(), rng.gaussian()};
    return m;
}

}  // namespace

TEST_SUITE("matrix_core") {

TEST_CASE("trace powers of a diagonal matrix") {
    const std::vector<Complex> d{1.0, 2.0, 3.0};
    const ComplexMatrix m = ComplexMatrix::diagonal(d);
    const auto tp = trace_powers(m, 3);
    // reference from plain repeated multiplication
    for (int p = 1; p <= 3; ++p)
        CHECK(std::abs(tp[p - 1] - oracles::naive_trace_power(m, p)) < 1e-14);
    CHECK(tp[0] == Complex{6.0, 0.0});
    CHECK(tp[1] == Complex{14.0, 0.0});
    CHECK(tp[2] == Complex{36.0, 0.0});
}

TEST_CASE("trace powers edge cases") {
    CHECK(trace_powers(ComplexMatrix(2), 2) == std::vector<Complex>{Complex{}, Complex{}});
    const ComplexMatrix sx = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    const auto tp = trace_powers(sx, 2);
    CHECK(tp[0] == Complex{});
    CHECK(tp[1] == Complex{2.0, 0.0});
    CHECK_THROWS_AS(trace_powers(sx, 0), InvalidInputError);
    CHECK_THROWS_AS(ComplexMatrix(0), InvalidInputError);
}

TEST_CASE("non-finite entries are rejected") {
    ComplexMatrix m(2);
    m(0, 0) = Complex{std::numeric_limits<double>::quiet_NaN(), 0.0};
    CHECK_THROWS_AS(trace_powers(m, 1), InvalidInputError);
    CHECK_THROWS_AS(determinant(m), InvalidInputError);
}

TEST_CASE("determinant basics") {
    const std::vector<Complex> d{1.0, 2.0, 3.0};
    CHECK(std::abs(determinant(ComplexMatrix::diagonal(d)) - Complex{6.0, 0.0}) < 1e-14);
    CHECK(std::abs(determinant(ComplexMatrix::identity(4)) - Complex{1.0, 0.0}) < 1e-14);
    const ComplexMatrix perm = ComplexMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}});
    CHECK(std::abs(determinant(perm) - Complex{-1.0, 0.0}) < 1e-14);
}

TEST_CASE("trace cyclicity on random 5x5 pairs") {
    SplitMix64 rng(11);
    for (int rep = 0; rep < 40; ++rep) {
        const ComplexMatrix a = random_complex(5, rng);
        const ComplexMatrix b = random_complex(5, rng);
        const Complex tab = (a * b).trace();
        const Complex tba = (b * a).trace();
        CHECK(std::abs(tab - tba) <= 1e-12 * std::max(1.0, std::abs(tab)));
    }
}

TEST_CASE("hermitian traceless construction") {
    SplitMix64 rng(21);
    for (int n = 2; n <= 6; ++n) {
        const ComplexMatrix a = random_complex(n, rng);
        // project accepts anything square and lands inside the constraints
        const HermitianTraceless h = HermitianTraceless::project(a);
        CHECK(std::abs(h.matrix().trace()) <= 1e-13 * std::max(1.0, h.matrix().max_abs()) * n);

        // a shifted diagonal breaks tracelessness
        ComplexMatrix bad = h.matrix();
        for (int i = 0; i < n; ++i) bad(i, i) += 1.0;
        CHECK_THROWS_AS(HermitianTraceless{bad}, InvalidInputError);

        // a non-hermitian perturbation is rejected too
        ComplexMatrix skew = h.matrix();
        skew(0, n - 1) += Complex{0.1, 0.2};
        CHECK_THROWS_AS(HermitianTraceless{skew}, InvalidInputError);
    }
}

TEST_CASE("power ladder matches naive traces") {
    SplitMix64 rng(31);
    const ComplexMatrix m = random_complex(4, rng);
    const auto ladder = detail::power_ladder(m, 3);
    REQUIRE(ladder.power_sums.size() == 4);
    for (int p = 1; p <= 4; ++p)
        CHECK(std::abs(ladder.power_sums[p - 1] - oracles::naive_trace_power(m, p)) <
              1e-12 * std::max(1.0, std::abs(ladder.power_sums[p - 1])));
}

}  // TEST_SUITE
