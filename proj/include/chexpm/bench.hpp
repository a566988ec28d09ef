#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chexpm {

struct BenchRow {
    std::string method;  // ch | oracle | explicit
    int n = 0;
    int batch = 0;
    double ns_per_matrix = 0.0;
    double max_deviation = 0.0;  // max-norm against the oracle result
};

// Seeded random traceless hermitian batches per dimension; wall-clock best of
// `reps` repetitions per method; deviations cross-checked against the oracle
// on every run. The explicit method is included for n <= 5 only.
std::vector<BenchRow> run_bench(int nmin, int nmax, int batch, int reps, double t,
                                std::uint64_t seed);

}  // namespace chexpm
