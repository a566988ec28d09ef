#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace chexpm {

struct SuiteResult {
    std::string name;
    int checks = 0;
    int failures = 0;
    double worst = 0.0;       // worst normalized deviation seen
    std::string worst_note;   // which check produced it

    bool pass() const { return failures == 0; }
};

// Names: matrix_core, spectra, invariants, response, expm, simplex, spin.
std::vector<std::string> selftest_suite_names();

// Runs the property suites at the given sample count. An empty filter runs
// everything; unknown names throw InvalidInputError.
std::vector<SuiteResult> run_selftest(const std::vector<std::string>& suites, int samples,
                                      std::uint64_t seed);

}  // namespace chexpm
