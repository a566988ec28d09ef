#include "chexpm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>

#include "chexpm/expm.hpp"
#include "chexpm/spin.hpp"

namespace chexpm {

std::vector<BenchRow> run_bench(int nmin, int nmax, int batch, int reps, double t,
                                std::uint64_t seed) {
    if (batch < 1) throw InvalidInputError("run_bench: batch must be >= 1");
    if (reps < 1) throw InvalidInputError("run_bench: reps must be >= 1");
    if (nmin < 2 || nmax > 12 || nmin > nmax)
        throw InvalidInputError("run_bench: need 2 <= nmin <= nmax <= 12");

    std::vector<BenchRow> rows;
    for (int n = nmin; n <= nmax; ++n) {
        std::vector<HermitianTraceless> inputs;
        inputs.reserve(batch);
        for (int b = 0; b < batch; ++b)
            inputs.push_back(random_traceless_hermitian(n, seed + 7919 * n + b));
        std::vector<ComplexMatrix> reference;
        reference.reserve(batch);
        for (const auto& h : inputs) reference.push_back(expm_oracle(h.matrix(), t));

        struct Method {
            const char* name;
            std::function<ComplexMatrix(const HermitianTraceless&)> run;
            bool enabled;
        };
        const std::vector<Method> methods = {
            {"ch", [&](const HermitianTraceless& h) { return expm_ch(h, t); }, true},
            {"oracle",
             [&](const HermitianTraceless& h) { return expm_oracle(h.matrix(), t); }, true},
            {"explicit", [&](const HermitianTraceless& h) { return su_explicit(h, t); },
             n <= 5},
        };
        for (const auto& method : methods) {
            if (!method.enabled) continue;
            double best_ns = std::numeric_limits<double>::infinity();
            for (int rep = 0; rep < reps; ++rep) {
                const auto t0 = std::chrono::steady_clock::now();
                for (const auto& h : inputs) {
                    volatile double sink = method.run(h).max_abs();
                    (void)sink;
                }
                const auto t1 = std::chrono::steady_clock::now();
                best_ns = std::min(
                    best_ns,
                    std::chrono::duration<double, std::nano>(t1 - t0).count() / batch);
            }
            double max_dev = 0.0;
            for (int b = 0; b < batch; ++b)
                max_dev = std::max(max_dev, max_abs_diff(method.run(inputs[b]), reference[b]));
            rows.push_back({method.name, n, batch, best_ns, max_dev});
        }
    }
    return rows;
}

}  // namespace chexpm
