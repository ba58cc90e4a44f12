// Benchmarks the OpenMP kernels against their serial reference
// implementations and verifies that both produce identical results.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "ppc/calibration.hpp"
#include "ppc/rng.hpp"
#include "ppc/uniformity.hpp"

namespace {

template <typename F>
double time_ms(F&& fn, int repeats) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

}  // namespace

int main(int argc, char** argv) {
    int repeats = 3;
    if (argc > 1) repeats = std::atoi(argv[1]);

    {
        const std::size_t n = 250, k = 100, reps = 10000;
        std::vector<int> serial, parallel;
        const double ts = time_ms(
            [&] { serial = ppc::detail::simulate_counts_serial(n, k, reps, 0x5ca1ab1e); }, repeats);
        const double tp = time_ms(
            [&] { parallel = ppc::detail::simulate_counts_parallel(n, k, reps, 0x5ca1ab1e); }, repeats);
        std::printf("simulate_counts  N=%zu K=%zu R=%zu   serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
                    n, k, reps, ts, tp, ts / tp, serial == parallel ? "identical" : "MISMATCH");
        if (serial != parallel) return 1;
    }

    {
        const std::size_t n = 500, s_draws = 2000;
        ppc::Rng rng(123);
        std::vector<double> pred(n);
        for (double& p : pred) p = rng.uniform();
        std::vector<std::vector<int>> outcomes(s_draws, std::vector<int>(n));
        for (std::size_t s = 0; s < s_draws; ++s) {
            ppc::Rng draw_rng(ppc::derive_seed(9, s));
            for (std::size_t i = 0; i < n; ++i) outcomes[s][i] = draw_rng.uniform() < pred[i] ? 1 : 0;
        }
        std::vector<double> serial, parallel;
        const double ts =
            time_ms([&] { serial = ppc::detail::band_ceps_serial(pred, outcomes); }, repeats);
        const double tp =
            time_ms([&] { parallel = ppc::detail::band_ceps_parallel(pred, outcomes); }, repeats);
        std::printf("band_ceps        N=%zu S=%zu       serial %8.1f ms   parallel %8.1f ms   speedup %.2fx   %s\n",
                    n, s_draws, ts, tp, ts / tp, serial == parallel ? "identical" : "MISMATCH");
        if (serial != parallel) return 1;
    }
    return 0;
}
