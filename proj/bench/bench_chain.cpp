// Timing comparison between the serial reference chain sampler and the
// OpenMP kernel, on a mid-size embedding plan.  The two kernels must
// produce identical histograms; the benchmark checks that as it times.
#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "iqf/skorokhod.hpp"

using namespace iqf;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t n = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
    const std::uint64_t seed = 20240901;

    const AtomicDistribution mu0 = AtomicDistribution::point_mass(0.0);
    // a mean-preserving spread of mu0, so the embedding exists by construction
    AtomicDistribution mu = balayage(mu0, Interval(-1.0, 1.0));
    mu = balayage(mu, Interval(0.0, 2.5));
    mu = balayage(mu, Interval(-3.0, -0.5));
    mu = balayage(mu, Interval(1.0, 4.0));
    const EmbeddingPlan plan = plan_embedding(mu0, mu);
    std::printf("plan: %zu intervals, exact=%d, n=%llu\n", plan.intervals.size(),
                plan.exact ? 1 : 0, static_cast<unsigned long long>(n));

    auto t0 = Clock::now();
    const auto serial = sample_exit_counts_serial(plan, mu0, n, seed);
    const double ts = seconds_since(t0);
    std::printf("%-22s %8.3f s  %8.1f Msamples/s\n", "serial reference", ts,
                n / ts / 1e6);

#ifdef _OPENMP
    const int max_workers = omp_get_max_threads();
#else
    const int max_workers = 1;
#endif
    for (int w = 1; w <= max_workers; w *= 2) {
        t0 = Clock::now();
        const auto par = sample_exit_counts_parallel(plan, mu0, n, seed, w);
        const double tp = seconds_since(t0);
        const bool same = par == serial;
        std::printf("openmp x%-2d            %8.3f s  %8.1f Msamples/s  speedup %.2f  %s\n",
                    w, tp, n / tp / 1e6, ts / tp, same ? "(matches serial)" : "MISMATCH");
        if (!same) return 1;
    }
    return 0;
}
