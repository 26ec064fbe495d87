// Times the OpenMP kernels against their serial reference paths. The
// parallel and serial paths produce identical results (integer-sum
// reductions and indexed replication slots); this target only compares
// their speed.

#include <chrono>
#include <cstdio>

#ifdef REDSCHED_HAVE_OPENMP
#include <omp.h>
#endif

#include "redsched/occupancy.hpp"
#include "redsched/qsim.hpp"

using namespace redsched;

namespace {

template <typename F>
double time_s(F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(const char* name, double serial, double parallel) {
    std::printf("%-34s serial %8.3fs   parallel %8.3fs   speedup %.2fx\n", name, serial,
                parallel, parallel > 0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef REDSCHED_HAVE_OPENMP
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not available; both columns run the serial path\n");
#endif

    {
        PlacementRun run = place(PolicyKind::random, 21, 5, 3000, nullptr, 1);
        OverlapMoments check_serial, check_parallel;
        double s = time_s([&] { check_serial = empirical_overlap_moments(run, 1LL << 40, false); });
        double p = time_s([&] { check_parallel = empirical_overlap_moments(run, 1LL << 40, true); });
        report("pair enumeration (4.5M pairs)", s, p);
        if (check_serial.e_o != check_parallel.e_o) std::printf("  MISMATCH!\n");
    }

    {
        EmpiricalIndicators a, b;
        double s = time_s([&] {
            a = empirical_indicators(PolicyKind::random, 21, 5, 21000, 16, 2, nullptr,
                                     500000, false);
        });
        double p = time_s([&] {
            b = empirical_indicators(PolicyKind::random, 21, 5, 21000, 16, 2, nullptr,
                                     500000, true);
        });
        report("occupancy replications (16x)", s, p);
        if (a.e_o != b.e_o || a.mean_max != b.mean_max) std::printf("  MISMATCH!\n");
    }

    {
        SimConfig cfg;
        cfg.n = 13;
        cfg.d = 4;
        cfg.policy = PolicyKind::round_robin;
        cfg.q = 10;
        cfg.p = 0.1;
        cfg.load = 0.7;
        cfg.jobs = 50000;
        cfg.replications = 8;
        cfg.seed = 3;
        SimResult a, b;
        cfg.parallel = false;
        double s = time_s([&] { a = simulate(cfg); });
        cfg.parallel = true;
        double p = time_s([&] { b = simulate(cfg); });
        report("queue sim replications (8x50k)", s, p);
        if (a.mean_wait != b.mean_wait) std::printf("  MISMATCH!\n");
    }

    return 0;
}
