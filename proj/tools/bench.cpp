// Benchmark of the OpenMP kernels against their serial counterparts. Each
// pair must agree (bit-exactly for eval_range and the distance blocks); a
// mismatch fails the run.

#include <chrono>
#include <cstdio>
#include <vector>

#include "expsum/pretentious.hpp"
#include "expsum/trajectory.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace expsum;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

template <typename F>
double timed(F&& fn) {
    double t0 = now_seconds();
    fn();
    return now_seconds() - t0;
}

} // namespace

int main(int argc, char** argv) {
    u64 N = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled, serial build\n");
#endif
    std::printf("N = %llu\n\n", static_cast<unsigned long long>(N));

    FactorTable table(N + 1);

    CharacterGroup g12(12);
    MultiplicativeFunctionSpec spec = MultiplicativeFunctionSpec::character(g12.character(3));
    spec.override_prime_power(2, 2, {0.5, 0.5});
    spec.override_prime_power(3, 2, {-0.5, 0.5});

    std::vector<Complex> serial(N), parallel(N);
    double t_serial = timed([&] { eval_range(spec, N, table, serial); });
    double t_parallel = timed([&] { eval_range_parallel(spec, N, table, parallel); });
    bool identical = true;
    for (u64 i = 0; i < N && identical; ++i)
        identical = serial[i].real() == parallel[i].real() && serial[i].imag() == parallel[i].imag();
    std::printf("eval_range          serial %8.3fs   parallel %8.3fs   speedup %4.2fx   %s\n", t_serial, t_parallel,
                t_serial / t_parallel, identical ? "identical" : "MISMATCH");
    if (!identical) return 1;

    MultiplicativeFunctionSpec f = MultiplicativeFunctionSpec::character(g12.character(1));
    MultiplicativeFunctionSpec one = MultiplicativeFunctionSpec::one();
    double d_serial = 0.0, d_parallel = 0.0;
    double td_serial = timed([&] { d_serial = distance_squared(f, one, 1, N, table); });
    double td_parallel = timed([&] { d_parallel = distance_squared_parallel(f, one, 1, N, table); });
    std::printf("distance_squared    serial %8.3fs   parallel %8.3fs   speedup %4.2fx   %s\n", td_serial, td_parallel,
                td_serial / td_parallel, d_serial == d_parallel ? "identical" : "MISMATCH");
    if (d_serial != d_parallel) return 1;

    // trajectory batch: thread fan-out over an (alpha, character) grid
    std::vector<TrajectoryJob> jobs;
    for (u64 i = 0; i < g12.size(); ++i) {
        for (u64 q : {7ull, 11ull, 13ull}) {
            jobs.push_back({MultiplicativeFunctionSpec::character(g12.character(i)), PhaseAngle::rational(1, q), 0.0,
                            std::min<u64>(N, 1000000)});
        }
    }
    std::vector<SumTrajectory> batch;
    double tb = timed([&] { batch = run_trajectories(jobs, table); });
    double sup = 0.0;
    for (const SumTrajectory& t : batch) sup = std::max(sup, t.final_sup());
    std::printf("trajectory batch    %zu trajectories in %8.3fs   (max sup %.6f)\n", batch.size(), tb, sup);
    return 0;
}
