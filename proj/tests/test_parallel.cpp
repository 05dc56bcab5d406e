// The OpenMP kernels must reproduce the serial results exactly: eval_range by
// identical per-n expression trees, distance by fixed block partitioning,
// trajectory batches by independent jobs merged in input order.

#include <random>

#include "doctest.h"
#include "expsum/pretentious.hpp"
#include "expsum/trajectory.hpp"

using namespace expsum;

TEST_CASE("parallel eval_range is bit-identical to serial") {
    FactorTable table(50000);
    CharacterGroup g12(12);
    MultiplicativeFunctionSpec specs[] = {
        MultiplicativeFunctionSpec::one(),
        MultiplicativeFunctionSpec::twisted_character(g12.character(1), 1.25),
        construct_example2(3).spec,
    };
    specs[0].override_prime_power(2, 2, {0.0, 1.0});
    specs[0].override_prime(7, {-0.5, 0.5});
    for (const auto& spec : specs) {
        std::vector<Complex> serial(50000), parallel(50000);
        eval_range(spec, 50000, table, serial);
        eval_range_parallel(spec, 50000, table, parallel);
        for (u64 i = 0; i < 50000; ++i) {
            REQUIRE(serial[i].real() == parallel[i].real());
            REQUIRE(serial[i].imag() == parallel[i].imag());
        }
    }
}

TEST_CASE("parallel distance matches serial bitwise") {
    FactorTable table(200000);
    MultiplicativeFunctionSpec one = MultiplicativeFunctionSpec::one();
    MultiplicativeFunctionSpec chi = MultiplicativeFunctionSpec::character(CharacterGroup(12).character(2));
    for (u64 y : {1ull, 1000ull, 65536ull}) {
        double s = distance_squared(one, chi, y, 200000, table);
        double p = distance_squared_parallel(one, chi, y, 200000, table);
        REQUIRE(s == p);
    }
}

TEST_CASE("trajectory batch equals a serial loop") {
    FactorTable table(20000);
    CharacterGroup g5(5);
    std::vector<TrajectoryJob> jobs;
    for (u64 i = 0; i < g5.size(); ++i)
        for (u64 q : {7ull, 9ull})
            jobs.push_back({MultiplicativeFunctionSpec::character(g5.character(i)), PhaseAngle::rational(1, q),
                            0.5 * static_cast<double>(i), 20000});
    std::vector<SumTrajectory> batch = run_trajectories(jobs, table);
    REQUIRE(batch.size() == jobs.size());
    for (size_t i = 0; i < jobs.size(); ++i) {
        SumTrajectory serial = sum_trajectory(jobs[i].spec, jobs[i].alpha, jobs[i].t, jobs[i].X, table);
        REQUIRE(batch[i].checkpoints.size() == serial.checkpoints.size());
        for (size_t c = 0; c < serial.checkpoints.size(); ++c) {
            REQUIRE(batch[i].checkpoints[c].x == serial.checkpoints[c].x);
            REQUIRE(batch[i].checkpoints[c].value == serial.checkpoints[c].value);
            REQUIRE(batch[i].checkpoints[c].running_sup == serial.checkpoints[c].running_sup);
        }
    }
}
