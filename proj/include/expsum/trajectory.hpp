#pragma once

#include <optional>
#include <ostream>

#include "expsum/multfun.hpp"

namespace expsum {

struct TrajectoryPoint {
    u64 x;
    Complex value;
    double running_sup;
};

// Checkpointed partial sums S(x) = sum_{n <= x} f(n) e(n alpha) n^{it} with
// the running supremum of |S(n)| tracked at every term.
struct SumTrajectory {
    PhaseAngle alpha = PhaseAngle::rational(0, 1);
    double t = 0.0;
    std::string spec_id;
    std::vector<TrajectoryPoint> checkpoints;

    u64 limit() const { return checkpoints.empty() ? 0 : checkpoints.back().x; }
    Complex final_value() const { return checkpoints.back().value; }
    double final_sup() const { return checkpoints.back().running_sup; }
    // running sup at the largest checkpoint <= x
    double sup_at(u64 x) const;
};

// Geometric checkpoints with ratio 10^(1/4), exact powers of ten included,
// plus X itself.
std::vector<u64> geometric_checkpoints(u64 X);

SumTrajectory sum_trajectory(const MultiplicativeFunctionSpec& spec, const PhaseAngle& alpha, double t, u64 X,
                             const FactorTable& table, std::span<const u64> schedule = {});

// Batch runner; trajectories are independent and fan out across threads,
// results returned in input order.
struct TrajectoryJob {
    MultiplicativeFunctionSpec spec;
    PhaseAngle alpha = PhaseAngle::rational(0, 1);
    double t = 0.0;
    u64 X = 0;
};
std::vector<SumTrajectory> run_trajectories(std::span<const TrajectoryJob> jobs, const FactorTable& table);

// CSV rows x,re,im,abs,runsup with 17 significant digits.
void write_trajectory_csv(std::ostream& os, const SumTrajectory& traj);
std::string trajectory_csv(const SumTrajectory& traj);
std::string trajectory_metadata_json(const SumTrajectory& traj, const MultiplicativeFunctionSpec& spec);

struct ExplicitBounds {
    std::optional<double> geometric; // 2/|1-e(alpha)|, needs alpha not integral
    std::optional<double> character; // 2m/|e(m alpha)-1| + m-1, needs m*alpha not integral
};
ExplicitBounds explicit_bounds(u64 m, const PhaseAngle& alpha);

// Closed form for sum_{j <= n} chi(j) e(j alpha) when m | n and m*alpha is not
// integral: P(e(alpha)) (e(n alpha)-1)/(e(m alpha)-1).
Complex char_closed_form(const DirichletCharacter& chi, const PhaseAngle& alpha, u64 n);

// Partial sums a_N = sum z^n n^{it} / n and b_N = sum z^n n^{it} with running
// suprema. z = 1 flags divergence (the harmonic sum grows like log N).
struct TwistedPowerSums {
    Complex harmonic;
    Complex plain;
    double sup_harmonic = 0.0;
    double sup_plain = 0.0;
    bool divergent = false;
    struct Point {
        u64 n;
        double sup_plain;
        double sup_harmonic;
    };
    std::vector<Point> checkpoints;
    double plain_sup_at(u64 n) const;
};
TwistedPowerSums twisted_power_sums(Complex z, double t, u64 N);

} // namespace expsum
