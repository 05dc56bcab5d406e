#include "expsum/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expsum {

namespace {

void append_g17(std::string& s, double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    s += buf;
}

// Per-term evaluator for trajectories: O(1) for plain character bases,
// O(log n) SPF walk otherwise.
class TermEvaluator {
public:
    TermEvaluator(const MultiplicativeFunctionSpec& spec, const FactorTable& table) : spec_(spec), table_(table) {
        bool no_overrides = spec.prime_overrides().empty() && spec.prime_power_overrides().empty();
        pure_character_ = spec.base() != BaseRule::One && no_overrides;
        constant_one_ = spec.base() == BaseRule::One && no_overrides;
    }

    Complex operator()(u64 n) const {
        if (constant_one_) return {1.0, 0.0};
        if (pure_character_) return (*spec_.base_char())(n) * twist_factor(n);
        return spec_.value_at(n, table_);
    }

private:
    Complex twist_factor(u64 n) const {
        if (spec_.base() != BaseRule::TwistedCharacter) return {1.0, 0.0};
        return archimedean_twist(n, spec_.twist());
    }
    const MultiplicativeFunctionSpec& spec_;
    const FactorTable& table_;
    bool pure_character_ = false;
    bool constant_one_ = false;
};

} // namespace

double SumTrajectory::sup_at(u64 x) const {
    double s = 0.0;
    for (const TrajectoryPoint& p : checkpoints) {
        if (p.x > x) break;
        s = p.running_sup;
    }
    return s;
}

std::vector<u64> geometric_checkpoints(u64 X) {
    std::vector<u64> xs;
    u64 pow10 = 1;
    for (int j = 0;; ++j) {
        u64 x;
        if (j % 4 == 0) {
            x = pow10; // exact powers of ten land on the grid
        } else {
            x = static_cast<u64>(std::llround(std::pow(10.0, 0.25 * j)));
        }
        if (j % 4 == 3) pow10 *= 10;
        if (x > X) break;
        if (xs.empty() || x > xs.back()) xs.push_back(x);
        if (x == X) break;
    }
    if (xs.empty() || xs.back() != X) xs.push_back(X);
    return xs;
}

SumTrajectory sum_trajectory(const MultiplicativeFunctionSpec& spec, const PhaseAngle& alpha, double t, u64 X,
                             const FactorTable& table, std::span<const u64> schedule) {
    if (X > table.limit()) throw ResourceError("sum_trajectory: X exceeds sieve capacity");
    std::vector<u64> sched;
    if (schedule.empty()) {
        sched = geometric_checkpoints(X);
    } else {
        sched.assign(schedule.begin(), schedule.end());
        std::sort(sched.begin(), sched.end());
        sched.erase(std::unique(sched.begin(), sched.end()), sched.end());
        if (sched.empty() || sched.back() != X) sched.push_back(X);
    }

    SumTrajectory traj;
    traj.alpha = alpha;
    traj.t = t;
    traj.spec_id = spec.describe();
    traj.checkpoints.reserve(sched.size());

    std::optional<RootTable> roots;
    if (alpha.mode() == PhaseAngle::Mode::Rational && alpha.denominator() <= kMaxRootTableSize)
        roots.emplace(alpha.denominator());
    PhaseStream phases(alpha, roots ? &*roots : nullptr);
    TermEvaluator f(spec, table);

    CompensatedAccumulator acc;
    double sup = 0.0;
    size_t next_cp = 0;
    for (u64 n = 1; n <= X; ++n) {
        Complex term = f(n) * phases.next();
        if (t != 0.0) term *= archimedean_twist(n, t);
        acc.add(term);
        Complex s = acc.value();
        sup = std::max(sup, std::hypot(s.real(), s.imag()));
        if (next_cp < sched.size() && n == sched[next_cp]) {
            traj.checkpoints.push_back({n, s, sup});
            ++next_cp;
        }
    }
    if (X == 0) traj.checkpoints.push_back({0, {0.0, 0.0}, 0.0});
    return traj;
}

std::vector<SumTrajectory> run_trajectories(std::span<const TrajectoryJob> jobs, const FactorTable& table) {
    std::vector<SumTrajectory> out(jobs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (i64 i = 0; i < static_cast<i64>(jobs.size()); ++i) {
        const TrajectoryJob& job = jobs[i];
        out[i] = sum_trajectory(job.spec, job.alpha, job.t, job.X, table);
    }
    return out;
}

std::string trajectory_csv(const SumTrajectory& traj) {
    std::string s = "x,re,im,abs,runsup\n";
    for (const TrajectoryPoint& p : traj.checkpoints) {
        s += std::to_string(p.x);
        s += ',';
        append_g17(s, p.value.real());
        s += ',';
        append_g17(s, p.value.imag());
        s += ',';
        append_g17(s, std::hypot(p.value.real(), p.value.imag()));
        s += ',';
        append_g17(s, p.running_sup);
        s += '\n';
    }
    return s;
}

void write_trajectory_csv(std::ostream& os, const SumTrajectory& traj) { os << trajectory_csv(traj); }

std::string trajectory_metadata_json(const SumTrajectory& traj, const MultiplicativeFunctionSpec& spec) {
    nlohmann::json j;
    j["spec"] = nlohmann::json::parse(spec.to_json());
    j["alpha"] = traj.alpha.to_string();
    j["t"] = traj.t;
    j["X"] = traj.limit();
    j["schedule"] = "geometric:10^(1/4)";
    return j.dump(2);
}

ExplicitBounds explicit_bounds(u64 m, const PhaseAngle& alpha) {
    ExplicitBounds b;
    if (!alpha.is_integral()) b.geometric = 2.0 / std::abs(Complex{1.0, 0.0} - unit_phase(1, alpha));
    if (m == 0) throw DomainError("explicit_bounds: m must be positive");
    if (!alpha.scaled_is_integral(m)) {
        double denom = std::abs(unit_phase(m, alpha) - Complex{1.0, 0.0});
        b.character = 2.0 * static_cast<double>(m) / denom + static_cast<double>(m - 1);
    }
    return b;
}

Complex char_closed_form(const DirichletCharacter& chi, const PhaseAngle& alpha, u64 n) {
    u64 m = chi.modulus();
    if (n % m != 0) throw PreconditionError("char_closed_form: m must divide n");
    if (alpha.scaled_is_integral(m)) throw PreconditionError("char_closed_form: m*alpha is integral");
    if (n == 0) return {0.0, 0.0};
    Complex p = gauss_polynomial_P(chi, unit_phase(1, alpha));
    Complex num = unit_phase(n, alpha) - Complex{1.0, 0.0};
    Complex den = unit_phase(m, alpha) - Complex{1.0, 0.0};
    return p * num / den;
}

double TwistedPowerSums::plain_sup_at(u64 n) const {
    double s = 0.0;
    for (const Point& p : checkpoints) {
        if (p.n > n) break;
        s = p.sup_plain;
    }
    return s;
}

TwistedPowerSums twisted_power_sums(Complex z, double t, u64 N) {
    if (std::abs(std::abs(z) - 1.0) > 1e-12) throw PreconditionError("twisted_power_sums: |z| must be 1");
    TwistedPowerSums out;
    out.divergent = std::abs(z - Complex{1.0, 0.0}) <= 1e-12;

    std::vector<u64> sched = geometric_checkpoints(N);
    size_t next_cp = 0;
    CompensatedAccumulator harmonic, plain;
    Complex zn = {1.0, 0.0};
    for (u64 n = 1; n <= N; ++n) {
        zn *= z;
        if ((n & 0xFFF) == 0) zn /= std::abs(zn); // keep the power on the circle
        Complex term = zn;
        if (t != 0.0) term *= archimedean_twist(n, t);
        plain.add(term);
        harmonic.add(term / static_cast<double>(n));
        out.sup_plain = std::max(out.sup_plain, std::abs(plain.value()));
        out.sup_harmonic = std::max(out.sup_harmonic, std::abs(harmonic.value()));
        if (next_cp < sched.size() && n == sched[next_cp]) {
            out.checkpoints.push_back({n, out.sup_plain, out.sup_harmonic});
            ++next_cp;
        }
    }
    out.harmonic = harmonic.value();
    out.plain = plain.value();
    return out;
}

} // namespace expsum
