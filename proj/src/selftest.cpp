#include "expsum/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <random>
#include <sstream>

#include "expsum/modified_sums.hpp"
#include "expsum/oracles.hpp"
#include "expsum/pretentious.hpp"
#include "expsum/trajectory.hpp"

namespace expsum {

namespace {

Complex unit_circle(double turns) { return {std::cos(kTau * turns), std::sin(kTau * turns)}; }

MultiplicativeFunctionSpec random_spec(u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    MultiplicativeFunctionSpec spec;
    switch (rng() % 3) {
        case 0: spec = MultiplicativeFunctionSpec::one(); break;
        case 1: {
            u64 m = 2 + rng() % 29;
            CharacterGroup g(m);
            spec = MultiplicativeFunctionSpec::character(g.character(rng() % g.size()));
            break;
        }
        default: {
            u64 m = 2 + rng() % 29;
            CharacterGroup g(m);
            double t = 6.0 * unif(rng) - 3.0;
            spec = MultiplicativeFunctionSpec::twisted_character(g.character(rng() % g.size()), t);
            break;
        }
    }
    bool cm = rng() % 2 == 0;
    spec.set_completely_multiplicative(cm);
    static constexpr u64 pool[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 97};
    u64 overrides = rng() % 9;
    for (u64 i = 0; i < overrides; ++i) {
        u64 p = pool[rng() % std::size(pool)];
        u32 k = cm ? 1 : 1 + static_cast<u32>(rng() % 4);
        Complex v;
        switch (rng() % 3) {
            case 0: v = {0.0, 0.0}; break;
            case 1: v = unit_circle(unif(rng)); break;
            default: v = 0.5 * unit_circle(unif(rng)); break;
        }
        spec.override_prime_power(p, k, v);
    }
    spec.validate();
    return spec;
}

PhaseAngle random_fixed_point(std::mt19937_64& rng) {
    u128 frac = ((u128)rng() << 64) | rng();
    return PhaseAngle::fixed_point(frac);
}

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

bool approx_leq(double a, double b, double tol) { return a <= b + tol; }

} // namespace

int run_acceptance(std::ostream& os, const SelfTestOptions& options) {
    const bool quick = options.quick;
    const u64 big_x = quick ? 100000 : 1000000;
    const u64 mid_x = quick ? 1000 : 10000;

    auto table = std::make_shared<const FactorTable>(big_x + 16);

    std::vector<Criterion> criteria;

    // 1: character-sum bound over the modulus/alpha grid
    criteria.push_back({1, "character-sum bound 2m/|e(m a)-1| + m-1 dominates running sup", [&](std::string& detail) {
        std::vector<TrajectoryJob> jobs;
        std::vector<double> bounds;
        for (u64 m : {3ull, 4ull, 5ull, 7ull, 12ull}) {
            CharacterGroup g(m);
            std::vector<PhaseAngle> alphas = {PhaseAngle::rational(1, 2), PhaseAngle::rational(1, 2 * m),
                                              PhaseAngle::sqrt2_minus_one()};
            for (const PhaseAngle& alpha : alphas) {
                if (alpha.scaled_is_integral(m)) continue;
                ExplicitBounds b = explicit_bounds(m, alpha);
                for (u64 i = 0; i < g.size(); ++i) {
                    jobs.push_back({MultiplicativeFunctionSpec::character(g.character(i)), alpha, 0.0, big_x});
                    bounds.push_back(*b.character);
                }
            }
        }
        std::vector<SumTrajectory> trajs = run_trajectories(jobs, *table);
        double worst_margin = 1e300;
        for (size_t i = 0; i < trajs.size(); ++i) {
            double margin = bounds[i] + 1e-6 - trajs[i].final_sup();
            worst_margin = std::min(worst_margin, margin);
            if (margin < 0.0) {
                detail = trajs[i].spec_id + " alpha=" + jobs[i].alpha.to_string() +
                         " sup=" + std::to_string(trajs[i].final_sup()) + " bound=" + std::to_string(bounds[i]);
                return false;
            }
        }
        detail = std::to_string(trajs.size()) + " trajectories to x=" + std::to_string(big_x) +
                 ", smallest slack " + std::to_string(worst_margin);
        return true;
    }});

    // 2: Gauss closed form vs direct polynomial evaluation
    criteria.push_back({2, "Gauss sum closed form matches brute-force P(e(a/m)) to 1e-9", [&](std::string& detail) {
        double worst = 0.0;
        u64 checked = 0;
        for (u64 m = 1; m <= 60; ++m) {
            CharacterGroup g(m);
            for (u64 i = 0; i < g.size(); ++i) {
                DirichletCharacter chi = g.character(i);
                if (!gauss_hypothesis_holds(chi)) continue;
                for (u64 a = 1; a <= m; ++a) {
                    Complex lhs = gauss_P_formula(chi, static_cast<i64>(a));
                    Complex rhs = oracles::naive_P(chi, unit_phase(a, PhaseAngle::rational(1, m)));
                    worst = std::max(worst, std::abs(lhs - rhs));
                    ++checked;
                }
            }
        }
        detail = std::to_string(checked) + " (chi, a) pairs, max deviation " + std::to_string(worst);
        return worst <= 1e-9;
    }});

    // 3: sieve evaluation vs trial-division oracle, bit exact
    criteria.push_back({3, "eval_range equals naive_eval bit-exactly on 20 seeded specs", [&](std::string& detail) {
        const u64 N = quick ? 20000 : 100000;
        for (u64 s = 0; s < 20; ++s) {
            MultiplicativeFunctionSpec spec = random_spec(20250808 + s);
            std::vector<Complex> fast(N);
            eval_range(spec, N, *table, fast);
            for (u64 n = 1; n <= N; ++n) {
                Complex slow = oracles::naive_eval(spec, n);
                if (fast[n - 1].real() != slow.real() || fast[n - 1].imag() != slow.imag()) {
                    detail = "spec " + std::to_string(s) + " (" + spec.describe() + ") differs at n=" + std::to_string(n);
                    return false;
                }
            }
        }
        detail = "20 specs, n <= " + std::to_string(N) + ", all values identical";
        return true;
    }});

    // 4: recursive vs expanded partially sieved sums
    criteria.push_back({4, "A-recursion equals its multi-sum expansion to 1e-8", [&](std::string& detail) {
        std::mt19937_64 rng(411);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        CharacterGroup g12(12);
        double worst = 0.0;
        const std::vector<std::vector<u32>> tuples = {{1}, {2}, {1, 1}, {2, 2}};
        for (u64 ci = 0; ci < g12.size(); ++ci) {
            ModifiedCharacterSpec mspec;
            mspec.chi = g12.character(ci);
            auto [m0, psi] = conductor_and_primitive_part(mspec.chi);
            for (u64 p : {2ull, 3ull}) {
                Complex eta = unit_circle(unif(rng));
                while (std::abs(eta - psi(p % m0)) <= 1e-9) eta = unit_circle(unif(rng));
                mspec.modifications.emplace_back(p, eta);
            }
            ModifiedCharSums sums(mspec, table);
            for (int ai = 0; ai < 10; ++ai) {
                PhaseAngle alpha = random_fixed_point(rng);
                for (const auto& ells : tuples) {
                    for (double x : {1e2, 1e3, 1e4}) {
                        Complex a = sums.recursive(ells, x, alpha);
                        Complex b = sums.expanded(ells, x, alpha);
                        worst = std::max(worst, std::abs(a - b));
                    }
                }
            }
        }
        detail = "4 characters mod 12, 4 tuples, 3 scales, 10 alphas; max deviation " + std::to_string(worst);
        return worst <= 1e-8;
    }});

    // 5: decomposition of S(x, alpha) into dilated character sums
    criteria.push_back({5, "modified sum equals the auto-truncating beta expansion to 1e-8", [&](std::string& detail) {
        std::mt19937_64 rng(511);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        CharacterGroup g12(12);
        double worst = 0.0;
        for (u64 ci = 0; ci < g12.size(); ++ci) {
            ModifiedCharacterSpec mspec;
            mspec.chi = g12.character(ci);
            auto [m0, psi] = conductor_and_primitive_part(mspec.chi);
            for (u64 p : {2ull, 3ull}) {
                Complex eta = unit_circle(unif(rng));
                while (std::abs(eta - psi(p % m0)) <= 1e-9) eta = unit_circle(unif(rng));
                mspec.modifications.emplace_back(p, eta);
            }
            ModifiedCharSums sums(mspec, table);
            for (int ai = 0; ai < 10; ++ai) {
                PhaseAngle alpha = random_fixed_point(rng);
                Complex direct = sums.modified_sum(static_cast<double>(mid_x), alpha);
                Complex expansion = sums.expanded({}, static_cast<double>(mid_x), alpha);
                worst = std::max(worst, std::abs(direct - expansion));
            }
        }
        detail = "4 characters mod 12, x=" + std::to_string(mid_x) + ", 10 alphas; max deviation " + std::to_string(worst);
        return worst <= 1e-8;
    }});

    // 6: growth of the modified character sum
    criteria.push_back({6, "modified character mod 4 grows: sup strictly increasing, doubled by 10^6", [&](std::string& detail) {
        CharacterGroup g4(4);
        ModifiedCharacterSpec mspec;
        mspec.chi = g4.character(1);
        mspec.modifications.emplace_back(2, Complex{1.0, 0.0});
        MultiplicativeFunctionSpec f = modified_character(mspec);
        PhaseAngle alpha = PhaseAngle::sqrt2_minus_one();
        SumTrajectory traj = sum_trajectory(f, alpha, 0.0, big_x, *table);
        std::vector<u64> marks;
        for (u64 x = big_x / 1000; x <= big_x; x *= 10) marks.push_back(x);
        std::ostringstream d;
        bool increasing = true;
        for (size_t i = 0; i < marks.size(); ++i) {
            if (i > 0 && traj.sup_at(marks[i]) <= traj.sup_at(marks[i - 1])) increasing = false;
            d << "sup(" << marks[i] << ")=" << traj.sup_at(marks[i]) << (i + 1 < marks.size() ? " " : "");
        }
        bool doubled = traj.sup_at(marks.back()) >= 2.0 * traj.sup_at(marks.front());
        detail = d.str();
        return increasing && doubled;
    }});

    // 7: second construction stabilizes for most alpha
    criteria.push_back({7, "sparse-prime construction: sup(10^6)-sup(10^4) <= 0.5 for >= 45/50 alphas", [&](std::string& detail) {
        Example2Construction ex = construct_example2(4);
        std::mt19937_64 rng(711);
        const int total = quick ? 10 : 50;
        const int need = quick ? 9 : 45;
        std::vector<TrajectoryJob> jobs;
        for (int i = 0; i < total; ++i) jobs.push_back({ex.spec, random_fixed_point(rng), 0.0, big_x});
        std::vector<SumTrajectory> trajs = run_trajectories(jobs, *table);
        int stable = 0;
        double worst_gap = 0.0;
        for (const SumTrajectory& t : trajs) {
            double gap = t.final_sup() - t.sup_at(big_x / 100);
            worst_gap = std::max(worst_gap, gap);
            if (gap <= 0.5) ++stable;
        }
        detail = std::to_string(stable) + "/" + std::to_string(total) + " stable, worst gap " + std::to_string(worst_gap);
        return stable >= need;
    }});

    // 8: first construction's certified bound dominates the observed sup
    criteria.push_back({8, "adaptive construction bound M_1(z_1)+1 >= running sup", [&](std::string& detail) {
        const u64 X = quick ? 10000 : 100000;
        std::ostringstream d;
        bool ok = true;
        int which = 0;
        for (PhaseAngle alpha : {PhaseAngle::rational(1, 3), PhaseAngle::sqrt2_minus_one()}) {
            Example1Construction ex = construct_example1(alpha, 5);
            SumTrajectory traj = sum_trajectory(ex.spec, alpha, 0.0, X, *table);
            if (traj.final_sup() > ex.certified_bound) ok = false;
            d << (which++ ? "; " : "") << "alpha=" << alpha.to_string() << " sup=" << traj.final_sup()
              << " bound=" << ex.certified_bound;
        }
        detail = d.str();
        return ok;
    }});

    // 9: closed form vs streaming direct sums at multiples of m
    criteria.push_back({9, "character closed form matches direct sums at all multiples to 1e-8", [&](std::string& detail) {
        std::mt19937_64 rng(911);
        double worst = 0.0;
        for (u64 m : {3ull, 5ull, 8ull}) {
            CharacterGroup g(m);
            std::vector<PhaseAngle> alphas;
            while (alphas.size() < 5) {
                u64 q = 2 + rng() % 49;
                u64 a = 1 + rng() % (q - 1);
                PhaseAngle alpha = PhaseAngle::rational(static_cast<i64>(a), q);
                if (!alpha.scaled_is_integral(m)) alphas.push_back(alpha);
            }
            for (u64 i = 0; i < g.size(); ++i) {
                DirichletCharacter chi = g.character(i);
                for (const PhaseAngle& alpha : alphas) {
                    CompensatedAccumulator acc;
                    for (u64 n = 1; n <= mid_x; ++n) {
                        acc.add(chi(n) * unit_phase(n, alpha));
                        if (n % m == 0) {
                            Complex closed = char_closed_form(chi, alpha, n);
                            worst = std::max(worst, std::abs(closed - acc.value()));
                        }
                    }
                }
            }
        }
        detail = "m in {3,5,8}, every character, 5 rational alphas, n <= " + std::to_string(mid_x) +
                 "; max deviation " + std::to_string(worst);
        return worst <= 1e-8;
    }});

    // 10: triangle inequality for the pretentious distance
    criteria.push_back({10, "pretentious distance satisfies the triangle inequality", [&](std::string& detail) {
        std::mt19937_64 rng(1011);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        const u64 X = 10000;
        const int triples = quick ? 40 : 200;
        auto random_unimodular = [&]() {
            MultiplicativeFunctionSpec s = MultiplicativeFunctionSpec::one();
            for (u32 p : table->primes()) {
                if (p > X) break;
                s.override_prime(p, unit_circle(unif(rng)));
            }
            return s;
        };
        double worst = -1e300;
        for (int i = 0; i < triples; ++i) {
            MultiplicativeFunctionSpec f = random_unimodular(), g = random_unimodular(), h = random_unimodular();
            double fg = distance(f, g, 1, X, *table);
            double gh = distance(g, h, 1, X, *table);
            double fh = distance(f, h, 1, X, *table);
            worst = std::max(worst, fh - (fg + gh));
        }
        detail = std::to_string(triples) + " triples over primes <= 10^4, worst D(f,h)-D(f,g)-D(g,h) = " +
                 std::to_string(worst);
        return worst <= 1e-9;
    }});

    // 11: twisted sums stabilize
    criteria.push_back({11, "n^{it}-twisted character sums and power sums stabilize", [&](std::string& detail) {
        CharacterGroup g5(5);
        MultiplicativeFunctionSpec chi5 = MultiplicativeFunctionSpec::character(g5.character(1));
        PhaseAngle alpha = PhaseAngle::rational(1, 3);
        std::ostringstream d;
        bool ok = true;
        for (double t : {1.0, 2.5}) {
            SumTrajectory traj = sum_trajectory(chi5, alpha, t, big_x, *table);
            double early = traj.sup_at(big_x / 100), late = traj.final_sup();
            if (!approx_leq(late, early + 1.0, 0.0)) ok = false;
            d << "t=" << t << " sup(" << big_x / 100 << ")=" << early << " sup(" << big_x << ")=" << late << "; ";
        }
        TwistedPowerSums ps = twisted_power_sums({0.0, 1.0}, 1.0, big_x);
        double early = ps.plain_sup_at(big_x / 100);
        if (!approx_leq(ps.sup_plain, early + 1.0, 0.0)) ok = false;
        d << "z=i sup(" << big_x / 100 << ")=" << early << " sup(" << big_x << ")=" << ps.sup_plain;
        detail = d.str();
        return ok;
    }});

    // 12: exact divisibility from the CRT construction
    criteria.push_back({12, "CRT residue gives exact divisibility at n0 and n0 + M", [&](std::string& detail) {
        std::mt19937_64 rng(1211);
        int done = 0;
        int attempts = 0;
        while (done < 100 && attempts < 10000) {
            ++attempts;
            u64 H = 1 + rng() % 5;
            std::vector<u64> pool;
            for (u64 p = H + 1; p <= 50; ++p)
                if (is_prime_u64(p)) pool.push_back(p);
            std::shuffle(pool.begin(), pool.end(), rng);
            size_t next = 0;
            std::vector<PrimePowerList> assignments(H);
            u128 modulus = 1;
            bool fits = true;
            for (u64 j = 0; j < H && fits; ++j) {
                u64 lj = rng() % 3; // 0..2 primes per offset
                for (u64 i = 0; i < lj && next < pool.size(); ++i) {
                    u64 p = pool[next++];
                    u32 e = 1 + static_cast<u32>(rng() % 3);
                    modulus *= checked_pow(p, e + 1);
                    if (modulus > (u128(1) << 62)) {
                        fits = false;
                        break;
                    }
                    assignments[j].push_back({p, e});
                }
            }
            if (!fits) continue;
            u64 W = 1 + rng() % 30;
            bool skip = false;
            for (const auto& as : assignments)
                for (const auto& pp : as)
                    if (W % pp.p == 0) skip = true;
            if (skip) continue;

            CrtExactDivisibility sol = crt_exact_divisibility(H, assignments, W);
            for (u64 n : {sol.n0, sol.n0 + sol.modulus}) {
                for (u64 j = 1; j <= H; ++j) {
                    u128 value = (u128)W * n + j;
                    for (const PrimePower& pp : assignments[j - 1]) {
                        if (valuation_u128(value, pp.p) != pp.e) {
                            detail = "configuration " + std::to_string(done) + " fails exact divisibility";
                            return false;
                        }
                    }
                }
            }
            ++done;
        }
        detail = std::to_string(done) + " random configurations verified in exact integer arithmetic";
        return done == 100;
    }});

    // 13: rational vs fixed-point phase agreement
    criteria.push_back({13, "rational and fixed-point phases agree to 1e-12 up to n = 10^9", [&](std::string& detail) {
        std::mt19937_64 rng(1311);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            u64 q = 2 + rng() % 999998;
            u64 a = 1 + rng() % (q - 1);
            u64 n = 1 + rng() % 1000000000ull;
            PhaseAngle rat = PhaseAngle::rational(static_cast<i64>(a), q);
            PhaseAngle fp = PhaseAngle::rational_as_fixed_point(a, q);
            worst = std::max(worst, std::abs(unit_phase(n, rat) - unit_phase(n, fp)));
        }
        detail = "100 seeded (a/q, n), max deviation " + std::to_string(worst);
        return worst <= 1e-12;
    }});

    int failed = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (!ok) ++failed;
        os << "criterion " << c.id << (c.id < 10 ? "  " : " ") << (ok ? "PASS" : "FAIL") << "  " << c.name;
        if (!detail.empty()) os << "  [" << detail << "]";
        os << "\n";
    }
    os << (failed == 0 ? "acceptance: all criteria passed\n"
                       : "acceptance: " + std::to_string(failed) + " criteria FAILED\n");
    return failed;
}

} // namespace expsum
