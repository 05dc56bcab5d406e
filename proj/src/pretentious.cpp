#include "expsum/pretentious.hpp"

#include <algorithm>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expsum {

namespace {

constexpr u64 kPrimeBlock = u64(1) << 16;

// Re(f(p) conj(g(p))) with the exact-angle route when both sides expose one.
double re_product_at_prime(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 p) {
    auto af = f.angle_at_prime(p);
    auto ag = g.angle_at_prime(p);
    double tf = f.base() == BaseRule::TwistedCharacter ? f.twist() : 0.0;
    double tg = g.base() == BaseRule::TwistedCharacter ? g.twist() : 0.0;
    if (af && ag) {
        // angle difference as an exact rational number of turns
        i64 num = static_cast<i64>(af->num) * static_cast<i64>(ag->den) -
                  static_cast<i64>(ag->num) * static_cast<i64>(af->den);
        double theta = kTau * (static_cast<double>(num) / (static_cast<double>(af->den) * static_cast<double>(ag->den)));
        if (tf != tg) theta += (tf - tg) * std::log(static_cast<double>(p));
        return std::cos(theta); // exactly 1 when the angles agree and twists cancel
    }
    Complex vf = f.value_at_prime_power(p, 1);
    Complex vg = g.value_at_prime_power(p, 1);
    return vf.real() * vg.real() + vf.imag() * vg.imag();
}

double block_sum_range(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 lo, u64 hi,
                       const FactorTable& table) {
    // primes in (lo, hi], ascending
    const std::vector<u32>& primes = table.primes();
    auto it = std::upper_bound(primes.begin(), primes.end(), lo);
    double s = 0.0;
    for (; it != primes.end() && *it <= hi; ++it) {
        u64 p = *it;
        s += (1.0 - re_product_at_prime(f, g, p)) / static_cast<double>(p);
    }
    return s;
}

} // namespace

double distance_squared(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 y, u64 x,
                        const FactorTable& table) {
    if (y < 1 || y > x) throw DomainError("distance_squared: need 1 <= y <= x");
    if (x > table.limit()) throw ResourceError("distance_squared: x exceeds sieve capacity");
    // fixed 2^16-aligned blocks so partitioned evaluation merges identically
    double total = 0.0;
    u64 lo = y;
    while (lo < x) {
        u64 hi = std::min(x, (lo / kPrimeBlock + 1) * kPrimeBlock);
        total += block_sum_range(f, g, lo, hi, table);
        lo = hi;
    }
    return std::max(total, 0.0);
}

double distance_squared_parallel(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 y,
                                 u64 x, const FactorTable& table) {
    if (y < 1 || y > x) throw DomainError("distance_squared_parallel: need 1 <= y <= x");
    if (x > table.limit()) throw ResourceError("distance_squared_parallel: x exceeds sieve capacity");
    std::vector<std::pair<u64, u64>> blocks;
    u64 lo = y;
    while (lo < x) {
        u64 hi = std::min(x, (lo / kPrimeBlock + 1) * kPrimeBlock);
        blocks.emplace_back(lo, hi);
        lo = hi;
    }
    std::vector<double> partial(blocks.size(), 0.0);
#pragma omp parallel for schedule(dynamic, 4)
    for (i64 i = 0; i < static_cast<i64>(blocks.size()); ++i)
        partial[i] = block_sum_range(f, g, blocks[i].first, blocks[i].second, table);
    double total = 0.0;
    for (double v : partial) total += v; // fixed merge order
    return std::max(total, 0.0);
}

double distance(const MultiplicativeFunctionSpec& f, const MultiplicativeFunctionSpec& g, u64 y, u64 x,
                const FactorTable& table) {
    return std::sqrt(distance_squared(f, g, y, x, table));
}

double distance_to_twisted_character(const MultiplicativeFunctionSpec& f, const DirichletCharacter& chi, double t,
                                     u64 x, const FactorTable& table) {
    MultiplicativeFunctionSpec g = MultiplicativeFunctionSpec::twisted_character(chi, t);
    return distance(f, g, 1, x, table);
}

Complex mean_value_F(const MultiplicativeFunctionSpec& f, const DirichletCharacter& chi, double t, u64 Q, u64 x,
                     const FactorTable& table) {
    if (Q == 0) throw DomainError("mean_value_F: Q must be positive");
    if (x > table.limit()) throw ResourceError("mean_value_F: x exceeds sieve capacity");
    MultiplicativeFunctionSpec g = MultiplicativeFunctionSpec::twisted_character(chi, t);
    double sr = 0.0, si = 0.0;
    for (u32 p : table.primes()) {
        if (p > x) break;
        if (Q % p == 0) continue;
        auto af = f.angle_at_prime(p);
        auto ag = g.angle_at_prime(p);
        double re, im;
        if (af && ag) {
            i64 num = static_cast<i64>(af->num) * static_cast<i64>(ag->den) -
                      static_cast<i64>(ag->num) * static_cast<i64>(af->den);
            double theta =
                kTau * (static_cast<double>(num) / (static_cast<double>(af->den) * static_cast<double>(ag->den)));
            if (t != 0.0) theta -= t * std::log(static_cast<double>(p));
            re = std::cos(theta);
            im = std::sin(theta); // exact zero when f(p) matches chi(p) p^{it}
        } else {
            Complex vf = f.value_at_prime_power(p, 1);
            Complex vg = g.value_at_prime_power(p, 1);
            Complex prod = vf * std::conj(vg);
            re = prod.real();
            im = prod.imag();
        }
        sr += (re - 1.0) / static_cast<double>(p);
        si += im / static_cast<double>(p);
    }
    return {sr, si};
}

LogCorrelation log_correlation(const MultiplicativeFunctionSpec& f, const PhaseAngle& alpha, u64 h, u64 x,
                               const FactorTable& table) {
    if (h == 0) throw DomainError("log_correlation: h must be positive");
    if (x < 2) throw DomainError("log_correlation: x must be at least 2");
    if (x + h > table.limit()) throw ResourceError("log_correlation: x + h exceeds sieve capacity");

    std::vector<Complex> values(x + h);
    eval_range(f, x + h, table, values);

    CompensatedAccumulator phased, plain;
    PhaseStream phases(alpha);
    Complex en = {1.0, 0.0}; // e(n alpha), advanced alongside n
    for (u64 n = 1; n <= x; ++n) {
        en = phases.next();
        Complex enh = unit_phase(n + h, alpha);
        Complex a = values[n - 1] * en;
        Complex b = values[n + h - 1] * enh;
        double inv_n = 1.0 / static_cast<double>(n);
        phased.add(a * std::conj(b) * inv_n);
        plain.add(values[n - 1] * std::conj(values[n + h - 1]) * inv_n);
    }
    double log_x = std::log(static_cast<double>(x));
    LogCorrelation out;
    out.phased = phased.value() / log_x;
    out.plain = plain.value() / log_x;
    out.phase_factor = std::conj(unit_phase(h, alpha));
    out.deviation = std::abs(out.phased - out.phase_factor * out.plain);
    return out;
}

} // namespace expsum
