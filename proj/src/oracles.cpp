#include "expsum/oracles.hpp"

#include <cmath>

namespace expsum {
namespace oracles {

namespace {

// Mirrors the documented prime-power arithmetic of MultiplicativeFunctionSpec:
// k-fold product for completely multiplicative specs, table lookup at
// p^k mod m otherwise, twist factor exp(i t log(p^k)).
Complex oracle_prime_power_value(const MultiplicativeFunctionSpec& spec, u64 p, u32 k) {
    if (k == 0) return {1.0, 0.0};
    if (spec.completely_multiplicative()) {
        Complex v;
        auto it = spec.prime_overrides().find(p);
        if (it != spec.prime_overrides().end()) {
            v = it->second;
        } else if (spec.base() == BaseRule::One) {
            v = {1.0, 0.0};
        } else {
            const DirichletCharacter& chi = *spec.base_char();
            v = chi(p % chi.modulus());
            if (spec.base() == BaseRule::TwistedCharacter) {
                double theta = spec.twist() * std::log(static_cast<double>(p));
                v *= Complex{std::cos(theta), std::sin(theta)};
            }
        }
        Complex acc = {1.0, 0.0};
        for (u32 i = 0; i < k; ++i) acc *= v;
        return acc;
    }
    if (k > 1) {
        auto it = spec.prime_power_overrides().find({p, k});
        if (it != spec.prime_power_overrides().end()) return it->second;
    } else {
        auto it = spec.prime_overrides().find(p);
        if (it != spec.prime_overrides().end()) return it->second;
    }
    if (spec.base() == BaseRule::One) return {1.0, 0.0};
    u64 pk = 1;
    for (u32 i = 0; i < k; ++i) pk *= p;
    const DirichletCharacter& chi = *spec.base_char();
    Complex v = chi(pk % chi.modulus());
    if (spec.base() == BaseRule::TwistedCharacter) {
        double theta = spec.twist() * std::log(static_cast<double>(pk));
        v *= Complex{std::cos(theta), std::sin(theta)};
    }
    return v;
}

} // namespace

Complex naive_eval(const MultiplicativeFunctionSpec& spec, u64 n) {
    if (n == 0) throw DomainError("naive_eval: n must be positive");
    // trial division, largest prime factor's value multiplied first
    u64 rest = n;
    u64 ps[16];
    u32 es[16];
    int count = 0;
    for (u64 p = 2; p * p <= rest; p += (p == 2 ? 1 : 2)) {
        if (rest % p == 0) {
            u32 e = 0;
            while (rest % p == 0) {
                rest /= p;
                ++e;
            }
            ps[count] = p;
            es[count] = e;
            ++count;
        }
    }
    if (rest > 1) {
        ps[count] = rest;
        es[count] = 1;
        ++count;
    }
    Complex acc = {1.0, 0.0};
    for (int i = count; i-- > 0;) acc *= oracle_prime_power_value(spec, ps[i], es[i]);
    return acc;
}

Complex direct_char_sum(const DirichletCharacter& chi, const PhaseAngle& alpha, double t, u64 n) {
    CompensatedAccumulator acc;
    for (u64 j = 1; j <= n; ++j) {
        Complex term = chi(j) * unit_phase(j, alpha);
        if (t != 0.0) term *= archimedean_twist(j, t);
        acc.add(term);
    }
    return acc.value();
}

Complex naive_P(const DirichletCharacter& chi, Complex z) {
    u64 m = chi.modulus();
    if (m == 1) return {1.0, 0.0};
    CompensatedAccumulator acc;
    for (u64 n = 0; n < m; ++n) {
        Complex zn = {1.0, 0.0};
        for (u64 i = 0; i < n; ++i) zn *= z;
        acc.add(chi(n) * zn);
    }
    return acc.value();
}

} // namespace oracles
} // namespace expsum
