#include "expsum/arith.hpp"

#include <algorithm>

namespace expsum {

namespace {
constexpr u64 kMaxSieveLimit = 0xFFFFFFFFull; // 32-bit spf entries
}

FactorTable::FactorTable(u64 limit) : limit_(limit) {
    if (limit < 1) throw DomainError("FactorTable: limit must be >= 1");
    if (limit > kMaxSieveLimit) throw ResourceError("FactorTable: limit exceeds 2^32-1");
    spf_.assign(limit + 1, 0);
    for (u64 n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = static_cast<u32>(n);
            primes_.push_back(static_cast<u32>(n));
        }
        for (u32 p : primes_) {
            if (p > spf_[n]) break;
            u64 np = (u64)p * n;
            if (np > limit) break;
            spf_[np] = p;
        }
    }
}

u32 FactorTable::spf(u64 n) const {
    if (n < 2 || n > limit_) throw DomainError("FactorTable::spf: n out of range");
    return spf_[n];
}

PrimePowerList factorize(u64 n, const FactorTable& table) {
    if (n == 0 || n > table.limit()) throw DomainError("factorize: n out of range");
    PrimePowerList out;
    while (n > 1) {
        u64 p = table.spf(n);
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        out.push_back({p, e});
    }
    return out;
}

PrimePowerList factorize_trial(u64 n) {
    if (n == 0) throw DomainError("factorize_trial: n must be positive");
    PrimePowerList out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p == 0) {
            u32 e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            out.push_back({p, e});
        }
    }
    if (n > 1) out.push_back({n, 1});
    return out;
}

u64 totient(u64 n) {
    if (n == 0) throw DomainError("totient: n must be positive");
    u64 result = n;
    u64 m = n;
    for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            result -= result / p;
            while (m % p == 0) m /= p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

int moebius(u64 n) {
    if (n == 0) throw DomainError("moebius: n must be positive");
    int factors = 0;
    u64 m = n;
    for (u64 p = 2; p * p <= m; p += (p == 2 ? 1 : 2)) {
        if (m % p == 0) {
            m /= p;
            if (m % p == 0) return 0;
            ++factors;
        }
    }
    if (m > 1) ++factors;
    return (factors % 2 == 0) ? 1 : -1;
}

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (u64 p = 3; p * p <= n; p += 2) {
        if (n % p == 0) return false;
    }
    return true;
}

u32 valuation(u64 n, u64 p) {
    if (n == 0) throw DomainError("valuation: n must be nonzero");
    if (!is_prime_u64(p)) throw DomainError("valuation: p must be prime");
    u32 e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

u32 valuation_u128(u128 n, u64 p) {
    if (n == 0) throw DomainError("valuation_u128: n must be nonzero");
    u32 e = 0;
    while (n % p == 0) {
        n /= p;
        ++e;
    }
    return e;
}

u64 checked_pow(u64 p, u32 k) {
    u64 r = 1;
    for (u32 i = 0; i < k; ++i) {
        if (r > UINT64_MAX / p) throw ResourceError("checked_pow: overflow");
        r *= p;
    }
    return r;
}

CrtExactDivisibility crt_exact_divisibility(u64 H, const std::vector<PrimePowerList>& assignments, u64 W) {
    if (H == 0 || W == 0) throw DomainError("crt_exact_divisibility: H and W must be positive");
    if (assignments.size() != H) throw InvalidConfigError("crt_exact_divisibility: need one assignment per 1 <= j <= H");

    std::vector<u64> seen;
    for (u64 j = 1; j <= H; ++j) {
        for (const PrimePower& pp : assignments[j - 1]) {
            if (!is_prime_u64(pp.p)) throw InvalidConfigError("crt_exact_divisibility: non-prime in assignment");
            if (pp.e == 0) throw InvalidConfigError("crt_exact_divisibility: exponent must be positive");
            if (pp.p <= H) throw InvalidConfigError("crt_exact_divisibility: primes must exceed H");
            if (W % pp.p == 0) throw InvalidConfigError("crt_exact_divisibility: prime divides W");
            if (std::find(seen.begin(), seen.end(), pp.p) != seen.end())
                throw InvalidConfigError("crt_exact_divisibility: shared prime between assignments");
            seen.push_back(pp.p);
        }
    }

    // Per prime p^e assigned to offset j, impose W*n + j == k_j (mod p^(e+1)),
    // which forces v_p(W*n + j) = e exactly. Combine all congruences by CRT.
    u64 mod_all = 1;
    u64 res_all = 0;
    for (u64 j = 1; j <= H; ++j) {
        u128 kj = 1;
        for (const PrimePower& pp : assignments[j - 1]) kj *= (u128)checked_pow(pp.p, pp.e);
        for (const PrimePower& pp : assignments[j - 1]) {
            u64 pe1 = checked_pow(pp.p, pp.e + 1);
            u64 target = static_cast<u64>((kj + pe1 - (j % pe1)) % pe1); // k_j - j mod p^(e+1)
            u64 winv = invmod_u64(W % pe1, pe1);
            u64 r = mulmod_u64(winv, target, pe1);

            if (mod_all > (u64(1) << 62) / pe1) throw ResourceError("crt_exact_divisibility: combined modulus exceeds 2^63");
            // merge n == res_all (mod mod_all) with n == r (mod pe1)
            u64 diff = (r + pe1 - res_all % pe1) % pe1;
            u64 step = mulmod_u64(diff, invmod_u64(mod_all % pe1, pe1), pe1);
            res_all = res_all + mod_all * step;
            mod_all = mod_all * pe1;
        }
    }
    return {res_all, mod_all};
}

} // namespace expsum
