#pragma once

#include <vector>

#include "expsum/errors.hpp"
#include "expsum/wideint.hpp"

namespace expsum {

struct PrimePower {
    u64 p;
    u32 e;
    bool operator==(const PrimePower&) const = default;
};

using PrimePowerList = std::vector<PrimePower>;

// Smallest-prime-factor table built by a linear sieve. Immutable after
// construction and safe to share across threads.
class FactorTable {
public:
    explicit FactorTable(u64 limit);

    u64 limit() const { return limit_; }
    u32 spf(u64 n) const;
    bool is_prime(u64 n) const { return n >= 2 && n <= limit_ && spf_[n] == n; }
    const std::vector<u32>& primes() const { return primes_; }

private:
    u64 limit_;
    std::vector<u32> spf_;
    std::vector<u32> primes_;
};

// Prime factorization of n, primes ascending, via SPF lookups.
PrimePowerList factorize(u64 n, const FactorTable& table);

// Prime factorization by trial division; no table required.
PrimePowerList factorize_trial(u64 n);

u64 totient(u64 n);
int moebius(u64 n);

// Largest e with p^e | n. n must be nonzero and p prime.
u32 valuation(u64 n, u64 p);
u32 valuation_u128(u128 n, u64 p);

bool is_prime_u64(u64 n);

// p^k with an overflow check.
u64 checked_pow(u64 p, u32 k);

struct CrtExactDivisibility {
    u64 n0;
    u64 modulus;
};

// Residue class n0 mod M such that, writing k_j for the product of the prime
// powers assigned to j, k_j exactly divides W*n + j for every n in the class.
// assignments[j-1] holds the prime powers for offset j, 1 <= j <= H.
// Preconditions: primes pairwise distinct across assignments, each > H, none
// dividing W. The combined modulus M = prod p^(e+1) must fit in 63 bits.
CrtExactDivisibility crt_exact_divisibility(u64 H, const std::vector<PrimePowerList>& assignments, u64 W);

} // namespace expsum
