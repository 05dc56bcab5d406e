#include <numeric>
#include <random>

#include "doctest.h"
#include "expsum/arith.hpp"

using namespace expsum;

TEST_CASE("factorize basics") {
    FactorTable table(200000);
    CHECK(factorize(1, table).empty());
    CHECK(factorize(12, table) == PrimePowerList{{2, 2}, {3, 1}});
    CHECK(factorize(97, table) == PrimePowerList{{97, 1}});
    CHECK(factorize(97, table) == factorize_trial(97));
    CHECK_THROWS_AS(factorize(0, table), DomainError);
    CHECK_THROWS_AS(factorize(table.limit() + 1, table), DomainError);
}

TEST_CASE("factorize reconstructs every n up to 1e5") {
    FactorTable table(100000);
    for (u64 n = 1; n <= 100000; ++n) {
        u64 prod = 1;
        u64 last_p = 0;
        for (const PrimePower& pp : factorize(n, table)) {
            CHECK(pp.p > last_p); // primes strictly increasing
            last_p = pp.p;
            for (u32 e = 0; e < pp.e; ++e) prod *= pp.p;
        }
        REQUIRE(prod == n);
    }
}

TEST_CASE("spf entries are prime divisors") {
    FactorTable table(5000);
    for (u64 n = 2; n <= 5000; ++n) {
        u32 p = table.spf(n);
        CHECK(n % p == 0);
        CHECK(is_prime_u64(p));
        CHECK(table.is_prime(n) == is_prime_u64(n));
    }
}

TEST_CASE("totient") {
    CHECK(totient(1) == 1);
    CHECK(totient(7) == 6);
    CHECK(totient(97) == 96);
    // enumeration oracle for n = 12
    u64 count = 0;
    for (u64 k = 1; k <= 12; ++k)
        if (std::gcd(k, u64(12)) == 1) ++count;
    CHECK(totient(12) == count);
    CHECK(totient(12) == 4);
    CHECK_THROWS_AS(totient(0), DomainError);
}

TEST_CASE("totient is multiplicative on coprime pairs") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 1000; ++i) {
        u64 a = 1 + rng() % 500;
        u64 b = 1 + rng() % 500;
        if (std::gcd(a, b) != 1) continue;
        CHECK(totient(a * b) == totient(a) * totient(b));
    }
}

TEST_CASE("moebius") {
    CHECK(moebius(1) == 1);
    CHECK(moebius(4) == 0);
    CHECK(moebius(30) == -1);
    CHECK(moebius(6) == 1);
    CHECK_THROWS_AS(moebius(0), DomainError);
}

TEST_CASE("sum of moebius over divisors detects 1") {
    for (u64 n = 1; n <= 10000; ++n) {
        int s = 0;
        for (u64 d = 1; d * d <= n; ++d) {
            if (n % d == 0) {
                s += moebius(d);
                if (d != n / d) s += moebius(n / d);
            }
        }
        REQUIRE(s == (n == 1 ? 1 : 0));
    }
}

TEST_CASE("valuation") {
    CHECK(valuation(12, 2) == 2);
    CHECK(valuation(12, 5) == 0);
    CHECK(valuation((u64(1) << 30) * 7, 2) == 30);
    // repeated-division oracle on a composite sample
    u64 n = 1;
    for (int i = 0; i < 13; ++i) n *= 3;
    n *= 10;
    CHECK(valuation(n, 3) == 13);
    CHECK_THROWS_AS(valuation(0, 2), DomainError);
    CHECK_THROWS_AS(valuation(12, 4), DomainError);
}

TEST_CASE("crt exact divisibility: spec examples") {
    // H=1, {1 -> [(3,1)]}, W=2: 3 || 2n+1 forced by 2n+1 == 3 (mod 9)
    auto r = crt_exact_divisibility(1, {{{3, 1}}}, 2);
    CHECK(r.n0 == 1);
    CHECK(r.modulus == 9);

    // no constraints
    auto r2 = crt_exact_divisibility(1, {{}}, 2);
    CHECK(r2.n0 == 0);
    CHECK(r2.modulus == 1);

    // H=2, {1 -> [(5,1)], 2 -> [(7,1)]}, W=3: every member of the residue
    // class has 5 || 3n+1 and 7 || 3n+2, checked exhaustively over one period
    auto r3 = crt_exact_divisibility(2, {{{5, 1}}, {{7, 1}}}, 3);
    CHECK(r3.modulus == 25 * 49);
    CHECK(r3.n0 < r3.modulus);
    for (u64 n = r3.n0; n < 10 * r3.modulus; n += r3.modulus) {
        CHECK(valuation(3 * n + 1, 5) == 1);
        CHECK(valuation(3 * n + 2, 7) == 1);
    }
    // and n0 solves the imposed congruences W n + j == k_j (mod p^(e+1))
    CHECK((3 * r3.n0 + 1) % 25 == 5);
    CHECK((3 * r3.n0 + 2) % 49 == 7);
}

TEST_CASE("crt exact divisibility: invalid configurations") {
    CHECK_THROWS_AS(crt_exact_divisibility(2, {{{5, 1}}, {{5, 2}}}, 3), InvalidConfigError); // shared prime
    CHECK_THROWS_AS(crt_exact_divisibility(1, {{{5, 1}}}, 10), InvalidConfigError);          // p | W
    CHECK_THROWS_AS(crt_exact_divisibility(1, {{{4, 1}}}, 3), InvalidConfigError);           // not prime
    CHECK_THROWS_AS(crt_exact_divisibility(5, {{{3, 1}}, {}, {}, {}, {}}, 2), InvalidConfigError); // p <= H
}

TEST_CASE("crt exact divisibility: random configs verified in integers") {
    std::mt19937_64 rng(7);
    int done = 0;
    while (done < 25) {
        u64 H = 1 + rng() % 4;
        std::vector<u64> pool;
        for (u64 p = H + 1; p <= 40; ++p)
            if (is_prime_u64(p)) pool.push_back(p);
        std::shuffle(pool.begin(), pool.end(), rng);
        std::vector<PrimePowerList> assignments(H);
        size_t next = 0;
        u128 modulus = 1;
        bool fits = true;
        for (u64 j = 0; j < H && fits; ++j) {
            u64 lj = rng() % 3;
            for (u64 i = 0; i < lj; ++i) {
                u64 p = pool[next++];
                u32 e = 1 + static_cast<u32>(rng() % 3);
                modulus *= checked_pow(p, e + 1);
                if (modulus > (u128(1) << 60)) fits = false;
                assignments[j].push_back({p, e});
            }
        }
        if (!fits) continue;
        u64 W = 1 + rng() % 20;
        bool skip = false;
        for (const auto& as : assignments)
            for (const auto& pp : as)
                if (W % pp.p == 0) skip = true;
        if (skip) continue;
        auto sol = crt_exact_divisibility(H, assignments, W);
        for (u64 j = 1; j <= H; ++j) {
            u128 v = (u128)W * sol.n0 + j;
            for (const PrimePower& pp : assignments[j - 1]) REQUIRE(valuation_u128(v, pp.p) == pp.e);
        }
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("wide integer square root") {
    for (unsigned k : {0u, 1u, 5u, 63u, 64u, 100u, 128u}) {
        U320 sq = U320::from_u64(1).shifted_left(2 * k);
        U320 r = isqrt_u320(sq);
        CHECK(r.compare(U320::from_u64(1).shifted_left(k)) == 0);
        if (k > 0) {
            U320 less = sq;
            less -= U320::from_u64(1);
            U320 r2 = isqrt_u320(less); // floor(sqrt(4^k - 1)) = 2^k - 1
            U320 want = U320::from_u64(1).shifted_left(k);
            want -= U320::from_u64(1);
            CHECK(r2.compare(want) == 0);
        }
    }
    CHECK(static_cast<u64>(isqrt_u320(U320::from_u64(99)).low128()) == 9);
    CHECK(static_cast<u64>(isqrt_u320(U320::from_u64(100)).low128()) == 10);
}
