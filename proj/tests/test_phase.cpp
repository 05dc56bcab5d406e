#include <cmath>
#include <random>

#include "doctest.h"
#include "expsum/accum.hpp"

using namespace expsum;

namespace {
double cdist(Complex a, Complex b) { return std::abs(a - b); }
} // namespace

TEST_CASE("unit_phase trivial angles") {
    PhaseAngle zero = PhaseAngle::rational(0, 1);
    for (u64 n : {0ull, 1ull, 17ull, 123456789ull}) CHECK(unit_phase(n, zero) == Complex{1.0, 0.0});
    PhaseAngle half = PhaseAngle::rational(1, 2);
    CHECK(cdist(unit_phase(1, half), {-1.0, 0.0}) < 1e-15);
    CHECK(cdist(unit_phase(2, half), {1.0, 0.0}) < 1e-15);
}

TEST_CASE("unit_phase stays on the circle") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 200; ++i) {
        PhaseAngle a = i % 2 == 0 ? PhaseAngle::rational(static_cast<i64>(rng() % 1000), 1 + rng() % 1000)
                                  : PhaseAngle::fixed_point(((u128)rng() << 64) | rng());
        CHECK(std::abs(std::abs(unit_phase(rng() % 1000000, a)) - 1.0) < 1e-14);
    }
}

TEST_CASE("fixed-point phase at n=1e9 matches independent 32-bit-limb reduction") {
    PhaseAngle a = PhaseAngle::sqrt2_minus_one();
    u64 n = 1000000000ull;
    // schoolbook 32-bit limb multiply of frac * n mod 2^128
    u128 frac = a.fraction();
    u64 limbs[4] = {static_cast<u32>(frac), static_cast<u32>(frac >> 32), static_cast<u32>(frac >> 64),
                    static_cast<u32>(frac >> 96)};
    u64 nl = n & 0xFFFFFFFFull, nh = n >> 32;
    u64 out[6] = {0, 0, 0, 0, 0, 0};
    for (int i = 0; i < 4; ++i) {
        u64 cl = limbs[i] * nl, ch = limbs[i] * nh;
        int j = i;
        u128 carry = cl;
        while (carry != 0 && j < 6) {
            carry += out[j];
            out[j] = static_cast<u32>(carry);
            carry >>= 32;
            ++j;
        }
        j = i + 1;
        carry = ch;
        while (carry != 0 && j < 6) {
            carry += out[j];
            out[j] = static_cast<u32>(carry);
            carry >>= 32;
            ++j;
        }
    }
    u128 reduced = ((u128)out[3] << 96) | ((u128)out[2] << 64) | ((u128)out[1] << 32) | out[0];
    double theta = kTau * (static_cast<double>(static_cast<u64>(reduced >> 64)) * 0x1p-64 +
                           static_cast<double>(static_cast<u64>(reduced)) * 0x1p-128);
    Complex want{std::cos(theta), std::sin(theta)};
    CHECK(cdist(unit_phase(n, a), want) < 1e-12);
}

TEST_CASE("unit_phase is additive in n") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10000; ++i) {
        PhaseAngle a = i % 2 == 0 ? PhaseAngle::rational(static_cast<i64>(rng() % 997), 997)
                                  : PhaseAngle::fixed_point(((u128)rng() << 64) | rng());
        u64 m = rng() % 100000, n = rng() % 100000;
        CHECK(cdist(unit_phase(m + n, a), unit_phase(m, a) * unit_phase(n, a)) < 1e-12);
    }
}

TEST_CASE("rational and fixed-point modes agree") {
    std::mt19937_64 rng(9);
    for (int i = 0; i < 100; ++i) {
        u64 q = 2 + rng() % 100000;
        u64 a = 1 + rng() % (q - 1);
        u64 n = rng() % 1000000000ull;
        PhaseAngle rat = PhaseAngle::rational(static_cast<i64>(a), q);
        PhaseAngle fp = PhaseAngle::rational_as_fixed_point(a, q);
        CHECK(cdist(unit_phase(n, rat), unit_phase(n, fp)) < 1e-12);
    }
}

TEST_CASE("unit_phase refuses oversized rational denominators") {
    PhaseAngle big = PhaseAngle::rational(1, (u64(1) << 30) + 3);
    CHECK_THROWS_AS(unit_phase(5, big), ResourceError);
}

TEST_CASE("phase scaling is exact") {
    PhaseAngle third = PhaseAngle::rational(1, 6);
    CHECK(third.scaled(3).numerator() == 1);
    CHECK(third.scaled(3).denominator() == 2); // 3/6 reduced
    CHECK(third.scaled(6).is_integral());
    CHECK(third.scaled_is_integral(6));
    CHECK_FALSE(third.scaled_is_integral(4));

    PhaseAngle fp = PhaseAngle::from_decimal("0.25");
    CHECK(fp.scaled(4).is_integral());
    CHECK(fp.scaled_is_integral(4));
    CHECK_FALSE(fp.scaled_is_integral(3));
}

TEST_CASE("archimedean twist") {
    CHECK(archimedean_twist(5, 0.0) == Complex{1.0, 0.0});
    CHECK(archimedean_twist(1, 2.7) == Complex{1.0, 0.0});
    double t = kTau / std::log(10.0);
    CHECK(cdist(archimedean_twist(10, t), {1.0, 0.0}) < 1e-12); // t ln 10 = 2 pi
    CHECK_THROWS_AS(archimedean_twist(0, 1.0), DomainError);
}

TEST_CASE("archimedean twist is completely multiplicative") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        u64 m = 1 + rng() % 30000, n = 1 + rng() % 30000;
        double t = (static_cast<double>(rng() % 1000) - 500.0) / 100.0;
        CHECK(cdist(archimedean_twist(m * n, t), archimedean_twist(m, t) * archimedean_twist(n, t)) < 1e-12);
    }
}

TEST_CASE("stream_sum") {
    CHECK(stream_sum({}) == Complex{0.0, 0.0});
    std::vector<Complex> pair = {{1.0, 0.0}, {-1.0, 0.0}};
    CHECK(stream_sum(pair) == Complex{0.0, 0.0});

    // 1e6 unit terms vs extended-precision reference
    PhaseAngle sqrt5m2 = PhaseAngle::golden_conjugate().scaled(2); // 2(phi-1) = sqrt5 - 2 mod 1
    std::vector<Complex> terms(1000000);
    long double re = 0, im = 0;
    for (u64 n = 0; n < terms.size(); ++n) {
        terms[n] = unit_phase(n + 1, sqrt5m2);
        re += terms[n].real();
        im += terms[n].imag();
    }
    Complex got = stream_sum(terms);
    CHECK(std::abs(got.real() - static_cast<double>(re)) < 1e-10);
    CHECK(std::abs(got.imag() - static_cast<double>(im)) < 1e-10);
}

TEST_CASE("stream_sum names the offending index") {
    std::vector<Complex> terms = {{1.0, 0.0}, {std::numeric_limits<double>::infinity(), 0.0}};
    CHECK_THROWS_WITH_AS(stream_sum(terms), "stream_sum: non-finite term at index 1", DomainError);
}

TEST_CASE("compensated accumulator merge equals one pass") {
    std::mt19937_64 rng(13);
    PhaseAngle a = PhaseAngle::fixed_point(((u128)rng() << 64) | rng());
    CompensatedAccumulator whole, left, right;
    for (u64 n = 1; n <= 20000; ++n) {
        Complex t = unit_phase(n, a);
        whole.add(t);
        (n <= 10000 ? left : right).add(t);
    }
    left.merge(right);
    CHECK(cdist(whole.value(), left.value()) < 1e-13);
    CHECK(left.count == whole.count);
}

TEST_CASE("decimal parsing is exact binary truncation") {
    CHECK(PhaseAngle::from_decimal("0.5").fraction() == (u128)1 << 127);
    CHECK(PhaseAngle::from_decimal("0.25").fraction() == (u128)1 << 126);
    CHECK(PhaseAngle::from_decimal("1.75").fraction() == ((u128)3 << 126)); // integer part drops
    CHECK(PhaseAngle::from_decimal("-0.25").fraction() == ((u128)3 << 126)); // wraps to 0.75
    CHECK(PhaseAngle::from_decimal("0.1").turns() == doctest::Approx(0.1).epsilon(1e-15));
    CHECK_THROWS_AS(PhaseAngle::from_decimal("0.12x"), DomainError);
}

TEST_CASE("parse_phase grammar") {
    PhaseAngle r = parse_phase("3/9");
    CHECK(r.numerator() == 1);
    CHECK(r.denominator() == 3);
    CHECK(parse_phase("-1/4").numerator() == 3); // reduced mod 1
    CHECK(parse_phase("sqrt2m1").mode() == PhaseAngle::Mode::FixedPoint);
    CHECK(parse_phase("phi-1").mode() == PhaseAngle::Mode::FixedPoint);
    CHECK(parse_phase("0.125").fraction() == (u128)1 << 125);
    CHECK_THROWS_AS(parse_phase("1/0"), DomainError);
    CHECK_THROWS_AS(parse_phase("a/b"), DomainError);
}

TEST_CASE("named constants match their decimal expansions") {
    CHECK(PhaseAngle::sqrt2_minus_one().turns() == doctest::Approx(0.41421356237309504880).epsilon(1e-15));
    CHECK(PhaseAngle::golden_conjugate().turns() == doctest::Approx(0.61803398874989484820).epsilon(1e-15));
    // against the exact digit parser
    PhaseAngle parsed = PhaseAngle::from_decimal("0.4142135623730950488016887242096980785696718753769");
    u128 diff = PhaseAngle::sqrt2_minus_one().fraction() - parsed.fraction();
    if (diff > ((u128)1 << 127)) diff = static_cast<u128>(0) - diff;
    CHECK(static_cast<double>(static_cast<u64>(diff)) < 4.0); // agree to the last couple of bits
}
