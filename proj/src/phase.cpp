#include "expsum/phase.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>

namespace expsum {

namespace {

// Multiply a 128-bit turn fraction by a 64-bit integer, wrapping mod 2^128.
u128 mul_frac_wrap(u128 frac, u64 k) {
    u64 lo = static_cast<u64>(frac);
    u64 hi = static_cast<u64>(frac >> 64);
    u128 lo_prod = (u128)lo * k;
    u128 hi_prod = (u128)hi * k; // only the low 64 bits survive the shift
    return lo_prod + (hi_prod << 64);
}

double frac_to_turns(u128 frac) {
    const double hi = static_cast<double>(static_cast<u64>(frac >> 64));
    const double lo = static_cast<double>(static_cast<u64>(frac));
    return hi * 0x1p-64 + lo * 0x1p-128;
}

constexpr Complex kQuarterTurns[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};

// e(k/q); exact on the axes, cos/sin elsewhere.
Complex rational_turn(u64 k, u64 q) {
    u128 k4 = (u128)4 * k;
    if (k4 % q == 0) return kQuarterTurns[static_cast<u64>(k4 / q) % 4];
    double theta = kTau * (static_cast<double>(k) / static_cast<double>(q));
    return {std::cos(theta), std::sin(theta)};
}

Complex fixed_point_turn(u128 frac) {
    if ((frac << 2) == 0) return kQuarterTurns[static_cast<u64>(frac >> 126)];
    double theta = kTau * frac_to_turns(frac);
    return {std::cos(theta), std::sin(theta)};
}

} // namespace

PhaseAngle PhaseAngle::rational(i64 a, u64 q) {
    if (q == 0) throw DomainError("PhaseAngle: zero denominator");
    PhaseAngle r;
    r.mode_ = Mode::Rational;
    i64 amod = a % static_cast<i64>(q);
    if (amod < 0) amod += static_cast<i64>(q);
    u64 g = gcd_u64(static_cast<u64>(amod), q);
    if (g == 0) g = q; // a == 0
    r.num_ = static_cast<u64>(amod) / g;
    r.den_ = q / g;
    return r;
}

PhaseAngle PhaseAngle::fixed_point(u128 frac_of_turn) {
    PhaseAngle r;
    r.mode_ = Mode::FixedPoint;
    r.frac_ = frac_of_turn;
    return r;
}

PhaseAngle PhaseAngle::rational_as_fixed_point(u64 a, u64 q) {
    if (q == 0) throw DomainError("PhaseAngle: zero denominator");
    a %= q;
    // long division of a*2^128 by q, 64 bits at a time
    u128 hi = (u128)a << 64;
    u128 qhi = hi / q;
    u128 rem = hi % q;
    u128 qlo = (rem << 64) / q;
    return fixed_point((qhi << 64) + qlo);
}

PhaseAngle PhaseAngle::from_decimal(std::string_view text) {
    bool negative = false;
    size_t i = 0;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i; // integer part drops mod 1
    std::vector<int> digits;
    if (i < text.size()) {
        if (text[i] != '.') throw DomainError("PhaseAngle: malformed decimal literal");
        ++i;
        for (; i < text.size(); ++i) {
            if (!std::isdigit(static_cast<unsigned char>(text[i]))) throw DomainError("PhaseAngle: malformed decimal literal");
            if (digits.size() < 200) digits.push_back(text[i] - '0');
        }
    }
    u128 frac = 0;
    for (int bit = 0; bit < 128; ++bit) {
        int carry = 0;
        for (size_t j = digits.size(); j-- > 0;) {
            int v = digits[j] * 2 + carry;
            digits[j] = v % 10;
            carry = v / 10;
        }
        frac = (frac << 1) | static_cast<unsigned>(carry);
    }
    if (negative) frac = static_cast<u128>(0) - frac; // wraps to 1 - frac mod 1
    return fixed_point(frac);
}

PhaseAngle PhaseAngle::sqrt2_minus_one() {
    // floor(2^129 * sqrt(2)) via isqrt(2^259), then exact halving.
    U320 n = U320::from_u64(1).shifted_left(259);
    U320 r = isqrt_u320(n);
    r -= U320::from_u64(1).shifted_left(129);
    return fixed_point(r.shifted_right(1).low128());
}

PhaseAngle PhaseAngle::golden_conjugate() {
    // floor(2^129 * sqrt(5)) via isqrt(5 * 2^258); (sqrt5 - 1)/2 = sqrt5/4*2 ...
    U320 n = U320::from_u64(5).shifted_left(258);
    U320 r = isqrt_u320(n);        // floor(2^129 sqrt 5)
    r = r.shifted_right(2);        // floor(2^127 sqrt 5)
    r -= U320::from_u64(1).shifted_left(127);
    return fixed_point(r.low128());
}

bool PhaseAngle::is_integral() const {
    return mode_ == Mode::Rational ? num_ == 0 : frac_ == 0;
}

PhaseAngle PhaseAngle::scaled(u64 k) const {
    if (mode_ == Mode::Rational) return rational(static_cast<i64>(mulmod_u64(num_ % den_, k % den_, den_)), den_);
    return fixed_point(mul_frac_wrap(frac_, k));
}

bool PhaseAngle::scaled_is_integral(u64 k) const {
    if (mode_ == Mode::Rational) return mulmod_u64(num_ % den_, k % den_, den_) == 0;
    u128 y = mul_frac_wrap(frac_, k);
    const u128 eps = (u128)1 << 64; // 2^-64 of a turn
    return y < eps || y > static_cast<u128>(0) - eps;
}

double PhaseAngle::turns() const {
    if (mode_ == Mode::Rational) return static_cast<double>(num_) / static_cast<double>(den_);
    return frac_to_turns(frac_);
}

std::string PhaseAngle::to_string() const {
    char buf[64];
    if (mode_ == Mode::Rational) {
        std::snprintf(buf, sizeof buf, "%llu/%llu", static_cast<unsigned long long>(num_), static_cast<unsigned long long>(den_));
        return buf;
    }
    std::snprintf(buf, sizeof buf, "fp:%016llx%016llx", static_cast<unsigned long long>(frac_ >> 64),
                  static_cast<unsigned long long>(frac_));
    return buf;
}

bool PhaseAngle::operator==(const PhaseAngle& o) const {
    if (mode_ != o.mode_) return false;
    if (mode_ == Mode::Rational) return num_ == o.num_ && den_ == o.den_;
    return frac_ == o.frac_;
}

Complex unit_phase(u64 n, const PhaseAngle& alpha) {
    if (alpha.mode() == PhaseAngle::Mode::Rational) {
        u64 q = alpha.denominator();
        if (q > kMaxRationalPhaseDenominator)
            throw ResourceError("unit_phase: rational denominator exceeds table capacity; use fixed point");
        return rational_turn(mulmod_u64(n % q, alpha.numerator(), q), q);
    }
    return fixed_point_turn(mul_frac_wrap(alpha.fraction(), n));
}

Complex archimedean_twist(u64 n, double t) {
    if (n == 0) throw DomainError("archimedean_twist: n must be positive");
    if (t == 0.0 || n == 1) return {1.0, 0.0};
    double theta = t * std::log(static_cast<double>(n));
    return {std::cos(theta), std::sin(theta)};
}

PhaseAngle parse_phase(std::string_view text) {
    if (text == "sqrt2m1") return PhaseAngle::sqrt2_minus_one();
    if (text == "phi-1") return PhaseAngle::golden_conjugate();
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        i64 a = 0;
        u64 q = 0;
        auto r1 = std::from_chars(text.data(), text.data() + slash, a);
        auto r2 = std::from_chars(text.data() + slash + 1, text.data() + text.size(), q);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != text.data() + slash ||
            r2.ptr != text.data() + text.size())
            throw DomainError("parse_phase: malformed rational");
        return PhaseAngle::rational(a, q);
    }
    return PhaseAngle::from_decimal(text);
}

RootTable::RootTable(u64 q) {
    if (q == 0) throw DomainError("RootTable: q must be positive");
    if (q > kMaxRootTableSize) throw ResourceError("RootTable: q too large");
    roots_.resize(q);
    for (u64 k = 0; k < q; ++k) roots_[k] = rational_turn(k, q);
}

PhaseStream::PhaseStream(const PhaseAngle& alpha, const RootTable* table) : alpha_(alpha), table_(table) {
    if (alpha_.mode() == PhaseAngle::Mode::Rational && alpha_.denominator() > kMaxRationalPhaseDenominator)
        throw ResourceError("PhaseStream: rational denominator exceeds table capacity");
    if (table_ != nullptr && table_->size() != alpha_.denominator()) table_ = nullptr;
}

Complex PhaseStream::next() {
    if (alpha_.mode() == PhaseAngle::Mode::Rational) {
        u64 q = alpha_.denominator();
        idx_ += alpha_.numerator();
        if (idx_ >= q) idx_ -= q;
        if (table_ != nullptr) return (*table_)[idx_];
        return rational_turn(idx_, q);
    }
    acc_ += alpha_.fraction();
    return fixed_point_turn(acc_);
}

} // namespace expsum
