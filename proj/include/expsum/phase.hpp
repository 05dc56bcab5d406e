#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "expsum/errors.hpp"
#include "expsum/wideint.hpp"

namespace expsum {

using Complex = std::complex<double>;

inline constexpr double kTau = 6.283185307179586476925286766559005768; // 2*pi

// An angle alpha in [0,1) turns, either as an exact reduced rational a/q or as
// a 128-bit binary fraction of a turn. Multiplication by an integer is exact
// mod 1 in both modes, so repeated dilations alpha -> alpha * p^l do not drift.
class PhaseAngle {
public:
    enum class Mode { Rational, FixedPoint };

    static PhaseAngle rational(i64 a, u64 q);
    static PhaseAngle fixed_point(u128 frac_of_turn);
    // floor(a * 2^128 / q); exact 128-bit truncation of a/q.
    static PhaseAngle rational_as_fixed_point(u64 a, u64 q);
    // Parses the fractional digits of a decimal literal exactly into binary.
    static PhaseAngle from_decimal(std::string_view text);
    static PhaseAngle sqrt2_minus_one();
    static PhaseAngle golden_conjugate(); // (sqrt 5 - 1)/2

    Mode mode() const { return mode_; }
    u64 numerator() const { return num_; }
    u64 denominator() const { return den_; }
    u128 fraction() const { return frac_; }

    bool is_integral() const;
    // Exact k*alpha mod 1.
    PhaseAngle scaled(u64 k) const;
    // k*alpha in Z; in fixed-point mode, within 2^-64 of an integer.
    bool scaled_is_integral(u64 k) const;
    double turns() const;
    std::string to_string() const;

    bool operator==(const PhaseAngle& o) const;

private:
    PhaseAngle() = default;
    Mode mode_ = Mode::Rational;
    u64 num_ = 0, den_ = 1; // rational
    u128 frac_ = 0;         // fixed point
};

// e(n*alpha) = exp(2*pi*i*n*alpha). Rational mode reduces n*a mod q exactly;
// fixed-point mode wraps the 128-bit product. Rational q above 2^30 is refused.
Complex unit_phase(u64 n, const PhaseAngle& alpha);

// n^{it}; exact 1 for t = 0.
Complex archimedean_twist(u64 n, double t);

// CLI grammar: "a/q", a decimal literal, or the named constants
// "sqrt2m1" and "phi-1".
PhaseAngle parse_phase(std::string_view text);

// Table of q-th roots of unity e(k/q), entries identical to what unit_phase
// produces for the same index.
class RootTable {
public:
    explicit RootTable(u64 q);
    const Complex& operator[](u64 k) const { return roots_[k]; }
    u64 size() const { return roots_.size(); }

private:
    std::vector<Complex> roots_;
};

// Streams e(alpha), e(2*alpha), e(3*alpha), ... with exact phase bookkeeping.
class PhaseStream {
public:
    explicit PhaseStream(const PhaseAngle& alpha, const RootTable* table = nullptr);
    Complex next();

private:
    PhaseAngle alpha_;
    const RootTable* table_;
    u64 idx_ = 0;   // rational: current n*a mod q
    u128 acc_ = 0;  // fixed point: current n*frac mod 2^128
};

inline constexpr u64 kMaxRationalPhaseDenominator = u64(1) << 30;
inline constexpr u64 kMaxRootTableSize = u64(1) << 22;

} // namespace expsum
