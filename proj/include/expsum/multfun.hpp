#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>

#include "expsum/characters.hpp"

namespace expsum {

enum class BaseRule { One, Character, TwistedCharacter };

// Exact unit-circle value e(num/den); lets prime values of character-backed
// specs combine without rounding.
struct UnitAngle {
    u64 num;
    u64 den;
};

// A multiplicative function given by a base rule plus prime-power overrides.
// Values are constrained to the closed unit disc. Prime-power values follow a
// fixed evaluation order (documented at value_at_prime_power) so independent
// evaluators agree bit for bit.
class MultiplicativeFunctionSpec {
public:
    static MultiplicativeFunctionSpec one();
    static MultiplicativeFunctionSpec character(DirichletCharacter chi);
    static MultiplicativeFunctionSpec twisted_character(DirichletCharacter chi, double t);

    MultiplicativeFunctionSpec& set_completely_multiplicative(bool cm);
    MultiplicativeFunctionSpec& override_prime(u64 p, Complex v);
    MultiplicativeFunctionSpec& override_prime_power(u64 p, u32 k, Complex v);
    void validate() const;

    BaseRule base() const { return base_; }
    const std::optional<DirichletCharacter>& base_char() const { return chi_; }
    double twist() const { return t_; }
    bool completely_multiplicative() const { return completely_multiplicative_; }
    const std::map<u64, Complex>& prime_overrides() const { return prime_overrides_; }
    const std::map<std::pair<u64, u32>, Complex>& prime_power_overrides() const { return power_overrides_; }

    // Value at p^k. Canonical arithmetic:
    //   completely multiplicative: the k-fold left-to-right product of f(p);
    //   character base: table lookup at p^k mod m (p^k computed in 64 bits);
    //   twisted base: the lookup times exp(i * t * log(double(p^k))).
    Complex value_at_prime_power(u64 p, u32 k) const;

    // f(p) as an exact angle when the value is a stored root of unity.
    std::optional<UnitAngle> angle_at_prime(u64 p) const;

    // f(n): product of prime-power values, largest prime factor first.
    Complex value_at(u64 n, const FactorTable& table) const;

    // Primes p <= bound with f(p^k) = 0 for some k; finite for every base rule.
    std::vector<u64> zero_support_primes(u64 bound) const;
    double zero_support_reciprocal_sum(u64 bound) const;

    std::string to_json() const;
    static MultiplicativeFunctionSpec from_json(std::string_view text);
    std::string describe() const;

private:
    BaseRule base_ = BaseRule::One;
    std::optional<DirichletCharacter> chi_;
    double t_ = 0.0;
    bool completely_multiplicative_ = false;
    std::map<u64, Complex> prime_overrides_;
    std::map<std::pair<u64, u32>, Complex> power_overrides_;
};

// f(n) for n = 1..N into out (out[n-1] = f(n)), single pass over the SPF table.
void eval_range(const MultiplicativeFunctionSpec& spec, u64 N, const FactorTable& table, std::span<Complex> out);

// Same values, n-ranges processed independently in parallel; bit-identical to
// eval_range.
void eval_range_parallel(const MultiplicativeFunctionSpec& spec, u64 N, const FactorTable& table,
                         std::span<Complex> out);

// chi with prescribed values at finitely many primes dividing the modulus.
struct ModifiedCharacterSpec {
    DirichletCharacter chi;
    std::vector<std::pair<u64, Complex>> modifications; // (p_i, eta_i)
    void validate() const;
};

// The completely multiplicative function with base chi and whole-prime
// overrides eta_i at p_i.
MultiplicativeFunctionSpec modified_character(const ModifiedCharacterSpec& spec);

// First construction: f(p) = 1 everywhere, f(p_i^k) = z_i for k >= 2, primes
// avoiding the denominator of alpha, z_1 = -1 and each later z chosen on the
// circle so the subset bound M_i moves by less than 2^-i. certified_bound is
// M_1(z_1) + 1 (the geometric-series bound for K = 0) and dominates
// sup_x |S_f(x; alpha)|.
struct Example1Construction {
    MultiplicativeFunctionSpec spec;
    double certified_bound = 0.0;
    std::vector<u64> primes;
    std::vector<Complex> z;
    std::vector<double> subset_bounds; // M_1..M_K
};
Example1Construction construct_example1(const PhaseAngle& alpha, u32 K);

// Subset bound M_k = sum over S of |2 E(S) / (e(alpha N(S)) - 1)| with
// E(S) = prod_{i in S} (z_i - 1) and N(S) = prod_{i in S} p_i^2.
double example1_subset_bound(const PhaseAngle& alpha, std::span<const u64> primes, std::span<const Complex> z);

// Second construction: sparse primes (default: least prime > 2^(i+2)) and
// z_i on the upper unit circle with |1 - z_i| = 1/p_i^2.
struct Example2Construction {
    MultiplicativeFunctionSpec spec;
    std::vector<u64> primes;
    std::vector<Complex> z;
};
Example2Construction construct_example2(u32 K);
Example2Construction construct_example2(u32 K, const std::function<u64(u32)>& prime_rule);

inline constexpr u32 kMaxExample1K = 20;
inline constexpr u64 kOverridePowerCeiling = u64(1) << 40; // materialize k >= 2 overrides up to p^k <= this

} // namespace expsum
