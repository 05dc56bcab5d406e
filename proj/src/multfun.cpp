#include "expsum/multfun.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace expsum {

namespace {
constexpr double kUnitDiscTolerance = 1e-9;

// prime-power factor stack for the descending-order product
struct SmallFactorization {
    u64 p[16];
    u32 e[16];
    int count = 0;
};

SmallFactorization spf_factorize(u64 n, const FactorTable& table) {
    SmallFactorization f;
    while (n > 1) {
        u64 p = table.spf(n);
        u32 e = 0;
        while (n % p == 0) {
            n /= p;
            ++e;
        }
        f.p[f.count] = p;
        f.e[f.count] = e;
        ++f.count;
    }
    return f;
}
} // namespace

MultiplicativeFunctionSpec MultiplicativeFunctionSpec::one() { return {}; }

MultiplicativeFunctionSpec MultiplicativeFunctionSpec::character(DirichletCharacter chi) {
    MultiplicativeFunctionSpec s;
    s.base_ = BaseRule::Character;
    s.chi_ = std::move(chi);
    return s;
}

MultiplicativeFunctionSpec MultiplicativeFunctionSpec::twisted_character(DirichletCharacter chi, double t) {
    MultiplicativeFunctionSpec s;
    s.base_ = BaseRule::TwistedCharacter;
    s.chi_ = std::move(chi);
    s.t_ = t;
    return s;
}

MultiplicativeFunctionSpec& MultiplicativeFunctionSpec::set_completely_multiplicative(bool cm) {
    completely_multiplicative_ = cm;
    return *this;
}

MultiplicativeFunctionSpec& MultiplicativeFunctionSpec::override_prime(u64 p, Complex v) {
    if (!is_prime_u64(p)) throw InvalidConfigError("override_prime: p must be prime");
    if (std::abs(v) > 1.0 + kUnitDiscTolerance) throw InvalidConfigError("override value outside the unit disc");
    prime_overrides_[p] = v;
    return *this;
}

MultiplicativeFunctionSpec& MultiplicativeFunctionSpec::override_prime_power(u64 p, u32 k, Complex v) {
    if (!is_prime_u64(p)) throw InvalidConfigError("override_prime_power: p must be prime");
    if (k == 0) throw InvalidConfigError("override_prime_power: k must be positive");
    if (std::abs(v) > 1.0 + kUnitDiscTolerance) throw InvalidConfigError("override value outside the unit disc");
    if (k == 1)
        prime_overrides_[p] = v;
    else
        power_overrides_[{p, k}] = v;
    return *this;
}

void MultiplicativeFunctionSpec::validate() const {
    if (completely_multiplicative_ && !power_overrides_.empty())
        throw InvalidConfigError("completely multiplicative specs admit whole-prime overrides only");
    for (const auto& [p, v] : prime_overrides_)
        if (std::abs(v) > 1.0 + kUnitDiscTolerance) throw InvalidConfigError("override value outside the unit disc");
    for (const auto& [pk, v] : power_overrides_)
        if (std::abs(v) > 1.0 + kUnitDiscTolerance) throw InvalidConfigError("override value outside the unit disc");
}

Complex MultiplicativeFunctionSpec::value_at_prime_power(u64 p, u32 k) const {
    if (k == 0) return {1.0, 0.0};
    if (completely_multiplicative_) {
        Complex v;
        auto it = prime_overrides_.find(p);
        if (it != prime_overrides_.end()) {
            v = it->second;
        } else if (base_ == BaseRule::One) {
            v = {1.0, 0.0};
        } else {
            v = (*chi_)(p % chi_->modulus());
            if (base_ == BaseRule::TwistedCharacter) v *= archimedean_twist(p, t_);
        }
        Complex acc = {1.0, 0.0};
        for (u32 i = 0; i < k; ++i) acc *= v;
        return acc;
    }
    if (k > 1) {
        auto it = power_overrides_.find({p, k});
        if (it != power_overrides_.end()) return it->second;
    } else {
        auto it = prime_overrides_.find(p);
        if (it != prime_overrides_.end()) return it->second;
    }
    if (base_ == BaseRule::One) return {1.0, 0.0};
    u64 pk = checked_pow(p, k);
    Complex v = (*chi_)(pk % chi_->modulus());
    if (base_ == BaseRule::TwistedCharacter) v *= archimedean_twist(pk, t_);
    return v;
}

std::optional<UnitAngle> MultiplicativeFunctionSpec::angle_at_prime(u64 p) const {
    auto it = prime_overrides_.find(p);
    if (it != prime_overrides_.end()) return std::nullopt;
    if (base_ == BaseRule::One) return UnitAngle{0, 1};
    i64 a = chi_->angle(p % chi_->modulus());
    if (a < 0) return std::nullopt; // value 0
    return UnitAngle{static_cast<u64>(a), chi_->angle_denominator()};
}

Complex MultiplicativeFunctionSpec::value_at(u64 n, const FactorTable& table) const {
    if (n == 0 || n > table.limit()) throw DomainError("value_at: n out of table range");
    SmallFactorization f = spf_factorize(n, table);
    Complex acc = {1.0, 0.0};
    for (int i = f.count; i-- > 0;) acc *= value_at_prime_power(f.p[i], f.e[i]);
    return acc;
}

std::vector<u64> MultiplicativeFunctionSpec::zero_support_primes(u64 bound) const {
    std::vector<u64> out;
    auto overridden_nonzero_everywhere = [&](u64 p) {
        // In a cm spec a nonzero f(p) keeps every power nonzero. Otherwise a
        // base zero at p survives at unoverridden powers.
        if (!completely_multiplicative_) return false;
        auto it = prime_overrides_.find(p);
        return it != prime_overrides_.end() && std::abs(it->second) != 0.0;
    };
    if (base_ != BaseRule::One) {
        for (const PrimePower& pp : factorize_trial(chi_->modulus())) {
            if (pp.p <= bound && !overridden_nonzero_everywhere(pp.p)) out.push_back(pp.p);
        }
    }
    for (const auto& [p, v] : prime_overrides_) {
        if (p <= bound && std::abs(v) == 0.0 && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    for (const auto& [pk, v] : power_overrides_) {
        if (pk.first <= bound && std::abs(v) == 0.0 && std::find(out.begin(), out.end(), pk.first) == out.end())
            out.push_back(pk.first);
    }
    std::sort(out.begin(), out.end());
    return out;
}

double MultiplicativeFunctionSpec::zero_support_reciprocal_sum(u64 bound) const {
    double s = 0.0;
    for (u64 p : zero_support_primes(bound)) s += 1.0 / static_cast<double>(p);
    return s;
}

void eval_range(const MultiplicativeFunctionSpec& spec, u64 N, const FactorTable& table, std::span<Complex> out) {
    if (N > table.limit()) throw ResourceError("eval_range: N exceeds sieve capacity");
    if (out.size() < N) throw DomainError("eval_range: output span too small");
    if (N == 0) return;
    out[0] = {1.0, 0.0};
    for (u64 n = 2; n <= N; ++n) {
        u64 p = table.spf(n);
        u64 m = n;
        u32 e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        out[n - 1] = out[m - 1] * spec.value_at_prime_power(p, e);
    }
}

void eval_range_parallel(const MultiplicativeFunctionSpec& spec, u64 N, const FactorTable& table,
                         std::span<Complex> out) {
    if (N > table.limit()) throw ResourceError("eval_range_parallel: N exceeds sieve capacity");
    if (out.size() < N) throw DomainError("eval_range_parallel: output span too small");
    if (N == 0) return;
#pragma omp parallel for schedule(static)
    for (i64 n = 1; n <= static_cast<i64>(N); ++n) out[n - 1] = spec.value_at(static_cast<u64>(n), table);
}

void ModifiedCharacterSpec::validate() const {
    u64 m = chi.modulus();
    auto [m0, psi] = conductor_and_primitive_part(chi);
    std::vector<u64> seen;
    for (size_t i = 0; i < modifications.size(); ++i) {
        auto [p, eta] = modifications[i];
        if (!is_prime_u64(p) || m % p != 0) throw InvalidConfigError("modified character: p_i must be a prime dividing m");
        if (std::find(seen.begin(), seen.end(), p) != seen.end())
            throw InvalidConfigError("modified character: repeated prime");
        seen.push_back(p);
        if (std::abs(eta) > 1.0 + kUnitDiscTolerance)
            throw InvalidConfigError("modified character: |eta| must be <= 1");
        if (std::abs(eta - psi(p % m0)) <= 1e-12)
            throw InvalidConfigError("modified character: eta_i equals psi(p_i)");
        if (i + 1 == modifications.size() && std::abs(std::abs(eta) - 1.0) > kUnitDiscTolerance)
            throw InvalidConfigError("modified character: the last eta must be unimodular");
    }
}

MultiplicativeFunctionSpec modified_character(const ModifiedCharacterSpec& spec) {
    spec.validate();
    MultiplicativeFunctionSpec f = MultiplicativeFunctionSpec::character(spec.chi);
    f.set_completely_multiplicative(true);
    for (auto [p, eta] : spec.modifications) f.override_prime(p, eta);
    f.validate();
    return f;
}

double example1_subset_bound(const PhaseAngle& alpha, std::span<const u64> primes, std::span<const Complex> z) {
    const size_t k = primes.size();
    double total = 0.0;
    for (u64 mask = 0; mask < (u64(1) << k); ++mask) {
        Complex es = {1.0, 0.0};
        PhaseAngle beta = alpha;
        for (size_t i = 0; i < k; ++i) {
            if (mask & (u64(1) << i)) {
                es *= z[i] - Complex{1.0, 0.0};
                beta = beta.scaled(primes[i]).scaled(primes[i]);
            }
        }
        if (beta.is_integral()) throw PreconditionError("example1 bound: alpha * N(S) integral");
        Complex denom = unit_phase(1, beta) - Complex{1.0, 0.0};
        total += 2.0 * std::abs(es) / std::abs(denom);
    }
    return total;
}

namespace {

void add_high_power_overrides(MultiplicativeFunctionSpec& spec, u64 p, Complex zv) {
    u64 pk = p * p;
    for (u32 k = 2; pk <= kOverridePowerCeiling; ++k) {
        spec.override_prime_power(p, k, zv);
        if (pk > kOverridePowerCeiling / p) break;
        pk *= p;
    }
}

} // namespace

Example1Construction construct_example1(const PhaseAngle& alpha, u32 K) {
    if (alpha.is_integral()) throw PreconditionError("construct_example1: alpha must not be an integer");
    if (K > kMaxExample1K) throw ResourceError("construct_example1: K exceeds the 2^K enumeration cap");

    Example1Construction out;
    out.spec = MultiplicativeFunctionSpec::one();
    if (K == 0) {
        out.certified_bound = 2.0 / std::abs(unit_phase(1, alpha) - Complex{1.0, 0.0});
        return out;
    }

    // primes avoiding the denominator in rational mode
    u64 den = alpha.mode() == PhaseAngle::Mode::Rational ? alpha.denominator() : 0;
    for (u64 p = 2; out.primes.size() < K; ++p) {
        if (!is_prime_u64(p)) continue;
        if (den != 0 && den % p == 0) continue;
        out.primes.push_back(p);
    }

    out.z.push_back({-1.0, 0.0});
    out.subset_bounds.push_back(example1_subset_bound(alpha, std::span(out.primes).first(1), out.z));
    for (u32 i = 1; i < K; ++i) {
        double prev = out.subset_bounds.back();
        double target = std::ldexp(1.0, -static_cast<int>(i)); // 2^-i
        Complex chosen = {1.0, 0.0};
        double bound = prev;
        for (int j = 1; j <= 200; ++j) {
            double theta = std::ldexp(1.0, -j); // arc bisection toward 1
            Complex zc = {std::cos(kTau * theta), std::sin(kTau * theta)};
            if (zc == Complex{1.0, 0.0}) break;
            std::vector<Complex> zs(out.z.begin(), out.z.end());
            zs.push_back(zc);
            double m = example1_subset_bound(alpha, std::span(out.primes).first(i + 1), zs);
            if (std::abs(m - prev) < target) {
                chosen = zc;
                bound = m;
                break;
            }
        }
        if (chosen == Complex{1.0, 0.0}) throw InvalidConfigError("construct_example1: no admissible z found");
        out.z.push_back(chosen);
        out.subset_bounds.push_back(bound);
    }

    for (u32 i = 0; i < K; ++i) add_high_power_overrides(out.spec, out.primes[i], out.z[i]);
    out.spec.validate();
    out.certified_bound = out.subset_bounds.front() + 1.0;
    return out;
}

Example2Construction construct_example2(u32 K) {
    return construct_example2(K, [](u32 i) {
        u64 p = (u64(1) << (i + 3)) + 1; // least prime > 2^(i+2): i is 0-based here
        while (!is_prime_u64(p)) ++p;
        return p;
    });
}

Example2Construction construct_example2(u32 K, const std::function<u64(u32)>& prime_rule) {
    Example2Construction out;
    out.spec = MultiplicativeFunctionSpec::one();
    u64 prev = 0;
    for (u32 i = 0; i < K; ++i) {
        u64 p = prime_rule(i);
        if (!is_prime_u64(p) || p <= prev) throw InvalidConfigError("construct_example2: prime rule must yield strictly increasing primes");
        prev = p;
        out.primes.push_back(p);
        double pp = static_cast<double>(p) * static_cast<double>(p);
        double theta = std::asin(1.0 / (2.0 * pp)) / M_PI; // |1 - e(theta)| = 2 sin(pi theta)
        Complex zv = {std::cos(kTau * theta), std::sin(kTau * theta)}; // upper half plane branch
        out.z.push_back(zv);
        add_high_power_overrides(out.spec, p, zv);
    }
    out.spec.validate();
    return out;
}

// ---------------------------------------------------------------------------
// JSON wire format: {base, t, completely_multiplicative, overrides:[{p,k|"*",re,im}]}

std::string MultiplicativeFunctionSpec::to_json() const {
    nlohmann::json j;
    switch (base_) {
        case BaseRule::One: j["base"] = "one"; break;
        case BaseRule::Character: j["base"] = "character"; break;
        case BaseRule::TwistedCharacter: j["base"] = "twisted_character"; break;
    }
    if (chi_) {
        j["modulus"] = chi_->modulus();
        j["index"] = chi_->index();
    }
    j["t"] = t_;
    j["completely_multiplicative"] = completely_multiplicative_;
    nlohmann::json ov = nlohmann::json::array();
    for (const auto& [p, v] : prime_overrides_) {
        ov.push_back({{"p", p}, {"k", "*"}, {"re", v.real()}, {"im", v.imag()}});
    }
    for (const auto& [pk, v] : power_overrides_) {
        ov.push_back({{"p", pk.first}, {"k", pk.second}, {"re", v.real()}, {"im", v.imag()}});
    }
    j["overrides"] = std::move(ov);
    return j.dump(2);
}

MultiplicativeFunctionSpec MultiplicativeFunctionSpec::from_json(std::string_view text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::string base = j.at("base").get<std::string>();
    MultiplicativeFunctionSpec s;
    if (base == "one") {
        s = one();
    } else {
        u64 m = j.at("modulus").get<u64>();
        u64 idx = j.at("index").get<u64>();
        DirichletCharacter chi = CharacterGroup(m).character(idx);
        if (base == "character")
            s = character(std::move(chi));
        else if (base == "twisted_character")
            s = twisted_character(std::move(chi), j.value("t", 0.0));
        else
            throw InvalidConfigError("spec json: unknown base rule");
    }
    if (j.contains("t")) s.t_ = j["t"].get<double>();
    s.set_completely_multiplicative(j.value("completely_multiplicative", false));
    if (j.contains("overrides")) {
        for (const auto& o : j["overrides"]) {
            u64 p = o.at("p").get<u64>();
            Complex v{o.at("re").get<double>(), o.at("im").get<double>()};
            if (o.at("k").is_string()) {
                if (o["k"].get<std::string>() != "*") throw InvalidConfigError("spec json: k must be an integer or \"*\"");
                s.override_prime(p, v);
            } else {
                s.override_prime_power(p, o["k"].get<u32>(), v);
            }
        }
    }
    s.validate();
    return s;
}

std::string MultiplicativeFunctionSpec::describe() const {
    std::string d;
    switch (base_) {
        case BaseRule::One: d = "one"; break;
        case BaseRule::Character: d = "char:" + chi_->label(); break;
        case BaseRule::TwistedCharacter: d = "char:" + chi_->label() + ",t=" + std::to_string(t_); break;
    }
    if (completely_multiplicative_) d += ",cm";
    size_t n = prime_overrides_.size() + power_overrides_.size();
    if (n > 0) d += "," + std::to_string(n) + "ov";
    return d;
}

} // namespace expsum
