#include "expsum/modified_sums.hpp"

#include <cmath>

namespace expsum {

namespace {
constexpr u64 kDirectSumThreshold = 4096;
}

ModifiedCharSums::ModifiedCharSums(ModifiedCharacterSpec spec, std::shared_ptr<const FactorTable> table)
    : spec_(std::move(spec)), fun_(modified_character(spec_)), table_(std::move(table)) {}

Complex ModifiedCharSums::modified_sum(double x, const PhaseAngle& alpha) const {
    if (x < 1.0) return {0.0, 0.0};
    u64 n = static_cast<u64>(std::floor(x));
    if (n > table_->limit()) throw ResourceError("modified_sum: x exceeds sieve capacity");
    CompensatedAccumulator acc;
    PhaseStream phases(alpha);
    for (u64 j = 1; j <= n; ++j) acc.add(fun_.value_at(j, *table_) * phases.next());
    return acc.value();
}

Complex ModifiedCharSums::char_partial(double x, const PhaseAngle& alpha) const {
    if (x < 1.0) return {0.0, 0.0};
    u64 n = static_cast<u64>(std::floor(x));
    const DirichletCharacter& chi = spec_.chi;
    u64 m = chi.modulus();
    if (n % m == 0 && n > kDirectSumThreshold) return char_partial_at_multiple(n / m, alpha);
    CompensatedAccumulator acc;
    PhaseStream phases(alpha);
    for (u64 j = 1; j <= n; ++j) acc.add(chi(j) * phases.next());
    return acc.value();
}

Complex ModifiedCharSums::char_partial_at_multiple(u64 multiplier, const PhaseAngle& alpha) const {
    const DirichletCharacter& chi = spec_.chi;
    u64 m = chi.modulus();
    if (alpha.scaled_is_integral(m)) {
        // e(m alpha) = 1: every period contributes the same block sum
        Complex block = gauss_polynomial_P(chi, unit_phase(1, alpha));
        return block * static_cast<double>(multiplier);
    }
    return char_closed_form(chi, alpha, multiplier * m);
}

Complex ModifiedCharSums::recursive(std::span<const u32> ells, double x, const PhaseAngle& alpha) const {
    if (ells.size() > prime_count()) throw DomainError("recursive: tuple longer than the modification list");
    if (x < 1.0) return {0.0, 0.0};
    if (ells.empty()) return modified_sum(x, alpha);
    size_t s = ells.size() - 1;
    auto head = ells.first(s);
    u64 p = spec_.modifications[s].first;
    Complex eta = spec_.modifications[s].second;
    u32 l = ells[s];

    Complex eta_pow = {1.0, 0.0};
    for (u32 i = 0; i < l; ++i) eta_pow *= eta;

    // p^l > x makes the dilated sum empty; otherwise p^l fits in 64 bits
    u128 pl = 1;
    bool empty = false;
    for (u32 i = 0; i < l; ++i) {
        pl *= p;
        if (static_cast<double>(pl) > x) {
            empty = true;
            break;
        }
    }
    Complex tail = {0.0, 0.0};
    if (!empty) {
        u64 pli = static_cast<u64>(pl);
        tail = eta_pow * recursive(head, x / static_cast<double>(pli), alpha.scaled(pli));
    }
    return recursive(head, x, alpha) - tail;
}

Complex ModifiedCharSums::expanded(std::span<const u32> ells, double x, const PhaseAngle& alpha) const {
    if (ells.size() > prime_count()) throw DomainError("expanded: tuple longer than the modification list");
    if (x < 1.0) return {0.0, 0.0};
    const size_t k = prime_count();
    CompensatedAccumulator acc;

    // depth-first over beta tuples; bounded ranges for i < |ells|, the rest
    // truncate once the divided argument drops below 1
    auto recurse = [&](auto&& self, size_t i, double xr, PhaseAngle ar, Complex etas) -> void {
        if (i == k) {
            if (xr >= 1.0) acc.add(etas * char_partial(xr, ar));
            return;
        }
        u64 p = spec_.modifications[i].first;
        Complex eta = spec_.modifications[i].second;
        u32 limit = i < ells.size() ? ells[i] : UINT32_MAX;
        double xb = xr;
        PhaseAngle ab = ar;
        Complex ep = etas;
        for (u32 beta = 0; beta < limit; ++beta) {
            if (xb < 1.0) break; // every deeper sum is empty
            self(self, i + 1, xb, ab, ep);
            xb /= static_cast<double>(p);
            ab = ab.scaled(p);
            ep = ep * eta;
        }
    };
    recurse(recurse, 0, x, alpha, Complex{1.0, 0.0});
    return acc.value();
}

Complex ModifiedCharSums::block_sum(std::span<const u32> ells, u32 r, const PhaseAngle& alpha) const {
    const size_t k = prime_count();
    if (k == 0) throw DomainError("block_sum: spec has no modifications");
    if (ells.size() != k - 1) throw DomainError("block_sum: tuple must have length k-1");
    if (r == 0) throw DomainError("block_sum: r must be positive");
    for (u32 l : ells)
        if (l == 0) throw DomainError("block_sum: ells must be positive");

    CompensatedAccumulator acc;
    std::vector<u32> beta(k, 0);
    auto limit_of = [&](size_t i) { return i + 1 < k ? ells[i] : r; };
    // odometer over beta_1 < l_1, ..., beta_{k-1} < l_{k-1}, beta_k < r
    for (;;) {
        u64 multiplier = 1;
        u64 dilation = 1;
        Complex etas = {1.0, 0.0};
        for (size_t i = 0; i < k; ++i) {
            u64 p = spec_.modifications[i].first;
            multiplier *= checked_pow(p, limit_of(i) - beta[i] - 1);
            dilation *= checked_pow(p, beta[i]);
            Complex eta = spec_.modifications[i].second;
            for (u32 b = 0; b < beta[i]; ++b) etas *= eta;
        }
        acc.add(etas * char_partial_at_multiple(multiplier, alpha.scaled(dilation)));

        size_t i = k;
        for (;;) {
            if (i == 0) return acc.value();
            --i;
            if (++beta[i] < limit_of(i)) break;
            beta[i] = 0;
        }
    }
}

double ModifiedCharSums::block_tail_bound(std::span<const u32> ells) const {
    const size_t k = prime_count();
    if (ells.size() != k - 1) throw DomainError("block_tail_bound: tuple must have length k-1");
    double m = static_cast<double>(spec_.chi.modulus());
    double pk = static_cast<double>(spec_.modifications[k - 1].first);
    // sum over beta_i < l_i of m prod p_i^{l_i - beta_i - 1} / (p_k - 1)
    double total = 0.0;
    std::vector<u32> beta(k - 1, 0);
    if (k == 1) return m / (pk - 1.0);
    for (;;) {
        double prod = m;
        for (size_t i = 0; i + 1 < k; ++i)
            prod *= std::pow(static_cast<double>(spec_.modifications[i].first), static_cast<double>(ells[i] - beta[i] - 1));
        total += prod / (pk - 1.0);
        size_t i = k - 1;
        bool done = true;
        while (i-- > 0) {
            if (++beta[i] < ells[i]) {
                done = false;
                break;
            }
            beta[i] = 0;
        }
        if (done) break;
    }
    return total;
}

double ModifiedCharSums::block_argument(std::span<const u32> ells, u32 r) const {
    const size_t k = prime_count();
    if (ells.size() != k - 1) throw DomainError("block_argument: tuple must have length k-1");
    double x = static_cast<double>(spec_.chi.modulus());
    for (size_t i = 0; i + 1 < k; ++i)
        x *= std::pow(static_cast<double>(spec_.modifications[i].first), static_cast<double>(ells[i] - 1));
    x *= std::pow(static_cast<double>(spec_.modifications[k - 1].first), static_cast<double>(r - 1));
    return x;
}

} // namespace expsum
