#pragma once

#include <memory>

#include "expsum/trajectory.hpp"

namespace expsum {

// Sums attached to a modified character: the direct sum S(x, alpha) of the
// modified function, the partially sieved sums A_(l1..ls) defined by repeated
// prime-power peeling, and the finite block sums B_r used to witness growth.
// Phase dilations alpha -> alpha * p^l are exact in both angle modes.
class ModifiedCharSums {
public:
    ModifiedCharSums(ModifiedCharacterSpec spec, std::shared_ptr<const FactorTable> table);

    const ModifiedCharacterSpec& spec() const { return spec_; }
    size_t prime_count() const { return spec_.modifications.size(); }

    // S(x, alpha) = sum_{n <= floor(x)} chi~(n) e(n alpha)
    Complex modified_sum(double x, const PhaseAngle& alpha) const;

    // f(x, alpha) = sum_{n <= floor(x)} chi(n) e(n alpha), the unmodified sum
    Complex char_partial(double x, const PhaseAngle& alpha) const;

    // A by the literal recursion
    //   A_() = S;  A_(l1..l_{s+1})(x, a) = A_(l1..ls)(x, a)
    //                - eta_{s+1}^{l_{s+1}} A_(l1..ls)(x / p^{l}, a p^{l}).
    Complex recursive(std::span<const u32> ells, double x, const PhaseAngle& alpha) const;

    // A as the multi-sum over beta tuples; the unbounded ranges truncate
    // exactly once p^beta exceeds x (the inner sum is empty beyond).
    Complex expanded(std::span<const u32> ells, double x, const PhaseAngle& alpha) const;

    // B_r: beta_i < l_i for i < k, beta_k < r, inner arguments the exact
    // multiples m p1^{l1-b1-1} ... pk^{r-bk-1} of the modulus.
    Complex block_sum(std::span<const u32> ells, u32 r, const PhaseAngle& alpha) const;

    // Upper bound on |A(x_A) - B_r| from |f(x, .)| <= x, with
    // x_A = m p1^{l1-1} ... p_{k-1}^{l_{k-1}-1} pk^{r-1}.
    double block_tail_bound(std::span<const u32> ells) const;
    double block_argument(std::span<const u32> ells, u32 r) const; // x_A

private:
    Complex char_partial_at_multiple(u64 multiplier, const PhaseAngle& alpha) const; // f(multiplier * m, alpha)

    ModifiedCharacterSpec spec_;
    MultiplicativeFunctionSpec fun_;
    std::shared_ptr<const FactorTable> table_;
};

} // namespace expsum
