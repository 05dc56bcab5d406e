#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "expsum/accum.hpp"
#include "expsum/arith.hpp"
#include "expsum/phase.hpp"

namespace expsum {

// A Dirichlet character mod m held as an explicit value table. Values are
// stored both as complex doubles and as integer angle numerators over a common
// denominator L (the group exponent), so products and periodicity checks are
// exact. angle(n) = -1 marks gcd(n, m) > 1, where the value is 0.
class DirichletCharacter {
public:
    u64 modulus() const { return modulus_; }
    u64 index() const { return index_; }
    u64 conductor() const { return conductor_; }
    u64 primitive_index() const { return primitive_index_; }
    u64 angle_denominator() const { return angle_den_; }

    i64 angle(u64 n) const { return angles_[n % modulus_]; }
    Complex operator()(u64 n) const { return values_[n % modulus_]; }
    const std::vector<Complex>& values() const { return values_; }

    bool is_principal() const { return index_ == 0; }
    bool is_primitive() const { return conductor_ == modulus_; }
    bool is_real() const;
    std::string label() const; // "m.index"

private:
    friend class CharacterGroup;
    u64 modulus_ = 1, index_ = 0, conductor_ = 1, primitive_index_ = 0, angle_den_ = 1;
    std::vector<i64> angles_;
    std::vector<Complex> values_;
};

// The character group mod m, decomposed into cyclic components: {-1, 5} for
// the 2-power piece and a primitive root for each odd prime power piece.
// Characters are labeled lexicographically by their generator exponents;
// label 0 is the principal character.
class CharacterGroup {
public:
    explicit CharacterGroup(u64 m);

    u64 modulus() const { return m_; }
    u64 size() const { return phi_; }     // number of characters
    u64 exponent() const { return exponent_; }

    DirichletCharacter character(u64 index) const;
    std::vector<DirichletCharacter> all() const;

    std::vector<u64> exponents_of(u64 index) const;
    u64 index_of(std::span<const u64> exponents) const;
    u64 product_index(u64 i, u64 j) const;

    size_t component_count() const { return comps_.size(); }
    u64 component_order(size_t c) const { return comps_[c].order; }
    // Residue that equals the component generator on its piece and 1 elsewhere.
    u64 component_generator_residue(size_t c) const { return full_generator_residue(c); }

private:
    struct Component {
        u64 piece;     // prime-power piece of m
        u64 generator; // generator residue mod piece
        u64 order;
    };

    u64 m_ = 1, phi_ = 1, exponent_ = 1;
    std::vector<Component> comps_;
    std::vector<std::vector<u32>> dlogs_; // per component, indexed by n mod piece
    std::shared_ptr<RootTable> roots_;

    u64 full_generator_residue(size_t comp) const;
};

std::vector<DirichletCharacter> enumerate_characters(u64 m);
DirichletCharacter character_by_label(std::string_view label); // "m.i"

// (m0, psi): psi primitive mod m0 with chi = psi * principal mod m.
std::pair<u64, DirichletCharacter> conductor_and_primitive_part(const DirichletCharacter& chi);

// chi = psi * principal mod m; the primitive part of psi drives the table.
DirichletCharacter induce(const DirichletCharacter& psi, u64 m);

// P(z) = sum_{0 <= n < m} chi(n) z^n, compensated, z-power carried forward.
Complex gauss_polynomial_P(const DirichletCharacter& chi, Complex z);

// tau(psi) = sum_{n mod m0} psi(n) e(n/m0); requires psi primitive.
Complex gauss_tau(const DirichletCharacter& psi);

// True when m/m0 is square-free and coprime to m0.
bool gauss_hypothesis_holds(const DirichletCharacter& chi);

// Closed form for P(e(a/m)) under the square-free/coprime hypothesis:
// 0 when m0 does not divide r = m/(m,a), otherwise
// phi(m)/phi(r) * conj(psi)(a/(a,m)) * psi(r/m0) * mu(r/m0) * tau(psi).
Complex gauss_P_formula(const DirichletCharacter& chi, i64 a);

inline constexpr u64 kMaxCharacterModulus = 1000000;

} // namespace expsum
