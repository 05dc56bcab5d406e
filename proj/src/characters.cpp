#include "expsum/characters.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

namespace expsum {

namespace {

u64 lcm_u64(u64 a, u64 b) { return a / gcd_u64(a, b) * b; }

// Smallest primitive root mod p^e for odd prime p.
u64 primitive_root_odd(u64 p, u32 e) {
    u64 phi_p = p - 1;
    PrimePowerList fac = factorize_trial(phi_p);
    u64 g = 2;
    for (;; ++g) {
        bool ok = true;
        for (const PrimePower& q : fac) {
            if (powmod_u64(g, phi_p / q.p, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok) break;
    }
    if (e >= 2) {
        u64 p2 = p * p;
        if (powmod_u64(g, p - 1, p2) == 1) g += p;
    }
    return g;
}

std::vector<u64> divisors_ascending(u64 m) {
    std::vector<u64> divs;
    for (u64 d = 1; d * d <= m; ++d) {
        if (m % d == 0) {
            divs.push_back(d);
            if (d != m / d) divs.push_back(m / d);
        }
    }
    std::sort(divs.begin(), divs.end());
    return divs;
}

u64 crt_pair(u64 r1, u64 m1, u64 r2, u64 m2) {
    // moduli coprime
    u64 inv = invmod_u64(m1 % m2, m2);
    u64 diff = (r2 + m2 - r1 % m2) % m2;
    return r1 + m1 * mulmod_u64(diff, inv, m2);
}

} // namespace

bool DirichletCharacter::is_real() const {
    for (i64 a : angles_) {
        if (a > 0 && static_cast<u64>(2 * a) != angle_den_) return false;
    }
    return true;
}

std::string DirichletCharacter::label() const {
    return std::to_string(modulus_) + "." + std::to_string(index_);
}

CharacterGroup::CharacterGroup(u64 m) {
    if (m == 0) throw DomainError("CharacterGroup: modulus must be positive");
    if (m > kMaxCharacterModulus) throw ResourceError("CharacterGroup: modulus exceeds 10^6");
    m_ = m;

    PrimePowerList fac = factorize_trial(m);
    // 2-power piece first (its components in {-1, 5} order), then odd pieces ascending
    for (const PrimePower& pp : fac) {
        if (pp.p != 2) continue;
        u64 piece = checked_pow(2, pp.e);
        if (pp.e == 1) continue; // (Z/2)* trivial
        if (pp.e == 2) {
            comps_.push_back({piece, 3, 2});
        } else {
            comps_.push_back({piece, piece - 1, 2});
            comps_.push_back({piece, 5, u64(1) << (pp.e - 2)});
        }
    }
    for (const PrimePower& pp : fac) {
        if (pp.p == 2) continue;
        u64 piece = checked_pow(pp.p, pp.e);
        u64 order = piece / pp.p * (pp.p - 1);
        comps_.push_back({piece, primitive_root_odd(pp.p, pp.e), order});
    }

    phi_ = 1;
    exponent_ = 1;
    for (const Component& c : comps_) {
        phi_ *= c.order;
        exponent_ = lcm_u64(exponent_, c.order);
    }

    // discrete logs per component
    dlogs_.resize(comps_.size());
    size_t ci = 0;
    for (const PrimePower& pp : fac) {
        if (pp.p != 2 || pp.e < 2) continue;
        u64 piece = checked_pow(2, pp.e);
        if (pp.e == 2) {
            dlogs_[ci].assign(piece, 0);
            dlogs_[ci][1] = 0;
            dlogs_[ci][3] = 1;
            ++ci;
        } else {
            dlogs_[ci].assign(piece, 0);
            dlogs_[ci + 1].assign(piece, 0);
            u64 half_order = u64(1) << (pp.e - 2);
            u64 v = 1;
            for (u64 s = 0; s < half_order; ++s) {
                dlogs_[ci][v] = 0;
                dlogs_[ci + 1][v] = static_cast<u32>(s);
                u64 neg = piece - v;
                dlogs_[ci][neg] = 1;
                dlogs_[ci + 1][neg] = static_cast<u32>(s);
                v = mulmod_u64(v, 5, piece);
            }
            ci += 2;
        }
    }
    for (; ci < comps_.size(); ++ci) {
        const Component& c = comps_[ci];
        dlogs_[ci].assign(c.piece, 0);
        u64 v = 1;
        for (u64 k = 0; k < c.order; ++k) {
            dlogs_[ci][v] = static_cast<u32>(k);
            v = mulmod_u64(v, c.generator, c.piece);
        }
    }

    roots_ = std::make_shared<RootTable>(exponent_);
}

std::vector<u64> CharacterGroup::exponents_of(u64 index) const {
    if (index >= phi_) throw DomainError("CharacterGroup: character index out of range");
    std::vector<u64> e(comps_.size(), 0);
    for (size_t i = comps_.size(); i-- > 0;) {
        e[i] = index % comps_[i].order;
        index /= comps_[i].order;
    }
    return e;
}

u64 CharacterGroup::index_of(std::span<const u64> exponents) const {
    u64 idx = 0;
    for (size_t i = 0; i < comps_.size(); ++i) idx = idx * comps_[i].order + exponents[i] % comps_[i].order;
    return idx;
}

u64 CharacterGroup::product_index(u64 i, u64 j) const {
    std::vector<u64> a = exponents_of(i), b = exponents_of(j);
    for (size_t k = 0; k < a.size(); ++k) a[k] = (a[k] + b[k]) % comps_[k].order;
    return index_of(a);
}

u64 CharacterGroup::full_generator_residue(size_t comp) const {
    // residue that is the generator on `comp` and 1 on every other piece
    u64 r = comps_[comp].generator % comps_[comp].piece;
    u64 mod = comps_[comp].piece;
    for (size_t i = 0; i < comps_.size(); ++i) {
        if (comps_[i].piece == comps_[comp].piece) continue; // same piece (two 2-power components)
        r = crt_pair(r, mod, 1, comps_[i].piece);
        mod *= comps_[i].piece;
    }
    u64 rest = m_ / mod;
    if (rest > 1) r = crt_pair(r, mod, 1, rest); // pieces absent from comps_, e.g. a bare factor 2
    return r % m_;
}

DirichletCharacter CharacterGroup::character(u64 index) const {
    std::vector<u64> exps = exponents_of(index);

    DirichletCharacter chi;
    chi.modulus_ = m_;
    chi.index_ = index;
    chi.angle_den_ = exponent_;
    chi.angles_.assign(m_, -1);
    chi.values_.assign(m_, Complex{0.0, 0.0});

    for (u64 n = 0; n < m_; ++n) {
        if (gcd_u64(n, m_) != 1) continue;
        u64 angle = 0;
        for (size_t c = 0; c < comps_.size(); ++c) {
            u64 d = dlogs_[c][n % comps_[c].piece];
            angle = (angle + mulmod_u64(exps[c], mulmod_u64(d, exponent_ / comps_[c].order, exponent_), exponent_)) % exponent_;
        }
        chi.angles_[n] = static_cast<i64>(angle);
        chi.values_[n] = (*roots_)[angle];
    }
    if (m_ == 1) {
        chi.angles_[0] = 0;
        chi.values_[0] = {1.0, 0.0};
    }

    // conductor: least divisor d of m with chi trivial on units congruent to 1 mod d
    for (u64 d : divisors_ascending(m_)) {
        bool induced = true;
        for (u64 n = 1 + d; n <= m_ && induced; n += d) {
            if (chi.angles_[n % m_] >= 0 && chi.angles_[n % m_] != 0) induced = false;
        }
        if (induced) {
            chi.conductor_ = d;
            break;
        }
    }

    // label of the primitive part within the conductor group
    if (chi.conductor_ == m_) {
        chi.primitive_index_ = index;
    } else if (chi.conductor_ == 1) {
        chi.primitive_index_ = 0;
    } else {
        CharacterGroup g0(chi.conductor_);
        std::vector<u64> e0(g0.comps_.size());
        for (size_t c = 0; c < g0.comps_.size(); ++c) {
            u64 gen = g0.full_generator_residue(c);
            u64 n = gen;
            while (gcd_u64(n, m_) != 1) n += chi.conductor_;
            u64 a = static_cast<u64>(chi.angles_[n % m_]);
            // value is an L0-th root of unity; rescale the angle into L0 units
            u64 a0 = static_cast<u64>(((u128)a * g0.exponent_) / exponent_);
            e0[c] = a0 / (g0.exponent_ / g0.comps_[c].order);
        }
        chi.primitive_index_ = g0.index_of(e0);
    }
    return chi;
}

std::vector<DirichletCharacter> CharacterGroup::all() const {
    std::vector<DirichletCharacter> out;
    out.reserve(phi_);
    for (u64 i = 0; i < phi_; ++i) out.push_back(character(i));
    return out;
}

std::vector<DirichletCharacter> enumerate_characters(u64 m) { return CharacterGroup(m).all(); }

DirichletCharacter character_by_label(std::string_view label) {
    auto dot = label.find('.');
    if (dot == std::string_view::npos) throw DomainError("character label must be m.index");
    u64 m = 0, idx = 0;
    auto r1 = std::from_chars(label.data(), label.data() + dot, m);
    auto r2 = std::from_chars(label.data() + dot + 1, label.data() + label.size(), idx);
    if (r1.ec != std::errc{} || r2.ec != std::errc{}) throw DomainError("character label must be m.index");
    CharacterGroup g(m);
    if (idx >= g.size()) throw DomainError("character index out of range");
    return g.character(idx);
}

std::pair<u64, DirichletCharacter> conductor_and_primitive_part(const DirichletCharacter& chi) {
    CharacterGroup g0(chi.conductor());
    return {chi.conductor(), g0.character(chi.primitive_index())};
}

DirichletCharacter induce(const DirichletCharacter& psi, u64 m) {
    if (m == 0) throw DomainError("induce: modulus must be positive");
    if (m % psi.conductor() != 0) throw DomainError("induce: conductor does not divide new modulus");
    auto [m0, prim] = conductor_and_primitive_part(psi);

    CharacterGroup g(m);
    // exponents read off at the component generators
    std::vector<u64> e(g.component_count());
    for (size_t c = 0; c < e.size(); ++c) {
        u64 gen = g.component_generator_residue(c);
        u64 a = static_cast<u64>(prim.angle(gen % m0));
        u64 in_l = static_cast<u64>(((u128)a * g.exponent()) / prim.angle_denominator());
        e[c] = in_l / (g.exponent() / g.component_order(c));
    }
    return g.character(g.index_of(e));
}

Complex gauss_polynomial_P(const DirichletCharacter& chi, Complex z) {
    CompensatedAccumulator acc;
    Complex zpow = {1.0, 0.0};
    u64 m = chi.modulus();
    for (u64 n = 0; n < m; ++n) {
        if (chi.angle(n) >= 0) acc.add(chi(n) * zpow);
        zpow *= z;
    }
    if (m == 1) return {1.0, 0.0}; // P(z) = chi(0) z^0 = 1 for the trivial modulus
    return acc.value();
}

Complex gauss_tau(const DirichletCharacter& psi) {
    if (!psi.is_primitive()) throw DomainError("gauss_tau: character is not primitive");
    u64 m0 = psi.modulus();
    CompensatedAccumulator acc;
    PhaseAngle unit = PhaseAngle::rational(1, m0);
    for (u64 n = 0; n < m0; ++n) {
        if (psi.angle(n) >= 0) acc.add(psi(n) * unit_phase(n, unit));
    }
    if (m0 == 1) return {1.0, 0.0};
    return acc.value();
}

bool gauss_hypothesis_holds(const DirichletCharacter& chi) {
    u64 quot = chi.modulus() / chi.conductor();
    return moebius(quot) != 0 && gcd_u64(quot, chi.conductor()) == 1;
}

Complex gauss_P_formula(const DirichletCharacter& chi, i64 a) {
    if (!gauss_hypothesis_holds(chi))
        throw PreconditionError("gauss_P_formula: m/m0 must be square-free and coprime to m0");
    u64 m = chi.modulus(), m0 = chi.conductor();
    u64 aa = static_cast<u64>(((a % static_cast<i64>(m)) + static_cast<i64>(m))) % m;
    u64 g = (aa == 0) ? m : gcd_u64(aa, m);
    u64 r = m / g;
    if (r % m0 != 0) return {0.0, 0.0};

    auto [c0, psi] = conductor_and_primitive_part(chi);
    u64 rq = r / m0;
    double ratio = static_cast<double>(totient(m) / totient(r));
    double mu = static_cast<double>(moebius(rq));
    Complex v = std::conj(psi(aa / g)) * psi(rq) * gauss_tau(psi);
    return v * ratio * mu;
}

} // namespace expsum
