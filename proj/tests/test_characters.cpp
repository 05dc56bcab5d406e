#include <cmath>
#include <numeric>

#include "doctest.h"
#include "expsum/characters.hpp"
#include "expsum/oracles.hpp"

using namespace expsum;

namespace {
double cdist(Complex a, Complex b) { return std::abs(a - b); }
} // namespace

TEST_CASE("enumeration counts and basics") {
    auto one = enumerate_characters(1);
    REQUIRE(one.size() == 1);
    for (u64 n = 0; n < 5; ++n) CHECK(one[0](n) == Complex{1.0, 0.0});

    CHECK(enumerate_characters(5).size() == 4);

    auto mod12 = enumerate_characters(12);
    REQUIRE(mod12.size() == 4);
    for (const auto& chi : mod12) CHECK(chi.is_real());

    CHECK(enumerate_characters(12)[0].is_principal());
    CHECK_THROWS_AS(enumerate_characters(0), DomainError);
    CHECK_THROWS_AS(enumerate_characters(2000000), ResourceError);
}

TEST_CASE("character type invariants") {
    for (u64 m : {5ull, 8ull, 9ull, 12ull, 15ull, 16ull, 24ull}) {
        CharacterGroup g(m);
        REQUIRE(g.size() == totient(m));
        for (u64 i = 0; i < g.size(); ++i) {
            DirichletCharacter chi = g.character(i);
            CHECK(m % chi.conductor() == 0);
            CHECK(totient(m) % chi.angle_denominator() == 0); // values are phi(m)-th roots
            for (u64 n = 0; n < m; ++n) {
                bool unit = std::gcd(n, m) == 1;
                CHECK((chi.angle(n) >= 0) == unit);
                if (unit)
                    CHECK(std::abs(std::abs(chi(n)) - 1.0) < 1e-12);
                else
                    CHECK(chi(n) == Complex{0.0, 0.0});
                // periodicity
                CHECK(chi(n + m) == chi(n));
            }
            // complete multiplicativity, exact via integer angles
            for (u64 a = 0; a < m; ++a)
                for (u64 b = 0; b < m; ++b) {
                    if (chi.angle(a) < 0 || chi.angle(b) < 0) {
                        CHECK(chi(a * b) == Complex{0.0, 0.0});
                    } else {
                        CHECK(cdist(chi((a * b) % m), chi(a) * chi(b)) < 1e-12);
                    }
                }
        }
    }
}

TEST_CASE("conductor and primitive part") {
    // principal mod 6 is induced from the trivial character
    CharacterGroup g6(6);
    auto [c6, psi6] = conductor_and_primitive_part(g6.character(0));
    CHECK(c6 == 1);
    CHECK(psi6.modulus() == 1);

    // the nontrivial character mod 4 is primitive: d in {1, 2} both fail
    CharacterGroup g4(4);
    DirichletCharacter chi4 = g4.character(1);
    CHECK(chi4.conductor() == 4);
    CHECK(chi4.angle(3) != 0); // chi(3) = -1 != chi(1), so no period 1 or 2 on units
    CHECK(conductor_and_primitive_part(chi4).second.index() == chi4.index());

    // quadratic mod 12 induced from mod 3
    CharacterGroup g12(12);
    bool found = false;
    for (u64 i = 0; i < 4; ++i) {
        DirichletCharacter chi = g12.character(i);
        if (chi.conductor() != 3) continue;
        found = true;
        auto [m0, psi] = conductor_and_primitive_part(chi);
        REQUIRE(psi.modulus() == 3);
        CHECK(cdist(psi(2), {-1.0, 0.0}) < 1e-12); // Legendre symbol mod 3
        // chi = psi * principal part, pointwise
        for (u64 n = 0; n < 12; ++n) {
            Complex want = std::gcd(n, u64(12)) == 1 ? psi(n % 3) : Complex{0.0, 0.0};
            CHECK(cdist(chi(n), want) < 1e-12);
        }
    }
    CHECK(found);
}

TEST_CASE("primitive part is idempotent") {
    for (u64 m : {8ull, 12ull, 15ull, 36ull, 40ull}) {
        CharacterGroup g(m);
        for (u64 i = 0; i < g.size(); ++i) {
            auto [m0, psi] = conductor_and_primitive_part(g.character(i));
            CHECK(psi.is_primitive());
            auto [m00, psi2] = conductor_and_primitive_part(psi);
            CHECK(m00 == m0);
            CHECK(psi2.index() == psi.index());
        }
    }
}

TEST_CASE("induce") {
    CharacterGroup g3(3);
    DirichletCharacter quad3 = g3.character(1);

    // induce(trivial, m) is the principal character mod m
    DirichletCharacter trivial = CharacterGroup(1).character(0);
    DirichletCharacter principal12 = induce(trivial, 12);
    CHECK(principal12.is_principal());

    // induce to own conductor is the identity
    DirichletCharacter same = induce(quad3, 3);
    CHECK(same.index() == quad3.index());

    // induce(mod-3 quadratic, 12) matches the direct table construction
    DirichletCharacter chi12 = induce(quad3, 12);
    for (u64 n = 0; n < 12; ++n) {
        Complex want = std::gcd(n, u64(12)) == 1 ? quad3(n % 3) : Complex{0.0, 0.0};
        CHECK(cdist(chi12(n), want) < 1e-12);
    }
    CHECK_THROWS_AS(induce(quad3, 8), DomainError); // 3 does not divide 8
}

TEST_CASE("character group closure under products") {
    for (u64 m : {5ull, 12ull, 16ull}) {
        CharacterGroup g(m);
        for (u64 i = 0; i < g.size(); ++i)
            for (u64 j = 0; j < g.size(); ++j) {
                DirichletCharacter prod = g.character(g.product_index(i, j));
                DirichletCharacter a = g.character(i), b = g.character(j);
                for (u64 n = 0; n < m; ++n) CHECK(cdist(prod(n), a(n) * b(n)) < 1e-12);
            }
    }
}

TEST_CASE("gauss polynomial P") {
    CharacterGroup g3(3);
    DirichletCharacter quad3 = g3.character(1);

    // orthogonality at z = 1 for non-principal characters
    CHECK(std::abs(gauss_polynomial_P(quad3, {1.0, 0.0})) < 1e-12);
    // P(0) = chi(0) = 0 for m > 1
    CHECK(gauss_polynomial_P(quad3, {0.0, 0.0}) == Complex{0.0, 0.0});
    // P(e(1/4)) = e(1/4) - e(1/2) = 1 + i
    Complex z = unit_phase(1, PhaseAngle::rational(1, 4));
    CHECK(cdist(gauss_polynomial_P(quad3, z), {1.0, 1.0}) < 1e-12);
    CHECK(cdist(oracles::naive_P(quad3, z), {1.0, 1.0}) < 1e-12);

    // principal chi mod 2 at z = 2: 0*z^0 + 1*z^1 = 2
    DirichletCharacter p2 = CharacterGroup(2).character(0);
    CHECK(cdist(oracles::naive_P(p2, {2.0, 0.0}), {2.0, 0.0}) < 1e-12);
    CHECK(cdist(gauss_polynomial_P(p2, {2.0, 0.0}), {2.0, 0.0}) < 1e-12);
}

TEST_CASE("gauss tau") {
    CHECK(gauss_tau(CharacterGroup(1).character(0)) == Complex{1.0, 0.0});

    // quadratic character mod 3: tau = e(1/3) - e(2/3) = i sqrt(3)
    DirichletCharacter quad3 = CharacterGroup(3).character(1);
    CHECK(cdist(gauss_tau(quad3), {0.0, std::sqrt(3.0)}) < 1e-9);

    // |tau| = sqrt(5) for the quadratic character mod 5
    CharacterGroup g5(5);
    for (u64 i = 1; i < 4; ++i) CHECK(std::abs(std::abs(gauss_tau(g5.character(i))) - std::sqrt(5.0)) < 1e-9);

    // non-primitive input is rejected
    DirichletCharacter principal6 = CharacterGroup(6).character(0);
    CHECK_THROWS_AS(gauss_tau(principal6), DomainError);
}

TEST_CASE("gauss closed form") {
    CharacterGroup g5(5);
    DirichletCharacter chi5 = g5.character(1);
    CHECK(std::abs(std::abs(gauss_P_formula(chi5, 2)) - std::sqrt(5.0)) < 1e-9);
    CHECK(cdist(gauss_P_formula(chi5, 2), oracles::naive_P(chi5, unit_phase(2, PhaseAngle::rational(1, 5)))) < 1e-9);

    // primitive mod 4 at a = 2: r = 2 and m0 = 4 does not divide it
    DirichletCharacter chi4 = CharacterGroup(4).character(1);
    CHECK(gauss_P_formula(chi4, 2) == Complex{0.0, 0.0});

    // a = m gives r = 1: orthogonality for non-principal chi
    CHECK(gauss_P_formula(chi5, 5) == Complex{0.0, 0.0});

    // hypothesis violation: principal character mod 4 has m/m0 = 4, not square-free
    DirichletCharacter principal4 = CharacterGroup(4).character(0);
    CHECK_FALSE(gauss_hypothesis_holds(principal4));
    CHECK_THROWS_AS(gauss_P_formula(principal4, 1), PreconditionError);
}

TEST_CASE("gauss formula accepts any integer a") {
    CharacterGroup g5(5);
    DirichletCharacter chi5 = g5.character(1);
    // a and a mod m give the same value; negative a reduces mod m
    Complex at2 = gauss_P_formula(chi5, 2);
    CHECK(std::abs(gauss_P_formula(chi5, -3) - at2) < 1e-12);
    CHECK(std::abs(gauss_P_formula(chi5, 7) - at2) < 1e-12);
    CHECK(std::abs(gauss_P_formula(chi5, -3) -
                   oracles::naive_P(chi5, unit_phase(2, PhaseAngle::rational(1, 5)))) < 1e-9);
}

TEST_CASE("induce from a non-primitive character uses its primitive part") {
    // principal mod 6 has conductor 1; inducing to 12 gives the principal mod 12
    DirichletCharacter principal6 = CharacterGroup(6).character(0);
    DirichletCharacter up = induce(principal6, 12);
    CHECK(up.modulus() == 12);
    CHECK(up.is_principal());

    // a conductor-3 character mod 6 induced to 12 equals the conductor-3 character mod 12
    CharacterGroup g6(6);
    for (u64 i = 0; i < g6.size(); ++i) {
        DirichletCharacter chi = g6.character(i);
        if (chi.conductor() != 3) continue;
        DirichletCharacter lifted = induce(chi, 12);
        CHECK(lifted.conductor() == 3);
        for (u64 n = 0; n < 12; ++n) {
            Complex want = std::gcd(n, u64(12)) == 1 ? chi(n % 6) : Complex{0.0, 0.0};
            CHECK(cdist(lifted(n), want) < 1e-12);
        }
    }
}

TEST_CASE("gauss formula sweep against naive_P up to modulus 30") {
    double worst = 0.0;
    for (u64 m = 1; m <= 30; ++m) {
        CharacterGroup g(m);
        for (u64 i = 0; i < g.size(); ++i) {
            DirichletCharacter chi = g.character(i);
            if (!gauss_hypothesis_holds(chi)) continue;
            for (u64 a = 1; a <= m; ++a) {
                Complex lhs = gauss_P_formula(chi, static_cast<i64>(a));
                Complex rhs = oracles::naive_P(chi, unit_phase(a, PhaseAngle::rational(1, m)));
                worst = std::max(worst, cdist(lhs, rhs));
            }
        }
    }
    CHECK(worst <= 1e-9);
}

TEST_CASE("labels") {
    DirichletCharacter chi = character_by_label("5.2");
    CHECK(chi.modulus() == 5);
    CHECK(chi.index() == 2);
    CHECK(chi.label() == "5.2");
    CHECK_THROWS_AS(character_by_label("5.9"), DomainError);
    CHECK_THROWS_AS(character_by_label("nope"), DomainError);
}
