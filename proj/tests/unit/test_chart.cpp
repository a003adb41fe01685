#include "doctest.h"
#include "support.hpp"
#include "sia/oracle.hpp"

using namespace sia;
using test::sym;
using GR = GaussianRational;

TEST_CASE("chain rule on generators") {
    FamilySpec f = make_family("ttw", 1, 2);
    const auto& ph = f.phase;
    CHECK((differentiate_by(sym(f, ph, "E"), f.sym("R")) - sym(f, ph, "E") * GR(2)).is_zero());
    // c = cos 2k theta, k = p / q exact.
    GR two_k = GR(f.k * 2);
    CHECK(f.k == Rational(1, 2));
    CHECK((differentiate_by(sym(f, ph, "c"), f.sym("theta")) + sym(f, ph, "s") * two_k).is_zero());
    CHECK((differentiate_by(sym(f, ph, "s"), f.sym("theta")) - sym(f, ph, "c") * two_k).is_zero());
    CHECK((differentiate_by(sym(f, ph, "p_theta", 2), f.sym("p_theta")) - sym(f, ph, "p_theta") * GR(2)).is_zero());

    FamilySpec sp = make_family("sphere", 1, 1);
    PhaseExpr t = sym(sp, sp.phase, "t");
    PhaseExpr one = PhaseExpr::constant(sp.phase, GR(1));
    CHECK((differentiate_by(t, sp.sym("theta")) + one + t * t).is_zero());
}

TEST_CASE("generator relations normalize away") {
    FamilySpec f = make_family("ttw", 1, 1);
    const auto& ph = f.phase;
    PhaseExpr one = PhaseExpr::constant(ph, GR(1));
    CHECK((sym(f, ph, "s", 2) + sym(f, ph, "c", 2) - one).is_zero());
    CHECK((sym(f, ph, "s") * sym(f, ph, "s", -1) - one).is_zero());
    // 1/(1 + c) is carried as (1 - c)/s^2.
    PhaseExpr inv = (one - sym(f, ph, "c")) * sym(f, ph, "s", -2);
    CHECK(((one + sym(f, ph, "c")) * inv - one).is_zero());
    CHECK(!sym(f, ph, "p_theta").is_zero());

    FamilySpec g = make_family("sphere-generic", 1, 1);
    PhaseExpr gone = PhaseExpr::constant(g.phase, GR(1));
    CHECK((sym(g, g.phase, "C", 2) - sym(g, g.phase, "Sh", 2) - gone).is_zero());
}

TEST_CASE("canonical brackets") {
    for (const auto& name : family_names()) {
        CAPTURE(name);
        FamilySpec f = make_family(name, 1, 1);
        const auto& ph = f.phase;
        for (int j = 0; j < 2; ++j) {
            PhaseExpr x = PhaseExpr::symbol(ph, ph->coordinate(j)), p = PhaseExpr::symbol(ph, ph->momentum(j));
            CHECK((poisson_bracket(x, p) - PhaseExpr::constant(ph, GR(1))).is_zero());
            CHECK(poisson_bracket(x, x).is_zero());
        }
        CHECK(poisson_bracket(f.H, f.H).is_zero());
        CHECK(poisson_bracket(f.L2, f.H).is_zero());
        CHECK(momentum_degree(f.H) == 2);
    }
}

TEST_CASE("bracket is antisymmetric, Leibniz and Jacobi") {
    FamilySpec f = make_family("ttw", 1, 2);
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 12; ++trial) {
        PhaseExpr a = test::random_ttw_element(f, rng), b = test::random_ttw_element(f, rng),
                  c = test::random_ttw_element(f, rng);
        CHECK((poisson_bracket(a, b) + poisson_bracket(b, a)).is_zero());
        CHECK((poisson_bracket(a, b * c) - poisson_bracket(a, b) * c - b * poisson_bracket(a, c)).is_zero());
        PhaseExpr jac = poisson_bracket(a, poisson_bracket(b, c)) + poisson_bracket(b, poisson_bracket(c, a)) +
                        poisson_bracket(c, poisson_bracket(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("normalization is idempotent") {
    FamilySpec f = make_family("ttw", 2, 1);
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        PhaseExpr a = test::random_ttw_element(f, rng, 5);
        PhaseExpr again(a.chart(), a.num(), a.den());
        CHECK(again.num() == a.num());
        CHECK((a * a - a.pow(2)).is_zero());
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    FamilySpec f = make_family("ttw", 1, 1);
    PhaseExpr lam = sym(f, f.abstract, "lambda"), one = PhaseExpr::constant(f.abstract, GR(1));
    PhaseExpr img = f.to_phase(lam * lam + one);
    CHECK((img - f.L2 * f.L2 - PhaseExpr::constant(f.phase, GR(1))).is_zero());
    CHECK((f.to_phase(one) - PhaseExpr::constant(f.phase, GR(1))).is_zero());
    // lambda^2 goes to (p_theta^2 + V)^2.
    PhaseExpr pth2 = sym(f, f.phase, "p_theta", 2);
    CHECK((f.to_phase(lam.pow(2)) - (pth2 + f.separation_potential).pow(2)).is_zero());
    // h^p goes to H^p.
    FamilySpec g = make_family("ttw", 3, 1);
    CHECK((g.to_phase(sym(g, g.abstract, "h", 3)) - g.H.pow(3)).is_zero());
    // A Lambda-even element is well defined after Lambda^2 -> lambda.
    PhaseExpr La = sym(f, f.abstract, "Lambda");
    CHECK((f.to_phase(La * La) - f.L2).is_zero());
}

TEST_CASE("chart shapes") {
    FamilySpec t = make_family("ttw", 1, 1);
    CHECK(t.phase->is_laurent(t.sym("E")));
    CHECK(t.phase->relations().rule_for(t.sym("c")) != nullptr);
    FamilySpec o = make_family("oscillator", 1, 1);
    CHECK(o.phase->is_laurent(o.sym("x")));
    CHECK(o.phase->is_laurent(o.sym("y")));
    CHECK(o.phase->relations().empty());
    FamilySpec s = make_family("sphere", 1, 1);
    CHECK(s.phase->relations().rule_for(s.sym("sphi")) != nullptr);
    CHECK(s.phase->is_laurent(s.sym("cphi")));
}

TEST_CASE("randomized zero test") {
    FamilySpec f = make_family("ttw", 1, 1);
    const auto& ph = f.phase;
    PhaseExpr one = PhaseExpr::constant(ph, GR(1));
    // Build s^2 + c^2 - 1 without letting the rules see it as one element.
    Poly raw = Poly::symbol(f.sym("s"), 2) + Poly::symbol(f.sym("c"), 2) - Poly(1);
    CHECK(pit_is_zero(f, PhaseExpr(ph, raw), 10, 1));
    CHECK(!pit_is_zero(f, sym(f, ph, "p_theta"), 10, 1));
    CHECK(pit_is_zero(f, poisson_bracket(f.L2, f.H), 10, 2));
    CHECK(!pit_is_zero(f, f.H, 10, 3));
}
