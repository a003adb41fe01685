#include "doctest.h"
#include "support.hpp"
#include "sia/verifier.hpp"

using namespace sia;
using test::sym;
using GR = GaussianRational;

TEST_CASE("fundamental identity on the grid") {
    for (const auto& name : family_names())
        for (auto [p, q] : test::grid()) {
            CAPTURE(name);
            CAPTURE(p);
            CAPTURE(q);
            FamilySpec f = make_family(name, p, q);
            auto [Lp, Lm] = build_ladder(f);
            CHECK((f.to_phase(Lp * Lm) - f.to_phase(f.P)).is_zero());
            CHECK((Lp - f.X.pow(q) * f.Y.pow(p)).is_zero());
        }
}

TEST_CASE("ttw (1,1) fundamental identity in closed form") {
    FamilySpec f = make_family("ttw", 1, 1);
    const auto& A = f.abstract;
    PhaseExpr lam = sym(f, A, "lambda"), h = sym(f, A, "h"), al = sym(f, A, "alpha"), be = sym(f, A, "beta"),
              om = sym(f, A, "omega");
    auto [Lp, Lm] = build_ladder(f);
    PhaseExpr P = ((lam - al - be).pow(2) - al * be * GR(4)) * (h * h + om * om * lam * GR(4));
    CHECK((f.to_phase(Lp * Lm) - f.to_phase(P)).is_zero());
}

TEST_CASE("ttw L+ at lambda = Lambda = 0") {
    for (auto [p, q] : test::grid()) {
        CAPTURE(p);
        CAPTURE(q);
        FamilySpec f = make_family("ttw", p, q);
        auto [Lp, Lm] = build_ladder(f);
        Poly at = Lp.num().at(f.act.lambda, GR(0)).at(*f.act.root, GR(0));
        PhaseExpr lhs(f.abstract, at, Lp.den());
        GR phase = GR::i().pow(p + q) * GR(p % 2 ? -1 : 1);
        PhaseExpr rhs = (sym(f, f.abstract, "alpha") - sym(f, f.abstract, "beta")).pow(q) *
                        sym(f, f.abstract, "h", p) * phase;
        CHECK((lhs - rhs).is_zero());
    }
}

TEST_CASE("parity branches") {
    FamilySpec odd = make_family("ttw", 1, 2);
    CHECK(odd.parity == Parity::Odd);
    LadderSet a = build_ladder_set(odd);
    CHECK(a.parity == Parity::Odd);
    CHECK(!a.L3.num().mentions(*odd.act.root));
    CHECK(!a.L4.num().mentions(*odd.act.root));
    CHECK_THROWS_AS(build_ladder_set(odd, Parity::Even), ParityError);

    FamilySpec even = make_family("ttw", 1, 1);
    CHECK(even.parity == Parity::Even);
    CHECK(build_ladder_set(even).parity == Parity::Even);
    CHECK_THROWS_AS(build_ladder_set(even, Parity::Odd), ParityError);

    FamilySpec g = make_family("sphere-generic", 2, 1);
    CHECK_THROWS_AS(build_ladder_set(g, Parity::Even), ParityError);

    FamilySpec o = make_family("oscillator", 2, 1);
    LadderSet l = build_ladder_set(o);
    CHECK((l.L3 - (l.Lplus + l.Lminus)).is_zero());
    CHECK((l.L4 - (l.Lplus - l.Lminus)).is_zero());
}

TEST_CASE("L5 for ttw") {
    FamilySpec f = make_family("ttw", 1, 1);
    LadderSet ls = build_ladder_set(f);
    REQUIRE(ls.L5);
    REQUIRE(ls.c0);
    PhaseExpr c0 = (sym(f, f.abstract, "alpha") - sym(f, f.abstract, "beta")) * sym(f, f.abstract, "h") * GR(2);
    CHECK((*ls.c0 - c0).is_zero());
    CHECK((*ls.L5 * sym(f, f.abstract, "lambda") + c0 - ls.L3).is_zero());
    Degrees d = momentum_degrees(f, ls);
    CHECK(d.L3 == 4);
    CHECK(d.L4 == 3);
    CHECK(*d.L5 == 2);
    CHECK(poisson_bracket(substitute_action(f, *ls.L5), f.H).is_zero());

    // (1,2): parity odd, sign (-1)^((p - q + 1) / 2) = +1.
    FamilySpec g = make_family("ttw", 1, 2);
    LadderSet gs = build_ladder_set(g);
    PhaseExpr expect = (sym(g, g.abstract, "alpha") - sym(g, g.abstract, "beta")).pow(2) * sym(g, g.abstract, "h") * GR(2);
    CHECK((*gs.c0 - expect).is_zero());
    CHECK((ttw_constant_term(g) - expect).is_zero());
}

TEST_CASE("L5 for sphere-generic is conserved") {
    FamilySpec f = make_family("sphere-generic", 1, 1);
    LadderSet ls = build_ladder_set(f);
    REQUIRE(ls.L5);
    CHECK(poisson_bracket(substitute_action(f, *ls.L5), f.H).is_zero());
}

TEST_CASE("L5 refused or failing elsewhere") {
    FamilySpec c = make_family("coulomb", 1, 1);
    LadderSet ls = build_ladder_set(c);
    CHECK(!ls.L5);
    CHECK_THROWS_AS(build_l5(c, ls.L3), Error);
    CHECK_THROWS_AS(build_l5(c, ls.L3, true), DivisibilityError);
    FamilySpec s = make_family("sphere", 1, 2);
    CHECK_THROWS_AS(build_l5(s, build_ladder_set(s).L3, true), DivisibilityError);
}

TEST_CASE("momentum degrees") {
    FamilySpec f = make_family("ttw", 3, 2);
    Degrees d = momentum_degrees(f, build_ladder_set(f));
    CHECK(d.L3 == 10);
    CHECK(d.L4 == 9);
    CHECK(*d.L5 == 8);
    FamilySpec o = make_family("oscillator", 2, 3);
    Degrees e = momentum_degrees(o, build_ladder_set(o));
    CHECK(e.L3 == 10);
    CHECK(!e.L5);
}

TEST_CASE("substitute_action rejects a leftover root") {
    FamilySpec f = make_family("ttw", 1, 1);
    CHECK_THROWS_AS(substitute_action(f, sym(f, f.abstract, "Lambda")), Error);
    PhaseExpr lam = sym(f, f.abstract, "lambda");
    CHECK((substitute_action(f, lam * lam) - f.L2 * f.L2).is_zero());
}
