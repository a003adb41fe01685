#include "doctest.h"
#include "sia/families.hpp"
#include "sia/ladder.hpp"
#include "support.hpp"

using namespace sia;

TEST_CASE("families construct on the grid") {
    for (const auto& name : family_names())
        for (auto [p, q] : {std::pair{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {3, 2}, {2, 3}}) {
            CAPTURE(name);
            CAPTURE(p);
            CAPTURE(q);
            FamilySpec f = make_family(name, p, q);
            CHECK(f.p == p);
            LadderSet ls = build_ladder_set(f);
            CHECK(!ls.L4.is_zero());
        }
}

TEST_CASE("family errors") {
    CHECK_THROWS_AS(make_family("kepler", 1, 1), UnknownFamilyError);
    CHECK_THROWS_AS(make_family("ttw", 2, 4), NonCoprimeError);
    CHECK_THROWS_AS(make_family("ttw", 0, 1), NonCoprimeError);
}

namespace {
using test::sym;
using GR = GaussianRational;
const GR I = GR::i();
}  // namespace

TEST_CASE("ttw (1,1) ladder factors") {
    FamilySpec f = make_family("ttw", 1, 1);
    const auto& A = f.abstract;
    PhaseExpr La = sym(f, A, "Lambda"), lam = sym(f, A, "lambda"), h = sym(f, A, "h");
    PhaseExpr al = sym(f, A, "alpha"), be = sym(f, A, "beta"), om = sym(f, A, "omega");
    PhaseExpr X = La * sym(f, A, "s") * sym(f, A, "p_theta") + I * (al - be - lam * sym(f, A, "c"));
    PhaseExpr Y = La * sym(f, A, "E", -1) * sym(f, A, "p_R") * GR(2) + I * (lam * sym(f, A, "E", -1) * GR(2) - h);
    CHECK((f.X - X).is_zero());
    CHECK((f.Y - Y).is_zero());
    CHECK((f.U2 - ((lam - al - be).pow(2) - al * be * GR(4))).is_zero());
    CHECK((f.S2 - (h * h + om * om * lam * GR(4))).is_zero());
}

TEST_CASE("coulomb (2,1) ladder factors") {
    FamilySpec f = make_family("coulomb", 2, 1);
    const auto& A = f.abstract;
    PhaseExpr La = sym(f, A, "Lambda"), h = sym(f, A, "h"), de = sym(f, A, "delta");
    PhaseExpr Y = (sym(f, A, "p_R") + I * La) * sym(f, A, "rho", -1);
    CHECK((f.Y - Y).is_zero());
    // X carries the opposite root orientation to the printed one.
    PhaseExpr X = I * (sym(f, A, "p_theta") - La) * sym(f, A, "w", -1);
    CHECK((f.X - X).is_zero());
    GR k = GR(f.k);
    CHECK((f.U2 - de * de * (k * k)).is_zero());
    CHECK((f.S2 - h).is_zero());
    CHECK((f.P - (de * k).pow(2) * h.pow(2)).is_zero());
}

TEST_CASE("oscillator (2,1) ladder factors") {
    FamilySpec f = make_family("oscillator", 2, 1);
    const auto& A = f.abstract;
    PhaseExpr x = sym(f, A, "x"), y = sym(f, A, "y"), om = sym(f, A, "omega");
    PhaseExpr w1 = om * GR(2), w2 = om;
    PhaseExpr X = x * x * w1 * w1 * GR(2) + sym(f, A, "lambda1") + w1 * x * sym(f, A, "p_x") * GR(2);
    PhaseExpr Y = y * y * w2 * w2 * GR(2) + sym(f, A, "lambda2") - w2 * y * sym(f, A, "p_y") * GR(2);
    CHECK((f.X - X).is_zero());
    CHECK((f.Y - Y).is_zero());
}

TEST_CASE("sphere (1,2) and sphere-generic (3,2) P") {
    FamilySpec s = make_family("sphere", 1, 2);
    const auto& A = s.abstract;
    PhaseExpr lam = sym(s, A, "lambda"), h = sym(s, A, "h"), al = sym(s, A, "alpha");
    CHECK((s.P - (lam - al).pow(2) * (h - lam)).is_zero());
    CHECK((s.X - (sym(s, A, "cphi") * sym(s, A, "p_phi") + I * sym(s, A, "Lambda") * sym(s, A, "sphi"))).is_zero());

    FamilySpec g = make_family("sphere-generic", 3, 2);
    const auto& B = g.abstract;
    PhaseExpr l = sym(g, B, "lambda"), hh = sym(g, B, "h"), a = sym(g, B, "alpha"), b = sym(g, B, "beta"),
              c = sym(g, B, "gamma");
    PhaseExpr P = ((l - a - b).pow(2) - a * b * GR(4)).pow(2) * ((hh - l - c).pow(2) - c * l * GR(4)).pow(3);
    CHECK((g.P - P).is_zero());
}

TEST_CASE("factor norms match U^2 and S^2 on shell") {
    for (const auto& name : family_names())
        for (auto [p, q] : test::grid()) {
            CAPTURE(name);
            CAPTURE(p);
            CAPTURE(q);
            FamilySpec f = make_family(name, p, q);
            CHECK((f.to_phase(f.X * f.Xbar) - f.to_phase(f.U2)).is_zero());
            CHECK((f.to_phase(f.Y * f.Ybar) - f.to_phase(f.S2)).is_zero());
            CHECK(poisson_bracket(f.L2, f.H).is_zero());
        }
}

TEST_CASE("suites carry the listed coefficients") {
    FamilySpec t = make_family("ttw", 2, 1);
    CHECK(to_latex(test::find(structure_suite(t), "L2_R")) ==
          "\\{\\mathcal{L}_2, \\mathcal{R}\\} = -64 \\mathcal{L}_2 \\mathcal{L}_4");
    CHECK(to_latex(test::find(structure_suite(t), "R_squared")) ==
          "\\mathcal{R}^{2} = -64 \\mathcal{L}_2 \\mathcal{L}_4^{2} + 256 P");
    FamilySpec c = make_family("coulomb", 1, 1);
    CHECK(test::find(structure_suite(c), "Lplus_Lminus").rhs.value().is_zero());
    CHECK(to_latex(test::find(structure_suite(c), "L4_R")) == "\\{\\mathcal{L}_4, \\mathcal{R}\\} = 4 \\mathcal{L}_4^{2}");
    FamilySpec o = make_family("oscillator", 1, 1);
    auto osc = structure_suite(o);
    CHECK_NOTHROW(test::find(osc, "L3_squared"));
    CHECK(test::find(osc, "L3_squared").lhs.uses(Quantity::L4));
    for (const auto& name : family_names()) CHECK_NOTHROW(test::find(structure_suite(make_family(name, 1, 1)), "fundamental"));
}
