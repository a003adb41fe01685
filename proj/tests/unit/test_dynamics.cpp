#include "doctest.h"
#include "support.hpp"
#include "sia/dynamics.hpp"

#include <sstream>

using namespace sia;

namespace {

NumericParams params(const FamilySpec& f, std::map<std::string, Complex> v) {
    NumericParams out;
    for (SymbolId s : f.parameters) out[s] = v.at((*f.table)[s].name);
    return out;
}

double max_drift(const DriftReport& r) {
    double m = 0;
    for (const auto& d : r.drift) m = std::max(m, d.max_rel);
    return m;
}

}  // namespace

TEST_CASE("oscillator vector field at a simple state") {
    FamilySpec f = make_family("oscillator", 1, 1);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, params(f, {{"alpha", 0}, {"beta", 0}, {"omega", 1}}));
    NumericState s;
    s.z = {1, 0, 0, 1};
    auto d = m.hamilton_rhs(s);
    CHECK(std::abs(d[0]) == doctest::Approx(0.0));
    CHECK(std::abs(d[1] - Complex(2)) < 1e-15);  // y' = 2 p_y
}

TEST_CASE("ttw p_theta' matches a central difference of H") {
    FamilySpec f = make_family("ttw", 1, 2);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, random_params(f, 3));
    NumericState s = random_initial_state(m, 4);
    const Real hstep = 1e-6;
    NumericState a = s, b = s;
    a.z[1] += hstep;
    b.z[1] -= hstep;
    Complex fd = -(m.constants(a)[0] - m.constants(b)[0]) / (2 * hstep);
    Complex rhs = m.hamilton_rhs(s)[3];
    CHECK(double(std::abs(fd - rhs) / std::abs(rhs)) < 1e-6);
}

TEST_CASE("zero horizon returns the initial state") {
    FamilySpec f = make_family("coulomb", 1, 1);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, random_params(f, 1));
    NumericState s0 = random_initial_state(m, 2);
    IntegrateOptions o;
    o.T = 0;
    Trajectory tr = integrate(m, s0, o);
    REQUIRE(tr.states.size() == 1);
    CHECK(tr.states[0].z == s0.z);
    CHECK(tr.truncated.empty());
}

TEST_CASE("dense output and initial values") {
    FamilySpec f = make_family("ttw", 1, 1);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, random_params(f, 5));
    NumericState s0 = random_initial_state(m, 6);
    Trajectory tr = integrate(m, s0, {});
    CHECK(tr.states.size() == 201);
    CHECK(tr.states.back().t == doctest::Approx(10.0));
    DriftReport r = conservation_drift(m, tr, 1e-12);
    auto c0 = m.constants(s0);
    for (std::size_t i = 0; i < c0.size(); ++i) CHECK(r.drift[i].initial == c0[i]);
    for (const auto& d : r.drift) {
        CAPTURE(d.constant);
        CHECK(d.max_rel >= 0);
        CHECK(d.max_rel <= 1e-8);
        CHECK(d.span == doctest::Approx(10.0));
    }
    for (const auto& [name, v] : r.relations) {
        CAPTURE(name);
        CHECK(v <= 1e-8);
    }
    CHECK(r.real);

    std::ostringstream os;
    write_csv(os, m, tr);
    std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 202);  // header plus one row per sample
    CHECK(text.rfind("t,R_re,R_im,", 0) == 0);
}

TEST_CASE("oscillator with real parameters keeps H") {
    FamilySpec f = make_family("oscillator", 2, 1);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, params(f, {{"alpha", 0.7}, {"beta", 1.3}, {"omega", 0.15}}));
    NumericState s0;
    s0.z = {0.6, -0.8, 0.3, 0.2};
    Trajectory tr = integrate(m, s0, {});
    REQUIRE(tr.truncated.empty());
    DriftReport r = conservation_drift(m, tr, 1e-12);
    CHECK(r.drift[0].constant == "H");
    CHECK(r.drift[0].max_rel <= 1e-10);
}

TEST_CASE("halving the tolerance does not raise drift") {
    FamilySpec f = make_family("sphere", 1, 2);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, random_params(f, 9));
    NumericState s0 = random_initial_state(m, 10);
    double prev = 1;
    for (double tol : {1e-6, 5e-7, 2.5e-7, 1.25e-7}) {
        IntegrateOptions o;
        o.tol = tol;
        double d = max_drift(conservation_drift(m, integrate(m, s0, o), tol));
        CAPTURE(tol);
        CHECK(d <= prev);
        prev = d;
    }
}

TEST_CASE("every family conserves its constants") {
    for (const auto& name : family_names()) {
        CAPTURE(name);
        FamilySpec f = make_family(name, 1, 2);
        LadderSet ls = build_ladder_set(f);
        NumericModel m(f, ls, random_params(f, 17));
        for (int i = 0; i < 2; ++i) {
            Trajectory tr = integrate(m, random_initial_state(m, 18 + i), {});
            CHECK(tr.truncated.empty());
            DriftReport r = conservation_drift(m, tr, 1e-12);
            CHECK(max_drift(r) <= 1e-8);
        }
    }
}

TEST_CASE("a pole stops the run") {
    FamilySpec f = make_family("oscillator", 1, 1);
    LadderSet ls = build_ladder_set(f);
    NumericModel m(f, ls, params(f, {{"alpha", 1}, {"beta", 1}, {"omega", Complex(0, 0.1)}}));
    NumericState s;
    s.z = {0, 1, 0, 0};
    CHECK_THROWS_AS(m.hamilton_rhs(s), SingularityError);
}
