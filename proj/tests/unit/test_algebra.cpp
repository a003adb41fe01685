#include "doctest.h"
#include "sia/chart.hpp"
#include "sia/gaussian_rational.hpp"
#include "sia/poly.hpp"
#include "sia/rewrite.hpp"

#include <random>

using namespace sia;
using GR = GaussianRational;

TEST_CASE("gaussian rational arithmetic") {
    GR a(Rational(1, 2), Rational(3));
    GR b = GR::i();
    CHECK(b * b == GR(-1));
    CHECK((a * a.inverse()).is_one());
    CHECK(a.conj().im() == -3);
    CHECK(GR::frac(6, 4).to_string() == "3/2");
    CHECK((a - a).is_zero());
    CHECK(b.pow(3) == -b);
}

TEST_CASE("poly canonical form") {
    Poly x = Poly::symbol(0), y = Poly::symbol(1);
    Poly s = (x + y) * (x - y);
    CHECK(s == x * x - y * y);
    CHECK((x + y).pow(3).size() == 4);
    CHECK((x - x).is_zero());
    CHECK(s.formal_derivative(0) == x * GR(2));
    CHECK(s.at(1, GR(2)) == x * x - GR(4));
}

TEST_CASE("rewrite rule s^2 -> 1 - c^2") {
    RewriteSystem rs;
    Poly c = Poly::symbol(0), s = Poly::symbol(1);
    rs.add({1, 2, Poly(1) - c * c, {}});
    CHECK(rs.normalize(s * s + c * c) == Poly(1));
    CHECK(rs.normalize(s.pow(3)) == s - s * c * c);
}

TEST_CASE("rewrite examples") {
    SUBCASE("s^2 c -> c - c^3") {
        RewriteSystem rs;
        Poly c = Poly::symbol(0), s = Poly::symbol(1);
        rs.add({1, 2, Poly(1) - c * c, {}});
        CHECK(rs.normalize(s * s * c) == c - c.pow(3));
    }
    SUBCASE("Lambda^3 -> lambda Lambda") {
        RewriteSystem rs;
        Poly lam = Poly::symbol(2), La = Poly::symbol(3);
        rs.add({3, 2, lam, {}});
        CHECK(rs.normalize(La.pow(3)) == lam * La);
        CHECK(rs.normalize(La.pow(4) + La) == lam * lam + La);
    }
    SUBCASE("reduced input is left alone") {
        RewriteSystem rs;
        Poly c = Poly::symbol(0), s = Poly::symbol(1);
        rs.add({1, 2, Poly(1) - c * c, {}});
        Poly r = c.pow(5) * s - c * GR::frac(3, 7) + GR::i();
        CHECK(rs.normalize(r) == r);
        CHECK(rs.normalize(rs.normalize(s.pow(7) * c)) == rs.normalize(s.pow(7) * c));
    }
}

namespace {

Poly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n(-9, 9), d(1, 5), e(-2, 3), nterms(0, 4);
    Poly p;
    for (int t = nterms(rng); t > 0; --t) {
        Monomial m;
        for (SymbolId s = 0; s < 3; ++s) m.set(s, e(rng));
        p += Poly::monomial(m, GR(Rational(n(rng), d(rng)), Rational(n(rng), d(rng))));
    }
    return p;
}

}  // namespace

TEST_CASE("ring axioms on random Laurent polynomials") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        Poly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a * Poly(1) == a);
        CHECK((a * Poly()).is_zero());
        CHECK(a.pow(2) == a * a);
    }
}

TEST_CASE("formal derivative obeys Leibniz") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        Poly a = random_poly(rng), b = random_poly(rng);
        for (SymbolId s = 0; s < 3; ++s)
            CHECK((a * b).formal_derivative(s) == a.formal_derivative(s) * b + a * b.formal_derivative(s));
    }
}

TEST_CASE("gaussian rational field laws") {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> n(-50, 50), d(1, 30);
    auto draw = [&] { return GR(Rational(n(rng), d(rng)), Rational(n(rng), d(rng))); };
    for (int trial = 0; trial < 200; ++trial) {
        GR a = draw(), b = draw();
        CHECK((a * b).conj() == a.conj() * b.conj());
        if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
        CHECK(a * (b + GR(1)) == a * b + a);
    }
}
