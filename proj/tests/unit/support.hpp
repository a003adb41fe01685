#pragma once

#include "sia/families.hpp"
#include "sia/ladder.hpp"

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace test {

inline sia::PhaseExpr sym(const sia::FamilySpec& f, const sia::ChartPtr& c, const char* name, int e = 1) {
    return sia::PhaseExpr::symbol(c, f.sym(name), e);
}

inline const sia::IdentitySpec& find(const std::vector<sia::IdentitySpec>& suite, const std::string& name) {
    for (const auto& id : suite)
        if (id.name == name) return id;
    throw std::runtime_error("no identity " + name);
}

inline const std::vector<std::pair<int, int>>& grid() {
    static const std::vector<std::pair<int, int>> g{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {3, 2}, {2, 3}};
    return g;
}

/// Small random element of the ttw phase chart: a few terms in
/// E^{+-1}, c, s^{+-1}, p_R, p_theta with small rational coefficients.
inline sia::PhaseExpr random_ttw_element(const sia::FamilySpec& f, std::mt19937_64& rng, int terms = 3) {
    std::uniform_int_distribution<int> coef(-5, 5), den(1, 4), em(-1, 1), e2(0, 2), e1(0, 1);
    sia::PhaseExpr out = sia::PhaseExpr::constant(f.phase, sia::GaussianRational(0));
    for (int i = 0; i < terms; ++i) {
        int n = coef(rng);
        if (n == 0) n = 1;
        sia::PhaseExpr t = sia::PhaseExpr::constant(f.phase, sia::GaussianRational::frac(n, den(rng)));
        t *= sym(f, f.phase, "E", em(rng));
        t *= sym(f, f.phase, "c", e1(rng));
        t *= sym(f, f.phase, "s", em(rng));
        t *= sym(f, f.phase, "p_R", e2(rng));
        t *= sym(f, f.phase, "p_theta", e2(rng));
        out += t;
    }
    return out;
}

}  // namespace test
