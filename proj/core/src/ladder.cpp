#include "sia/ladder.hpp"

namespace sia {

namespace {
using GR = GaussianRational;
}

std::pair<PhaseExpr, PhaseExpr> build_ladder(const FamilySpec& f) {
    PhaseExpr lp = f.X.pow(f.q) * f.Y.pow(f.p);
    PhaseExpr lm = f.Xbar.pow(f.q) * f.Ybar.pow(f.p);
    return {lp, lm};
}

std::pair<PhaseExpr, PhaseExpr> root_grading(const FamilySpec& f, const PhaseExpr& e) {
    if (!f.act.root) return {e, PhaseExpr::constant(e.chart(), 0)};
    if (!e.den().is_one()) throw Error("root_grading: expects a polynomial");
    std::vector<Term> even, odd;
    for (const auto& t : e.num().terms()) {
        int r = t.mono[*f.act.root];
        if (r == 0)
            even.push_back(t);
        else if (r == 1)
            odd.push_back(t);
        else
            throw Error("root_grading: input not normalized");
    }
    return {PhaseExpr(e.chart(), Poly::from_terms(std::move(even))),
            PhaseExpr(e.chart(), Poly::from_terms(std::move(odd)))};
}

namespace {

PhaseExpr strip_root(const FamilySpec& f, const PhaseExpr& odd) {
    std::vector<Term> terms;
    for (const auto& t : odd.num().terms()) {
        Term u = t;
        u.mono.set(*f.act.root, t.mono[*f.act.root] - 1);
        terms.push_back(std::move(u));
    }
    return PhaseExpr(odd.chart(), Poly::from_terms(std::move(terms)));
}

/// e / sqrt(L2); e must be odd in the root.
PhaseExpr divide_by_root(const FamilySpec& f, const PhaseExpr& e, const char* what) {
    auto [even, odd] = root_grading(f, e);
    if (!even.is_zero()) throw ParityError(std::string(what) + " has an even part in sqrt(L2)");
    return strip_root(f, odd);
}

PhaseExpr require_even(const FamilySpec& f, const PhaseExpr& e, const char* what) {
    auto [even, odd] = root_grading(f, e);
    if (!odd.is_zero()) throw ParityError(std::string(what) + " has an odd part in sqrt(L2)");
    return even;
}

}  // namespace

std::pair<PhaseExpr, PhaseExpr> split_parity(const FamilySpec& f, const PhaseExpr& lp, const PhaseExpr& lm,
                                             std::optional<Parity> branch) {
    Parity par = branch.value_or(f.parity);
    const GR minus_i = -GR::i();
    switch (f.kind) {
        case FamilyKind::Ttw:
        case FamilyKind::SphereGeneric: {
            if (par == Parity::Uniform) throw ParityError("this family needs an odd or even branch");
            if (par == Parity::Odd) {
                PhaseExpr l4 = divide_by_root(f, lp + lm, "L+ + L-");
                PhaseExpr l3 = require_even(f, (lp - lm) * minus_i, "(L+ - L-)/i");
                return {l3, l4};
            }
            PhaseExpr l4 = divide_by_root(f, (lm - lp) * minus_i, "(L- - L+)/i");
            PhaseExpr l3 = require_even(f, lp + lm, "L+ + L-");
            return {l3, l4};
        }
        case FamilyKind::Coulomb:
        case FamilyKind::Sphere: {
            PhaseExpr l4 = divide_by_root(f, lp - lm, "L+ - L-");
            PhaseExpr l3 = require_even(f, lp + lm, "L+ + L-");
            return {l3, l4};
        }
        case FamilyKind::Oscillator:
            return {lp + lm, lp - lm};
    }
    throw Error("split_parity: unknown family");
}

PhaseExpr ttw_constant_term(const FamilySpec& f) {
    int m = (f.p + f.q) % 2 ? (f.p - f.q + 1) / 2 : (f.q - f.p) / 2;
    long sign = (m % 2 == 0) ? 2 : -2;
    SymbolId al = f.sym("alpha"), be = f.sym("beta");
    Poly base = Poly::symbol(al) - Poly::symbol(be);
    Poly c0 = base.pow(f.q) * Poly::symbol(*f.act.h, f.p) * GR(sign);
    return PhaseExpr(f.abstract, c0);
}

L5Result build_l5(const FamilySpec& f, const PhaseExpr& L3, bool attempt_any) {
    bool native = f.kind == FamilyKind::Ttw || f.kind == FamilyKind::SphereGeneric;
    if (!native && !attempt_any) throw Error("L5 is only constructed for ttw and sphere-generic");
    if (!f.act.h) throw DivisibilityError("L5 needs an energy symbol");
    SymbolId la = f.act.lambda;
    auto parts = L3.num().split_by(la);
    Poly constant = parts.count(0) ? parts.at(0) : Poly();

    PhaseExpr c0;
    if (f.kind == FamilyKind::Ttw) {
        c0 = ttw_constant_term(f);
        if (!(c0.num() == constant))
            throw DivisibilityError("the lambda^0 part of L3 differs from the closed-form constant term");
    } else {
        for (const auto& t : constant.terms())
            for (SymbolId s = 0; s < kMaxSymbols; ++s) {
                if (t.mono[s] == 0 || s == *f.act.h) continue;
                if ((*f.table)[s].kind != SymbolKind::Parameter)
                    throw DivisibilityError("the constant term of L3 depends on " + (*f.table)[s].name +
                                            ", not on H alone");
            }
        c0 = PhaseExpr(f.abstract, constant);
    }
    PhaseExpr rest = L3 - c0;
    std::vector<Term> shifted;
    for (const auto& t : rest.num().terms()) {
        int e = t.mono[la];
        if (e <= 0) throw DivisibilityError("L3 - c0 is not divisible by L2");
        Term u = t;
        u.mono.set(la, e - 1);
        shifted.push_back(std::move(u));
    }
    return {PhaseExpr(f.abstract, Poly::from_terms(std::move(shifted))), c0};
}

LadderSet build_ladder_set(const FamilySpec& f, std::optional<Parity> branch) {
    LadderSet ls;
    std::tie(ls.Lplus, ls.Lminus) = build_ladder(f);
    std::tie(ls.L3, ls.L4) = split_parity(f, ls.Lplus, ls.Lminus, branch);
    ls.parity = branch.value_or(f.parity);
    if (f.kind == FamilyKind::Ttw || f.kind == FamilyKind::SphereGeneric) {
        L5Result r = build_l5(f, ls.L3);
        ls.L5 = r.L5;
        ls.c0 = r.c0;
    }
    return ls;
}

PhaseExpr substitute_action(const FamilySpec& f, const PhaseExpr& e) { return f.to_phase(e); }

}  // namespace sia
