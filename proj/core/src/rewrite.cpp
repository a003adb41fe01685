#include "sia/rewrite.hpp"

#include <algorithm>

namespace sia {

DenominatorSet::DenominatorSet(std::vector<Poly> elements) : elements_(std::move(elements)) {
    if (elements_.size() > kMaxDenominators) throw Error("DenominatorSet: too many elements");
}

Poly DenominatorSet::expand(const Denominator& d) const {
    Poly out(1);
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (d.mult[i]) out = out * elements_[i].pow(d.mult[i]);
    return out;
}

void RewriteSystem::add(RewriteRule rule) {
    if (rule_for(rule.head)) throw Error("RewriteSystem: second rule for the same head symbol");
    if (rule.threshold < 1) throw Error("RewriteSystem: threshold must be positive");
    if (rule.replacement.mentions(rule.head)) throw Error("RewriteSystem: replacement mentions its head");
    rules_.push_back(std::move(rule));
}

const RewriteRule* RewriteSystem::rule_for(SymbolId head) const {
    for (const auto& r : rules_)
        if (r.head == head) return &r;
    return nullptr;
}

Poly RewriteSystem::apply_polynomial(const Poly& p, const RewriteRule& r) const {
    std::vector<Poly> powers{Poly(1)};
    PolyBuilder out;
    for (const auto& t : p.terms()) {
        int e = t.mono[r.head];
        if (e < r.threshold) {
            out.add(t.mono, t.coeff);
            continue;
        }
        int j = e / r.threshold;
        Monomial rest = t.mono;
        rest.set(r.head, e % r.threshold);
        while (static_cast<int>(powers.size()) <= j) powers.push_back(powers.back() * r.replacement);
        out.add_scaled(powers[j], t.coeff, rest);
    }
    return std::move(out).build();
}

void RewriteSystem::apply_rational(Poly& num, Denominator& den, const RewriteRule& r,
                                   const DenominatorSet& dens) const {
    int top = 0;
    for (const auto& t : num.terms()) top = std::max(top, t.mono[r.head] / r.threshold);
    if (top == 0) return;
    std::vector<Poly> repl{Poly(1)};
    std::vector<Poly> fill{Poly(1)};
    Poly den_poly = dens.expand(r.replacement_den);
    for (int j = 1; j <= top; ++j) {
        repl.push_back(repl.back() * r.replacement);
        fill.push_back(fill.back() * den_poly);
    }
    // Group by j first so each (repl^j * fill^(top-j)) product is formed once.
    std::vector<std::vector<Term>> groups(top + 1);
    for (const auto& t : num.terms()) {
        int e = t.mono[r.head];
        int j = e / r.threshold;
        Term u = t;
        u.mono.set(r.head, e - j * r.threshold);
        groups[j].push_back(std::move(u));
    }
    PolyBuilder out;
    for (int j = 0; j <= top; ++j) {
        if (groups[j].empty()) continue;
        Poly g = Poly::from_terms(std::move(groups[j]));
        Poly factor = repl[j] * fill[top - j];
        out.add(g * factor);
    }
    num = std::move(out).build();
    den *= r.replacement_den.pow(top);
}

Poly RewriteSystem::normalize(const Poly& p) const {
    Poly cur = p;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : rules_) {
            if (cur.degree(r.head) < r.threshold) continue;
            if (!r.replacement_den.is_one()) throw Error("RewriteSystem: rational rule in polynomial normalize");
            cur = apply_polynomial(cur, r);
            changed = true;
        }
    }
    return cur;
}

void RewriteSystem::normalize(Poly& num, Denominator& den, const DenominatorSet& dens) const {
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : rules_) {
            if (num.is_zero() || num.degree(r.head) < r.threshold) continue;
            if (r.replacement_den.is_one())
                num = apply_polynomial(num, r);
            else
                apply_rational(num, den, r, dens);
            changed = true;
        }
    }
}

}  // namespace sia
