#include "sia/poly.hpp"

#include <algorithm>
#include <limits>

namespace sia {

Poly::Poly(const GaussianRational& c) {
    if (!c.is_zero()) terms_.push_back({Monomial(), c});
}

Poly Poly::monomial(const Monomial& m, GaussianRational c) {
    Poly p;
    if (!c.is_zero()) p.terms_.push_back({m, std::move(c)});
    return p;
}

Poly Poly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    Poly p;
    p.terms_.reserve(terms.size());
    for (auto& t : terms) {
        if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
            p.terms_.back().coeff += t.coeff;
        } else {
            if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
            p.terms_.push_back(std::move(t));
        }
    }
    if (!p.terms_.empty() && p.terms_.back().coeff.is_zero()) p.terms_.pop_back();
    return p;
}

GaussianRational Poly::constant_term() const {
    for (const auto& t : terms_)
        if (t.mono.is_one()) return t.coeff;
    return GaussianRational(0);
}

int Poly::degree(SymbolId s) const {
    int d = std::numeric_limits<int>::min();
    for (const auto& t : terms_) d = std::max(d, t.mono[s]);
    return terms_.empty() ? 0 : d;
}

int Poly::min_degree(SymbolId s) const {
    int d = std::numeric_limits<int>::max();
    for (const auto& t : terms_) d = std::min(d, t.mono[s]);
    return terms_.empty() ? 0 : d;
}

bool Poly::mentions(SymbolId s) const {
    return std::any_of(terms_.begin(), terms_.end(), [s](const Term& t) { return t.mono[s] != 0; });
}

int Poly::total_degree(std::span<const SymbolId> symbols) const {
    int d = 0;
    for (const auto& t : terms_) {
        int td = 0;
        for (auto s : symbols) td += t.mono[s];
        d = std::max(d, td);
    }
    return d;
}

std::map<int, Poly> Poly::split_by(SymbolId s) const {
    std::map<int, std::vector<Term>> groups;
    for (const auto& t : terms_) {
        Term u = t;
        int e = u.mono[s];
        u.mono.set(s, 0);
        groups[e].push_back(std::move(u));
    }
    std::map<int, Poly> out;
    // Removing one coordinate from a sorted list keeps the remaining order
    // only per group, so re-sort through from_terms.
    for (auto& [e, ts] : groups) out.emplace(e, from_terms(std::move(ts)));
    return out;
}

std::map<std::pair<int, int>, Poly> Poly::split_by(SymbolId a, SymbolId b) const {
    std::map<std::pair<int, int>, std::vector<Term>> groups;
    for (const auto& t : terms_) {
        Term u = t;
        std::pair<int, int> key{u.mono[a], u.mono[b]};
        u.mono.set(a, 0);
        u.mono.set(b, 0);
        groups[key].push_back(std::move(u));
    }
    std::map<std::pair<int, int>, Poly> out;
    for (auto& [k, ts] : groups) out.emplace(k, from_terms(std::move(ts)));
    return out;
}

namespace {
template <bool Subtract>
std::vector<Term> merge(const std::vector<Term>& a, const std::vector<Term>& b) {
    std::vector<Term> out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->mono < j->mono)) {
            out.push_back(*i++);
        } else if (i == a.end() || j->mono < i->mono) {
            out.push_back(Subtract ? Term{j->mono, -j->coeff} : *j);
            ++j;
        } else {
            GaussianRational c = i->coeff;
            if constexpr (Subtract)
                c -= j->coeff;
            else
                c += j->coeff;
            if (!c.is_zero()) out.push_back({i->mono, std::move(c)});
            ++i;
            ++j;
        }
    }
    return out;
}
}  // namespace

Poly& Poly::operator+=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    if (terms_.empty()) return *this = o;
    terms_ = merge<false>(terms_, o.terms_);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    if (o.terms_.empty()) return *this;
    terms_ = merge<true>(terms_, o.terms_);
    return *this;
}

Poly& Poly::operator*=(const GaussianRational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    if (c.is_one()) return *this;
    for (auto& t : terms_) t.coeff *= c;
    return *this;
}

Poly& Poly::operator*=(const Monomial& m) {
    // Multiplying by a monomial is a translation of the exponent lattice,
    // which preserves lexicographic order.
    for (auto& t : terms_) t.mono *= m;
    return *this;
}

Poly Poly::operator-() const {
    Poly p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
        if (a.terms_[i].mono != b.terms_[i].mono || !(a.terms_[i].coeff == b.terms_[i].coeff)) return false;
    return true;
}

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    if (a.size() == 1 && a.terms_[0].mono.is_one()) return b * a.terms_[0].coeff;
    if (b.size() == 1 && b.terms_[0].mono.is_one()) return a * b.terms_[0].coeff;
    if (b.size() == 1) return (a * b.terms_[0].mono) * b.terms_[0].coeff;
    if (a.size() == 1) return (b * a.terms_[0].mono) * a.terms_[0].coeff;
    PolyBuilder acc;
    acc.reserve(std::min<std::size_t>(a.size() * b.size(), 1u << 22));
    const Poly& outer = a.size() <= b.size() ? a : b;
    const Poly& inner = a.size() <= b.size() ? b : a;
    for (const auto& s : outer.terms_)
        for (const auto& t : inner.terms_) acc.add_product(s.mono * t.mono, s.coeff, t.coeff);
    return std::move(acc).build();
}

Poly Poly::pow(int e) const {
    Poly result(1);
    Poly base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return result;
}

void PolyBuilder::add(const Monomial& m, const GaussianRational& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = acc_.try_emplace(m, c);
    if (!inserted) it->second += c;
}

void PolyBuilder::add_product(const Monomial& m, const GaussianRational& a, const GaussianRational& b) {
    auto [it, inserted] = acc_.try_emplace(m);
    it->second.add_product(a, b);
}

void PolyBuilder::add(const Poly& p) {
    for (const auto& t : p.terms()) add(t.mono, t.coeff);
}

void PolyBuilder::add_scaled(const Poly& p, const GaussianRational& c, const Monomial& m) {
    if (c.is_zero()) return;
    for (const auto& t : p.terms()) add_product(t.mono * m, t.coeff, c);
}

Poly PolyBuilder::build() && {
    std::vector<Term> terms;
    terms.reserve(acc_.size());
    for (auto& [m, c] : acc_)
        if (!c.is_zero()) terms.push_back({m, std::move(c)});
    acc_.clear();
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.mono < b.mono; });
    return Poly::from_terms(std::move(terms));
}

}  // namespace sia

namespace sia {

Poly Poly::formal_derivative(SymbolId s) const {
    PolyBuilder out;
    for (const auto& t : terms_) {
        int e = t.mono[s];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(s, e - 1);
        out.add(m, t.coeff * GaussianRational(e));
    }
    return std::move(out).build();
}

Poly Poly::at(SymbolId s, const GaussianRational& value) const {
    PolyBuilder out;
    for (const auto& t : terms_) {
        int e = t.mono[s];
        if (e == 0) {
            out.add(t.mono, t.coeff);
            continue;
        }
        if (value.is_zero()) {
            if (e < 0) throw std::domain_error("Poly::at: negative power evaluated at zero");
            continue;
        }
        Monomial m = t.mono;
        m.set(s, 0);
        out.add(m, t.coeff * value.pow(e));
    }
    return std::move(out).build();
}

}  // namespace sia
