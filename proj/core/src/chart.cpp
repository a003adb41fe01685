#include "sia/chart.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace sia {

SymbolId SymbolTable::add(std::string name, std::string latex, SymbolKind kind) {
    if (symbols_.size() >= kMaxSymbols) throw Error("SymbolTable: too many symbols");
    if (find(name)) throw Error("SymbolTable: duplicate symbol " + name);
    symbols_.push_back({std::move(name), std::move(latex), kind});
    return static_cast<SymbolId>(symbols_.size() - 1);
}

std::optional<SymbolId> SymbolTable::find(std::string_view name) const {
    for (std::size_t i = 0; i < symbols_.size(); ++i)
        if (symbols_[i].name == name) return static_cast<SymbolId>(i);
    return std::nullopt;
}

void Chart::validate(const Poly& p) const {
    for (const auto& t : p.terms()) {
        for (SymbolId s = 0; s < kMaxSymbols; ++s) {
            int e = t.mono[s];
            if (e == 0) continue;
            if (!members_[s]) {
                std::string n = s < table_->size() ? (*table_)[s].name : std::to_string(s);
                throw Error("chart " + name_ + ": symbol " + n + " does not belong to this chart");
            }
            if (e < 0 && !laurent_[s])
                throw Error("chart " + name_ + ": negative power of non-Laurent symbol " + (*table_)[s].name);
        }
    }
}

// ---------------------------------------------------------------------------

ChartBuilder::ChartBuilder(std::string name, std::shared_ptr<const SymbolTable> table,
                           std::shared_ptr<const DenominatorSet> dens)
    : chart_(new Chart()) {
    chart_->name_ = std::move(name);
    chart_->table_ = std::move(table);
    chart_->dens_ = dens ? std::move(dens) : std::make_shared<const DenominatorSet>();
}

ChartBuilder& ChartBuilder::canonical(SymbolId x1, SymbolId x2, SymbolId p1, SymbolId p2) {
    chart_->canonical_ = {x1, x2, p1, p2};
    for (int v = 0; v < kCanonicalVars; ++v) {
        SymbolId s = chart_->canonical_[v];
        chart_->members_[s] = true;
        chart_->varies_[s] = true;
        for (int w = 0; w < kCanonicalVars; ++w) chart_->derivs_[s][w] = {Poly(v == w ? 1 : 0), {}};
    }
    return *this;
}

ChartBuilder& ChartBuilder::generator(SymbolId s, int var, Fraction d, bool laurent) {
    std::array<Fraction, kCanonicalVars> row;
    row[var] = std::move(d);
    return generator(s, std::move(row), laurent);
}

ChartBuilder& ChartBuilder::generator(SymbolId s, std::array<Fraction, kCanonicalVars> row, bool laurent) {
    chart_->members_[s] = true;
    chart_->laurent_[s] = laurent;
    chart_->varies_[s] = true;
    chart_->derivs_[s] = std::move(row);
    return *this;
}

ChartBuilder& ChartBuilder::constant(SymbolId s, bool laurent) {
    chart_->members_[s] = true;
    chart_->laurent_[s] = laurent;
    chart_->varies_[s] = false;
    return *this;
}

ChartBuilder& ChartBuilder::laurent(SymbolId s) {
    if (!chart_->members_[s]) throw Error("chart " + chart_->name_ + ": laurent flag on an undeclared symbol");
    chart_->laurent_[s] = true;
    return *this;
}

ChartBuilder& ChartBuilder::rule(RewriteRule r) {
    chart_->rules_.add(std::move(r));
    return *this;
}

ChartPtr ChartBuilder::build() {
    Chart& c = *chart_;
    const auto& dens = *c.dens_;
    for (const auto& r : c.rules_.rules()) {
        if (!c.members_[r.head]) throw Error("chart " + c.name_ + ": rule head outside the chart");
        if (c.laurent_[r.head]) throw Error("chart " + c.name_ + ": rule head may not be Laurent");
        c.validate(r.replacement);
        for (const auto& d : dens.elements())
            if (d.mentions(r.head)) throw Error("chart " + c.name_ + ": denominator mentions a rule head");
    }
    for (const auto& d : dens.elements()) c.validate(d);
    for (SymbolId s = 0; s < kMaxSymbols; ++s) {
        if (!c.varies_[s]) continue;
        for (int v = 0; v < kCanonicalVars; ++v) {
            c.validate(c.derivs_[s][v].num);
            Denominator dd = c.derivs_[s][v].den;
            for (std::size_t i = dens.size(); i < kMaxDenominators; ++i)
                if (dd.mult[i]) throw Error("chart " + c.name_ + ": derivative uses an unknown denominator");
        }
    }
    ChartPtr frozen = chart_;
    // Denominator derivatives need the finished derivative table.
    c.den_derivs_.resize(dens.size());
    for (std::size_t i = 0; i < dens.size(); ++i) {
        PhaseExpr d(frozen, dens[i]);
        for (int v = 0; v < kCanonicalVars; ++v) {
            PhaseExpr dv = differentiate(d, v);
            c.den_derivs_[i][v] = {dv.num(), dv.den()};
        }
    }
    chart_.reset();
    return frozen;
}

// ---------------------------------------------------------------------------

namespace {

Poly normalized(const Chart& c, Poly num, Denominator& den) {
    c.relations().normalize(num, den, c.denominators());
    return num;
}

/// Brings a list of fractions to a common denominator and sums them.
Fraction sum_fractions(const DenominatorSet& dens, std::vector<Fraction>& parts) {
    Denominator common;
    for (const auto& f : parts)
        if (!f.num.is_zero()) common = Denominator::lcm(common, f.den);
    PolyBuilder out;
    for (auto& f : parts) {
        if (f.num.is_zero()) continue;
        Denominator missing = common.quotient(f.den);
        if (missing.is_one())
            out.add(f.num);
        else
            out.add(f.num * dens.expand(missing));
    }
    return {std::move(out).build(), common};
}

}  // namespace

PhaseExpr::PhaseExpr(ChartPtr chart, Poly num, Denominator den) : chart_(std::move(chart)), den_(den) {
    if (!chart_) throw Error("PhaseExpr: null chart");
    chart_->validate(num);
    num_ = normalized(*chart_, std::move(num), den_);
    if (num_.is_zero()) den_ = {};
}

PhaseExpr PhaseExpr::constant(ChartPtr chart, const GaussianRational& c) {
    return PhaseExpr(Raw{}, std::move(chart), Poly(c), {});
}

PhaseExpr PhaseExpr::symbol(ChartPtr chart, SymbolId s, int e) {
    return PhaseExpr(std::move(chart), Poly::symbol(s, e));
}

void PhaseExpr::require_same_chart(const PhaseExpr& o) const {
    if (chart_ != o.chart_) throw Error("chart mismatch: " + (chart_ ? chart_->name() : "<none>") + " vs " +
                                        (o.chart_ ? o.chart_->name() : "<none>"));
}

PhaseExpr& PhaseExpr::operator+=(const PhaseExpr& o) {
    if (!chart_) return *this = o;
    if (!o.chart_) return *this;
    require_same_chart(o);
    if (den_ == o.den_) {
        num_ += o.num_;
    } else {
        std::vector<Fraction> parts{{std::move(num_), den_}, {o.num_, o.den_}};
        Fraction f = sum_fractions(chart_->denominators(), parts);
        num_ = std::move(f.num);
        den_ = f.den;
    }
    if (num_.is_zero()) den_ = {};
    return *this;
}

PhaseExpr& PhaseExpr::operator-=(const PhaseExpr& o) { return *this += -o; }

PhaseExpr& PhaseExpr::operator*=(const PhaseExpr& o) {
    if (!chart_ || !o.chart_) throw Error("PhaseExpr: product with an empty expression");
    require_same_chart(o);
    den_ *= o.den_;
    num_ = normalized(*chart_, num_ * o.num_, den_);
    if (num_.is_zero()) den_ = {};
    return *this;
}

PhaseExpr& PhaseExpr::operator*=(const GaussianRational& c) {
    num_ *= c;
    if (num_.is_zero()) den_ = {};
    return *this;
}

PhaseExpr PhaseExpr::operator-() const {
    PhaseExpr r = *this;
    r.num_ *= GaussianRational(-1);
    return r;
}

PhaseExpr PhaseExpr::pow(int e) const {
    if (e < 0) throw Error("PhaseExpr::pow: negative exponent");
    PhaseExpr result = constant(chart_, 1);
    PhaseExpr base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

PhaseExpr PhaseExpr::divided_by_element(std::size_t i, int m) const {
    if (i >= chart_->denominators().size()) throw Error("PhaseExpr: no such denominator element");
    PhaseExpr r = *this;
    if (!r.is_zero()) r.den_.mult[i] = static_cast<std::uint8_t>(r.den_.mult[i] + m);
    return r;
}

PhaseExpr PhaseExpr::in(ChartPtr target) const {
    if (target->denominator_set() != chart_->denominator_set())
        throw Error("PhaseExpr::in: charts do not share a denominator set");
    return PhaseExpr(std::move(target), num_, den_);
}

std::string PhaseExpr::to_string() const {
    if (!chart_) return "<empty>";
    std::string s = sia::to_string(num_, chart_->symbols());
    if (den_.is_one()) return s;
    std::string d;
    const auto& dens = chart_->denominators();
    for (std::size_t i = 0; i < dens.size(); ++i) {
        if (!den_.mult[i]) continue;
        if (!d.empty()) d += "*";
        d += "(" + sia::to_string(dens[i], chart_->symbols()) + ")";
        if (den_.mult[i] > 1) d += "^" + std::to_string(den_.mult[i]);
    }
    return "(" + s + ")/(" + d + ")";
}

// ---------------------------------------------------------------------------

PhaseExpr differentiate(const PhaseExpr& e, int var) {
    if (var < 0 || var >= kCanonicalVars) throw Error("differentiate: canonical variable index out of range");
    const ChartPtr& cp = e.chart();
    const Chart& c = *cp;
    const auto& dens = c.denominators();
    if (e.is_zero()) return PhaseExpr::constant(cp, 0);

    std::array<bool, kMaxSymbols> used{};
    for (const auto& t : e.num().terms())
        for (SymbolId s = 0; s < kMaxSymbols; ++s)
            if (t.mono[s] != 0) used[s] = true;

    std::vector<Fraction> parts;
    for (SymbolId s = 0; s < kMaxSymbols; ++s) {
        if (!used[s] || !c.varies(s)) continue;
        const Fraction& ds = c.derivative(s, var);
        if (ds.num.is_zero()) continue;
        PolyBuilder a;
        for (const auto& t : e.num().terms()) {
            int k = t.mono[s];
            if (k == 0) continue;
            Monomial m = t.mono;
            m.set(s, k - 1);
            a.add(m, t.coeff * GaussianRational(k));
        }
        Poly ap = std::move(a).build();
        parts.push_back({ds.num.is_constant() ? ap * ds.num.constant_term() : ap * ds.num, ds.den});
    }
    // Quotient rule through the current denominator: d(N/D) = dN/D - N sum m_i d(d_i)/(d_i D).
    for (std::size_t i = 0; i < dens.size(); ++i) {
        int m = e.den().mult[i];
        if (!m) continue;
        const Fraction& dd = c.denominator_derivative(i, var);
        if (dd.num.is_zero()) continue;
        Denominator den = dd.den;
        den.mult[i] = static_cast<std::uint8_t>(den.mult[i] + 1);
        parts.push_back({e.num() * dd.num * GaussianRational(-m), den});
    }
    Fraction f = sum_fractions(dens, parts);
    f.den *= e.den();
    Poly num = normalized(c, std::move(f.num), f.den);
    if (num.is_zero()) return PhaseExpr::constant(cp, 0);
    return PhaseExpr(PhaseExpr::Raw{}, cp, std::move(num), f.den);
}

PhaseExpr differentiate_by(const PhaseExpr& e, SymbolId v) {
    for (int i = 0; i < kCanonicalVars; ++i)
        if (e.chart()->canonical(i) == v) return differentiate(e, i);
    throw Error("differentiate: symbol is neither a coordinate nor a momentum");
}

PhaseExpr poisson_bracket(const PhaseExpr& f, const PhaseExpr& g) {
    if (f.chart() != g.chart()) throw Error("poisson_bracket: chart mismatch");
    const ChartPtr& cp = f.chart();
    // Raw products over a common denominator, normalized once.
    std::vector<Fraction> parts;
    for (int j = 0; j < 2; ++j) {
        PhaseExpr fx = differentiate(f, j);
        if (!fx.is_zero()) {
            PhaseExpr gp = differentiate(g, j + 2);
            if (!gp.is_zero()) parts.push_back({fx.num() * gp.num(), fx.den() * gp.den()});
        }
        PhaseExpr fp = differentiate(f, j + 2);
        if (!fp.is_zero()) {
            PhaseExpr gx = differentiate(g, j);
            if (!gx.is_zero()) parts.push_back({-(fp.num() * gx.num()), fp.den() * gx.den()});
        }
    }
    Fraction sum = sum_fractions(cp->denominators(), parts);
    Poly num = normalized(*cp, std::move(sum.num), sum.den);
    if (num.is_zero()) return PhaseExpr::constant(cp, 0);
    return PhaseExpr(PhaseExpr::Raw{}, cp, std::move(num), sum.den);
}

// ---------------------------------------------------------------------------

namespace {

bool is_unit(const PhaseExpr& e) {
    if (e.num().size() != 1) return false;
    const Monomial& m = e.num().terms()[0].mono;
    for (SymbolId s = 0; s < kMaxSymbols; ++s)
        if (m[s] != 0 && !e.chart()->is_laurent(s)) return false;
    return true;
}

PhaseExpr inverse_of_unit(const PhaseExpr& e) {
    const Term& t = e.num().terms()[0];
    Poly d = e.chart()->denominators().expand(e.den());
    return PhaseExpr(e.chart(), d * Poly::monomial(t.mono.inverse(), t.coeff.inverse()));
}

}  // namespace

PhaseExpr substitute(const PhaseExpr& e, const std::vector<Substitution>& map, ChartPtr target) {
    if (!target) throw Error("substitute: null target chart");
    if (e.chart()->denominator_set() != target->denominator_set())
        throw Error("substitute: source and target charts do not share a denominator set");
    for (const auto& s : map)
        if (s.image.chart() != target) throw Error("substitute: image lives in a different chart");

    using Key = std::array<int, kMaxSymbols>;
    std::map<Key, std::vector<Term>> groups;
    for (const auto& t : e.num().terms()) {
        Key k{};
        Term rest = t;
        for (std::size_t i = 0; i < map.size(); ++i) {
            k[i] = t.mono[map[i].symbol];
            rest.mono.set(map[i].symbol, 0);
        }
        groups[k].push_back(std::move(rest));
    }

    std::vector<std::map<int, PhaseExpr>> powers(map.size());
    auto power = [&](std::size_t i, int n) -> const PhaseExpr& {
        auto& cache = powers[i];
        auto it = cache.find(n);
        if (it != cache.end()) return it->second;
        PhaseExpr v;
        if (n == 0) {
            v = PhaseExpr::constant(target, 1);
        } else if (n > 0) {
            v = map[i].image.pow(n);
        } else {
            if (!is_unit(map[i].image))
                throw Error("substitute: negative power of a symbol with a non-invertible image");
            v = inverse_of_unit(map[i].image).pow(-n);
        }
        return cache.emplace(n, std::move(v)).first->second;
    };

    PhaseExpr out = PhaseExpr::constant(target, 0);
    for (auto& [k, terms] : groups) {
        PhaseExpr part(target, Poly::from_terms(std::move(terms)));
        for (std::size_t i = 0; i < map.size(); ++i)
            if (k[i] != 0) part *= power(i, k[i]);
        out += part;
    }
    if (!e.den().is_one() && !out.is_zero()) {
        Denominator d = out.den() * e.den();
        out = PhaseExpr(target, out.num(), d);
    }
    return out;
}

int momentum_degree(const PhaseExpr& e) {
    const Chart& c = *e.chart();
    SymbolId m[2] = {c.momentum(0), c.momentum(1)};
    return e.num().total_degree(m);
}

// ---------------------------------------------------------------------------

namespace {

std::string monomial_string(const Monomial& m, const SymbolTable& t, bool latex) {
    std::string out;
    for (SymbolId s = 0; s < kMaxSymbols; ++s) {
        int e = m[s];
        if (e == 0) continue;
        const std::string& n = latex ? t[s].latex : t[s].name;
        if (!out.empty()) out += latex ? " " : "*";
        out += n;
        if (e != 1) out += latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
    }
    return out;
}

std::string poly_string(const Poly& p, const SymbolTable& t, bool latex) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& term : p.terms()) {
        std::string mono = monomial_string(term.mono, t, latex);
        std::string coeff = latex ? term.coeff.to_latex() : term.coeff.to_string();
        bool complex = !term.coeff.is_real() && sgn(term.coeff.re()) != 0;
        if (!latex && complex) coeff = "(" + coeff + ")";
        bool negative = term.coeff.is_real() ? sgn(term.coeff.re()) < 0
                                             : (sgn(term.coeff.re()) == 0 && sgn(term.coeff.im()) < 0);
        if (negative) coeff = coeff.substr(1);
        std::string body;
        if (mono.empty())
            body = coeff;
        else if (coeff == "1")
            body = mono;
        else if (coeff == "i" || (latex && term.coeff.is_real()))
            body = coeff + (latex ? " " : "*") + mono;
        else
            body = coeff + (latex ? " " : "*") + mono;
        if (first)
            out = negative ? "-" + body : body;
        else
            out += negative ? " - " + body : " + " + body;
        first = false;
    }
    return out;
}

}  // namespace

std::string to_string(const Poly& p, const SymbolTable& t) { return poly_string(p, t, false); }
std::string to_latex(const Poly& p, const SymbolTable& t) { return poly_string(p, t, true); }

}  // namespace sia
