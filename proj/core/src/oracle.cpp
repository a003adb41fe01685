#include "sia/oracle.hpp"

#include <stdexcept>

namespace sia {

namespace {
using GR = GaussianRational;
}

// ---------------------------------------------------------------- jets

Jet Jet::variable(GaussianRational c, int var) {
    Jet j = constant(std::move(c));
    j.d[var] = GR(1);
    return j;
}

bool Jet::grad_zero() const {
    for (const auto& x : d)
        if (!x.is_zero()) return false;
    return true;
}

Jet operator+(const Jet& a, const Jet& b) {
    Jet r{a.v + b.v, {}, a.has_grad && b.has_grad};
    if (r.has_grad)
        for (int i = 0; i < kCanonicalVars; ++i) r.d[i] = a.d[i] + b.d[i];
    return r;
}

Jet operator-(const Jet& a) {
    Jet r{-a.v, {}, a.has_grad};
    for (int i = 0; i < kCanonicalVars; ++i) r.d[i] = -a.d[i];
    return r;
}

Jet operator-(const Jet& a, const Jet& b) { return a + (-b); }

Jet operator*(const Jet& a, const Jet& b) {
    Jet r{a.v * b.v, {}, a.has_grad && b.has_grad};
    if (!r.has_grad) return r;
    bool za = a.grad_zero(), zb = b.grad_zero();
    for (int i = 0; i < kCanonicalVars; ++i) {
        if (!zb) r.d[i].add_product(a.v, b.d[i]);
        if (!za) r.d[i].add_product(b.v, a.d[i]);
    }
    return r;
}

Jet operator*(const Jet& a, const GaussianRational& c) {
    Jet r{a.v * c, {}, a.has_grad};
    for (int i = 0; i < kCanonicalVars; ++i) r.d[i] = a.d[i] * c;
    return r;
}

Jet operator/(const Jet& a, const Jet& b) {
    if (b.v.is_zero()) throw Error("jet division by zero");
    GR inv = b.v.inverse();
    Jet r{a.v * inv, {}, a.has_grad && b.has_grad};
    if (!r.has_grad) return r;
    // (a/b)' = (a' - (a/b) b') / b
    for (int i = 0; i < kCanonicalVars; ++i) r.d[i] = (a.d[i] - r.v * b.d[i]) * inv;
    return r;
}

Jet pow(const Jet& a, int e) {
    if (e < 0) return Jet::constant(GR(1)) / pow(a, -e);
    Jet r = Jet::constant(GR(1));
    r.has_grad = a.has_grad;
    Jet base = a;
    while (e > 0) {
        if (e & 1) r = r * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return r;
}

GaussianRational bracket_value(const Jet& a, const Jet& b) {
    if (!a.has_grad || !b.has_grad) throw Error("bracket of a value without gradient");
    GR r;
    for (int j = 0; j < 2; ++j) {
        r.add_product(a.d[j], b.d[2 + j]);
        r -= a.d[2 + j] * b.d[j];
    }
    return r;
}

// ---------------------------------------------------------------- evaluation

Jet eval_jet(const Poly& p, const SamplePoint& pt) {
    // Per-symbol power cache keyed by exponent.
    std::array<std::map<int, Jet>, kMaxSymbols> cache;
    auto power = [&](SymbolId s, int e) -> const Jet& {
        auto it = cache[s].find(e);
        if (it != cache[s].end()) return it->second;
        return cache[s].emplace(e, pow(pt.sym[s], e)).first->second;
    };
    Jet acc = Jet::constant(GR(0));
    for (const auto& t : p.terms()) {
        Jet term = Jet::constant(t.coeff);
        for (SymbolId s = 0; s < kMaxSymbols; ++s)
            if (int e = t.mono[s]) term = term * power(s, e);
        acc = acc + term;
    }
    return acc;
}

Jet eval_jet(const PhaseExpr& e, const SamplePoint& pt) {
    Jet num = eval_jet(e.num(), pt);
    if (e.den().is_one()) return num;
    const auto& dens = e.chart()->denominators();
    Jet den = Jet::constant(GR(1));
    for (std::size_t i = 0; i < dens.size(); ++i)
        if (int m = e.den().mult[i]) den = den * pow(eval_jet(dens[i], pt), m);
    if (den.v.is_zero()) throw Error("evaluation at a pole");
    return num / den;
}

// ---------------------------------------------------------------- sampling

Sampler::Sampler(const FamilySpec& f, std::uint64_t seed) : f_(&f), rng_(seed) {}

Rational Sampler::random_rational() {
    std::uniform_int_distribution<long> num(-1000, 999), den(1, 1000);
    long n = num(rng_);
    if (n >= 0) ++n;  // skip zero
    Rational r(n, den(rng_));
    r.canonicalize();
    return r;
}

namespace {

/// Rational point on x^2 + y^2 = 1.
std::pair<Rational, Rational> circle(const Rational& t) {
    Rational d = 1 + t * t;
    return {Rational((1 - t * t) / d), Rational(2 * t / d)};
}
/// Rational point on x^2 - y^2 = 1; t != +-1.
std::pair<Rational, Rational> hyperbola(const Rational& t) {
    Rational d = 1 - t * t;
    return {Rational((1 + t * t) / d), Rational(2 * t / d)};
}

}  // namespace

std::optional<SamplePoint> Sampler::try_draw(SampleMode mode) {
    const FamilySpec& f = *f_;
    const Chart& ph = *f.phase;
    SamplePoint pt;
    std::array<bool, kMaxSymbols> set{};
    auto put = [&](std::string_view name, const Rational& v) {
        SymbolId s = f.sym(name);
        pt.sym[s] = Jet::constant(GR(v));
        set[s] = true;
    };

    switch (f.kind) {
        case FamilyKind::Ttw: {
            put("E", random_rational());
            auto [c, s] = circle(random_rational());
            put("c", c);
            put("s", s);
            break;
        }
        case FamilyKind::Coulomb:
            put("rho", random_rational());
            put("w", random_rational());
            break;
        case FamilyKind::Sphere: {
            put("t", random_rational());
            auto [c, s] = circle(random_rational());
            put("cphi", c);
            put("sphi", s);
            break;
        }
        case FamilyKind::Oscillator:
            break;
        case FamilyKind::SphereGeneric: {
            Rational u = random_rational();
            if (u == 1 || u == -1) return std::nullopt;
            auto [C, Sh] = hyperbola(u);
            put("C", C);
            put("Sh", Sh);
            auto [c, s] = circle(random_rational());
            put("c", c);
            put("s", s);
            break;
        }
    }
    for (SymbolId s : f.parameters) {
        pt.sym[s] = Jet::constant(GR(random_rational()));
        set[s] = true;
    }
    // Canonical coordinates and the first momentum.
    for (int v = 0; v < 3; ++v) {
        SymbolId s = ph.canonical(v);
        pt.sym[s] = Jet::variable(GR(random_rational()), v);
        set[s] = true;
    }
    // Generator gradients from the derivative table.
    for (SymbolId s = 0; s < kMaxSymbols; ++s) {
        if (!set[s] || !ph.has(s) || (*f.table)[s].kind != SymbolKind::Generator) continue;
        for (int v = 0; v < kCanonicalVars; ++v) {
            const Fraction& d = ph.derivative(s, v);
            if (d.num.is_zero()) continue;
            Jet dv = eval_jet(PhaseExpr(f.phase, d.num, d.den), pt);
            pt.sym[s].d[v] = dv.v;
        }
    }
    for (SymbolId s = 0; s < kMaxSymbols; ++s)
        if (set[s] && ph.is_laurent(s) && pt.sym[s].v.is_zero()) return std::nullopt;
    for (std::size_t i = 0; i < ph.denominators().size(); ++i)
        if (eval_jet(ph.denominators()[i], pt).v.is_zero()) return std::nullopt;

    // Second momentum: with a square root, p2 = (V/u - u)/2 gives
    // p2^2 + V = ((u + V/u)/2)^2.
    SymbolId p2 = ph.canonical(3);
    std::optional<GR> root;
    if (f.act.root) {
        pt.sym[p2] = Jet::variable(GR(0), 3);
        GR V = eval_jet(f.separation_potential, pt).v;
        GR u(random_rational());
        GR Vu = V / u;
        root = (u + Vu) * GR::frac(1, 2);
        pt.sym[p2] = Jet::variable((Vu - u) * GR::frac(1, 2), 3);
        if (root->is_zero()) return std::nullopt;
    } else {
        pt.sym[p2] = Jet::variable(GR(random_rational()), 3);
    }
    for (int v = 0; v < kCanonicalVars; ++v)
        if (ph.is_laurent(ph.canonical(v)) && pt.sym[ph.canonical(v)].v.is_zero()) return std::nullopt;

    Jet L2 = eval_jet(f.L2, pt);
    if (mode == SampleMode::OnShell) {
        if (L2.v.is_zero()) return std::nullopt;
        pt.sym[f.act.lambda] = L2;
        if (f.act.lambda1) {
            Jet L1 = eval_jet(f.L1, pt);
            if (L1.v.is_zero()) return std::nullopt;
            pt.sym[*f.act.lambda1] = L1;
        }
        if (f.act.h) pt.sym[*f.act.h] = eval_jet(f.H, pt);
        if (f.act.root) {
            Jet r = L2 * (GR(2) * *root).inverse();
            r.v = *root;
            pt.sym[*f.act.root] = r;
        }
    } else {
        if (f.act.root) {
            GR r(random_rational());
            pt.sym[*f.act.root] = Jet::constant(r);
            pt.sym[f.act.lambda] = Jet::constant(r * r);
        } else {
            pt.sym[f.act.lambda] = Jet::constant(GR(random_rational()));
        }
        if (f.act.lambda1) pt.sym[*f.act.lambda1] = Jet::constant(GR(random_rational()));
        if (f.act.h) pt.sym[*f.act.h] = Jet::constant(GR(random_rational()));
    }
    return pt;
}

SamplePoint Sampler::draw(SampleMode mode) {
    for (int i = 0; i < kRetryBudget; ++i) {
        try {
            if (auto pt = try_draw(mode)) return *pt;
        } catch (const Error&) {
            // pole hit while evaluating; redraw
        }
    }
    throw Error("sampler: retry budget exhausted for " + f_->name);
}

// ---------------------------------------------------------------- oracle

OracleValues oracle_values(const FamilySpec& f, const LadderSet& ls, const SamplePoint& pt) {
    OracleValues out;
    auto set = [&](Quantity k, Jet j) { out.q[static_cast<int>(k)] = std::move(j); };
    const GR I = GR::i();

    Jet H = eval_jet(f.H, pt), L2 = eval_jet(f.L2, pt);
    set(Quantity::H, H);
    set(Quantity::L2, L2);
    if (f.act.lambda1) set(Quantity::L1, eval_jet(f.L1, pt));
    if (f.act.root) set(Quantity::Lambda, pt.sym[*f.act.root]);
    if (auto om = f.table->find("omega")) set(Quantity::Omega, pt.sym[*om]);

    Jet X = eval_jet(f.X, pt), Xb = eval_jet(f.Xbar, pt);
    Jet Y = eval_jet(f.Y, pt), Yb = eval_jet(f.Ybar, pt);
    Jet lp = pow(X, f.q) * pow(Y, f.p);
    Jet lm = pow(Xb, f.q) * pow(Yb, f.p);
    set(Quantity::Lplus, lp);
    set(Quantity::Lminus, lm);

    Jet L3, L4;
    switch (f.kind) {
        case FamilyKind::Ttw:
        case FamilyKind::SphereGeneric: {
            const Jet& root = pt.sym[*f.act.root];
            if (ls.parity == Parity::Odd) {
                L4 = (lp + lm) / root;
                L3 = (lp - lm) * (-I);
            } else {
                L4 = (lm - lp) * (-I) / root;
                L3 = lp + lm;
            }
            break;
        }
        case FamilyKind::Coulomb:
        case FamilyKind::Sphere:
            L4 = (lp - lm) / pt.sym[*f.act.root];
            L3 = lp + lm;
            break;
        case FamilyKind::Oscillator:
            L3 = lp + lm;
            L4 = lp - lm;
            break;
    }
    set(Quantity::L3, L3);
    set(Quantity::L4, L4);
    set(Quantity::R, L3 * f.r_factor);
    if (ls.c0) set(Quantity::L5, (L3 - eval_jet(*ls.c0, pt)) / pt.sym[f.act.lambda]);

    set(Quantity::P, pow(eval_jet(f.U2, pt), f.q) * pow(eval_jet(f.S2, pt), f.p));
    set(Quantity::dP_dL2, eval_jet(f.dP_dL2, pt));
    if (f.act.lambda1) set(Quantity::dP_dL1, eval_jet(f.dP_dL1, pt));
    return out;
}

namespace {

Jet eval_expr(const Expr& e, const OracleValues& v) {
    switch (e.kind()) {
        case Expr::Kind::Atom: {
            const auto& j = v[e.quantity()];
            if (!j) throw Error(std::string("quantity not available: ") + quantity_name(e.quantity()));
            return *j;
        }
        case Expr::Kind::Const:
            return Jet::constant(e.value());
        case Expr::Kind::Add: {
            Jet acc = Jet::constant(GR(0));
            for (const auto& a : e.args()) acc = acc + eval_expr(a, v);
            return acc;
        }
        case Expr::Kind::Mul: {
            Jet acc = Jet::constant(GR(1));
            for (const auto& a : e.args()) acc = acc * eval_expr(a, v);
            return acc;
        }
        case Expr::Kind::Pow:
            return pow(eval_expr(e.args()[0], v), e.exponent());
        case Expr::Kind::Bracket:
            return Jet::value_only(bracket_value(eval_expr(e.args()[0], v), eval_expr(e.args()[1], v)));
    }
    throw Error("eval_expr: bad node");
}

}  // namespace

GaussianRational oracle_residual(const IdentitySpec& id, const OracleValues& v) {
    return eval_expr(id.lhs, v).v - eval_expr(id.rhs, v).v;
}

bool oracle_check(const FamilySpec& f, const LadderSet& ls, const IdentitySpec& id, int trials, std::uint64_t seed) {
    Sampler s(f, seed);
    for (int t = 0; t < trials; ++t) {
        SamplePoint pt = s.draw();
        if (!oracle_residual(id, oracle_values(f, ls, pt)).is_zero()) return false;
    }
    return true;
}

bool pit_is_zero(const FamilySpec& f, const PhaseExpr& e, int trials, std::uint64_t seed) {
    SampleMode mode = e.chart() == f.abstract ? SampleMode::Abstract : SampleMode::OnShell;
    Sampler s(f, seed);
    for (int t = 0; t < trials; ++t) {
        SamplePoint pt = s.draw(mode);
        if (!eval_jet(e.num(), pt).v.is_zero()) return false;
    }
    return true;
}

int gradient_rank(const std::vector<Jet>& fs) {
    std::vector<std::array<GR, kCanonicalVars>> m;
    for (const auto& j : fs) {
        if (!j.has_grad) throw Error("gradient_rank: missing gradient");
        m.push_back(j.d);
    }
    int rank = 0;
    for (int col = 0; col < kCanonicalVars && rank < static_cast<int>(m.size()); ++col) {
        int piv = -1;
        for (int r = rank; r < static_cast<int>(m.size()); ++r)
            if (!m[r][col].is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(m[piv], m[rank]);
        GR inv = m[rank][col].inverse();
        for (int r = rank + 1; r < static_cast<int>(m.size()); ++r) {
            if (m[r][col].is_zero()) continue;
            GR factor = m[r][col] * inv;
            for (int c = col; c < kCanonicalVars; ++c) m[r][c] -= factor * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

}  // namespace sia
