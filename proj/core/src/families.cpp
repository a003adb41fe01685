#include "sia/families.hpp"

#include <numeric>

namespace sia {

const char* family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::Ttw: return "ttw";
        case FamilyKind::Coulomb: return "coulomb";
        case FamilyKind::Sphere: return "sphere";
        case FamilyKind::Oscillator: return "oscillator";
        case FamilyKind::SphereGeneric: return "sphere-generic";
    }
    return "?";
}

const std::vector<std::string>& family_names() {
    static const std::vector<std::string> names{"ttw", "coulomb", "sphere", "oscillator", "sphere-generic"};
    return names;
}

SymbolId FamilySpec::sym(std::string_view n) const {
    auto s = table->find(n);
    if (!s) throw Error("family " + name + ": no symbol " + std::string(n));
    return *s;
}

std::vector<Substitution> FamilySpec::action_images() const {
    std::vector<Substitution> m{{act.lambda, L2}};
    if (act.lambda1) m.push_back({*act.lambda1, L1});
    if (act.h) m.push_back({*act.h, H});
    return m;
}

PhaseExpr FamilySpec::to_phase(const PhaseExpr& e) const {
    if (act.root && e.num().mentions(*act.root))
        throw Error("to_phase: expression still contains the square root of L2");
    return substitute(e, action_images(), phase);
}

PhaseExpr FamilySpec::onshell_H() const {
    if (act.h) return PhaseExpr::symbol(onshell, *act.h);
    return PhaseExpr::symbol(onshell, *act.lambda1) + PhaseExpr::symbol(onshell, act.lambda);
}

namespace {

using GR = GaussianRational;
const GR I = GR::i();

Poly S(SymbolId s, int e = 1) { return Poly::symbol(s, e); }

Fraction frac(Poly num, Denominator den = {}) { return {std::move(num), den}; }

Fraction to_fraction(const PhaseExpr& e) { return {e.num(), e.den()}; }

RewriteRule rule_from(SymbolId head, const PhaseExpr& replacement) {
    return {head, 2, replacement.num(), replacement.den()};
}

/// Declares the generators and parameters shared by every chart of a family.
using Declare = std::function<void(ChartBuilder&)>;

struct Builder {
    FamilySpec f;
    std::shared_ptr<SymbolTable> table = std::make_shared<SymbolTable>();
    std::shared_ptr<const DenominatorSet> dens;

    SymbolId add(const char* name, const char* latex, SymbolKind kind) { return table->add(name, latex, kind); }
    SymbolId param(const char* name, const char* latex) {
        SymbolId s = add(name, latex, SymbolKind::Parameter);
        f.parameters.push_back(s);
        return s;
    }

    /// Builds the phase and abstract charts.
    void first_charts(const Declare& declare, SymbolId lambda, std::optional<SymbolId> lambda1,
                      std::optional<SymbolId> h, std::optional<SymbolId> root) {
        f.table = table;
        f.act = {lambda, lambda1, h, root};
        ChartBuilder ph(f.name + "/phase", table, dens);
        declare(ph);
        for (SymbolId s : f.parameters) ph.constant(s);
        f.phase = ph.build();

        ChartBuilder ab(f.name + "/abstract", table, dens);
        declare(ab);
        for (SymbolId s : f.parameters) ab.constant(s);
        ab.constant(lambda);
        if (lambda1) ab.constant(*lambda1);
        if (h) ab.constant(*h);
        if (root) {
            ab.constant(*root);
            ab.rule({*root, 2, S(lambda), {}});
        }
        f.abstract = ab.build();
    }

    std::array<Fraction, kCanonicalVars> row_of(const PhaseExpr& e) const {
        std::array<Fraction, kCanonicalVars> row;
        for (int v = 0; v < kCanonicalVars; ++v) row[v] = to_fraction(differentiate(e, v));
        return row;
    }

    /// Builds the on-shell chart; `eliminations` are the squared-momentum rules
    /// written in the abstract chart.
    void onshell_chart(const Declare& declare, const std::vector<std::pair<SymbolId, PhaseExpr>>& eliminations) {
        ChartBuilder on(f.name + "/onshell", table, dens);
        declare(on);
        for (SymbolId s : f.parameters) on.constant(s);
        on.generator(f.act.lambda, row_of(f.L2), true);
        if (f.act.lambda1) on.generator(*f.act.lambda1, row_of(f.L1), true);
        if (f.act.h) on.generator(*f.act.h, row_of(f.H));
        if (f.act.root) {
            // d sqrt(l) = sqrt(l) l^{-1} dl / 2
            auto row = row_of(f.L2);
            Poly factor = S(*f.act.root) * S(f.act.lambda, -1) * GR::frac(1, 2);
            for (auto& r : row) r.num = r.num * factor;
            on.generator(*f.act.root, row);
            on.rule({*f.act.root, 2, S(f.act.lambda), {}});
        }
        for (const auto& [head, repl] : eliminations) on.rule(rule_from(head, repl));
        f.onshell = on.build();
    }

    PhaseExpr ab(const Poly& p) const { return PhaseExpr(f.abstract, p); }
    PhaseExpr ph(const Poly& p) const { return PhaseExpr(f.phase, p); }
};

void finish_products(FamilySpec& f) {
    f.P = f.U2.pow(f.q) * f.S2.pow(f.p);
    f.dP_dL2 = PhaseExpr(f.abstract, f.P.num().formal_derivative(f.act.lambda));
    if (f.act.lambda1) f.dP_dL1 = PhaseExpr(f.abstract, f.P.num().formal_derivative(*f.act.lambda1));
}

void check_invariants(const FamilySpec& f) {
    if (!poisson_bracket(f.L2, f.H).is_zero()) throw Error(f.name + ": {L2, H} does not vanish");
    if (f.act.lambda1) {
        if (!poisson_bracket(f.L1, f.H).is_zero()) throw Error(f.name + ": {L1, H} does not vanish");
        if (!poisson_bracket(f.L1, f.L2).is_zero()) throw Error(f.name + ": {L1, L2} does not vanish");
    }
    if (!(f.to_phase(f.X * f.Xbar) - f.to_phase(f.U2)).is_zero()) throw Error(f.name + ": X Xbar != U^2");
    if (!(f.to_phase(f.Y * f.Ybar) - f.to_phase(f.S2)).is_zero()) throw Error(f.name + ": Y Ybar != S^2");
}

// ---------------------------------------------------------------------------

void build_ttw(Builder& b) {
    FamilySpec& f = b.f;
    using K = SymbolKind;
    SymbolId R = b.add("R", "R", K::Coordinate), th = b.add("theta", "\\theta", K::Coordinate);
    SymbolId pR = b.add("p_R", "p_R", K::Momentum), pth = b.add("p_theta", "p_\\theta", K::Momentum);
    SymbolId E = b.add("E", "e^{2R}", K::Generator);
    SymbolId c = b.add("c", "\\cos 2k\\theta", K::Generator), s = b.add("s", "\\sin 2k\\theta", K::Generator);
    SymbolId al = b.param("alpha", "\\alpha"), be = b.param("beta", "\\beta"), om = b.param("omega", "\\omega");
    SymbolId la = b.add("lambda", "\\lambda", K::Action), h = b.add("h", "h", K::Action);
    SymbolId La = b.add("Lambda", "\\Lambda", K::Action);
    // s is invertible and c^2 is reduced, so 1/(1 +- c) = (1 -+ c)/s^2 and
    // no denominators are needed.
    b.dens = std::make_shared<const DenominatorSet>();
    GR k2 = GR(f.k * 2);
    Declare declare = [=](ChartBuilder& cb) {
        cb.canonical(R, th, pR, pth);
        cb.generator(E, 0, frac(S(E) * GR(2)), true);
        cb.generator(c, 1, frac(S(s) * (-k2)));
        cb.generator(s, 1, frac(S(c) * k2), true);
        cb.rule({c, 2, Poly(1) - S(s, 2), {}});
    };
    b.first_charts(declare, la, std::nullopt, h, La);

    PhaseExpr V = b.ph((S(al) * (Poly(1) - S(c)) + S(be) * (Poly(1) + S(c))) * S(s, -2) * GR(2));
    f.separation_potential = V;
    f.L2 = b.ph(S(pth, 2)) + V;
    f.H = b.ph(S(E, -1)) * (b.ph(S(pR, 2)) + f.L2) - b.ph(S(om, 2) * S(E));

    PhaseExpr Lam = b.ab(S(La)), lam = b.ab(S(la)), hh = b.ab(S(h));
    PhaseExpr xa = Lam * b.ab(S(s) * S(pth));
    PhaseExpr xb = b.ab((S(al) - S(be) - S(la) * S(c)) * I);
    f.X = xa + xb;
    f.Xbar = xa - xb;
    PhaseExpr ya = Lam * b.ab(S(E, -1) * S(pR) * GR(2));
    PhaseExpr yb = b.ab((S(la) * S(E, -1) * GR(2) - S(h)) * I);
    f.Y = ya + yb;
    f.Ybar = ya - yb;
    f.U2 = (lam - b.ab(S(al) + S(be))).pow(2) - b.ab(S(al) * S(be) * GR(4));
    f.S2 = hh * hh + b.ab(S(om, 2) * S(la) * GR(4));
    finish_products(f);

    PhaseExpr elim_th = lam - V.in(f.abstract);
    PhaseExpr elim_R = b.ab(S(E) * S(h) + S(om, 2) * S(E, 2) - S(la));
    b.onshell_chart(declare, {{pth, elim_th}, {pR, elim_R}});

    f.parity = (f.p + f.q) % 2 ? Parity::Odd : Parity::Even;
    f.ladder_rate = GR(Rational(-4 * f.p)) * I;
    f.r_factor = GR(4 * f.p);
}

void build_coulomb(Builder& b) {
    FamilySpec& f = b.f;
    using K = SymbolKind;
    SymbolId R = b.add("R", "R", K::Coordinate), th = b.add("theta", "\\theta", K::Coordinate);
    SymbolId pR = b.add("p_R", "p_R", K::Momentum), pth = b.add("p_theta", "p_\\theta", K::Momentum);
    SymbolId rho = b.add("rho", "e^{R}", K::Generator), w = b.add("w", "e^{ik\\theta}", K::Generator);
    SymbolId de = b.param("delta", "\\delta");
    SymbolId la = b.add("lambda", "\\lambda", K::Action), h = b.add("h", "h", K::Action);
    SymbolId La = b.add("Lambda", "\\Lambda", K::Action);
    b.dens = std::make_shared<const DenominatorSet>();
    GR k(f.k);
    Declare declare = [=](ChartBuilder& cb) {
        cb.canonical(R, th, pR, pth);
        cb.generator(rho, 0, frac(S(rho)), true);
        cb.generator(w, 1, frac(S(w) * (k * I)), true);
    };
    b.first_charts(declare, la, std::nullopt, h, La);

    PhaseExpr V = b.ph(S(de, 2) * S(w, 2) * (k * k));
    f.separation_potential = V;
    f.L2 = b.ph(S(pth, 2)) + V;
    f.H = b.ph(S(rho, -2)) * (b.ph(S(pR, 2)) + f.L2);

    PhaseExpr Lam = b.ab(S(La)), lam = b.ab(S(la)), hh = b.ab(S(h));
    // The X orientation pairs the minus root with L+ so that X^q Y^p is conserved.
    f.X = (b.ab(S(pth)) - Lam) * b.ab(S(w, -1) * I);
    f.Xbar = (b.ab(S(pth)) + Lam) * b.ab(S(w, -1) * I);
    f.Y = (b.ab(S(pR)) + Lam * GR(I)) * b.ab(S(rho, -1));
    f.Ybar = (b.ab(S(pR)) - Lam * GR(I)) * b.ab(S(rho, -1));
    f.U2 = b.ab(S(de, 2) * (k * k));
    f.S2 = hh;
    finish_products(f);

    PhaseExpr elim_th = lam - V.in(f.abstract);
    PhaseExpr elim_R = b.ab(S(rho, 2) * S(h) - S(la));
    b.onshell_chart(declare, {{pth, elim_th}, {pR, elim_R}});

    f.parity = Parity::Uniform;
    f.ladder_rate = GR(Rational(-2 * f.p)) * I;
    f.r_factor = GR(Rational(-2 * f.p)) * I;
}

void build_sphere(Builder& b) {
    FamilySpec& f = b.f;
    using K = SymbolKind;
    SymbolId th = b.add("theta", "\\theta", K::Coordinate), ph = b.add("phi", "\\varphi", K::Coordinate);
    SymbolId pth = b.add("p_theta", "p_\\theta", K::Momentum), pph = b.add("p_phi", "p_\\varphi", K::Momentum);
    SymbolId t = b.add("t", "\\cot\\theta", K::Generator);
    SymbolId cf = b.add("cphi", "\\cos k\\varphi", K::Generator), sf = b.add("sphi", "\\sin k\\varphi", K::Generator);
    SymbolId al = b.param("alpha", "\\alpha");
    SymbolId la = b.add("lambda", "\\lambda", K::Action), h = b.add("h", "h", K::Action);
    SymbolId La = b.add("Lambda", "\\Lambda", K::Action);
    b.dens = std::make_shared<const DenominatorSet>();
    GR k(f.k);
    Declare declare = [=](ChartBuilder& cb) {
        cb.canonical(th, ph, pth, pph);
        cb.generator(t, 0, frac(-(Poly(1) + S(t, 2))));
        cb.generator(cf, 1, frac(S(sf) * (-k)), true);
        cb.generator(sf, 1, frac(S(cf) * k));
        cb.rule({sf, 2, Poly(1) - S(cf, 2), {}});
    };
    b.first_charts(declare, la, std::nullopt, h, La);

    PhaseExpr V = b.ph(S(al) * S(cf, -2));
    f.separation_potential = V;
    f.L2 = b.ph(S(pph, 2)) + V;
    f.H = b.ph(S(pth, 2)) + b.ph(Poly(1) + S(t, 2)) * f.L2;

    PhaseExpr Lam = b.ab(S(La)), lam = b.ab(S(la)), hh = b.ab(S(h));
    PhaseExpr xa = b.ab(S(cf) * S(pph)), xb = Lam * b.ab(S(sf) * I);
    f.X = xa + xb;
    f.Xbar = xa - xb;
    // Y without the factor k: only then does Y Ybar reduce to H - L2.
    PhaseExpr ya = b.ab(-S(pth)), yb = Lam * b.ab(S(t) * I);
    f.Y = ya - yb;
    f.Ybar = ya + yb;
    f.U2 = lam - b.ab(S(al));
    f.S2 = hh - lam;
    finish_products(f);

    PhaseExpr elim_ph = lam - V.in(f.abstract);
    PhaseExpr elim_th = hh - b.ab(Poly(1) + S(t, 2)) * lam;
    b.onshell_chart(declare, {{pph, elim_ph}, {pth, elim_th}});

    f.parity = Parity::Uniform;
    f.ladder_rate = GR(Rational(-2 * f.p)) * I;
    f.r_factor = GR(Rational(-2 * f.p)) * I;
}

void build_oscillator(Builder& b) {
    FamilySpec& f = b.f;
    using K = SymbolKind;
    SymbolId x = b.add("x", "x", K::Coordinate), y = b.add("y", "y", K::Coordinate);
    SymbolId px = b.add("p_x", "p_x", K::Momentum), py = b.add("p_y", "p_y", K::Momentum);
    SymbolId al = b.param("alpha", "\\alpha"), be = b.param("beta", "\\beta"), om = b.param("omega", "\\omega");
    SymbolId l1 = b.add("lambda1", "\\lambda_1", K::Action), l2 = b.add("lambda2", "\\lambda_2", K::Action);
    b.dens = std::make_shared<const DenominatorSet>();
    Declare declare = [=](ChartBuilder& cb) {
        cb.canonical(x, y, px, py);
        cb.laurent(x).laurent(y);
    };
    b.first_charts(declare, l2, l1, std::nullopt, std::nullopt);

    Poly w1 = S(om) * GR(f.p), w2 = S(om) * GR(f.q);
    PhaseExpr V1 = b.ph(S(al) * S(x, -2) - w1 * w1 * S(x, 2));
    PhaseExpr V2 = b.ph(S(be) * S(y, -2) - w2 * w2 * S(y, 2));
    f.separation_potential = V2;
    f.L1 = b.ph(S(px, 2)) + V1;
    f.L2 = b.ph(S(py, 2)) + V2;
    f.H = f.L1 + f.L2;

    PhaseExpr xa = b.ab(S(x, 2) * w1 * w1 * GR(2) + S(l1)), xb = b.ab(w1 * S(x) * S(px) * GR(2));
    f.X = xa + xb;
    f.Xbar = xa - xb;
    PhaseExpr ya = b.ab(S(y, 2) * w2 * w2 * GR(2) + S(l2)), yb = b.ab(w2 * S(y) * S(py) * GR(2));
    f.Y = ya - yb;
    f.Ybar = ya + yb;
    f.U2 = b.ab(S(l1, 2) + w1 * w1 * S(al) * GR(4));
    f.S2 = b.ab(S(l2, 2) + w2 * w2 * S(be) * GR(4));
    finish_products(f);

    PhaseExpr elim_x = b.ab(S(l1)) - V1.in(f.abstract);
    PhaseExpr elim_y = b.ab(S(l2)) - V2.in(f.abstract);
    b.onshell_chart(declare, {{px, elim_x}, {py, elim_y}});

    f.parity = Parity::Uniform;
    // Coefficients of omega: {L1, L+} = -4 q w1 L+, {L2, L+} = 4 p w2 L+.
    f.ladder_rate = GR(-4 * f.q * f.p);
    f.ladder_rate2 = GR(4 * f.p * f.q);
    f.r_factor = GR(1);
}

void build_sphere_generic(Builder& b) {
    FamilySpec& f = b.f;
    using K = SymbolKind;
    SymbolId ps = b.add("psi", "\\psi", K::Coordinate), ph = b.add("phi", "\\varphi", K::Coordinate);
    SymbolId pps = b.add("p_psi", "p_\\psi", K::Momentum), pph = b.add("p_phi", "p_\\varphi", K::Momentum);
    SymbolId C = b.add("C", "\\cosh 2\\psi", K::Generator), Sh = b.add("Sh", "\\sinh 2\\psi", K::Generator);
    SymbolId c = b.add("c", "\\cos 2k\\varphi", K::Generator), s = b.add("s", "\\sin 2k\\varphi", K::Generator);
    SymbolId al = b.param("alpha", "\\alpha"), be = b.param("beta", "\\beta"), ga = b.param("gamma", "\\gamma");
    SymbolId la = b.add("lambda", "\\lambda", K::Action), h = b.add("h", "h", K::Action);
    SymbolId La = b.add("Lambda", "\\Lambda", K::Action);
    // Same trick as ttw for both pairs: 1/(C -+ 1) = (C +- 1)/Sh^2.
    b.dens = std::make_shared<const DenominatorSet>();
    GR k2 = GR(f.k * 2);
    Declare declare = [=](ChartBuilder& cb) {
        cb.canonical(ps, ph, pps, pph);
        cb.generator(C, 0, frac(S(Sh) * GR(2)));
        cb.generator(Sh, 0, frac(S(C) * GR(2)), true);
        cb.generator(c, 1, frac(S(s) * (-k2)));
        cb.generator(s, 1, frac(S(c) * k2), true);
        cb.rule({C, 2, Poly(1) + S(Sh, 2), {}});
        cb.rule({c, 2, Poly(1) - S(s, 2), {}});
    };
    b.first_charts(declare, la, std::nullopt, h, La);

    PhaseExpr V = b.ph((S(al) * (Poly(1) - S(c)) + S(be) * (Poly(1) + S(c))) * S(s, -2) * GR(2));
    PhaseExpr W = b.ph(S(ga) * (S(C) + Poly(1)) * S(Sh, -2) * GR(2));
    f.separation_potential = V;
    f.L2 = b.ph(S(pph, 2)) + V;
    f.H = b.ph((S(C) + Poly(1)) * GR::frac(1, 2)) * (b.ph(S(pps, 2)) + f.L2 + W);

    PhaseExpr Lam = b.ab(S(La)), lam = b.ab(S(la)), hh = b.ab(S(h));
    PhaseExpr xa = Lam * b.ab(S(s) * S(pph)), xb = b.ab((S(be) - S(al) + S(la) * S(c)) * I);
    f.X = xa + xb;
    f.Xbar = xa - xb;
    PhaseExpr ya = Lam * b.ab(S(Sh) * S(pps)), yb = b.ab((S(ga) - S(h) + S(la) * S(C)) * I);
    f.Y = ya + yb;
    f.Ybar = ya - yb;
    f.U2 = (lam - b.ab(S(al) + S(be))).pow(2) - b.ab(S(al) * S(be) * GR(4));
    f.S2 = (hh - lam - b.ab(S(ga))).pow(2) - b.ab(S(ga) * S(la) * GR(4));
    finish_products(f);

    PhaseExpr elim_ph = lam - V.in(f.abstract);
    PhaseExpr elim_ps = hh * b.ab((S(C) - Poly(1)) * S(Sh, -2) * GR(2)) - lam - W.in(f.abstract);
    b.onshell_chart(declare, {{pph, elim_ph}, {pps, elim_ps}});

    f.parity = (f.p + f.q) % 2 ? Parity::Odd : Parity::Even;
    f.ladder_rate = GR(Rational(4 * f.p)) * I;
    f.r_factor = GR(-4 * f.p);
}

}  // namespace

FamilySpec make_family(std::string_view name, int p, int q) {
    FamilyKind kind;
    if (name == "ttw")
        kind = FamilyKind::Ttw;
    else if (name == "coulomb")
        kind = FamilyKind::Coulomb;
    else if (name == "sphere")
        kind = FamilyKind::Sphere;
    else if (name == "oscillator")
        kind = FamilyKind::Oscillator;
    else if (name == "sphere-generic")
        kind = FamilyKind::SphereGeneric;
    else
        throw UnknownFamilyError("unknown family: " + std::string(name));
    if (p <= 0 || q <= 0) throw NonCoprimeError("p and q must be positive");
    if (std::gcd(p, q) != 1)
        throw NonCoprimeError("p and q must be coprime, got (" + std::to_string(p) + "," + std::to_string(q) + ")");

    Builder b;
    b.f.name = std::string(name);
    b.f.kind = kind;
    b.f.p = p;
    b.f.q = q;
    b.f.k = Rational(p, q);
    b.f.k.canonicalize();
    switch (kind) {
        case FamilyKind::Ttw: build_ttw(b); break;
        case FamilyKind::Coulomb: build_coulomb(b); break;
        case FamilyKind::Sphere: build_sphere(b); break;
        case FamilyKind::Oscillator: build_oscillator(b); break;
        case FamilyKind::SphereGeneric: build_sphere_generic(b); break;
    }
    check_invariants(b.f);
    return std::move(b.f);
}

ChartPtr chart_for(std::string_view family, int p, int q) { return make_family(family, p, q).phase; }

// ---------------------------------------------------------------------------

namespace {

using Q = Quantity;

Expr br(Q a, Q b) { return bracket(Expr(a), Expr(b)); }

Expr c(long v) { return Expr(v); }
Expr ci(long v) { return Expr(GR(Rational(0), Rational(v))); }

}  // namespace

std::vector<IdentitySpec> structure_suite(const FamilySpec& f) {
    const long p = f.p, q = f.q;
    const long p2 = p * p;
    std::vector<IdentitySpec> s;
    switch (f.kind) {
        case FamilyKind::Ttw:
        case FamilyKind::SphereGeneric: {
            long sg = f.kind == FamilyKind::Ttw ? 1 : -1;
            s.push_back({"L2_L4_R", br(Q::L2, Q::L4), Q::R});
            s.push_back({"L2_R", br(Q::L2, Q::R), c(-16 * p2) * Q::L2 * Q::L4});
            s.push_back({"L4_R", br(Q::L4, Q::R), c(16 * p2) * pow(Q::L4, 2) - c(32 * p2) * Q::dP_dL2});
            s.push_back({"R_squared", pow(Q::R, 2), c(-16 * p2) * Q::L2 * pow(Q::L4, 2) + c(64 * p2) * Q::P});
            s.push_back({"L3_squared", pow(Q::L3, 2), -(Expr(Q::L2) * pow(Q::L4, 2)) + c(4) * Q::P});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), c(-4 * p * sg) * pow(Q::L4, 2) + c(8 * p * sg) * Q::dP_dL2});
            s.push_back({"Lplus_Lminus", br(Q::Lplus, Q::Lminus), ci(4 * p * sg) * Q::Lambda * Q::dP_dL2});
            break;
        }
        case FamilyKind::Coulomb:
            s.push_back({"L2_L4_R", br(Q::L2, Q::L4), Q::R});
            s.push_back({"L2_R", br(Q::L2, Q::R), c(-4 * p2) * Q::L2 * Q::L4});
            s.push_back({"L4_R", br(Q::L4, Q::R), c(4 * p2) * pow(Q::L4, 2)});
            s.push_back({"R_squared", pow(Q::R, 2), c(-4 * p2) * Q::L2 * pow(Q::L4, 2) - c(16 * p2) * Q::P});
            s.push_back({"L3_squared", pow(Q::L3, 2), Expr(Q::L2) * pow(Q::L4, 2) + c(4) * Q::P});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), ci(2 * p) * pow(Q::L4, 2)});
            s.push_back({"Lplus_Lminus", br(Q::Lplus, Q::Lminus), c(0)});
            break;
        case FamilyKind::Sphere:
            s.push_back({"L2_L4_R", br(Q::L2, Q::L4), Q::R});
            s.push_back({"L2_R", br(Q::L2, Q::R), c(-4 * p2) * Q::L2 * Q::L4});
            s.push_back({"L4_R", br(Q::L4, Q::R), c(-4 * p2) * pow(Q::L4, 2) + c(8 * p2) * Q::dP_dL2});
            s.push_back({"R_squared", pow(Q::R, 2), c(-4 * p2) * Q::L2 * pow(Q::L4, 2) - c(16 * p2) * Q::P});
            s.push_back({"L3_squared", pow(Q::L3, 2), Expr(Q::L2) * pow(Q::L4, 2) + c(4) * Q::P});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), ci(2 * p) * pow(Q::L4, 2) - ci(4 * p) * Q::dP_dL2});
            s.push_back({"Lplus_Lminus", br(Q::Lplus, Q::Lminus), ci(2 * p) * Q::Lambda * Q::dP_dL2});
            break;
        case FamilyKind::Oscillator: {
            // w1 = p omega, w2 = q omega, so q w1 = p w2 = p q omega.
            Expr w = c(p * q) * Q::Omega;
            s.push_back({"L1_L3", br(Q::L1, Q::L3), c(-4) * w * Q::L4});
            s.push_back({"L1_L4", br(Q::L1, Q::L4), c(-4) * w * Q::L3});
            s.push_back({"L2_L3", br(Q::L2, Q::L3), c(4) * w * Q::L4});
            s.push_back({"L2_L4", br(Q::L2, Q::L4), c(4) * w * Q::L3});
            s.push_back({"L1_L2", br(Q::L1, Q::L2), c(0)});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), c(8) * w * Q::dP_dL1 - c(8) * w * Q::dP_dL2});
            s.push_back({"L3_squared", pow(Q::L3, 2) - pow(Q::L4, 2), c(4) * Q::P});
            s.push_back({"Lplus_Lminus", br(Q::Lplus, Q::Lminus), c(4) * w * Q::dP_dL1 - c(4) * w * Q::dP_dL2});
            s.push_back({"H_Lplus", br(Q::H, Q::Lplus), c(0)});
            s.push_back({"H_Lminus", br(Q::H, Q::Lminus), c(0)});
            break;
        }
    }
    s.push_back({"fundamental", Expr(Q::Lplus) * Q::Lminus, Q::P});
    (void)q;
    return s;
}

std::vector<IdentitySpec> ladder_bracket_suite(const FamilySpec& f) {
    const long p = f.p;
    std::vector<IdentitySpec> s;
    switch (f.kind) {
        case FamilyKind::Ttw:
            s.push_back({"ladder_L2_L4", br(Q::L2, Q::L4), c(4 * p) * Q::L3});
            s.push_back({"ladder_L2_L3", br(Q::L2, Q::L3), c(-4 * p) * Q::L2 * Q::L4});
            break;
        case FamilyKind::Coulomb:
            s.push_back({"ladder_L2_L4", br(Q::L2, Q::L4), ci(2 * p) * Q::L3});
            s.push_back({"ladder_L2_L3", br(Q::L2, Q::L3), ci(2 * p) * Q::L2 * Q::L4});
            break;
        case FamilyKind::Sphere:
            s.push_back({"ladder_L2_L4", br(Q::L2, Q::L4), ci(-2 * p) * Q::L3});
            s.push_back({"ladder_L2_L3", br(Q::L2, Q::L3), ci(-2 * p) * Q::L2 * Q::L4});
            break;
        case FamilyKind::SphereGeneric:
            s.push_back({"ladder_L2_L4", br(Q::L2, Q::L4), c(-4 * p) * Q::L3});
            s.push_back({"ladder_L2_L3", br(Q::L2, Q::L3), c(4 * p) * Q::L2 * Q::L4});
            break;
        case FamilyKind::Oscillator: {
            Expr w = c(p * f.q) * Q::Omega;
            s.push_back({"ladder_L1_L3", br(Q::L1, Q::L3), c(-4) * w * Q::L4});
            s.push_back({"ladder_L1_L4", br(Q::L1, Q::L4), c(-4) * w * Q::L3});
            s.push_back({"ladder_L2_L3", br(Q::L2, Q::L3), c(4) * w * Q::L4});
            s.push_back({"ladder_L2_L4", br(Q::L2, Q::L4), c(4) * w * Q::L3});
            s.push_back({"H_L1", br(Q::H, Q::L1), c(0)});
            break;
        }
    }
    s.push_back({"H_L2", br(Q::H, Q::L2), c(0)});
    s.push_back({"H_L3", br(Q::H, Q::L3), c(0)});
    s.push_back({"H_L4", br(Q::H, Q::L4), c(0)});
    return s;
}

std::vector<IdentitySpec> l5_suite(const FamilySpec& f) {
    std::vector<IdentitySpec> s;
    s.push_back({"H_L5", br(Q::H, Q::L5), c(0)});
    if (f.kind == FamilyKind::Ttw) s.push_back({"L2_L5", br(Q::L2, Q::L5), c(-4 * f.p) * Q::L4});
    if (f.kind == FamilyKind::SphereGeneric) s.push_back({"L2_L5", br(Q::L2, Q::L5), c(4 * f.p) * Q::L4});
    return s;
}

std::vector<IdentitySpec> corrected_forms(const FamilySpec& f) {
    const long p = f.p;
    const long p2 = p * p;
    std::vector<IdentitySpec> s;
    switch (f.kind) {
        case FamilyKind::Ttw:
            s.push_back({"L4_R", br(Q::L4, Q::R), c(8 * p2) * pow(Q::L4, 2) - c(32 * p2) * Q::dP_dL2});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), c(-2 * p) * pow(Q::L4, 2) + c(8 * p) * Q::dP_dL2});
            break;
        case FamilyKind::SphereGeneric:
            s.push_back({"L4_R", br(Q::L4, Q::R), c(8 * p2) * pow(Q::L4, 2) - c(32 * p2) * Q::dP_dL2});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), c(2 * p) * pow(Q::L4, 2) - c(8 * p) * Q::dP_dL2});
            break;
        case FamilyKind::Coulomb:
            s.push_back({"L4_R", br(Q::L4, Q::R), c(2 * p2) * pow(Q::L4, 2)});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), ci(-p) * pow(Q::L4, 2)});
            s.push_back({"ladder_L2_L4", br(Q::L2, Q::L4), ci(-2 * p) * Q::L3});
            s.push_back({"ladder_L2_L3", br(Q::L2, Q::L3), ci(-2 * p) * Q::L2 * Q::L4});
            break;
        case FamilyKind::Sphere:
            s.push_back({"L4_R", br(Q::L4, Q::R), c(2 * p2) * pow(Q::L4, 2) + c(8 * p2) * Q::dP_dL2});
            s.push_back({"L3_L4", br(Q::L3, Q::L4), ci(-p) * pow(Q::L4, 2) - ci(4 * p) * Q::dP_dL2});
            break;
        case FamilyKind::Oscillator: {
            Expr w = c(p * f.q) * Q::Omega;
            s.push_back({"L3_L4", br(Q::L3, Q::L4), c(-8) * w * Q::dP_dL1 + c(8) * w * Q::dP_dL2});
            break;
        }
    }
    return s;
}

}  // namespace sia
