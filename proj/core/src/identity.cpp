#include "sia/identity.hpp"

namespace sia {

const char* quantity_name(Quantity q) {
    switch (q) {
        case Quantity::H: return "H";
        case Quantity::L1: return "L1";
        case Quantity::L2: return "L2";
        case Quantity::L3: return "L3";
        case Quantity::L4: return "L4";
        case Quantity::L5: return "L5";
        case Quantity::R: return "R";
        case Quantity::Lplus: return "L+";
        case Quantity::Lminus: return "L-";
        case Quantity::P: return "P";
        case Quantity::dP_dL1: return "dP/dL1";
        case Quantity::dP_dL2: return "dP/dL2";
        case Quantity::Lambda: return "sqrt(L2)";
        case Quantity::Omega: return "omega";
    }
    return "?";
}

std::string quantity_latex(Quantity q) {
    switch (q) {
        case Quantity::H: return "\\mathcal{H}";
        case Quantity::L1: return "\\mathcal{L}_1";
        case Quantity::L2: return "\\mathcal{L}_2";
        case Quantity::L3: return "\\mathcal{L}_3";
        case Quantity::L4: return "\\mathcal{L}_4";
        case Quantity::L5: return "\\mathcal{L}_5";
        case Quantity::R: return "\\mathcal{R}";
        case Quantity::Lplus: return "\\mathcal{L}^+";
        case Quantity::Lminus: return "\\mathcal{L}^-";
        case Quantity::P: return "P";
        case Quantity::dP_dL1: return "\\frac{\\partial P}{\\partial \\mathcal{L}_1}";
        case Quantity::dP_dL2: return "\\frac{\\partial P}{\\partial \\mathcal{L}_2}";
        case Quantity::Lambda: return "\\sqrt{\\mathcal{L}_2}";
        case Quantity::Omega: return "\\omega";
    }
    return "?";
}

Expr::Expr(Quantity q) : kind_(Kind::Atom), q_(q) {}
Expr::Expr(GaussianRational c) : kind_(Kind::Const), c_(std::move(c)) {}

Expr Expr::node(Kind k, std::vector<Expr> args, int exponent) {
    Expr e;
    e.kind_ = k;
    e.args_ = std::move(args);
    e.exponent_ = exponent;
    return e;
}

namespace {
bool is_const(const Expr& e, long v) { return e.kind() == Expr::Kind::Const && e.value() == GaussianRational(v); }
}  // namespace

Expr operator+(const Expr& a, const Expr& b) {
    if (is_const(a, 0)) return b;
    if (is_const(b, 0)) return a;
    std::vector<Expr> args;
    for (const Expr* x : {&a, &b}) {
        if (x->kind() == Expr::Kind::Add)
            args.insert(args.end(), x->args().begin(), x->args().end());
        else
            args.push_back(*x);
    }
    return Expr::node(Expr::Kind::Add, std::move(args));
}

Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (is_const(a, 1)) return b;
    if (is_const(b, 1)) return a;
    if (a.kind() == Expr::Kind::Const && b.kind() == Expr::Kind::Const) return Expr(a.value() * b.value());
    std::vector<Expr> args;
    GaussianRational c(1);
    for (const Expr* x : {&a, &b}) {
        if (x->kind() == Expr::Kind::Mul) {
            for (const auto& y : x->args()) {
                if (y.kind() == Expr::Kind::Const)
                    c *= y.value();
                else
                    args.push_back(y);
            }
        } else if (x->kind() == Expr::Kind::Const) {
            c *= x->value();
        } else {
            args.push_back(*x);
        }
    }
    if (c.is_zero()) return Expr(0);
    if (!c.is_one()) args.insert(args.begin(), Expr(c));
    if (args.size() == 1) return args[0];
    return Expr::node(Expr::Kind::Mul, std::move(args));
}

Expr Expr::operator-() const { return Expr(-1) * *this; }

Expr pow(const Expr& a, int e) {
    if (e == 0) return Expr(1);
    if (e == 1) return a;
    return Expr::node(Expr::Kind::Pow, {a}, e);
}

Expr bracket(const Expr& a, const Expr& b) { return Expr::node(Expr::Kind::Bracket, {a, b}); }

bool Expr::uses(Quantity q) const {
    if (kind_ == Kind::Atom) return q_ == q;
    for (const auto& a : args_)
        if (a.uses(q)) return true;
    return false;
}

namespace {

enum class Style { Text, Latex };

std::string render(const Expr& e, Style st);

std::string render_factor(const Expr& e, Style st) {
    std::string s = render(e, st);
    if (e.kind() == Expr::Kind::Add) return "(" + s + ")";
    if (e.kind() == Expr::Kind::Const && !(e.value().is_real() || sgn(e.value().re()) == 0)) return "(" + s + ")";
    return s;
}

std::string render(const Expr& e, Style st) {
    bool tex = st == Style::Latex;
    switch (e.kind()) {
        case Expr::Kind::Atom:
            return tex ? quantity_latex(e.quantity()) : quantity_name(e.quantity());
        case Expr::Kind::Const:
            return tex ? e.value().to_latex() : e.value().to_string();
        case Expr::Kind::Pow: {
            std::string base = render_factor(e.args()[0], st);
            if (e.args()[0].kind() == Expr::Kind::Mul || e.args()[0].kind() == Expr::Kind::Bracket)
                base = "(" + base + ")";
            return base + (tex ? "^{" + std::to_string(e.exponent()) + "}" : "^" + std::to_string(e.exponent()));
        }
        case Expr::Kind::Bracket:
            return (tex ? "\\{" : "{") + render(e.args()[0], st) + ", " + render(e.args()[1], st) +
                   (tex ? "\\}" : "}");
        case Expr::Kind::Mul: {
            std::string sign;
            std::vector<std::string> parts;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                const Expr& f = e.args()[i];
                if (i == 0 && f.kind() == Expr::Kind::Const && f.value() == GaussianRational(-1)) {
                    sign = "-";
                    continue;
                }
                parts.push_back(render_factor(f, st));
            }
            std::string out;
            for (const auto& p : parts) out += (out.empty() ? "" : (tex ? " " : "*")) + p;
            return sign + out;
        }
        case Expr::Kind::Add: {
            std::string out;
            for (std::size_t i = 0; i < e.args().size(); ++i) {
                std::string t = render(e.args()[i], st);
                if (i == 0)
                    out = t;
                else if (!t.empty() && t[0] == '-')
                    out += " - " + t.substr(1);
                else
                    out += " + " + t;
            }
            return out;
        }
    }
    return "?";
}

}  // namespace

std::string Expr::to_latex() const { return render(*this, Style::Latex); }
std::string Expr::to_string() const { return render(*this, Style::Text); }

std::string to_latex(const IdentitySpec& id) { return id.lhs.to_latex() + " = " + id.rhs.to_latex(); }

}  // namespace sia
