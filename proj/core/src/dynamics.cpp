#include "sia/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <random>

namespace sia {

namespace {

// Rational to long double without the detour through double: two double
// limbs from a 128-bit float.
Real to_real(const Rational& q) {
    mpf_class x(q, 128);
    double hi = x.get_d();
    mpf_class rest = x - hi;
    return Real(hi) + Real(rest.get_d());
}

Complex to_complex(const GaussianRational& g) { return {to_real(g.re()), to_real(g.im())}; }

Complex ipow(Complex b, int e) {
    if (e < 0) return Real(1) / ipow(b, -e);
    Complex r = 1;
    while (e > 0) {
        if (e & 1) r *= b;
        e >>= 1;
        if (e) b *= b;
    }
    return r;
}

bool finite(const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

bool has_bracket(const Expr& e) {
    if (e.kind() == Expr::Kind::Bracket) return true;
    for (const auto& a : e.args())
        if (has_bracket(a)) return true;
    return false;
}

Complex eval_numeric(const Expr& e, const std::map<Quantity, Complex>& q) {
    switch (e.kind()) {
        case Expr::Kind::Atom: {
            auto it = q.find(e.quantity());
            if (it == q.end()) throw Error(std::string("no numeric value for ") + quantity_name(e.quantity()));
            return it->second;
        }
        case Expr::Kind::Const:
            return to_complex(e.value());
        case Expr::Kind::Add: {
            Complex acc = 0;
            for (const auto& a : e.args()) acc += eval_numeric(a, q);
            return acc;
        }
        case Expr::Kind::Mul: {
            Complex acc = 1;
            for (const auto& a : e.args()) acc *= eval_numeric(a, q);
            return acc;
        }
        case Expr::Kind::Pow:
            return ipow(eval_numeric(e.args()[0], q), e.exponent());
        case Expr::Kind::Bracket:
            break;
    }
    throw Error("eval_numeric: brackets have no pointwise value");
}

}  // namespace

// ---------------------------------------------------------------- compiled expressions

namespace {
template <class CTerm>
std::vector<CTerm> compile_poly(const Poly& p) {
    std::vector<CTerm> out;
    out.reserve(p.size());
    for (const auto& t : p.terms()) {
        CTerm c{to_complex(t.coeff), {}};
        for (SymbolId s = 0; s < kMaxSymbols; ++s)
            if (int e = t.mono[s]) c.f.push_back({s, e});
        out.push_back(std::move(c));
    }
    return out;
}
}  // namespace

CompiledExpr::CompiledExpr(const PhaseExpr& e) {
    terms_ = compile_poly<CTerm>(e.num());
    const auto& dens = e.chart()->denominators();
    for (std::size_t i = 0; i < dens.size(); ++i)
        if (int m = e.den().mult[i]) den_.push_back({compile_poly<CTerm>(dens[i]), m});
}

Complex CompiledExpr::eval_poly(const std::vector<CTerm>& poly, const std::array<Complex, kMaxSymbols>& v,
                                double* magnitude) {
    Complex acc = 0;
    double mag = 0;
    for (const auto& t : poly) {
        Complex term = t.c;
        for (const auto& f : t.f) {
            const Complex& x = v[f.s];
            // A zero parameter kills the term even next to a pole.
            if (f.e > 0 && x == Complex(0)) {
                term = 0;
                break;
            }
            term *= ipow(x, f.e);
        }
        acc += term;
        mag += std::abs(term);
    }
    if (magnitude) *magnitude = mag;
    return acc;
}

Complex CompiledExpr::operator()(const std::array<Complex, kMaxSymbols>& v) const {
    Complex num = eval_poly(terms_, v);
    for (const auto& [poly, m] : den_) num /= ipow(eval_poly(poly, v), m);
    return num;
}

double CompiledExpr::magnitude(const std::array<Complex, kMaxSymbols>& v) const {
    double mag = 0;
    eval_poly(terms_, v, &mag);
    for (const auto& [poly, m] : den_) mag /= std::pow(std::abs(eval_poly(poly, v)), m);
    return mag;
}

// ---------------------------------------------------------------- model

NumericModel::NumericModel(const FamilySpec& f, const LadderSet& ls, NumericParams params)
    : f_(&f), ls_(&ls), params_(std::move(params)), L2_(f.L2), H_(f.H) {
    if (f.act.lambda1) L1_ = CompiledExpr(f.L1);
    for (int v = 0; v < kCanonicalVars; ++v) dH_[v] = CompiledExpr(differentiate(f.H, v));

    names_ = {"H"};
    consts_ = {H_};
    if (f.act.lambda1) {
        names_.push_back("L1");
        consts_.push_back(L1_);
    }
    names_.push_back("L2");
    consts_.push_back(L2_);
    names_.push_back("L3");
    consts_.emplace_back(f.to_phase(ls.L3));
    names_.push_back("L4");
    consts_.emplace_back(f.to_phase(ls.L4));
    if (ls.L5) {
        names_.push_back("L5");
        consts_.emplace_back(f.to_phase(*ls.L5));
    }

    quantities_[Quantity::L3] = CompiledExpr(ls.L3);
    quantities_[Quantity::L4] = CompiledExpr(ls.L4);
    quantities_[Quantity::Lplus] = CompiledExpr(ls.Lplus);
    quantities_[Quantity::Lminus] = CompiledExpr(ls.Lminus);
    quantities_[Quantity::P] = CompiledExpr(f.P);
    quantities_[Quantity::dP_dL2] = CompiledExpr(f.dP_dL2);
    if (f.act.lambda1) quantities_[Quantity::dP_dL1] = CompiledExpr(f.dP_dL1);
    if (ls.L5) quantities_[Quantity::L5] = CompiledExpr(*ls.L5);

    for (const auto& id : structure_suite(f))
        if (!has_bracket(id.lhs) && !has_bracket(id.rhs)) relations_.push_back(id);
}

std::array<Complex, kMaxSymbols> NumericModel::values(const NumericState& st) const {
    const FamilySpec& f = *f_;
    const Chart& ph = *f.phase;
    std::array<Complex, kMaxSymbols> v{};
    for (int i = 0; i < kCanonicalVars; ++i) v[ph.canonical(i)] = st.z[i];
    for (const auto& [s, x] : params_) v[s] = x;
    const Complex x1 = st.z[0], x2 = st.z[1];
    const Real k = to_real(f.k);
    auto put = [&](const char* name, Complex x) { v[f.sym(name)] = x; };
    switch (f.kind) {
        case FamilyKind::Ttw:
            put("E", std::exp(Real(2) * x1));
            put("c", std::cos(Real(2) * k * x2));
            put("s", std::sin(Real(2) * k * x2));
            break;
        case FamilyKind::Coulomb:
            put("rho", std::exp(x1));
            put("w", std::exp(Complex(0, k) * x2));
            break;
        case FamilyKind::Sphere:
            if (std::abs(std::sin(x1)) < 1e-8) throw SingularityError("sphere: sin(theta) vanishes");
            put("t", std::cos(x1) / std::sin(x1));
            put("cphi", std::cos(k * x2));
            put("sphi", std::sin(k * x2));
            break;
        case FamilyKind::Oscillator:
            break;
        case FamilyKind::SphereGeneric:
            put("C", std::cosh(Real(2) * x1));
            put("Sh", std::sinh(Real(2) * x1));
            put("c", std::cos(Real(2) * k * x2));
            put("s", std::sin(Real(2) * k * x2));
            break;
    }
    // A vanishing Laurent generator is only a pole where its coefficient is
    // nonzero; that shows up as a non-finite action value below.
    for (SymbolId s = 0; s < kMaxSymbols; ++s)
        if (ph.has(s) && !finite(v[s])) throw SingularityError(f.name + ": non-finite " + (*f.table)[s].name);
    v[f.act.lambda] = L2_(v);
    if (f.act.lambda1) v[*f.act.lambda1] = L1_(v);
    if (f.act.h) v[*f.act.h] = H_(v);
    if (f.act.root) v[*f.act.root] = std::sqrt(v[f.act.lambda]);
    for (std::optional<SymbolId> s : {std::optional(f.act.lambda), f.act.lambda1, f.act.h})
        if (s && !finite(v[*s])) throw SingularityError(f.name + ": pole at the state");
    return v;
}

std::array<Complex, kCanonicalVars> NumericModel::hamilton_rhs(const NumericState& s) const {
    auto v = values(s);
    std::array<Complex, kCanonicalVars> d;
    for (int j = 0; j < 2; ++j) {
        d[j] = dH_[j + 2](v);
        d[j + 2] = -dH_[j](v);
    }
    for (const auto& x : d)
        if (!finite(x)) throw SingularityError(f_->name + ": non-finite vector field");
    return d;
}

std::vector<Complex> NumericModel::constants(const NumericState& s) const {
    auto v = values(s);
    std::vector<Complex> out;
    out.reserve(consts_.size());
    for (const auto& c : consts_) out.push_back(c(v));
    return out;
}

std::vector<double> NumericModel::constant_magnitudes(const NumericState& s) const {
    auto v = values(s);
    std::vector<double> out;
    for (const auto& c : consts_) out.push_back(c.magnitude(v));
    return out;
}

std::vector<std::pair<std::string, double>> NumericModel::relation_residuals(const NumericState& s) const {
    const FamilySpec& f = *f_;
    auto v = values(s);
    std::map<Quantity, Complex> q;
    for (const auto& [k, c] : quantities_) q[k] = c(v);
    q[Quantity::H] = H_(v);
    q[Quantity::L2] = v[f.act.lambda];
    if (f.act.lambda1) q[Quantity::L1] = v[*f.act.lambda1];
    if (f.act.root) q[Quantity::Lambda] = v[*f.act.root];
    if (auto om = f.table->find("omega")) q[Quantity::Omega] = v[*om];
    q[Quantity::R] = q[Quantity::L3] * to_complex(f.r_factor);
    std::vector<std::pair<std::string, double>> out;
    for (const auto& id : relations_) {
        Complex a = eval_numeric(id.lhs, q), b = eval_numeric(id.rhs, q);
        Real scale = std::max({std::abs(a), std::abs(b), Real(1e-30)});
        out.push_back({id.name, double(std::abs(a - b) / scale)});
    }
    return out;
}

// ---------------------------------------------------------------- integrator

namespace {

using Vec = std::array<Complex, kCanonicalVars>;

// Dormand-Prince 5(4) tableau.
constexpr Real c2 = 1.0L / 5, c3 = 3.0L / 10, c4 = 4.0L / 5, c5 = 8.0L / 9;
constexpr Real a21 = 1.0L / 5;
constexpr Real a31 = 3.0L / 40, a32 = 9.0L / 40;
constexpr Real a41 = 44.0L / 45, a42 = -56.0L / 15, a43 = 32.0L / 9;
constexpr Real a51 = 19372.0L / 6561, a52 = -25360.0L / 2187, a53 = 64448.0L / 6561, a54 = -212.0L / 729;
constexpr Real a61 = 9017.0L / 3168, a62 = -355.0L / 33, a63 = 46732.0L / 5247, a64 = 49.0L / 176,
                 a65 = -5103.0L / 18656;
constexpr Real b1 = 35.0L / 384, b3 = 500.0L / 1113, b4 = 125.0L / 192, b5 = -2187.0L / 6784, b6 = 11.0L / 84;
constexpr Real e1 = 71.0L / 57600, e3 = -71.0L / 16695, e4 = 71.0L / 1920, e5 = -17253.0L / 339200,
                 e6 = 22.0L / 525, e7 = -1.0L / 40;

NumericState axpy(const NumericState& s, Real h, std::initializer_list<std::pair<Real, const Vec*>> ks,
                  double dt) {
    NumericState r = s;
    r.t = s.t + dt;
    for (int i = 0; i < kCanonicalVars; ++i) {
        Complex acc = 0;
        for (const auto& [a, k] : ks) acc += a * (*k)[i];
        r.z[i] += h * acc;
    }
    return r;
}

}  // namespace

Trajectory integrate(const NumericModel& m, const NumericState& s0, const IntegrateOptions& opt) {
    if (!(opt.tol > 0)) throw Error("integrate: tol must be positive");
    Trajectory tr;
    tr.states.push_back(s0);
    if (opt.T <= 0) return tr;
    const int n = std::max(opt.samples - 1, 1);
    NumericState s = s0;
    double h = std::min(opt.T / n, 1e-2);
    try {
        Vec k1 = m.hamilton_rhs(s);
        for (int i = 1; i <= n; ++i) {
            const double target = opt.T * i / n;
            while (s.t < target) {
                if (tr.steps + tr.rejected > opt.max_steps) throw SingularityError("step budget exhausted");
                bool last = false;
                double step = h;
                if (s.t + step >= target) {
                    step = target - s.t;
                    last = true;
                }
                Vec k2 = m.hamilton_rhs(axpy(s, step, {{a21, &k1}}, c2 * step));
                Vec k3 = m.hamilton_rhs(axpy(s, step, {{a31, &k1}, {a32, &k2}}, c3 * step));
                Vec k4 = m.hamilton_rhs(axpy(s, step, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, c4 * step));
                Vec k5 = m.hamilton_rhs(axpy(s, step, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, c5 * step));
                Vec k6 = m.hamilton_rhs(
                    axpy(s, step, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, step));
                NumericState y = axpy(s, step, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, step);
                if (last) y.t = target;
                Vec k7 = m.hamilton_rhs(y);
                double err = 0;
                for (int j = 0; j < kCanonicalVars; ++j) {
                    Complex ej = Real(step) * (e1 * k1[j] + e3 * k3[j] + e4 * k4[j] + e5 * k5[j] + e6 * k6[j] + e7 * k7[j]);
                    Real sc = opt.tol * (1 + std::max(std::abs(s.z[j]), std::abs(y.z[j])));
                    err = std::max(err, double(std::abs(ej) / sc));
                }
                double factor = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
                if (err <= 1) {
                    s = y;
                    k1 = k7;
                    ++tr.steps;
                    if (!last) h = step * factor;
                } else {
                    ++tr.rejected;
                    h = step * factor;
                    if (h < 1e-14 * std::max(1.0, std::abs(s.t))) throw SingularityError("step-size underflow");
                }
            }
            tr.states.push_back(s);
        }
    } catch (const SingularityError& e) {
        tr.truncated = std::string(e.what()) + " at t=" + std::to_string(s.t);
    }
    return tr;
}

DriftReport conservation_drift(const NumericModel& m, const Trajectory& tr, double tol) {
    DriftReport r;
    r.truncated = tr.truncated;
    const auto& names = m.constant_names();
    std::vector<Complex> c0 = m.constants(tr.states.front());
    double span = tr.states.back().t - tr.states.front().t;
    for (std::size_t i = 0; i < names.size(); ++i) r.drift.push_back({names[i], c0[i], 0, 0, tol, span});
    std::vector<std::pair<std::string, double>> rel;
    for (const auto& st : tr.states) {
        for (const auto& z : st.z)
            if (std::abs(z.imag()) >= 1e-10) r.real = false;
        auto c = m.constants(st);
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (std::abs(c[i].imag()) >= 1e-10) r.real = false;
            double d = std::abs(c[i] - c0[i]) / std::max(std::abs(c0[i]), Real(1e-30));
            r.drift[i].max_rel = std::max(r.drift[i].max_rel, d);
            r.drift[i].final_rel = d;
        }
        auto res = m.relation_residuals(st);
        if (rel.empty()) rel = res;
        for (std::size_t i = 0; i < res.size(); ++i) rel[i].second = std::max(rel[i].second, res[i].second);
    }
    r.relations = std::move(rel);
    return r;
}

NumericParams random_params(const FamilySpec& f, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    NumericParams out;
    for (SymbolId s : f.parameters) {
        bool freq = (*f.table)[s].name == "omega";
        // Small frequencies keep the unbounded ttw direction tame over T = 10.
        // The oscillator gets omega = i nu: its -omega^2 x^2 terms become a
        // confining nu^2 x^2 and the orbit stays bounded.
        std::uniform_int_distribution<int> d(freq ? 5 : 50, freq ? 20 : 200);
        double x = d(rng) / 100.0;
        out[s] = freq && f.kind == FamilyKind::Oscillator ? Complex(0, x) : Complex(x, 0);
    }
    return out;
}

NumericState random_initial_state(const NumericModel& m, std::uint64_t seed) {
    const FamilySpec& f = m.family();
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0, 1);
    const double pi = std::numbers::pi, k = f.k.get_d();
    for (int attempt = 0; attempt < 64; ++attempt) {
        NumericState s;
        auto mom = [&] { return 2 * u(rng) - 1; };
        switch (f.kind) {
            case FamilyKind::Ttw:
                s.z = {u(rng) - 0.5, pi / (2 * k) * (0.25 + 0.5 * u(rng)), mom(), mom()};
                break;
            case FamilyKind::Coulomb:
                s.z = {u(rng) - 0.5, 2 * pi * u(rng), mom(), mom()};
                break;
            case FamilyKind::Sphere:
                s.z = {pi * (0.25 + 0.5 * u(rng)), pi / (2 * k) * (u(rng) - 0.5), mom(), mom()};
                break;
            case FamilyKind::Oscillator:
                s.z = {0.5 + u(rng), 0.5 + u(rng), mom(), mom()};
                break;
            case FamilyKind::SphereGeneric:
                s.z = {0.3 + 0.7 * u(rng), pi / (2 * k) * (0.25 + 0.5 * u(rng)), mom(), mom()};
                break;
        }
        try {
            m.hamilton_rhs(s);
            return s;
        } catch (const SingularityError&) {
        }
    }
    throw Error("random_initial_state: no regular point found");
}

void write_csv(std::ostream& os, const NumericModel& m, const Trajectory& tr) {
    const Chart& ph = *m.family().phase;
    os << "t";
    for (int i = 0; i < kCanonicalVars; ++i) {
        const std::string& n = ph.symbols()[ph.canonical(i)].name;
        os << ',' << n << "_re," << n << "_im";
    }
    for (const auto& n : m.constant_names()) os << ',' << n << "_re," << n << "_im";
    os << '\n' << std::setprecision(17);
    for (const auto& st : tr.states) {
        os << st.t;
        for (const auto& z : st.z) os << ',' << z.real() << ',' << z.imag();
        for (const auto& c : m.constants(st)) os << ',' << c.real() << ',' << c.imag();
        os << '\n';
    }
}

}  // namespace sia
