#include "sia/verifier.hpp"

#include <algorithm>

namespace sia {

namespace {
using GR = GaussianRational;
}

QuantityTable::QuantityTable(const FamilySpec& f, const LadderSet& ls) : f_(&f) {
    auto set = [&](Quantity k, PhaseExpr e) { q_[static_cast<int>(k)] = std::move(e); };
    const ChartPtr& on = f.onshell;
    set(Quantity::H, f.onshell_H());
    set(Quantity::L2, PhaseExpr::symbol(on, f.act.lambda));
    if (f.act.lambda1) set(Quantity::L1, PhaseExpr::symbol(on, *f.act.lambda1));
    if (f.act.root) set(Quantity::Lambda, PhaseExpr::symbol(on, *f.act.root));
    if (auto om = f.table->find("omega")) set(Quantity::Omega, PhaseExpr::symbol(on, *om));
    PhaseExpr l3 = f.to_onshell(ls.L3);
    set(Quantity::L3, l3);
    set(Quantity::L4, f.to_onshell(ls.L4));
    set(Quantity::R, l3 * f.r_factor);
    if (ls.L5) set(Quantity::L5, f.to_onshell(*ls.L5));
    set(Quantity::Lplus, f.to_onshell(ls.Lplus));
    set(Quantity::Lminus, f.to_onshell(ls.Lminus));
    set(Quantity::P, f.to_onshell(f.P));
    set(Quantity::dP_dL2, f.to_onshell(f.dP_dL2));
    if (f.act.lambda1) set(Quantity::dP_dL1, f.to_onshell(f.dP_dL1));
}

PhaseExpr evaluate(const Expr& e, const QuantityTable& t) {
    const ChartPtr& on = t.family().onshell;
    switch (e.kind()) {
        case Expr::Kind::Atom: {
            const auto& v = t[e.quantity()];
            if (!v) throw Error(std::string("quantity not available: ") + quantity_name(e.quantity()));
            return *v;
        }
        case Expr::Kind::Const:
            return PhaseExpr::constant(on, e.value());
        case Expr::Kind::Add: {
            PhaseExpr acc = PhaseExpr::constant(on, 0);
            for (const auto& a : e.args()) acc += evaluate(a, t);
            return acc;
        }
        case Expr::Kind::Mul: {
            PhaseExpr acc = PhaseExpr::constant(on, 1);
            for (const auto& a : e.args()) {
                if (a.kind() == Expr::Kind::Const)
                    acc *= a.value();
                else
                    acc *= evaluate(a, t);
            }
            return acc;
        }
        case Expr::Kind::Pow:
            return evaluate(e.args()[0], t).pow(e.exponent());
        case Expr::Kind::Bracket:
            return poisson_bracket(evaluate(e.args()[0], t), evaluate(e.args()[1], t));
    }
    throw Error("evaluate: bad node");
}

IdentityCheck check_identity(const IdentitySpec& id, const QuantityTable& t, const std::string& group) {
    IdentityCheck c;
    c.name = id.name;
    c.group = group;
    c.lhs_latex = id.lhs.to_latex();
    c.rhs_latex = id.rhs.to_latex();
    PhaseExpr residual = evaluate(id.lhs, t) - evaluate(id.rhs, t);
    c.pass = residual.is_zero();
    c.residual_terms = residual.num().size();
    return c;
}

std::vector<IdentityCheck> run_suite(const std::vector<IdentitySpec>& suite, const FamilySpec& f,
                                     const LadderSet& ls, const QuantityTable& t, const std::string& group,
                                     const VerifyOptions& opt) {
    std::vector<IdentityCheck> out;
    for (const auto& id : suite) {
        IdentityCheck c = check_identity(id, t, group);
        if (opt.oracle) c.oracle = oracle_check(f, ls, id, opt.trials, opt.seed);
        out.push_back(std::move(c));
    }
    return out;
}

IdentitySpec inject_fault(const IdentitySpec& id) {
    IdentitySpec bad = id;
    bool zero = id.rhs.kind() == Expr::Kind::Const && id.rhs.value().is_zero();
    bad.rhs = zero ? Expr(GR(1)) : Expr(GR::frac(65, 64)) * id.rhs;
    bad.name += "_faulted";
    return bad;
}

int functional_rank(const FamilySpec& f, const LadderSet& ls, std::uint64_t seed, int points) {
    Sampler s(f, seed);
    int best = 0;
    for (int i = 0; i < points; ++i) {
        SamplePoint pt = s.draw(SampleMode::OnShell);
        std::vector<Jet> gs{eval_jet(f.H, pt)};
        if (f.kind == FamilyKind::Oscillator) {
            gs.push_back(eval_jet(f.L1, pt));
            gs.push_back(eval_jet(ls.L3, pt));
        } else {
            gs.push_back(eval_jet(f.L2, pt));
            gs.push_back(eval_jet(ls.L4, pt));
        }
        best = std::max(best, gradient_rank(gs));
    }
    return best;
}

Degrees momentum_degrees(const FamilySpec& f, const LadderSet& ls) {
    Degrees d;
    d.L3 = momentum_degree(f.to_phase(ls.L3));
    d.L4 = momentum_degree(f.to_phase(ls.L4));
    if (ls.L5) d.L5 = momentum_degree(f.to_phase(*ls.L5));
    return d;
}

bool VerificationReport::all_pass() const {
    for (const auto& c : identities)
        if (!c.pass) return false;
    return true;
}

namespace {

std::vector<IdentitySpec> perturbed(std::vector<IdentitySpec> suite, const FamilySpec& f, const std::string& target) {
    if (target.empty()) return suite;
    for (auto& id : suite)
        if (target == id.name || target == f.name + ":" + id.name) {
            std::string name = id.name;
            id = inject_fault(id);
            id.name = name;
        }
    return suite;
}

}  // namespace

VerificationReport verify_family(const FamilySpec& f, const LadderSet& ls, const VerifyOptions& opt) {
    VerificationReport r;
    r.family = f.name;
    r.p = f.p;
    r.q = f.q;
    QuantityTable t(f, ls);
    auto run = [&](std::vector<IdentitySpec> suite, const char* group) {
        for (auto&& c : run_suite(perturbed(std::move(suite), f, opt.perturb), f, ls, t, group, opt))
            r.identities.push_back(std::move(c));
    };
    run(structure_suite(f), "structure");
    run(ladder_bracket_suite(f), "ladder");
    if (ls.L5) run(l5_suite(f), "l5");
    if (opt.errata) r.errata = run_suite(corrected_forms(f), f, ls, t, "errata", opt);
    r.rank = functional_rank(f, ls, opt.seed, opt.rank_points);
    r.degrees = momentum_degrees(f, ls);
    return r;
}

}  // namespace sia
