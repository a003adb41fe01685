#include "pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

namespace sia::cli {

namespace {

constexpr const char* kVersion = "1.0.0";

const char* parity_name(Parity p) {
    switch (p) {
        case Parity::Odd: return "odd";
        case Parity::Even: return "even";
        case Parity::Uniform: return "uniform";
    }
    return "?";
}

std::uint64_t cell_seed(const RunConfig& c, const std::string& family, int p, int q) {
    const auto& names = family_names();
    auto idx = static_cast<std::uint64_t>(std::find(names.begin(), names.end(), family) - names.begin());
    return c.seed + 7919 * idx + 31 * static_cast<std::uint64_t>(p) + static_cast<std::uint64_t>(q);
}

std::string cell_label(const CellResult& r) {
    return r.family + "(" + std::to_string(r.p) + "," + std::to_string(r.q) + ")";
}

bool wants(const RunConfig& c, const char* format) {
    return std::find(c.formats.begin(), c.formats.end(), format) != c.formats.end();
}

DynamicsSummary run_dynamics(const RunConfig& c, const FamilySpec& f, const LadderSet& ls, std::uint64_t seed) {
    DynamicsSummary d;
    NumericModel m(f, ls, random_params(f, seed));
    IntegrateOptions io;
    io.tol = c.tol;
    io.T = c.horizon;
    io.samples = c.samples;
    bool csv = wants(c, "csv") && !c.out.empty();
    for (int i = 0; i < c.trajectories; ++i) {
        NumericState s0 = random_initial_state(m, seed + 1 + static_cast<std::uint64_t>(i));
        Trajectory tr = integrate(m, s0, io);
        DriftReport r = conservation_drift(m, tr, c.tol);
        if (csv) {
            auto dir = std::filesystem::path(c.out) / "trajectories";
            std::filesystem::create_directories(dir);
            std::ofstream os(dir / (f.name + "_" + std::to_string(f.p) + "_" + std::to_string(f.q) + "_" +
                                    std::to_string(i) + ".csv"));
            write_csv(os, m, tr);
        }
        ++d.trajectories;
        if (!r.truncated.empty()) d.truncated.push_back("trajectory " + std::to_string(i) + ": " + r.truncated);
        d.real = d.real && r.real;
        if (d.drift.empty()) {
            d.drift = r.drift;
            d.relations = r.relations;
            continue;
        }
        for (std::size_t k = 0; k < r.drift.size(); ++k)
            if (r.drift[k].max_rel > d.drift[k].max_rel) d.drift[k] = r.drift[k];
        for (std::size_t k = 0; k < r.relations.size(); ++k)
            d.relations[k].second = std::max(d.relations[k].second, r.relations[k].second);
    }
    return d;
}

CellResult run_cell(const RunConfig& c, Mode mode, const std::string& family, int p, int q) {
    CellResult out;
    out.family = family;
    out.p = p;
    out.q = q;
    try {
        FamilySpec f = make_family(family, p, q);
        LadderSet ls = build_ladder_set(f);
        ConstructInfo ci;
        ci.degrees = momentum_degrees(f, ls);
        ci.terms_L3 = ls.L3.num().size();
        ci.terms_L4 = ls.L4.num().size();
        if (ls.L5) ci.terms_L5 = ls.L5->num().size();
        ci.parity = parity_name(ls.parity);
        if (ls.c0) ci.c0 = to_latex(ls.c0->num(), *f.table);
        out.construct = ci;
        for (const auto& id : structure_suite(f)) out.identity_latex.push_back(to_latex(id));

        std::uint64_t seed = cell_seed(c, family, p, q);
        if (mode == Mode::Verify || mode == Mode::All) {
            VerifyOptions vo;
            vo.trials = c.trials;
            vo.seed = seed;
            vo.oracle = c.oracle;
            vo.rank_points = c.rank_points;
            vo.perturb = c.perturb;
            out.verify = verify_family(f, ls, vo);
        }
        if ((mode == Mode::Integrate || mode == Mode::All) && c.trajectories > 0)
            out.dynamics = run_dynamics(c, f, ls, seed);
    } catch (const std::exception& e) {
        out.error = e.what();
    }
    return out;
}

}  // namespace

RunResult run(const RunConfig& c, Mode mode) {
    std::vector<std::pair<std::string, std::pair<int, int>>> jobs;
    for (const auto& f : c.families)
        for (auto pq : c.grid) jobs.push_back({f, pq});

    RunResult r;
    r.cells.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < jobs.size();)
            r.cells[i] = run_cell(c, mode, jobs[i].first, jobs[i].second.first, jobs[i].second.second);
    };
    std::size_t n = c.jobs > 0 ? static_cast<std::size_t>(c.jobs) : std::max(1u, std::thread::hardware_concurrency());
    n = std::min(n, std::max<std::size_t>(jobs.size(), 1));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < n; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& cell : r.cells) {
        std::string label = cell_label(cell);
        if (!cell.error.empty()) {
            r.pass = false;
            r.identities_pass = false;
            r.failures.push_back(label + ": error: " + cell.error);
            continue;
        }
        if (cell.verify) {
            for (const auto& id : cell.verify->identities)
                if (!id.pass) {
                    r.identities_pass = false;
                    r.failures.push_back(label + ": identity " + id.name + " fails");
                }
            if (cell.verify->rank != 3) r.failures.push_back(label + ": rank " + std::to_string(cell.verify->rank));
        }
        if (cell.dynamics) {
            for (const auto& d : cell.dynamics->drift)
                if (!(d.max_rel <= c.drift_bound)) r.failures.push_back(label + ": drift of " + d.constant);
            for (const auto& [name, v] : cell.dynamics->relations)
                if (!(v <= c.drift_bound)) r.failures.push_back(label + ": pointwise residual of " + name);
            for (const auto& t : cell.dynamics->truncated) r.failures.push_back(label + ": " + t);
        }
    }
    r.pass = r.failures.empty();
    return r;
}

nlohmann::ordered_json to_json(const RunConfig& c, const RunResult& r) {
    using J = nlohmann::ordered_json;
    J cfg;
    cfg["families"] = c.families;
    J grid = J::array();
    for (auto [p, q] : c.grid) grid.push_back({p, q});
    cfg["grid"] = grid;
    cfg["tol"] = c.tol;
    cfg["trials"] = c.trials;
    cfg["seed"] = std::to_string(c.seed);
    cfg["trajectories"] = c.trajectories;
    cfg["horizon"] = c.horizon;
    cfg["drift_bound"] = c.drift_bound;
    cfg["rank_points"] = c.rank_points;
    cfg["oracle"] = c.oracle;
    cfg["oracle_retry_budget"] = Sampler::kRetryBudget;
    cfg["perturb"] = c.perturb;

    J cells = J::array();
    for (const auto& cell : r.cells) {
        J j;
        j["family"] = cell.family;
        j["p"] = cell.p;
        j["q"] = cell.q;
        if (!cell.error.empty()) j["error"] = cell.error;
        if (cell.construct) {
            const auto& ci = *cell.construct;
            j["parity"] = ci.parity;
            J deg;
            deg["L3"] = ci.degrees.L3;
            deg["L4"] = ci.degrees.L4;
            deg["L5"] = ci.degrees.L5 ? J(*ci.degrees.L5) : J(nullptr);
            j["degrees"] = deg;
            j["terms"] = {{"L3", ci.terms_L3}, {"L4", ci.terms_L4}, {"L5", ci.terms_L5}};
            if (!ci.c0.empty()) j["l5_constant_term"] = ci.c0;
        }
        if (cell.verify) {
            auto list = [](const std::vector<IdentityCheck>& v) {
                J a = J::array();
                for (const auto& id : v) {
                    J e;
                    e["name"] = id.name;
                    e["pass"] = id.pass;
                    e["group"] = id.group;
                    if (id.oracle) e["oracle"] = *id.oracle;
                    e["residual_terms"] = id.residual_terms;
                    e["lhs"] = id.lhs_latex;
                    e["rhs"] = id.rhs_latex;
                    a.push_back(e);
                }
                return a;
            };
            j["identities"] = list(cell.verify->identities);
            j["errata"] = list(cell.verify->errata);
            j["rank"] = cell.verify->rank;
        }
        if (cell.dynamics) {
            const auto& d = *cell.dynamics;
            J drift = J::array();
            for (const auto& s : d.drift)
                drift.push_back({{"constant", s.constant},
                                 {"max_rel", s.max_rel},
                                 {"final_rel", s.final_rel},
                                 {"initial_re", s.initial.real()},
                                 {"initial_im", s.initial.imag()},
                                 {"tol", s.tol},
                                 {"span", s.span}});
            j["drift"] = drift;
            J rel = J::array();
            for (const auto& [name, v] : d.relations) rel.push_back({{"name", name}, {"max_rel", v}});
            j["relations"] = rel;
            j["trajectories"] = d.trajectories;
            j["real"] = d.real;
            j["truncated"] = d.truncated;
        }
        cells.push_back(j);
    }
    J out;
    out["tool"] = "sia";
    out["version"] = kVersion;
    out["config"] = cfg;
    out["cells"] = cells;
    out["failures"] = r.failures;
    out["pass"] = r.pass;
    return out;
}

std::string to_latex(const RunResult& r) {
    std::ostringstream os;
    for (const auto& cell : r.cells) {
        os << "% " << cell_label(cell) << "\n";
        os << "\\paragraph{" << cell.family << ", $(p,q) = (" << cell.p << "," << cell.q << ")$}\n";
        os << "\\begin{align*}\n";
        if (cell.verify) {
            bool first = true;
            for (const auto& id : cell.verify->identities) {
                if (id.group != "structure") continue;
                if (!first) os << " \\\\\n";
                first = false;
                os << id.lhs_latex << " &= " << id.rhs_latex << " && \\text{" << (id.pass ? "holds" : "fails")
                   << "}";
            }
            for (const auto& id : cell.verify->errata) {
                os << " \\\\\n"
                   << id.lhs_latex << " &= " << id.rhs_latex << " && \\text{corrected, "
                   << (id.pass ? "holds" : "fails") << "}";
            }
        } else {
            for (std::size_t i = 0; i < cell.identity_latex.size(); ++i) {
                std::string l = cell.identity_latex[i];
                auto eq = l.find(" = ");
                if (eq != std::string::npos) l.replace(eq, 3, " &= ");
                os << (i ? " \\\\\n" : "") << l;
            }
        }
        os << "\n\\end{align*}\n";
    }
    return os.str();
}

void write_outputs(const RunConfig& c, const RunResult& r, Mode) {
    if (c.out.empty()) return;
    std::filesystem::create_directories(c.out);
    if (wants(c, "json")) {
        std::ofstream os(std::filesystem::path(c.out) / "report.json");
        os << to_json(c, r).dump(2) << "\n";
    }
    if (wants(c, "latex")) {
        std::ofstream os(std::filesystem::path(c.out) / "report.tex");
        os << to_latex(r);
    }
}

}  // namespace sia::cli
