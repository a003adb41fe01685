// sia: construct, verify and integrate the superintegrable families.
#include "config.hpp"
#include "pipeline.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace sia::cli;

struct Overrides {
    std::string config;
    std::vector<std::string> families;
    std::optional<int> p, q;
    std::optional<double> tol;
    std::optional<int> trials;
    std::optional<std::string> out;
    std::vector<std::string> formats;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> perturb;
    std::optional<int> jobs;
    std::optional<int> trajectories;
    std::optional<double> horizon;
    bool no_oracle = false;
};

void add_run_options(CLI::App* cmd, Overrides& o) {
    cmd->add_option("--config", o.config, "flat key = value config file");
    cmd->add_option("--family", o.families, "family name(s); repeat or comma-separate")->delimiter(',');
    cmd->add_option("--p", o.p, "single cell: p");
    cmd->add_option("--q", o.q, "single cell: q");
    cmd->add_option("--tol", o.tol, "integrator tolerance");
    cmd->add_option("--trials", o.trials, "oracle trials per identity");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_option("--format", o.formats, "json, latex, csv")->delimiter(',');
    cmd->add_option("--seed", o.seed, "oracle and sampling seed");
    cmd->add_option("--perturb", o.perturb, "fault one identity: name or family:name");
    cmd->add_option("--jobs", o.jobs, "worker threads");
    cmd->add_option("--trajectories", o.trajectories, "trajectories per cell");
    cmd->add_option("--horizon", o.horizon, "integration time T");
    cmd->add_flag("--no-oracle", o.no_oracle, "skip the random-point oracle");
}

RunConfig resolve(const Overrides& o) {
    RunConfig c = o.config.empty() ? RunConfig{} : load_config(o.config);
    if (!o.families.empty()) c.families = o.families;
    if (o.p.has_value() != o.q.has_value()) throw ConfigError("--p and --q go together");
    if (o.p) c.grid = {{*o.p, *o.q}};
    if (o.tol) c.tol = *o.tol;
    if (o.trials) c.trials = *o.trials;
    if (o.out) c.out = *o.out;
    if (!o.formats.empty()) c.formats = o.formats;
    if (o.seed) c.seed = *o.seed;
    if (o.perturb) c.perturb = *o.perturb;
    if (o.jobs) c.jobs = *o.jobs;
    if (o.trajectories) c.trajectories = *o.trajectories;
    if (o.horizon) c.horizon = *o.horizon;
    if (o.no_oracle) c.oracle = false;
    validate(c);
    return c;
}

void print_summary(const RunResult& r) {
    for (const auto& cell : r.cells) {
        std::cerr << cell.family << " (" << cell.p << "," << cell.q << ")";
        if (!cell.error.empty()) {
            std::cerr << "  error: " << cell.error << "\n";
            continue;
        }
        if (cell.construct)
            std::cerr << "  deg L3=" << cell.construct->degrees.L3 << " L4=" << cell.construct->degrees.L4;
        if (cell.construct && cell.construct->degrees.L5) std::cerr << " L5=" << *cell.construct->degrees.L5;
        if (cell.verify) {
            int ok = 0;
            for (const auto& id : cell.verify->identities) ok += id.pass;
            std::cerr << "  identities " << ok << "/" << cell.verify->identities.size() << "  rank "
                      << cell.verify->rank;
        }
        if (cell.dynamics) {
            double worst = 0;
            for (const auto& d : cell.dynamics->drift) worst = std::max(worst, d.max_rel);
            std::cerr << "  max drift " << worst;
        }
        std::cerr << "\n";
    }
    for (const auto& f : r.failures) std::cerr << "FAIL " << f << "\n";
    std::cerr << (r.pass ? "overall: pass" : "overall: FAIL") << "\n";
}

int run_mode(const Overrides& o, Mode mode) {
    RunConfig c = resolve(o);
    RunResult r = run(c, mode);
    write_outputs(c, r, mode);
    if (c.out.empty() && std::find(c.formats.begin(), c.formats.end(), "json") != c.formats.end())
        std::cout << to_json(c, r).dump(2) << "\n";
    if (c.out.empty() && std::find(c.formats.begin(), c.formats.end(), "latex") != c.formats.end())
        std::cout << to_latex(r);
    print_summary(r);
    if (mode == Mode::Construct) return r.pass ? 0 : 1;
    return r.exit_code();
}

int report(const std::string& in, const std::string& format) {
    std::ifstream is(in);
    if (!is) throw ConfigError(in + ": cannot open");
    nlohmann::ordered_json j;
    try {
        is >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(in + ": " + e.what());
    }
    for (const auto& cell : j.at("cells")) {
        if (format == "latex") {
            std::cout << "\\paragraph{" << cell.at("family").get<std::string>() << ", $(p,q) = (" << cell.at("p")
                      << "," << cell.at("q") << ")$}\n\\begin{align*}\n";
            bool first = true;
            for (const auto& id : cell.value("identities", nlohmann::ordered_json::array())) {
                if (id.at("group") != "structure") continue;
                std::cout << (first ? "" : " \\\\\n") << id.at("lhs").get<std::string>() << " &= "
                          << id.at("rhs").get<std::string>();
                first = false;
            }
            std::cout << "\n\\end{align*}\n";
        } else {
            std::cout << cell.at("family").get<std::string>() << " (" << cell.at("p") << "," << cell.at("q") << ")";
            for (const auto& id : cell.value("identities", nlohmann::ordered_json::array()))
                if (!id.at("pass").get<bool>()) std::cout << "  " << id.at("name").get<std::string>() << ":fail";
            std::cout << "\n";
        }
    }
    return j.value("pass", false) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact phase-space algebra for superintegrable families"};
    app.require_subcommand(1);
    Overrides o;
    struct Sub {
        const char* name;
        const char* help;
        Mode mode;
    };
    std::vector<std::pair<CLI::App*, Mode>> subs;
    for (Sub s : {Sub{"construct", "build the ladder constants", Mode::Construct},
                  Sub{"verify", "check the identity suites", Mode::Verify},
                  Sub{"integrate", "numeric conservation check", Mode::Integrate},
                  Sub{"all", "verify and integrate", Mode::All}}) {
        CLI::App* cmd = app.add_subcommand(s.name, s.help);
        add_run_options(cmd, o);
        subs.push_back({cmd, s.mode});
    }
    std::string in, format = "text";
    CLI::App* rep = app.add_subcommand("report", "render a saved JSON report");
    rep->add_option("--in", in, "report.json")->required();
    rep->add_option("--format", format, "text or latex")->check(CLI::IsMember({"text", "latex"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        if (rep->parsed()) return report(in, format);
        for (auto [cmd, mode] : subs)
            if (cmd->parsed()) return run_mode(o, mode);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
