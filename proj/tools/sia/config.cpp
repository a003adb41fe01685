#include "config.hpp"

#include "sia/families.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <numeric>
#include <regex>
#include <sstream>

namespace sia::cli {

RunConfig::RunConfig()
    : families(family_names()), grid{{1, 1}, {1, 2}, {2, 1}, {1, 3}, {3, 1}, {3, 2}, {2, 3}} {}

namespace {

std::string_view trim(std::string_view s) {
    const char* ws = " \t\r\n";
    auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(std::string_view v) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : v) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

template <class T>
T parse_number(std::string_view key, std::string_view v) {
    T x{};
    auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
    if (ec != std::errc() || ptr != v.data() + v.size())
        throw ConfigError(std::string(key) + ": not a number: '" + std::string(v) + "'");
    return x;
}

double parse_double(std::string_view key, std::string_view v) {
    std::string s(v);
    std::size_t used = 0;
    double x = 0;
    try {
        x = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ConfigError(std::string(key) + ": not a number: '" + s + "'");
    return x;
}

bool parse_bool(std::string_view key, std::string_view v) {
    if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
    if (v == "false" || v == "0" || v == "no" || v == "off") return false;
    throw ConfigError(std::string(key) + ": expected a boolean, got '" + std::string(v) + "'");
}

}  // namespace

std::vector<std::pair<int, int>> parse_grid(std::string_view text) {
    static const std::regex pair(R"(\s*\(?\s*(-?\d+)\s*[,:]\s*(-?\d+)\s*\)?\s*(,|;|\s|$))");
    std::vector<std::pair<int, int>> out;
    std::string s(trim(text));
    auto it = s.cbegin();
    std::smatch m;
    while (it != s.cend()) {
        if (!std::regex_search(it, s.cend(), m, pair, std::regex_constants::match_continuous))
            throw ConfigError("grid: cannot parse '" + std::string(it, s.cend()) + "'");
        out.push_back({std::stoi(m[1]), std::stoi(m[2])});
        it = m[0].second;
    }
    if (out.empty()) throw ConfigError("grid: empty");
    return out;
}

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
    std::string_view v = trim(value);
    if (key == "families" || key == "family") {
        c.families = split_list(v);
        if (c.families.size() == 1 && c.families[0] == "all") c.families = family_names();
    } else if (key == "grid") {
        c.grid = parse_grid(v);
    } else if (key == "tol") {
        c.tol = parse_double(key, v);
    } else if (key == "trials") {
        c.trials = parse_number<int>(key, v);
    } else if (key == "seed") {
        c.seed = parse_number<std::uint64_t>(key, v);
    } else if (key == "trajectories") {
        c.trajectories = parse_number<int>(key, v);
    } else if (key == "horizon") {
        c.horizon = parse_double(key, v);
    } else if (key == "samples") {
        c.samples = parse_number<int>(key, v);
    } else if (key == "drift_bound") {
        c.drift_bound = parse_double(key, v);
    } else if (key == "rank_points") {
        c.rank_points = parse_number<int>(key, v);
    } else if (key == "oracle") {
        c.oracle = parse_bool(key, v);
    } else if (key == "out") {
        c.out = std::string(v);
    } else if (key == "format" || key == "formats") {
        c.formats = split_list(v);
    } else if (key == "perturb") {
        c.perturb = std::string(v);
    } else if (key == "jobs") {
        c.jobs = parse_number<int>(key, v);
    } else {
        throw ConfigError("unknown key '" + std::string(key) + "'");
    }
}

RunConfig parse_config(std::string_view text, std::string_view origin, RunConfig c) {
    std::istringstream in{std::string(text)};
    std::string line;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        std::string_view l = line;
        if (auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
        l = trim(l);
        if (l.empty()) continue;
        auto eq = l.find('=');
        std::string where = std::string(origin) + ":" + std::to_string(no) + ": ";
        if (eq == std::string_view::npos) throw ConfigError(where + "expected key = value");
        std::string_view key = trim(l.substr(0, eq));
        try {
            apply_setting(c, key, l.substr(eq + 1));
        } catch (const ConfigError& e) {
            throw ConfigError(where + e.what());
        }
    }
    return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str(), path, std::move(base));
}

void validate(const RunConfig& c) {
    if (c.families.empty()) throw ConfigError("families: empty");
    const auto& known = family_names();
    for (const auto& f : c.families)
        if (std::find(known.begin(), known.end(), f) == known.end())
            throw ConfigError("families: unknown family '" + f + "'");
    for (auto [p, q] : c.grid) {
        std::string cell = "(" + std::to_string(p) + "," + std::to_string(q) + ")";
        if (p <= 0 || q <= 0) throw ConfigError("grid: " + cell + " is not positive");
        if (std::gcd(p, q) != 1) throw ConfigError("grid: " + cell + " is not coprime");
    }
    if (!(c.tol > 0 && c.tol <= 1e-4)) throw ConfigError("tol: must lie in (0, 1e-4]");
    if (c.trials <= 0) throw ConfigError("trials: must be positive");
    if (c.trajectories < 0) throw ConfigError("trajectories: must be nonnegative");
    if (c.samples < 2) throw ConfigError("samples: need at least 2");
    if (!(c.horizon >= 0)) throw ConfigError("horizon: must be nonnegative");
    if (c.rank_points <= 0) throw ConfigError("rank_points: must be positive");
    if (c.jobs < 0) throw ConfigError("jobs: must be nonnegative");
    for (const auto& f : c.formats)
        if (f != "json" && f != "latex" && f != "csv") throw ConfigError("format: unknown format '" + f + "'");
}

}  // namespace sia::cli
