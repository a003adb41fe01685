#pragma once

#include "config.hpp"

#include "sia/dynamics.hpp"
#include "sia/verifier.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace sia::cli {

enum class Mode { Construct, Verify, Integrate, All };

struct ConstructInfo {
    Degrees degrees;
    std::size_t terms_L3 = 0, terms_L4 = 0, terms_L5 = 0;
    std::string parity;
    std::string c0;  // LaTeX of the constant term removed from L3, if any
};

struct DynamicsSummary {
    int trajectories = 0;
    /// Per constant, the worst trajectory.
    std::vector<DriftStats> drift;
    std::vector<std::pair<std::string, double>> relations;
    bool real = true;
    std::vector<std::string> truncated;
};

struct CellResult {
    std::string family;
    int p = 1, q = 1;
    std::optional<ConstructInfo> construct;
    std::optional<VerificationReport> verify;
    std::optional<DynamicsSummary> dynamics;
    std::vector<std::string> identity_latex;  // structure suite, rendered
    std::string error;
};

struct RunResult {
    std::vector<CellResult> cells;
    bool identities_pass = true;
    bool pass = true;
    std::vector<std::string> failures;
    int exit_code() const { return pass ? 0 : 1; }
};

/// Cells run in a bounded worker pool; results keep grid order.
RunResult run(const RunConfig& c, Mode mode);

nlohmann::ordered_json to_json(const RunConfig& c, const RunResult& r);
std::string to_latex(const RunResult& r);

/// Writes report.json / report.tex / trajectories/*.csv under c.out.
void write_outputs(const RunConfig& c, const RunResult& r, Mode mode);

}  // namespace sia::cli
