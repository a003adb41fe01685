#pragma once

#include "sia/families.hpp"
#include "sia/ladder.hpp"
#include "sia/oracle.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sia {

/// On-shell images of the named quantities for one family and ladder set.
class QuantityTable {
public:
    QuantityTable(const FamilySpec& f, const LadderSet& ls);
    const std::optional<PhaseExpr>& operator[](Quantity q) const { return q_[static_cast<int>(q)]; }
    const FamilySpec& family() const { return *f_; }

private:
    const FamilySpec* f_;
    std::array<std::optional<PhaseExpr>, 14> q_;
};

/// Exact value of an identity tree in the on-shell chart.
PhaseExpr evaluate(const Expr& e, const QuantityTable& t);

struct IdentityCheck {
    std::string name;
    std::string group;
    bool pass = false;
    /// Oracle verdict at random exact points; empty when not run.
    std::optional<bool> oracle;
    std::size_t residual_terms = 0;
    std::string lhs_latex, rhs_latex;
};

/// Symbolic check: lhs - rhs normalizes to zero.
IdentityCheck check_identity(const IdentitySpec& id, const QuantityTable& t, const std::string& group = "");

struct VerifyOptions {
    int trials = 20;
    std::uint64_t seed = 20240611;
    bool oracle = true;
    int rank_points = 20;
    /// Identity to fault on purpose: "name" or "family:name". Empty for none.
    std::string perturb;
    /// Also check the corrected forms of failing stated identities.
    bool errata = true;
};

std::vector<IdentityCheck> run_suite(const std::vector<IdentitySpec>& suite, const FamilySpec& f,
                                     const LadderSet& ls, const QuantityTable& t, const std::string& group,
                                     const VerifyOptions& opt);

/// Multiplies the right side by 65/64 (or replaces a zero right side by 1).
IdentitySpec inject_fault(const IdentitySpec& id);

/// Max over `points` random on-shell points of the exact rank of the
/// gradients of (H, L2, L4); (H, L1, L3) for the oscillator.
int functional_rank(const FamilySpec& f, const LadderSet& ls, std::uint64_t seed, int points = 20);

struct Degrees {
    int L3 = 0, L4 = 0;
    std::optional<int> L5;
};
/// Momentum degrees after substituting the action symbols.
Degrees momentum_degrees(const FamilySpec& f, const LadderSet& ls);

struct VerificationReport {
    std::string family;
    int p = 1, q = 1;
    std::vector<IdentityCheck> identities;
    /// Corrected forms; informational, not part of all_pass.
    std::vector<IdentityCheck> errata;
    Degrees degrees;
    int rank = 0;
    bool all_pass() const;
};

/// structure, ladder and L5 suites, plus rank and degrees.
VerificationReport verify_family(const FamilySpec& f, const LadderSet& ls, const VerifyOptions& opt);

}  // namespace sia
