#pragma once

#include "sia/families.hpp"

#include <optional>
#include <utility>

namespace sia {

class ParityError : public Error {
public:
    using Error::Error;
};
class DivisibilityError : public Error {
public:
    using Error::Error;
};

struct LadderSet {
    // abstract chart
    PhaseExpr Lplus, Lminus;
    PhaseExpr L3, L4;
    std::optional<PhaseExpr> L5;
    /// The lambda^0 part of L3 removed to form L5 (a polynomial in h).
    std::optional<PhaseExpr> c0;
    Parity parity = Parity::Uniform;
};

/// L+ = X^q Y^p and L- = Xbar^q Ybar^p in the abstract chart.
std::pair<PhaseExpr, PhaseExpr> build_ladder(const FamilySpec& f);

/// Splits e into its even and odd parts in the square-root symbol.
std::pair<PhaseExpr, PhaseExpr> root_grading(const FamilySpec& f, const PhaseExpr& e);

/// (L3, L4) from the family's parity rule. `branch` overrides the rule;
/// a branch that does not fit (p, q) raises ParityError.
std::pair<PhaseExpr, PhaseExpr> split_parity(const FamilySpec& f, const PhaseExpr& Lplus, const PhaseExpr& Lminus,
                                             std::optional<Parity> branch = std::nullopt);

/// 2 (-1)^m (alpha - beta)^q h^p with the ttw sign exponent m for the parity.
PhaseExpr ttw_constant_term(const FamilySpec& f);

struct L5Result {
    PhaseExpr L5;
    PhaseExpr c0;
};

/// L5 = (L3 - c0) / lambda. For ttw c0 is the closed form and must match;
/// for the other families c0 is read off L3 at lambda = 0 and must be a
/// polynomial in h and the parameters. Only ttw and sphere-generic are
/// accepted unless `attempt_any` is set. Throws DivisibilityError.
L5Result build_l5(const FamilySpec& f, const PhaseExpr& L3, bool attempt_any = false);

/// Full construction. L5 is built for ttw and sphere-generic.
LadderSet build_ladder_set(const FamilySpec& f, std::optional<Parity> branch = std::nullopt);

/// lambda -> L2, h -> H into the phase chart; the input must be free of the
/// square root.
PhaseExpr substitute_action(const FamilySpec& f, const PhaseExpr& e);

}  // namespace sia
