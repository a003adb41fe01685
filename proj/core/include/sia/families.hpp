#pragma once

#include "sia/chart.hpp"
#include "sia/identity.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sia {

enum class FamilyKind { Ttw, Coulomb, Sphere, Oscillator, SphereGeneric };
enum class Parity { Odd, Even, Uniform };

const char* family_name(FamilyKind k);
const std::vector<std::string>& family_names();

class UnknownFamilyError : public Error {
public:
    using Error::Error;
};
class NonCoprimeError : public Error {
public:
    using Error::Error;
};

/// Action symbols standing for the separation constant(s), the energy and
/// the square root of the separation constant.
struct ActionSymbols {
    SymbolId lambda;                   // L2
    std::optional<SymbolId> lambda1;   // L1 (oscillator)
    std::optional<SymbolId> h;         // H (absent for the oscillator, where H = L1 + L2)
    std::optional<SymbolId> root;      // sqrt(L2)
};

/// One of the five systems at fixed (p, q).
///
/// Three charts share one symbol table and one denominator set:
///   phase    - coordinates, momenta, generators and parameters only;
///   abstract - adds frozen action symbols (zero derivatives), used to build
///              the ladder functions;
///   onshell  - the action symbols are the actual phase functions: their
///              derivatives are those of L2, H, sqrt(L2), and the squared
///              momenta are eliminated in favour of them.
struct FamilySpec {
    std::string name;
    FamilyKind kind;
    int p = 1;
    int q = 1;
    Rational k;
    Parity parity = Parity::Uniform;

    std::shared_ptr<const SymbolTable> table;
    ChartPtr phase, abstract, onshell;
    ActionSymbols act;
    std::vector<SymbolId> parameters;

    // phase chart
    PhaseExpr H, L1, L2;
    /// L2 minus the square of its momentum (momentum index 1).
    PhaseExpr separation_potential;

    // abstract chart
    PhaseExpr X, Xbar, Y, Ybar, U2, S2, P;
    PhaseExpr dP_dL1, dP_dL2;

    /// {L2, L+} = c * sqrt(L2) * L+; for the oscillator {L1, L+} = c * L+.
    GaussianRational ladder_rate;
    /// Oscillator only: {L2, L+} = c2 * L+.
    GaussianRational ladder_rate2;
    /// R = r_factor * L3.
    GaussianRational r_factor;

    SymbolId sym(std::string_view name) const;

    /// The action symbols' phase images.
    std::vector<Substitution> action_images() const;
    /// lambda -> L2, h -> H (lambda_i -> L_i) into the phase chart.
    PhaseExpr to_phase(const PhaseExpr& e) const;
    /// Reads an abstract-chart element on shell.
    PhaseExpr to_onshell(const PhaseExpr& e) const { return e.in(onshell); }
    /// On-shell H (the symbol h, or lambda1 + lambda for the oscillator).
    PhaseExpr onshell_H() const;
};

/// Throws UnknownFamilyError or NonCoprimeError (also for non-positive p, q).
FamilySpec make_family(std::string_view name, int p, int q);

/// The identities as stated for the family (coefficients as given).
std::vector<IdentitySpec> structure_suite(const FamilySpec& f);
/// The bracket relations of L2 (and L1) with L3, L4, plus conservation.
std::vector<IdentitySpec> ladder_bracket_suite(const FamilySpec& f);
/// Relations of the additional constant L5 (ttw and sphere-generic).
std::vector<IdentitySpec> l5_suite(const FamilySpec& f);
/// Corrected forms of stated identities that fail, keyed by the same name.
std::vector<IdentitySpec> corrected_forms(const FamilySpec& f);

}  // namespace sia
