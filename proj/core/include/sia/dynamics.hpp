#pragma once

#include "sia/families.hpp"
#include "sia/ladder.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace sia {

using Real = long double;
using Complex = std::complex<Real>;

class SingularityError : public Error {
public:
    using Error::Error;
};

/// (x1, x2, p1, p2) and time.
struct NumericState {
    std::array<Complex, kCanonicalVars> z{};
    double t = 0;
};

/// Numeric parameter values keyed by parameter symbol.
using NumericParams = std::map<SymbolId, Complex>;

/// Complex evaluator compiled once from an exact expression. Action
/// symbols, when present, are read from the slot values supplied by the
/// caller.
class CompiledExpr {
public:
    CompiledExpr() = default;
    explicit CompiledExpr(const PhaseExpr& e);
    Complex operator()(const std::array<Complex, kMaxSymbols>& values) const;
    /// Sum of numerator term moduli over |denominator|: the size rounding
    /// errors scale with. Its ratio to |value| is the cancellation factor.
    double magnitude(const std::array<Complex, kMaxSymbols>& values) const;
    std::size_t size() const { return terms_.size(); }

private:
    struct Factor {
        SymbolId s;
        int e;
    };
    struct CTerm {
        Complex c;
        std::vector<Factor> f;
    };
    static Complex eval_poly(const std::vector<CTerm>& poly, const std::array<Complex, kMaxSymbols>& v,
                             double* magnitude = nullptr);

    std::vector<CTerm> terms_;
    std::vector<std::pair<std::vector<CTerm>, int>> den_;
};

/// Numeric model of a family: generator values from the canonical
/// variables, Hamilton's equations, and the constants.
class NumericModel {
public:
    NumericModel(const FamilySpec& f, const LadderSet& ls, NumericParams params);

    const FamilySpec& family() const { return *f_; }
    const NumericParams& params() const { return params_; }

    /// All symbol values at the state; action symbols on shell, sqrt(L2)
    /// on the principal branch. Throws SingularityError.
    std::array<Complex, kMaxSymbols> values(const NumericState& s) const;

    /// (dx/dt, dp/dt) = (dH/dp, -dH/dx).
    std::array<Complex, kCanonicalVars> hamilton_rhs(const NumericState& s) const;

    /// Names and values of H, L2 (L1), L3, L4 (L5).
    const std::vector<std::string>& constant_names() const { return names_; }
    std::vector<Complex> constants(const NumericState& s) const;
    std::vector<double> constant_magnitudes(const NumericState& s) const;

    /// Residual of each algebraic (bracket-free) suite identity, relative
    /// to the larger side.
    std::vector<std::pair<std::string, double>> relation_residuals(const NumericState& s) const;

private:
    const FamilySpec* f_;
    const LadderSet* ls_;
    NumericParams params_;
    CompiledExpr L2_, L1_, H_;
    std::array<CompiledExpr, kCanonicalVars> dH_;
    std::vector<std::string> names_;
    std::vector<CompiledExpr> consts_;
    std::map<Quantity, CompiledExpr> quantities_;
    std::vector<IdentitySpec> relations_;
};

struct IntegrateOptions {
    double tol = 1e-12;
    double T = 10;
    int samples = 201;
    long max_steps = 5'000'000;
};

struct Trajectory {
    std::vector<NumericState> states;
    /// Set when the run stopped early.
    std::string truncated;
    long steps = 0;
    long rejected = 0;
};

/// Adaptive Dormand-Prince 5(4); the step is clamped to land on each
/// sample time. Mixed error norm with atol = rtol = tol.
Trajectory integrate(const NumericModel& m, const NumericState& s0, const IntegrateOptions& opt);

struct DriftStats {
    std::string constant;
    Complex initial;
    double max_rel = 0;
    double final_rel = 0;
    double tol = 0;
    double span = 0;
};

struct DriftReport {
    std::vector<DriftStats> drift;
    /// max relative residual per algebraic identity along the trajectory
    std::vector<std::pair<std::string, double>> relations;
    /// Imaginary parts stayed below 1e-10.
    bool real = true;
    std::string truncated;
};

DriftReport conservation_drift(const NumericModel& m, const Trajectory& tr, double tol);

/// Exact-rational parameters mapped to doubles, drawn in [lo, hi].
NumericParams random_params(const FamilySpec& f, std::uint64_t seed);
/// Initial condition away from singular rays; deterministic in seed.
NumericState random_initial_state(const NumericModel& m, std::uint64_t seed);

/// One row per sample: t, x1, x2, p1, p2, each constant (re and im).
void write_csv(std::ostream& os, const NumericModel& m, const Trajectory& tr);

}  // namespace sia
