#pragma once

#include "sia/families.hpp"
#include "sia/ladder.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <random>

namespace sia {

/// Exact value plus gradient over the four canonical variables.
/// `has_grad` is false for values (such as brackets) whose gradient was not
/// tracked.
struct Jet {
    GaussianRational v;
    std::array<GaussianRational, kCanonicalVars> d{};
    bool has_grad = true;

    static Jet constant(GaussianRational c) { return {std::move(c), {}, true}; }
    static Jet value_only(GaussianRational c) { return {std::move(c), {}, false}; }
    static Jet variable(GaussianRational c, int var);
    bool grad_zero() const;
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const GaussianRational& c);
Jet operator/(const Jet& a, const Jet& b);
Jet pow(const Jet& a, int e);
/// Canonical bracket from the two gradients.
GaussianRational bracket_value(const Jet& a, const Jet& b);

enum class SampleMode {
    /// Action symbols equal their phase functions at the point.
    OnShell,
    /// Action symbols drawn independently, with sqrt and its square kept consistent.
    Abstract,
};

/// All symbol values at one point, plus jets.
struct SamplePoint {
    std::array<Jet, kMaxSymbols> sym{};
};

/// Draws exact rational points for one family. Trig and hyperbolic
/// generator pairs come from rational parametrizations of the circle and
/// hyperbola, and the second momentum is chosen so that sqrt(L2) is
/// rational. Points hitting a pole or a zero Laurent symbol are redrawn.
class Sampler {
public:
    static constexpr int kRetryBudget = 64;

    Sampler(const FamilySpec& f, std::uint64_t seed);

    /// Throws Error once the retry budget is spent.
    SamplePoint draw(SampleMode mode = SampleMode::OnShell);

    /// Uniform draw from {n / d : 0 < |n| <= 1000, 1 <= d <= 1000}.
    Rational random_rational();

private:
    std::optional<SamplePoint> try_draw(SampleMode mode);

    const FamilySpec* f_;
    std::mt19937_64 rng_;
};

/// Evaluates a polynomial with symbol jets.
Jet eval_jet(const Poly& p, const SamplePoint& pt);
/// Evaluates num / den; throws Error at a pole.
Jet eval_jet(const PhaseExpr& e, const SamplePoint& pt);

/// Quantities evaluated at a point by their definitions (X, Y, products,
/// parity split with numeric division), not through expanded polynomials.
struct OracleValues {
    std::array<std::optional<Jet>, 14> q;
    const std::optional<Jet>& operator[](Quantity k) const { return q[static_cast<int>(k)]; }
};
OracleValues oracle_values(const FamilySpec& f, const LadderSet& ls, const SamplePoint& pt);

/// Value of the identity residual lhs - rhs at the point.
GaussianRational oracle_residual(const IdentitySpec& id, const OracleValues& v);

/// True when the residual vanishes at `trials` random points.
bool oracle_check(const FamilySpec& f, const LadderSet& ls, const IdentitySpec& id, int trials, std::uint64_t seed);

/// Randomized zero test of a chart element (a phase chart element is
/// sampled on shell, an abstract one in abstract mode).
bool pit_is_zero(const FamilySpec& f, const PhaseExpr& e, int trials, std::uint64_t seed);

/// Exact rank of the gradient matrix of the given functions at a point.
int gradient_rank(const std::vector<Jet>& fs);

}  // namespace sia
