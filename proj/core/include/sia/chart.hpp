#pragma once

#include "sia/rewrite.hpp"

#include <bitset>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace sia {

enum class SymbolKind { Coordinate, Momentum, Generator, Parameter, Action };

struct SymbolInfo {
    std::string name;
    std::string latex;
    SymbolKind kind;
};

/// Symbols shared by all charts of one family.
class SymbolTable {
public:
    SymbolId add(std::string name, std::string latex, SymbolKind kind);
    const SymbolInfo& operator[](SymbolId s) const { return symbols_.at(s); }
    std::optional<SymbolId> find(std::string_view name) const;
    std::size_t size() const { return symbols_.size(); }

private:
    std::vector<SymbolInfo> symbols_;
};

/// num / den over a chart's denominator set; no chart attached.
struct Fraction {
    Poly num;
    Denominator den{};
};

class Chart;
using ChartPtr = std::shared_ptr<const Chart>;

/// Canonical variable index: 0, 1 are coordinates, 2, 3 their momenta.
inline constexpr int kCanonicalVars = 4;

class Chart {
public:
    const std::string& name() const { return name_; }
    const SymbolTable& symbols() const { return *table_; }
    const std::shared_ptr<const SymbolTable>& table() const { return table_; }
    const DenominatorSet& denominators() const { return *dens_; }
    const std::shared_ptr<const DenominatorSet>& denominator_set() const { return dens_; }
    const RewriteSystem& relations() const { return rules_; }

    SymbolId coordinate(int i) const { return canonical_[i]; }
    SymbolId momentum(int i) const { return canonical_[2 + i]; }
    SymbolId canonical(int v) const { return canonical_[v]; }

    bool has(SymbolId s) const { return members_[s]; }
    bool is_laurent(SymbolId s) const { return laurent_[s]; }
    /// False for symbols with a zero row (parameters, frozen action symbols).
    bool varies(SymbolId s) const { return varies_[s]; }
    const Fraction& derivative(SymbolId s, int var) const { return derivs_[s][var]; }
    /// Derivative of denominator element i with respect to canonical variable var.
    const Fraction& denominator_derivative(std::size_t i, int var) const { return den_derivs_[i][var]; }

    /// Throws Error when p uses a foreign symbol or a negative power of a
    /// non-Laurent symbol.
    void validate(const Poly& p) const;

private:
    friend class ChartBuilder;
    Chart() = default;

    std::string name_;
    std::shared_ptr<const SymbolTable> table_;
    std::shared_ptr<const DenominatorSet> dens_;
    RewriteSystem rules_;
    std::array<SymbolId, 4> canonical_{};
    std::bitset<kMaxSymbols> members_, laurent_, varies_;
    std::array<std::array<Fraction, kCanonicalVars>, kMaxSymbols> derivs_{};
    std::vector<std::array<Fraction, kCanonicalVars>> den_derivs_;
};

class ChartBuilder {
public:
    ChartBuilder(std::string name, std::shared_ptr<const SymbolTable> table, std::shared_ptr<const DenominatorSet> dens);

    ChartBuilder& canonical(SymbolId x1, SymbolId x2, SymbolId p1, SymbolId p2);
    /// A symbol whose derivative w.r.t. canonical variable var is d; zero otherwise.
    ChartBuilder& generator(SymbolId s, int var, Fraction d, bool laurent = false);
    /// A symbol with a full derivative row.
    ChartBuilder& generator(SymbolId s, std::array<Fraction, kCanonicalVars> row, bool laurent = false);
    /// A symbol with zero derivatives (parameters and frozen action symbols).
    ChartBuilder& constant(SymbolId s, bool laurent = false);
    /// Allows negative powers of an already declared symbol.
    ChartBuilder& laurent(SymbolId s);
    ChartBuilder& rule(RewriteRule r);

    /// Validates and freezes. Throws Error on inconsistent input.
    ChartPtr build();

private:
    std::shared_ptr<Chart> chart_;
};

/// A rational phase-space function with a denominator from the chart's set.
/// The numerator is kept normalized, so is_zero is exact.
class PhaseExpr {
public:
    PhaseExpr() = default;
    PhaseExpr(ChartPtr chart, Poly num, Denominator den = {});
    static PhaseExpr constant(ChartPtr chart, const GaussianRational& c);
    static PhaseExpr symbol(ChartPtr chart, SymbolId s, int e = 1);
    static PhaseExpr fraction(ChartPtr chart, const Fraction& f) { return {std::move(chart), f.num, f.den}; }

    const ChartPtr& chart() const { return chart_; }
    const Poly& num() const { return num_; }
    const Denominator& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    PhaseExpr& operator+=(const PhaseExpr& o);
    PhaseExpr& operator-=(const PhaseExpr& o);
    PhaseExpr& operator*=(const PhaseExpr& o);
    PhaseExpr& operator*=(const GaussianRational& c);
    friend PhaseExpr operator+(PhaseExpr a, const PhaseExpr& b) { return a += b; }
    friend PhaseExpr operator-(PhaseExpr a, const PhaseExpr& b) { return a -= b; }
    friend PhaseExpr operator*(PhaseExpr a, const PhaseExpr& b) { return a *= b; }
    friend PhaseExpr operator*(PhaseExpr a, const GaussianRational& c) { return a *= c; }
    friend PhaseExpr operator*(const GaussianRational& c, PhaseExpr a) { return a *= c; }
    PhaseExpr operator-() const;
    PhaseExpr pow(int e) const;

    /// Divides by denominator element i (multiplicity bump only).
    PhaseExpr divided_by_element(std::size_t i, int m = 1) const;

    /// Re-reads the same numerator/denominator in another chart of the family
    /// and normalizes there.
    PhaseExpr in(ChartPtr target) const;

    std::string to_string() const;

private:
    struct Raw {};
    PhaseExpr(Raw, ChartPtr chart, Poly num, Denominator den)
        : chart_(std::move(chart)), num_(std::move(num)), den_(den) {}
    void require_same_chart(const PhaseExpr& o) const;
    friend PhaseExpr differentiate(const PhaseExpr& e, int var);
    friend PhaseExpr poisson_bracket(const PhaseExpr& f, const PhaseExpr& g);

    ChartPtr chart_;
    Poly num_;
    Denominator den_{};
};

/// Exact partial derivative with respect to canonical variable var (0..3).
PhaseExpr differentiate(const PhaseExpr& e, int var);
/// Same, addressed by symbol; the symbol must be a coordinate or momentum.
PhaseExpr differentiate_by(const PhaseExpr& e, SymbolId v);

/// Canonical bracket sum_j dF/dx_j dG/dp_j - dF/dp_j dG/dx_j.
PhaseExpr poisson_bracket(const PhaseExpr& f, const PhaseExpr& g);

struct Substitution {
    SymbolId symbol;
    PhaseExpr image;
};

/// Ring homomorphism replacing the listed symbols; the rest of e must be
/// readable in the target chart. Throws Error for a negative power of a
/// symbol whose image is not a unit.
PhaseExpr substitute(const PhaseExpr& e, const std::vector<Substitution>& map, ChartPtr target);

/// Max total momentum degree over numerator terms.
int momentum_degree(const PhaseExpr& e);

/// The pure phase chart of a family (coordinates, momenta, generators).
ChartPtr chart_for(std::string_view family, int p = 1, int q = 1);

std::string to_string(const Poly& p, const SymbolTable& t);
std::string to_latex(const Poly& p, const SymbolTable& t);

}  // namespace sia
