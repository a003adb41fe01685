#pragma once

#include "sia/poly.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sia {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kMaxDenominators = 4;

/// Multiplicities over a chart's fixed denominator set.
struct Denominator {
    std::array<std::uint8_t, kMaxDenominators> mult{};

    static Denominator of(std::size_t index, int m = 1) {
        Denominator d;
        d.mult[index] = static_cast<std::uint8_t>(m);
        return d;
    }
    bool is_one() const {
        for (auto m : mult)
            if (m) return false;
        return true;
    }
    Denominator& operator*=(const Denominator& o) {
        for (std::size_t i = 0; i < kMaxDenominators; ++i) mult[i] = static_cast<std::uint8_t>(mult[i] + o.mult[i]);
        return *this;
    }
    friend Denominator operator*(Denominator a, const Denominator& b) { return a *= b; }
    Denominator pow(int e) const {
        Denominator d;
        for (std::size_t i = 0; i < kMaxDenominators; ++i) d.mult[i] = static_cast<std::uint8_t>(mult[i] * e);
        return d;
    }
    static Denominator lcm(const Denominator& a, const Denominator& b) {
        Denominator d;
        for (std::size_t i = 0; i < kMaxDenominators; ++i) d.mult[i] = std::max(a.mult[i], b.mult[i]);
        return d;
    }
    /// this / o, assuming o divides this.
    Denominator quotient(const Denominator& o) const {
        Denominator d;
        for (std::size_t i = 0; i < kMaxDenominators; ++i) d.mult[i] = static_cast<std::uint8_t>(mult[i] - o.mult[i]);
        return d;
    }
    friend bool operator==(const Denominator&, const Denominator&) = default;
};

/// The allowed denominator factors of a chart, e.g. {1+c, 1-c}.
class DenominatorSet {
public:
    DenominatorSet() = default;
    explicit DenominatorSet(std::vector<Poly> elements);

    std::size_t size() const { return elements_.size(); }
    const Poly& operator[](std::size_t i) const { return elements_[i]; }
    const std::vector<Poly>& elements() const { return elements_; }

    /// Expands the product of elements to the given multiplicities.
    Poly expand(const Denominator& d) const;

private:
    std::vector<Poly> elements_;
};

/// head^threshold -> replacement / replacement_den.
struct RewriteRule {
    SymbolId head;
    int threshold = 2;
    Poly replacement;
    Denominator replacement_den{};
};

/// A terminating, confluent rewrite system: one rule per head symbol and no
/// rule's replacement (or any denominator element) mentions its own head.
class RewriteSystem {
public:
    RewriteSystem() = default;

    /// Throws Error if a rule for the head already exists or the
    /// replacement mentions the head.
    void add(RewriteRule rule);
    const std::vector<RewriteRule>& rules() const { return rules_; }
    const RewriteRule* rule_for(SymbolId head) const;
    bool empty() const { return rules_.empty(); }

    /// Reduces with the polynomial rules only. Throws if a rational rule
    /// would fire, since that needs a denominator to absorb it.
    Poly normalize(const Poly& p) const;

    /// Reduces a fraction num / den. Rational rules multiply the whole
    /// fraction through by their denominator.
    void normalize(Poly& num, Denominator& den, const DenominatorSet& dens) const;

private:
    Poly apply_polynomial(const Poly& p, const RewriteRule& r) const;
    void apply_rational(Poly& num, Denominator& den, const RewriteRule& r, const DenominatorSet& dens) const;

    std::vector<RewriteRule> rules_;
};

}  // namespace sia
