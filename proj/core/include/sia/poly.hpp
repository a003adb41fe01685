#pragma once

#include "sia/gaussian_rational.hpp"

#include <array>
#include <cstdint>
#include <cstring>
#include <functional>
#include <map>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sia {

using SymbolId = std::uint8_t;
inline constexpr std::size_t kMaxSymbols = 16;

/// Exponent vector over a family symbol table. Negative entries are only
/// produced for Laurent-flagged symbols; the owning Chart enforces that.
class Monomial {
public:
    using Exponents = std::array<std::int16_t, kMaxSymbols>;

    Monomial() { exps_.fill(0); }
    static Monomial of(SymbolId s, int e = 1) {
        Monomial m;
        m.exps_[s] = static_cast<std::int16_t>(e);
        return m;
    }

    int operator[](SymbolId s) const { return exps_[s]; }
    void set(SymbolId s, int e) { exps_[s] = static_cast<std::int16_t>(e); }
    bool is_one() const {
        for (auto e : exps_)
            if (e != 0) return false;
        return true;
    }
    const Exponents& exponents() const { return exps_; }

    Monomial& operator*=(const Monomial& o) {
        for (std::size_t i = 0; i < kMaxSymbols; ++i) exps_[i] = static_cast<std::int16_t>(exps_[i] + o.exps_[i]);
        return *this;
    }
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }
    Monomial inverse() const {
        Monomial m;
        for (std::size_t i = 0; i < kMaxSymbols; ++i) m.exps_[i] = static_cast<std::int16_t>(-exps_[i]);
        return m;
    }

    friend bool operator==(const Monomial&, const Monomial&) = default;
    friend auto operator<=>(const Monomial& a, const Monomial& b) { return a.exps_ <=> b.exps_; }

    std::size_t hash() const {
        std::uint64_t w[4];
        std::memcpy(w, exps_.data(), sizeof(w));
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        for (auto x : w) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdULL;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }

private:
    Exponents exps_;
};
static_assert(sizeof(Monomial::Exponents) == 32);

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

struct Term {
    Monomial mono;
    GaussianRational coeff;
};

/// Sparse multivariate Laurent polynomial with Gaussian-rational coefficients.
/// Terms are kept sorted by monomial with no zero coefficients, so two Polys
/// are equal iff their term vectors are identical.
class Poly {
public:
    Poly() = default;
    Poly(const GaussianRational& c);  // NOLINT(google-explicit-constructor)
    Poly(long c) : Poly(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

    static Poly symbol(SymbolId s, int e = 1) { return monomial(Monomial::of(s, e)); }
    static Poly monomial(const Monomial& m, GaussianRational c = GaussianRational(1));
    /// Sorts, merges duplicates and drops zeros.
    static Poly from_terms(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
    GaussianRational constant_term() const;

    int degree(SymbolId s) const;
    int min_degree(SymbolId s) const;
    bool mentions(SymbolId s) const;
    /// Max over terms of the summed exponents of the given symbols.
    int total_degree(std::span<const SymbolId> symbols) const;

    /// Groups terms by the exponent of s; the symbol is removed from each group.
    std::map<int, Poly> split_by(SymbolId s) const;
    /// Same as split_by but for a pair of symbols.
    std::map<std::pair<int, int>, Poly> split_by(SymbolId a, SymbolId b) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const GaussianRational& c);
    Poly& operator*=(const Monomial& m);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const GaussianRational& c) { return a *= c; }
    friend Poly operator*(const GaussianRational& c, Poly a) { return a *= c; }
    friend Poly operator*(Poly a, const Monomial& m) { return a *= m; }
    Poly operator-() const;
    friend bool operator==(const Poly& a, const Poly& b);

    Poly pow(int e) const;
    /// Formal partial derivative in s (no chain rule).
    Poly formal_derivative(SymbolId s) const;
    /// Replaces s by the constant value (s must appear with nonnegative powers).
    Poly at(SymbolId s, const GaussianRational& value) const;

    /// Ring-homomorphic evaluation. `image(s)` gives the image of symbol s,
    /// `power(value, e)` raises an image to a (possibly negative) power.
    template <class T, class Image, class Power>
    T evaluate(Image&& image, Power&& power, const T& zero) const;

private:
    std::vector<Term> terms_;
};

/// Accumulates terms by hash before building a canonical Poly.
class PolyBuilder {
public:
    void reserve(std::size_t n) { acc_.reserve(n); }
    void add(const Monomial& m, const GaussianRational& c);
    void add_product(const Monomial& m, const GaussianRational& a, const GaussianRational& b);
    void add(const Poly& p);
    void add_scaled(const Poly& p, const GaussianRational& c, const Monomial& m);
    Poly build() &&;

private:
    std::unordered_map<Monomial, GaussianRational, MonomialHash> acc_;
};

template <class T, class Image, class Power>
T Poly::evaluate(Image&& image, Power&& power, const T& zero) const {
    T result = zero;
    for (const auto& t : terms_) {
        T term = zero + T(t.coeff);
        for (SymbolId s = 0; s < kMaxSymbols; ++s) {
            int e = t.mono[s];
            if (e != 0) term = term * power(image(s), e);
        }
        result = result + term;
    }
    return result;
}

}  // namespace sia
