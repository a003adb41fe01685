#pragma once

#include "sia/gaussian_rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace sia {

/// Named phase-space quantities an identity can mention.
/// Omega is the oscillator frequency parameter.
enum class Quantity { H, L1, L2, L3, L4, L5, R, Lplus, Lminus, P, dP_dL1, dP_dL2, Lambda, Omega };

const char* quantity_name(Quantity q);
std::string quantity_latex(Quantity q);

/// Small expression tree over quantities, constants, ring operations and
/// the Poisson bracket.
class Expr {
public:
    enum class Kind { Atom, Const, Add, Mul, Pow, Bracket };

    Expr() : Expr(GaussianRational(0)) {}
    Expr(Quantity q);                   // NOLINT(google-explicit-constructor)
    Expr(GaussianRational c);           // NOLINT(google-explicit-constructor)
    Expr(long c) : Expr(GaussianRational(c)) {}  // NOLINT(google-explicit-constructor)

    Kind kind() const { return kind_; }
    Quantity quantity() const { return q_; }
    const GaussianRational& value() const { return c_; }
    int exponent() const { return exponent_; }
    const std::vector<Expr>& args() const { return args_; }

    friend Expr operator+(const Expr& a, const Expr& b);
    friend Expr operator-(const Expr& a, const Expr& b);
    friend Expr operator*(const Expr& a, const Expr& b);
    Expr operator-() const;
    friend Expr pow(const Expr& a, int e);
    friend Expr bracket(const Expr& a, const Expr& b);

    /// Mentions the quantity anywhere in the tree.
    bool uses(Quantity q) const;
    std::string to_latex() const;
    std::string to_string() const;

private:
    static Expr node(Kind k, std::vector<Expr> args, int exponent = 0);

    Kind kind_ = Kind::Const;
    Quantity q_ = Quantity::H;
    GaussianRational c_;
    int exponent_ = 0;
    std::vector<Expr> args_;
};

Expr pow(const Expr& a, int e);
Expr bracket(const Expr& a, const Expr& b);

struct IdentitySpec {
    std::string name;
    Expr lhs;
    Expr rhs;
};

std::string to_latex(const IdentitySpec& id);

}  // namespace sia
