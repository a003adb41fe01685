#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>

namespace sia {

using Rational = mpq_class;

/// Exact complex rational a + b i. Both parts are kept canonical by GMP
/// (lowest terms, positive denominator).
class GaussianRational {
public:
    GaussianRational() = default;
    GaussianRational(long re) : re_(re) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)) { re_.canonicalize(); }  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {
        re_.canonicalize();
        im_.canonicalize();
    }

    static GaussianRational i() { return {Rational(0), Rational(1)}; }
    static GaussianRational frac(long num, long den) { return Rational(num, den); }

    const Rational& re() const { return re_; }
    const Rational& im() const { return im_; }

    bool is_zero() const { return sgn(re_) == 0 && sgn(im_) == 0; }
    bool is_real() const { return sgn(im_) == 0; }
    bool is_one() const { return re_ == 1 && sgn(im_) == 0; }

    GaussianRational conj() const { return {re_, -im_}; }
    /// |z|^2, always a nonnegative rational.
    Rational norm() const { return re_ * re_ + im_ * im_; }
    GaussianRational inverse() const;

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o);
    GaussianRational& operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

    /// this += a * b without temporaries for the common real case.
    void add_product(const GaussianRational& a, const GaussianRational& b);

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
    GaussianRational operator-() const { return {-re_, -im_}; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }

    GaussianRational pow(int e) const;

    /// Decimal string: "3/4", "-2i", "1/2+3i", "0".
    std::string to_string() const;
    /// Form usable as a leading factor in LaTeX ("-\frac{3}{4}", "2i", ...).
    std::string to_latex() const;

    double re_double() const { return re_.get_d(); }
    double im_double() const { return im_.get_d(); }

private:
    Rational re_{0};
    Rational im_{0};
};

std::string to_string(const Rational& r);

}  // namespace sia
