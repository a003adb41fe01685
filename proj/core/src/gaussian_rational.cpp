#include "sia/gaussian_rational.hpp"

#include <stdexcept>

namespace sia {

std::string to_string(const Rational& r) { return r.get_str(); }

GaussianRational GaussianRational::inverse() const {
    if (is_zero()) throw std::domain_error("GaussianRational: division by zero");
    Rational n = norm();
    return {re_ / n, -im_ / n};
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
    if (sgn(im_) == 0 && sgn(o.im_) == 0) {
        re_ *= o.re_;
        return *this;
    }
    Rational r = re_ * o.re_ - im_ * o.im_;
    Rational i = re_ * o.im_ + im_ * o.re_;
    re_ = std::move(r);
    im_ = std::move(i);
    return *this;
}

void GaussianRational::add_product(const GaussianRational& a, const GaussianRational& b) {
    if (sgn(a.im_) == 0 && sgn(b.im_) == 0) {
        re_ += a.re_ * b.re_;
        return;
    }
    re_ += a.re_ * b.re_ - a.im_ * b.im_;
    im_ += a.re_ * b.im_ + a.im_ * b.re_;
}

GaussianRational GaussianRational::pow(int e) const {
    if (e < 0) return inverse().pow(-e);
    GaussianRational result(1);
    GaussianRational base = *this;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e) base *= base;
    }
    return result;
}

std::string GaussianRational::to_string() const {
    if (is_zero()) return "0";
    std::string out;
    if (sgn(re_) != 0) out = re_.get_str();
    if (sgn(im_) != 0) {
        if (!out.empty() && sgn(im_) > 0) out += "+";
        if (im_ == 1)
            out += "i";
        else if (im_ == -1)
            out += "-i";
        else
            out += im_.get_str() + "i";
    }
    return out;
}

namespace {
std::string latex_rational(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    mpz_class num = r.get_num();
    std::string sign = num < 0 ? "-" : "";
    if (num < 0) num = -num;
    return sign + "\\frac{" + num.get_str() + "}{" + r.get_den().get_str() + "}";
}
}  // namespace

std::string GaussianRational::to_latex() const {
    if (is_zero()) return "0";
    if (sgn(im_) == 0) return latex_rational(re_);
    if (sgn(re_) == 0) {
        if (im_ == 1) return "i";
        if (im_ == -1) return "-i";
        return latex_rational(im_) + "i";
    }
    std::string im = latex_rational(im_);
    if (sgn(im_) > 0) im = "+" + im;
    return "(" + latex_rational(re_) + im + "i)";
}

}  // namespace sia
