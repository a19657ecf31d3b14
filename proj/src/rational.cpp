#include "frob/rational.hpp"

#include <cmath>

namespace frob {

Rational rat_from_string(const std::string& text) {
    auto slash = text.find('/');
    try {
        if (slash == std::string::npos) {
            Rational r(text);
            r.canonicalize();
            return r;
        }
        Rational num(text.substr(0, slash));
        Rational den(text.substr(slash + 1));
        if (den == 0) throw value_error("rational with zero denominator: " + text);
        Rational r = num / den;
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw value_error("malformed rational literal: " + text);
    }
}

Rational rat_pow(const Rational& base, long exp) {
    if (exp < 0) {
        if (base == 0) throw value_error("zero to a negative power");
        return rat_pow(Rational(1) / base, -exp);
    }
    Rational acc(1), sq(base);
    unsigned long e = static_cast<unsigned long>(exp);
    while (e) {
        if (e & 1) acc *= sq;
        if (e >>= 1) sq *= sq;
    }
    return acc;
}

std::string rat_to_string(const Rational& r) { return r.get_str(); }

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
    check_tag(rhs);
    a_ += rhs.a_;
    b_ += rhs.b_;
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
    check_tag(rhs);
    a_ -= rhs.a_;
    b_ -= rhs.b_;
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
    check_tag(rhs);
    if (b_ == 0 && rhs.b_ == 0) {
        a_ *= rhs.a_;
        return *this;
    }
    Rational a = a_ * rhs.a_ + 5 * b_ * rhs.b_;
    Rational b = a_ * rhs.b_ + b_ * rhs.a_;
    a_ = std::move(a);
    b_ = std::move(b);
    return *this;
}

FieldElement FieldElement::inverse() const {
    if (is_zero()) throw value_error("inverse of zero field element");
    if (b_ == 0) return FieldElement(Rational(1) / a_, tag_);
    Rational norm = a_ * a_ - 5 * b_ * b_;
    if (norm == 0) throw value_error("impossible: rational point on a^2 = 5 b^2");
    return FieldElement(a_ / norm, -b_ / norm, tag_);
}

int FieldElement::real_sign() const {
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // a and b have opposite signs: compare a^2 against 5 b^2.
    Rational diff = a_ * a_ - 5 * b_ * b_;
    int big = sgn(diff);  // |a| vs |b sqrt5|
    return big == 0 ? 0 : (big > 0 ? sa : sb);
}

double FieldElement::to_double() const {
    return a_.get_d() + b_.get_d() * std::sqrt(5.0);
}

std::string FieldElement::to_string() const {
    if (b_ == 0) return rat_to_string(a_);
    std::string s;
    if (a_ != 0) s = rat_to_string(a_);
    if (b_ > 0 && !s.empty()) s += "+";
    if (b_ == -1)
        s += "-";
    else if (b_ != 1)
        s += rat_to_string(b_) + "*";
    s += "sqrt5";
    return s;
}

}  // namespace frob
