#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace frob {

// Exact arbitrary-precision rational. mpq_class keeps gcd(num,den)=1 and den>0
// after canonicalize(), which every constructor below guarantees.
using Rational = mpq_class;

struct value_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct context_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw value_error("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "p", "-p", "p/q".
Rational rat_from_string(const std::string& text);

Rational rat_pow(const Rational& base, long exp);

std::string rat_to_string(const Rational& r);

// Scalar in Q or Q(sqrt5), stored as a + b*sqrt5. Tag Q forces b = 0.
enum class FieldTag : std::uint8_t { Q, QSqrt5 };

class FieldElement {
  public:
    FieldElement() : a_(0), b_(0), tag_(FieldTag::Q) {}
    explicit FieldElement(Rational a, FieldTag tag = FieldTag::Q)
        : a_(std::move(a)), b_(0), tag_(tag) {}
    FieldElement(Rational a, Rational b, FieldTag tag)
        : a_(std::move(a)), b_(std::move(b)), tag_(tag) {
        if (tag_ == FieldTag::Q && b_ != 0)
            throw value_error("sqrt5 component in a plain rational context");
    }

    static FieldElement zero(FieldTag tag) { return FieldElement(Rational(0), tag); }
    static FieldElement one(FieldTag tag) { return FieldElement(Rational(1), tag); }
    static FieldElement sqrt5() { return FieldElement(Rational(0), Rational(1), FieldTag::QSqrt5); }

    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    FieldTag tag() const { return tag_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_one() const { return a_ == 1 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }

    const Rational& rational_value() const {
        if (!is_rational()) throw value_error("field element is not rational");
        return a_;
    }

    FieldElement operator-() const { return FieldElement(-a_, -b_, tag_); }

    FieldElement& operator+=(const FieldElement& rhs);
    FieldElement& operator-=(const FieldElement& rhs);
    FieldElement& operator*=(const FieldElement& rhs);

    friend FieldElement operator+(FieldElement lhs, const FieldElement& rhs) { return lhs += rhs; }
    friend FieldElement operator-(FieldElement lhs, const FieldElement& rhs) { return lhs -= rhs; }
    friend FieldElement operator*(FieldElement lhs, const FieldElement& rhs) { return lhs *= rhs; }
    friend FieldElement operator/(FieldElement lhs, const FieldElement& rhs) {
        return lhs *= rhs.inverse();
    }

    // (a+b sqrt5)^-1 = (a-b sqrt5)/(a^2-5b^2); a^2 = 5b^2 is impossible over Q
    // for a nonzero element.
    FieldElement inverse() const;

    bool operator==(const FieldElement& rhs) const { return a_ == rhs.a_ && b_ == rhs.b_; }
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

    // Total order used for canonical pivoting/printing (not the real-number order).
    bool operator<(const FieldElement& rhs) const {
        if (a_ != rhs.a_) return a_ < rhs.a_;
        return b_ < rhs.b_;
    }

    // Sign of a + b*sqrt5 as a real number, computed exactly.
    int real_sign() const;

    double to_double() const;

    std::string to_string() const;

  private:
    void check_tag(const FieldElement& rhs) const {
        if (tag_ != rhs.tag_) throw context_error("mixed field tags (Q vs Q(sqrt5))");
    }

    Rational a_, b_;
    FieldTag tag_;
};

inline FieldElement promote(const FieldElement& e, FieldTag tag) {
    if (e.tag() == tag) return e;
    if (tag == FieldTag::QSqrt5) return FieldElement(e.a(), e.b(), tag);
    if (!e.is_rational()) throw value_error("cannot demote sqrt5 element to Q");
    return FieldElement(e.a(), tag);
}

}  // namespace frob
