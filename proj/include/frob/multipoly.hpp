#pragma once

#include "frob/rational.hpp"

#include <array>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace frob {

// Ring context: fixed ordered variable list plus the coefficient field tag.
// Polynomials carry a shared pointer to their ring; operations across
// different rings (pointer inequality and name-list inequality) are errors.
class Ring;
using RingPtr = std::shared_ptr<const Ring>;

class Ring {
  public:
    static constexpr std::size_t kMaxVars = 12;

    static RingPtr make(std::vector<std::string> names, FieldTag tag = FieldTag::Q);

    const std::vector<std::string>& names() const { return names_; }
    std::size_t nvars() const { return names_.size(); }
    FieldTag tag() const { return tag_; }

    std::size_t index_of(const std::string& name) const;
    std::optional<std::size_t> find(const std::string& name) const;

    bool same_as(const Ring& other) const {
        return tag_ == other.tag_ && names_ == other.names_;
    }

  private:
    Ring(std::vector<std::string> names, FieldTag tag);
    std::vector<std::string> names_;
    FieldTag tag_;
};

// Exponent vector with inline storage; total degree cached for graded-lex.
class Monomial {
  public:
    Monomial() : n_(0), deg_(0) { e_.fill(0); }
    explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(nvars)), deg_(0) {
        e_.fill(0);
    }

    std::size_t nvars() const { return n_; }
    std::uint32_t operator[](std::size_t i) const { return e_[i]; }
    std::uint64_t degree() const { return deg_; }

    void set(std::size_t i, std::uint32_t v) {
        deg_ += v;
        deg_ -= e_[i];
        e_[i] = v;
    }

    bool is_constant() const { return deg_ == 0; }

    Monomial operator*(const Monomial& rhs) const;
    // nullopt when rhs does not divide *this.
    std::optional<Monomial> divide(const Monomial& rhs) const;

    bool operator==(const Monomial& rhs) const {
        return n_ == rhs.n_ && deg_ == rhs.deg_ && e_ == rhs.e_;
    }
    // graded-lex: higher total degree first, then lex on exponents.
    bool graded_lex_less(const Monomial& rhs) const {
        if (deg_ != rhs.deg_) return deg_ < rhs.deg_;
        for (std::size_t i = 0; i < n_; ++i)
            if (e_[i] != rhs.e_[i]) return e_[i] < rhs.e_[i];
        return false;
    }

    std::size_t hash() const {
        std::uint64_t h = 1469598103934665603ull;
        for (std::size_t i = 0; i < n_; ++i) {
            h ^= e_[i];
            h *= 1099511628211ull;
        }
        return static_cast<std::size_t>(h);
    }

  private:
    std::array<std::uint32_t, Ring::kMaxVars> e_;
    std::uint8_t n_;
    std::uint64_t deg_;
};

struct Term {
    Monomial mono;
    FieldElement coeff;
};

class RationalFunction;

// Sparse multivariate polynomial; terms sorted descending graded-lex,
// no explicit zero coefficients.
class MultiPoly {
  public:
    MultiPoly() = default;
    explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

    static MultiPoly zero(RingPtr ring) { return MultiPoly(std::move(ring)); }
    static MultiPoly constant(RingPtr ring, const FieldElement& c);
    static MultiPoly constant(RingPtr ring, const Rational& c);
    static MultiPoly variable(RingPtr ring, const std::string& name, std::uint32_t power = 1);
    static MultiPoly from_terms(RingPtr ring, std::vector<Term> terms);

    const RingPtr& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_constant()); }
    FieldElement constant_value() const;
    std::size_t size() const { return terms_.size(); }

    const Term& leading_term() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& rhs);
    MultiPoly& operator-=(const MultiPoly& rhs);
    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);

    MultiPoly scaled(const FieldElement& c) const;
    MultiPoly scaled(const Rational& c) const;
    MultiPoly mono_times(const Monomial& m, const FieldElement& c) const;
    MultiPoly pow(long e) const;

    bool operator==(const MultiPoly& rhs) const;
    bool operator!=(const MultiPoly& rhs) const { return !(*this == rhs); }

    MultiPoly derivative(const std::string& var) const;
    MultiPoly derivative(std::size_t var) const;

    long degree_in(std::size_t var) const;
    std::uint64_t total_degree() const;

    // coefficients of var^0 .. var^deg, as polynomials in the same ring
    // (entries do not mention var).
    std::vector<MultiPoly> coeffs_in(std::size_t var) const;

    // Weighted degree bookkeeping; nullopt when not homogeneous.
    std::optional<Rational> weighted_degree(const std::vector<Rational>& weights) const;

    // Positive rational c such that (*this)/c has integer, collectively
    // coprime coefficient components; 1 for the zero polynomial.
    Rational content() const;

    // Exact division attempt: on success q satisfies *this == q * divisor.
    bool try_divide(const MultiPoly& divisor, MultiPoly& quotient) const;

    FieldElement eval(const std::vector<FieldElement>& point) const;
    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    // Substitute variables by rational functions of a target ring; variables
    // absent from the map must exist in the target ring under the same name.
    RationalFunction substitute(const std::map<std::string, RationalFunction>& bindings,
                                const RingPtr& target) const;
    MultiPoly substitute_poly(const std::map<std::string, MultiPoly>& bindings,
                              const RingPtr& target) const;

    // Same polynomial in a ring with extra/renamed variables (name-based map).
    MultiPoly transport(const RingPtr& target,
                        const std::map<std::string, std::string>& rename = {}) const;

    std::string to_string() const;

  private:
    void check_ring(const MultiPoly& rhs) const;
    void normalize_sorted();  // assumes sorted, strips zeros

    RingPtr ring_;
    std::vector<Term> terms_;
};

MultiPoly operator*(const Rational& c, const MultiPoly& p);

// Quotient of polynomials; den != 0, den integer-primitive with positive
// leading coefficient (graded-lex), best-effort cancellation (content,
// common monomials, exact division either way).
class RationalFunction {
  public:
    RationalFunction() = default;
    explicit RationalFunction(MultiPoly num);
    RationalFunction(MultiPoly num, MultiPoly den);

    static RationalFunction zero(const RingPtr& ring) {
        return RationalFunction(MultiPoly::zero(ring));
    }

    const MultiPoly& num() const { return num_; }
    const MultiPoly& den() const { return den_; }
    const RingPtr& ring() const { return num_.ring(); }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    MultiPoly as_poly() const;

    RationalFunction operator-() const;
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

    RationalFunction inverse() const;
    RationalFunction pow(long e) const;
    RationalFunction derivative(const std::string& var) const;

    // Exact equality of the represented functions (cross-multiplied).
    bool operator==(const RationalFunction& rhs) const;
    bool operator!=(const RationalFunction& rhs) const { return !(*this == rhs); }

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    std::string to_string() const;

  private:
    void normalize();

    MultiPoly num_, den_;
};

}  // namespace frob
