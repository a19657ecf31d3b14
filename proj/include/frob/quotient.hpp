#pragma once

#include "frob/linalg.hpp"
#include "frob/multipoly.hpp"

#include <memory>
#include <vector>

namespace frob {

// Raised when an inversion in Q(t)[Z]/(P) hits a nontrivial gcd with P,
// i.e. the assumed irreducibility of P is violated.
struct irreducibility_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class QuotientElement;

// The relation P(t; Z) = 0: monic in Z, coefficients in Q[t2..tn]
// (no t1 dependence, which makes dZ/dt1 = 0).
class QuotientRing : public std::enable_shared_from_this<QuotientRing> {
  public:
    // ring must contain zvar; t1 (the unity direction) is identified by name
    // for the no-dependence check. Relations are normalized to leading
    // Z-coefficient 1.
    static std::shared_ptr<const QuotientRing> make(MultiPoly p, const std::string& zvar,
                                                    const std::string& t1 = "t1");

    const RingPtr& ring() const { return ring_; }
    std::size_t zvar() const { return zvar_; }
    long zdeg() const { return zdeg_; }
    const MultiPoly& p() const { return p_; }
    const MultiPoly& p_z() const { return p_z_; }

    QuotientElement zero() const;
    QuotientElement one() const;
    QuotientElement constant(const Rational& c) const;
    QuotientElement from_poly(MultiPoly raw) const;
    QuotientElement from_rf(const RationalFunction& rf) const;
    QuotientElement element(MultiPoly num, std::vector<std::pair<MultiPoly, int>> den) const;

    // 1 / (dP/dZ), computed once (fraction-free solve of the multiplication
    // matrix; the denominator is the resultant-type determinant).
    const QuotientElement& inv_p_z() const { return *inv_pz_; }

    // dZ/dt_j = -P_{t_j} / P_Z; identically zero for variables P does not
    // mention (t1 and any ansatz unknowns).
    const QuotientElement& dz(std::size_t var) const { return dz_.at(var); }

    bool same_as(const QuotientRing& other) const {
        return ring_->same_as(*other.ring_) && p_ == other.p_;
    }

  private:
    QuotientRing() = default;
    void build_caches();

    RingPtr ring_;
    std::size_t zvar_ = 0;
    long zdeg_ = 0;
    MultiPoly p_, p_z_;
    std::vector<MultiPoly> p_coeffs_;  // Z^0..Z^N coefficients, Z-free
    std::unique_ptr<QuotientElement> inv_pz_;
    std::vector<QuotientElement> dz_;

    friend class QuotientElement;
};

using QuotientRingPtr = std::shared_ptr<const QuotientRing>;

// Canonical representative num / (scale * prod f_i^e_i) with deg_Z(num) < N,
// each f_i a Z-free integer-primitive polynomial with positive leading
// coefficient. Factors are cancelled against the numerator whenever the
// exact division succeeds, so "denominator empty" is a sound polynomiality
// test for the factor sets produced here (a single resultant factor per
// ring; see dz()).
class QuotientElement {
  public:
    QuotientElement() = default;

    const QuotientRingPtr& qring() const { return qring_; }
    const MultiPoly& num() const { return num_; }
    const std::vector<std::pair<MultiPoly, int>>& den_factors() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const;

    MultiPoly den_expanded() const;

    QuotientElement operator-() const;
    friend QuotientElement operator+(const QuotientElement& a, const QuotientElement& b);
    friend QuotientElement operator-(const QuotientElement& a, const QuotientElement& b);
    friend QuotientElement operator*(const QuotientElement& a, const QuotientElement& b);

    QuotientElement scaled(const Rational& c) const;
    QuotientElement mul_poly(const MultiPoly& p) const;

    bool operator==(const QuotientElement& rhs) const;
    bool operator!=(const QuotientElement& rhs) const { return !(*this == rhs); }

    // Multiplicative inverse; irreducibility_error when gcd(num, P) is
    // nontrivial (singular multiplication matrix).
    QuotientElement inverse() const;

    // Total derivative through Z(t): d/dt_j acting on num/den with
    // dZ/dt_j = -P_{t_j}/P_Z.
    QuotientElement total_derivative(std::size_t var) const;
    QuotientElement total_derivative(const std::string& var) const;

    // Z-coefficients as rational functions of the t variables.
    RationalFunction coeff_rf(long zpow) const;
    // True when every Z-coefficient is polynomial; otherwise witness receives
    // one offending coefficient.
    bool is_polynomial(RationalFunction* witness = nullptr) const;
    MultiPoly as_poly() const;

    std::complex<double> eval(const std::vector<std::complex<double>>& point) const;

    std::string to_string() const;

  private:
    QuotientElement(QuotientRingPtr qring, MultiPoly num,
                    std::vector<std::pair<MultiPoly, int>> den);
    void reduce();
    void normalize();
    void check_ring(const QuotientElement& rhs) const;

    QuotientRingPtr qring_;
    MultiPoly num_;
    std::vector<std::pair<MultiPoly, int>> den_;

    friend class QuotientRing;
};

}  // namespace frob
