#pragma once

#include "frob/quotient.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace frob {

// Everything a catalogued example needs on the (t, Z) side. Variables are
// t1..tn followed by Z; x_weights holds deg_x per ring variable (2 d_i/d_n
// for t_i plus the stated deg_x Z).
struct FrobeniusData {
    std::string name;
    std::size_t n = 0;
    std::vector<Rational> degrees;
    Rational charge;
    MultiPoly prepotential;
    MultiPoly relation;
    std::vector<Rational> x_weights;
};

class FrobeniusModel {
  public:
    explicit FrobeniusModel(FrobeniusData data);

    const std::string& name() const { return data_.name; }
    std::size_t n() const { return data_.n; }
    const std::vector<Rational>& degrees() const { return data_.degrees; }
    const Rational& charge() const { return data_.charge; }
    const RingPtr& ring() const { return ring_; }
    const QuotientRingPtr& qring() const { return qring_; }
    const MultiPoly& prepotential() const { return data_.prepotential; }
    const std::vector<Rational>& x_weights() const { return data_.x_weights; }

    // E-degree of Z is d_n * deg_x(Z) / 2.
    Rational euler_weight_z() const;

    std::size_t zvar() const { return qring_->zvar(); }
    std::size_t tvar(std::size_t i) const { return i; }  // t_{i+1} is ring var i

    // index lowering by the antidiagonal eta: i -> n+1-i (0-based mirror)
    std::size_t mirror(std::size_t i) const { return data_.n - 1 - i; }

    // c_{ijk}(t, Z), fully symmetric, 0-based indices.
    const QuotientElement& c_lower(std::size_t i, std::size_t j, std::size_t k) const;
    // c^i_{jk} = eta^{i mu} c_{mu jk}
    const QuotientElement& c_up1(std::size_t i, std::size_t j, std::size_t k) const {
        return c_lower(mirror(i), j, k);
    }
    // c^{ij}_k
    const QuotientElement& c_up2(std::size_t i, std::size_t j, std::size_t k) const {
        return c_lower(mirror(i), mirror(j), k);
    }

    // eta_{ij} from third derivatives; throws when an entry is non-constant
    // or the matrix is not the antidiagonal identity.
    std::vector<std::vector<Rational>> eta_from_prepotential() const;

    QuotientElement euler_residual() const;

    // g^{ij}(t) = E^l c^{ij}_l
    const QuotientElement& intersection_form(std::size_t i, std::size_t j) const;

    // Delta(t_i) = ((d-1)/2 + d_i) c^{i l}_l
    const QuotientElement& laplacian_flat_coord(std::size_t i) const;

    // Delta(f) = g^{nu mu} d2 f + Delta(t_nu) d f, all derivatives total.
    QuotientElement laplacian(const QuotientElement& f) const;

    QuotientElement wdvv_entry(std::size_t i, std::size_t j, std::size_t k,
                               std::size_t l) const;

    struct WdvvReport {
        bool pass = true;
        std::vector<std::array<std::size_t, 4>> offending;
        std::string first_residual;
    };
    WdvvReport wdvv_scan(bool parallel = true) const;
    WdvvReport wdvv_scan_serial() const { return wdvv_scan(false); }

    Rational x_degree(const Monomial& m) const;
    // nullopt when not x-homogeneous
    std::optional<Rational> x_degree(const MultiPoly& p) const;

    // every monomial of F has E-degree 3 - d
    bool euler_grading_ok() const;

    QuotientElement total_derivative(const QuotientElement& f, std::size_t tvar) const {
        return f.total_derivative(tvar);
    }

  private:
    void build_tensors();

    FrobeniusData data_;
    RingPtr ring_;
    QuotientRingPtr qring_;
    std::vector<QuotientElement> c_;       // symmetric triples, see index_of_triple
    std::vector<QuotientElement> g_;       // upper triangle
    std::vector<QuotientElement> delta_;   // Delta(t_i)
    std::size_t triple_index(std::size_t i, std::size_t j, std::size_t k) const;
};

}  // namespace frob
