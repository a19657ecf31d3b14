#pragma once

#include "frob/linalg.hpp"
#include "frob/multipoly.hpp"

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace frob {

enum class GroupLabel { I2, H3, D4, F4, H4 };

GroupLabel group_label_from_string(const std::string& s);

// Root system, basic invariants y(x), the Saito-form fixture g^{ij}(y) and
// the harmonic invariant set Y(y) for one reflection group. I2(m) is not
// materialized here: the two-dimensional family works in the (w, wbar)
// variables instead (see family.hpp), which keeps its root coordinates out
// of the scalar field.
class CoxeterModel {
  public:
    static const CoxeterModel& get(GroupLabel label);

    GroupLabel label() const { return label_; }
    std::size_t rank() const { return rank_; }
    const RingPtr& xring() const { return xring_; }
    const RingPtr& yring() const { return yring_; }
    const std::vector<std::vector<FieldElement>>& roots() const { return roots_; }
    const std::vector<MultiPoly>& basic_invariants() const { return y_; }
    const std::vector<Rational>& invariant_degrees() const { return degrees_; }
    const std::vector<std::vector<MultiPoly>>& saito_form() const { return saito_; }
    const std::vector<MultiPoly>& harmonic_set() const { return harmonic_; }

    // (nabla y_i, nabla y_j) as a polynomial in x.
    MultiPoly gradient_pairing(std::size_t i, std::size_t j) const;

    // Rewrite a homogeneous W-invariant x-polynomial in the basic invariants.
    // Throws value_error when p is not in the invariant ring.
    MultiPoly express_in_invariants(const MultiPoly& p) const;

    // Kernel-of-Laplacian construction behind the harmonic set: returns a
    // set Y_1..Y_n (as y-polynomials) with Delta(Y_n) = 1, Delta(Y_j) = 0.
    std::vector<MultiPoly> harmonic_invariants() const;

    struct Discriminant {
        MultiPoly product_in_y;   // prod over all roots of (alpha, x), in y
        MultiPoly det_saito;      // det g^{ij}(y)
        FieldElement constant;    // det_saito = constant * product_in_y
    };
    Discriminant discriminant() const;

    bool invariance_check(const MultiPoly& p) const;

    // image of p under the reflection in alpha
    MultiPoly reflect(const MultiPoly& p, const std::vector<FieldElement>& alpha) const;

    const std::vector<std::vector<FieldElement>>& simple_roots() const { return simple_; }
    std::vector<std::vector<FieldElement>> positive_roots() const;

    // expand a y-monomial / y-polynomial into x variables (cached)
    MultiPoly expand_in_x(const Monomial& ymono) const;
    MultiPoly expand_in_x(const MultiPoly& ypoly) const;

    MultiPoly x_sum_of_squares() const;

  private:
    CoxeterModel() = default;
    void finalize();  // simple roots, degree checks

    GroupLabel label_;
    std::size_t rank_ = 0;
    RingPtr xring_, yring_;
    std::vector<std::vector<FieldElement>> roots_;
    std::vector<MultiPoly> y_;
    std::vector<Rational> degrees_;
    std::vector<std::vector<MultiPoly>> saito_;
    std::vector<MultiPoly> harmonic_;
    std::vector<std::vector<FieldElement>> simple_;

    mutable std::mutex cache_mutex_;
    mutable std::map<std::vector<std::uint32_t>, MultiPoly> ymono_cache_;

    friend CoxeterModel* build_h3();
    friend CoxeterModel* build_d4();
    friend CoxeterModel* build_f4();
    friend CoxeterModel* build_h4();
};

MultiPoly x_laplacian(const MultiPoly& p);

FieldElement inner(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b);

}  // namespace frob
