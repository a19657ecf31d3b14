#pragma once

#include "frob/manifest.hpp"
#include "frob/pipeline.hpp"

#include <array>
#include <complex>
#include <vector>

namespace frob {

using Cplx = std::complex<double>;

struct branch_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Gauss series, |w| < 1, summed to relative 1e-14 with a term cap.
Cplx hyp2f1(const Rational& a, const Rational& b, const Rational& c, Cplx w);

// Symmetric third-derivative samples of a two-dimensional prepotential.
struct DualSample {
    Cplx c111, c112, c122, c222;
    Cplx& at(int i, int j, int k);
    const Cplx& at(int i, int j, int k) const;
};

// Closed-form dual third derivatives of the two-dimensional family at
// parameter k (principal branches; x must sit in the stated region).
DualSample dual_third_closed_2d(const Rational& k, Cplx x1, Cplx x2);

// Tensor-route oracle: same tensor assembled from the t-coordinate formulas
// of the family prepotential und the t(x) relations.
DualSample dual_third_tensor_2d(const Rational& k, Cplx x1, Cplx x2);

// Hypergeometric dual prepotential of Theorem-type (k = 1/l); sign '-'
// selects k = -1/l via the inversion correction term.
Cplx dual_prepotential_2d(long l, char sign, Cplx x1, Cplx x2);

// third central finite differences with one Richardson step
DualSample dual_third_fd(long l, char sign, Cplx x1, Cplx x2, double h = 1e-2);

// logarithmic Coxeter dual prepotential of I2(m): third derivatives
// sum over positive roots of 2 a_i a_j a_k / ((a,a) (a,x)).
DualSample coxeter_dual_third_i2(long m, Cplx x1, Cplx x2);

// points in the paper's branch region (|Re x1|,|Im x1| < 1; Re,Im x2 > 1)
std::vector<std::array<Cplx, 2>> sample_region(std::size_t count, unsigned seed);

// Numeric dual tensor of a catalogued model at a consistent (x, y, Z, t)
// sample; n = model dimension. Throws branch_error at singular samples.
struct CatalogDual {
    CatalogDual(const Manifest& manifest);

    const FrobeniusModel& model() const { return model_; }
    const CoxeterModel& cox() const { return *cox_; }
    const CoordinateBridge& bridge() const { return bridge_; }

    // all c*_{ijk}(x) components, indexed [i][j][k], at the chosen Z-sheet
    std::vector<Cplx> dual_third_tensor(const std::vector<Cplx>& x, Cplx z_sheet) const;
    // z_min_poly roots above the point y(x)
    std::vector<Cplx> z_sheets(const std::vector<Cplx>& x) const;

    std::size_t n() const { return model_.n(); }
    Cplx tensor_at(const std::vector<Cplx>& t, std::size_t i, std::size_t j,
                   std::size_t k) const;

  private:
    FrobeniusModel model_;
    const CoxeterModel* cox_;
    CoordinateBridge bridge_;
    std::vector<std::vector<QuotientElement>> dy_;  // dy_i/dt_j
    std::vector<QuotientElement> cstar_upper_;      // g^{a d} c^{b c}_d, packed
};

// Squarefree shape of z_min_poly restricted to the mirror (alpha, x) = 0:
// multiplicities {1^2, deg-2 simple} expected.
struct MirrorFactorization {
    bool pass = false;
    long gcd_degree = 0;     // degree of gcd(Pbar, Pbar') in Z
    long cofactor_degree = 0;  // degree of K
    std::string detail;
};
MirrorFactorization mirror_restriction_factor(const CatalogDual& cd,
                                              const std::vector<FieldElement>& alpha);

// Prop-7.2 limit of (alpha, x) c*_{ijk} along a path onto the mirror.
struct MirrorLimit {
    Cplx limit;
    Cplx expected;
    double rel_error = 0.0;
    bool pass = false;
};
MirrorLimit mirror_limit_check(const CatalogDual& cd, const std::vector<FieldElement>& alpha,
                               char branch, std::size_t i, std::size_t j, std::size_t k,
                               unsigned seed = 7);

}  // namespace frob
