#pragma once

#include "frob/multipoly.hpp"
#include "frob/rational.hpp"

#include <complex>
#include <vector>

namespace frob {

// Dense exact matrix over Q or Q(sqrt5).
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, FieldTag tag = FieldTag::Q)
        : rows_(rows), cols_(cols), data_(rows * cols, FieldElement::zero(tag)), tag_(tag) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    FieldTag tag() const { return tag_; }

    FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const FieldElement& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    // Reduced row echelon form in place; returns pivot column per rank row.
    // Pivot choice prefers rational entries over genuine sqrt5 ones.
    std::vector<std::size_t> rref();

    std::size_t rank() const;

    // Basis of the right null space, each vector scaled to integer-primitive
    // form with a positive first nonzero component.
    std::vector<std::vector<FieldElement>> kernel() const;

    // Unique solution of A x = b; throws value_error when the system is
    // inconsistent or underdetermined.
    std::vector<FieldElement> solve(const std::vector<FieldElement>& b) const;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<FieldElement> data_;
    FieldTag tag_ = FieldTag::Q;
};

// Scale a vector over the field so components become integer, collectively
// coprime, with positive leading sign (for Q(sqrt5): positive real sign).
void normalize_primitive(std::vector<FieldElement>& v);

// True when u and v are nonzero scalar multiples of each other.
bool proportional(const std::vector<FieldElement>& u, const std::vector<FieldElement>& v);

// Determinant of a square polynomial matrix by fraction-free (Bareiss)
// elimination; only exact divisions are performed.
MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m);

// Solve M x = b with polynomial entries by Cramer's rule on Bareiss
// determinants: returns numerators x_i and the common denominator det(M).
// det == 0 reports a singular system via value_error.
struct PolySolution {
    std::vector<MultiPoly> numerators;
    MultiPoly denominator;
};
PolySolution bareiss_solve(const std::vector<std::vector<MultiPoly>>& m,
                           const std::vector<MultiPoly>& b);

// Durand-Kerner roots of a complex-coefficient polynomial, sorted by real
// part then imaginary part.
std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs);

}  // namespace frob
