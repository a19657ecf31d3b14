#include "frob/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace frob {

std::vector<std::size_t> Matrix::rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
        // prefer a rational pivot to keep sqrt5 out of the elimination
        std::size_t pick = rows_;
        for (std::size_t r = row; r < rows_; ++r) {
            if (at(r, col).is_zero()) continue;
            if (pick == rows_) pick = r;
            if (at(r, col).is_rational()) {
                pick = r;
                break;
            }
        }
        if (pick == rows_) continue;
        if (pick != row)
            for (std::size_t c = 0; c < cols_; ++c) std::swap(at(row, c), at(pick, c));
        FieldElement inv = at(row, col).inverse();
        for (std::size_t c = col; c < cols_; ++c) at(row, c) = at(row, c) * inv;
        for (std::size_t r = 0; r < rows_; ++r) {
            if (r == row || at(r, col).is_zero()) continue;
            FieldElement f = at(r, col);
            for (std::size_t c = col; c < cols_; ++c)
                at(r, c) = at(r, c) - f * at(row, c);
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

std::size_t Matrix::rank() const {
    Matrix copy = *this;
    return copy.rref().size();
}

std::vector<std::vector<FieldElement>> Matrix::kernel() const {
    Matrix copy = *this;
    std::vector<std::size_t> pivots = copy.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t c : pivots) is_pivot[c] = true;
    std::vector<std::vector<FieldElement>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
        if (is_pivot[free]) continue;
        std::vector<FieldElement> v(cols_, FieldElement::zero(tag_));
        v[free] = FieldElement::one(tag_);
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = -copy.at(r, free);
        normalize_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

std::vector<FieldElement> Matrix::solve(const std::vector<FieldElement>& b) const {
    if (b.size() != rows_) throw value_error("solve: dimension mismatch");
    Matrix aug(rows_, cols_ + 1, tag_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
        aug.at(r, cols_) = b[r];
    }
    std::vector<std::size_t> pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_)
        throw value_error("solve: inconsistent system");
    if (pivots.size() < cols_) throw value_error("solve: underdetermined system");
    std::vector<FieldElement> x(cols_, FieldElement::zero(tag_));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at(r, cols_);
    return x;
}

void normalize_primitive(std::vector<FieldElement>& v) {
    mpz_class num_gcd(0), den_lcm(1);
    auto feed = [&](const Rational& q) {
        if (q == 0) return;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    };
    for (const auto& e : v) {
        feed(e.a());
        feed(e.b());
    }
    if (num_gcd == 0) return;
    Rational scale(den_lcm, num_gcd);
    scale.canonicalize();
    int lead = 0;
    for (const auto& e : v)
        if (!e.is_zero()) {
            lead = e.real_sign();
            break;
        }
    if (lead < 0) scale = -scale;
    for (auto& e : v) e = e * FieldElement(scale, e.tag());
}

bool proportional(const std::vector<FieldElement>& u, const std::vector<FieldElement>& v) {
    if (u.size() != v.size()) return false;
    FieldElement ru, rv;
    bool found = false;
    for (std::size_t i = 0; i < u.size(); ++i) {
        bool zu = u[i].is_zero(), zv = v[i].is_zero();
        if (zu != zv) return false;
        if (zu) continue;
        if (!found) {
            ru = u[i];
            rv = v[i];
            found = true;
        } else if (u[i] * rv != v[i] * ru) {
            return false;
        }
    }
    return found;
}

MultiPoly bareiss_determinant(std::vector<std::vector<MultiPoly>> m) {
    std::size_t n = m.size();
    if (n == 0) throw value_error("empty determinant");
    RingPtr ring = m[0][0].ring();
    MultiPoly prev = MultiPoly::constant(ring, Rational(1));
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t swap_row = n;
            for (std::size_t r = k + 1; r < n; ++r)
                if (!m[r][k].is_zero()) {
                    swap_row = r;
                    break;
                }
            if (swap_row == n) return MultiPoly::zero(ring);
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                MultiPoly t = m[k][k] * m[i][j] - m[i][k] * m[k][j];
                MultiPoly q;
                if (!t.try_divide(prev, q))
                    throw value_error("bareiss: exact division failed");
                m[i][j] = std::move(q);
            }
            m[i][k] = MultiPoly::zero(ring);
        }
        prev = m[k][k];
    }
    MultiPoly det = m[n - 1][n - 1];
    return sign < 0 ? -det : det;
}

PolySolution bareiss_solve(const std::vector<std::vector<MultiPoly>>& m,
                           const std::vector<MultiPoly>& b) {
    std::size_t n = m.size();
    MultiPoly det = bareiss_determinant(m);
    if (det.is_zero()) throw value_error("bareiss_solve: singular matrix");
    PolySolution sol;
    sol.denominator = det;
    sol.numerators.reserve(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::vector<std::vector<MultiPoly>> mc = m;
        for (std::size_t r = 0; r < n; ++r) mc[r][col] = b[r];
        sol.numerators.push_back(bareiss_determinant(std::move(mc)));
    }
    return sol;
}

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& coeffs) {
    using Cplx = std::complex<double>;
    std::vector<Cplx> c = coeffs;
    while (!c.empty() && std::abs(c.back()) == 0.0) c.pop_back();
    if (c.size() <= 1) return {};
    std::size_t deg = c.size() - 1;
    Cplx lead = c.back();
    for (auto& v : c) v /= lead;
    double radius = 0.0;
    for (std::size_t k = 0; k < deg; ++k) radius = std::max(radius, std::abs(c[k]));
    radius = 1.0 + radius;
    std::vector<Cplx> r(deg);
    Cplx seed(0.4, 0.9);
    Cplx p(1.0, 0.0);
    for (std::size_t k = 0; k < deg; ++k) {
        p *= seed;
        r[k] = p * radius / std::abs(p);
        r[k] *= std::pow(radius, double(k + 1) / deg) / radius;
        r[k] += Cplx(0.01 * (k + 1), 0.003 * (k + 1));
    }
    auto eval = [&](Cplx x) {
        Cplx acc = c.back();
        for (std::size_t k = c.size() - 1; k-- > 0;) acc = acc * x + c[k];
        return acc;
    };
    for (int it = 0; it < 500; ++it) {
        double moved = 0.0;
        for (std::size_t k = 0; k < deg; ++k) {
            Cplx denom(1.0, 0.0);
            for (std::size_t j = 0; j < deg; ++j)
                if (j != k) denom *= (r[k] - r[j]);
            Cplx delta = eval(r[k]) / denom;
            r[k] -= delta;
            moved = std::max(moved, std::abs(delta));
        }
        if (moved < 1e-13 * (1.0 + radius)) break;
    }
    std::sort(r.begin(), r.end(), [](Cplx a, Cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return r;
}


}  // namespace frob
