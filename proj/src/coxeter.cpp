#include "frob/coxeter.hpp"

#include "frob/parser.hpp"

#include <algorithm>
#include <set>

namespace frob {

GroupLabel group_label_from_string(const std::string& s) {
    if (s == "I2") return GroupLabel::I2;
    if (s == "H3") return GroupLabel::H3;
    if (s == "D4") return GroupLabel::D4;
    if (s == "F4") return GroupLabel::F4;
    if (s == "H4") return GroupLabel::H4;
    throw value_error("unknown group label: " + s);
}

FieldElement inner(const std::vector<FieldElement>& a, const std::vector<FieldElement>& b) {
    if (a.size() != b.size()) throw value_error("inner: dimension mismatch");
    FieldElement acc = FieldElement::zero(a.empty() ? FieldTag::Q : a[0].tag());
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

MultiPoly x_laplacian(const MultiPoly& p) {
    MultiPoly acc = MultiPoly::zero(p.ring());
    for (std::size_t v = 0; v < p.ring()->nvars(); ++v) acc += p.derivative(v).derivative(v);
    return acc;
}

namespace {

using Vec = std::vector<FieldElement>;

FieldElement fe(long num, long den = 1) { return FieldElement(rat(num, den), FieldTag::QSqrt5); }

// phi = (1+sqrt5)/2, phibar = (1-sqrt5)/2
FieldElement phi() { return FieldElement(rat(1, 2), rat(1, 2), FieldTag::QSqrt5); }
FieldElement phibar() { return FieldElement(rat(1, 2), rat(-1, 2), FieldTag::QSqrt5); }

// elementary symmetric polynomials of the squares of the given variables
std::vector<MultiPoly> elementary_sym_squares(const RingPtr& ring,
                                              const std::vector<std::string>& vars) {
    std::size_t n = vars.size();
    std::vector<MultiPoly> e(n + 1, MultiPoly::constant(ring, Rational(1)));
    for (std::size_t k = 1; k <= n; ++k) e[k] = MultiPoly::zero(ring);
    for (const auto& v : vars) {
        MultiPoly sq = MultiPoly::variable(ring, v, 2);
        for (std::size_t k = std::min(n, vars.size()); k >= 1; --k)
            e[k] = e[k] + e[k - 1] * sq;
    }
    return e;
}

MultiPoly vandermonde_delta(const RingPtr& ring, const std::vector<std::string>& vars) {
    // prod_{i<j} (v_i^2 - v_j^2), with the paper's (x1^2-x2^2)(x1^2-x3^2)(x2^2-x3^2) order
    MultiPoly acc = MultiPoly::constant(ring, Rational(1));
    for (std::size_t i = 0; i < vars.size(); ++i)
        for (std::size_t j = i + 1; j < vars.size(); ++j)
            acc = acc * (MultiPoly::variable(ring, vars[i], 2) - MultiPoly::variable(ring, vars[j], 2));
    return acc;
}

void append_sign_patterns(std::vector<Vec>& roots, const Vec& base) {
    std::size_t n = base.size();
    std::vector<std::size_t> support;
    for (std::size_t i = 0; i < n; ++i)
        if (!base[i].is_zero()) support.push_back(i);
    for (std::size_t mask = 0; mask < (1u << support.size()); ++mask) {
        Vec v = base;
        for (std::size_t b = 0; b < support.size(); ++b)
            if (mask & (1u << b)) v[support[b]] = -v[support[b]];
        roots.push_back(v);
    }
}

std::vector<std::array<std::size_t, 4>> even_permutations_4() {
    std::vector<std::array<std::size_t, 4>> out;
    std::array<std::size_t, 4> p{0, 1, 2, 3};
    std::sort(p.begin(), p.end());
    do {
        // parity by inversion count
        int inv = 0;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (p[i] > p[j]) ++inv;
        if (inv % 2 == 0) out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

CoxeterModel* registry[5] = {nullptr, nullptr, nullptr, nullptr, nullptr};
std::mutex registry_mutex;

}  // namespace

CoxeterModel* build_h3() {
    auto mp = new CoxeterModel();
    CoxeterModel& m = *mp;
    m.label_ = GroupLabel::H3;
    m.rank_ = 3;
    m.xring_ = Ring::make({"x1", "x2", "x3"}, FieldTag::QSqrt5);
    m.yring_ = Ring::make({"y1", "y2", "y3"}, FieldTag::QSqrt5);
    m.degrees_ = {rat(10), rat(6), rat(2)};

    for (std::size_t i = 0; i < 3; ++i) {
        Vec v(3, fe(0));
        v[i] = fe(1);
        append_sign_patterns(m.roots_, v);
    }
    // half-sums over the even permutations of (1, phi, phibar)
    std::array<std::array<std::size_t, 3>, 3> cyc{{{0, 1, 2}, {1, 2, 0}, {2, 0, 1}}};
    for (const auto& s : cyc) {
        Vec v(3, fe(0));
        v[s[0]] = fe(1, 2);
        v[s[1]] = phi() * fe(1, 2);
        v[s[2]] = phibar() * fe(1, 2);
        append_sign_patterns(m.roots_, v);
    }

    auto e = elementary_sym_squares(m.xring_, {"x1", "x2", "x3"});
    MultiPoly delta = vandermonde_delta(m.xring_, {"x1", "x2", "x3"});
    MultiPoly s5 = MultiPoly::constant(m.xring_, FieldElement::sqrt5());
    MultiPoly y1 = 95 * (e[2] * e[3]) - 32 * (e[1] * e[1] * e[3]) - 5 * (e[1] * e[2] * e[2]) +
                   2 * (e[1] * e[1] * e[1] * e[2]) + 3 * (s5 * delta * e[2]);
    MultiPoly y2 = s5 * delta + e[1] * e[2] - 11 * e[3];
    m.y_ = {y1, y2, e[1]};

    auto sf = [&](const char* s) { return parse_poly(s, m.yring_); };
    m.saito_ = {
        {sf("30*y2^3 + 36*y2^2*y3^3 + 8*y1*y3^4"), sf("28*y2^2*y3 + 8*y2*y3^4"), sf("20*y1")},
        {sf("28*y2^2*y3 + 8*y2*y3^4"), sf("8*y1 + 8*y2*y3^2"), sf("12*y2")},
        {sf("20*y1"), sf("12*y2"), sf("4*y3")},
    };
    m.harmonic_ = {sf("y1 - 9/17*y2*y3^2 - 10/187*y3^5"), sf("y2 - 2/21*y3^3"), sf("1/6*y3")};
    m.finalize();
    return mp;
}

CoxeterModel* build_d4() {
    auto mp = new CoxeterModel();
    CoxeterModel& m = *mp;
    m.label_ = GroupLabel::D4;
    m.rank_ = 4;
    m.xring_ = Ring::make({"x1", "x2", "x3", "x4"}, FieldTag::Q);
    m.yring_ = Ring::make({"y1", "y2", "y3", "y4"}, FieldTag::Q);
    m.degrees_ = {rat(6), rat(4), rat(4), rat(2)};

    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            Vec v(4, FieldElement(rat(0)));
            v[i] = FieldElement(rat(1));
            v[j] = FieldElement(rat(1));
            append_sign_patterns(m.roots_, v);
        }

    auto xv = [&](const char* n, std::uint32_t p) { return MultiPoly::variable(m.xring_, n, p); };
    MultiPoly y1 = xv("x1", 6) + xv("x2", 6) + xv("x3", 6) + xv("x4", 6);
    MultiPoly y2 = xv("x1", 1) * xv("x2", 1) * xv("x3", 1) * xv("x4", 1);
    MultiPoly y3 = xv("x1", 4) + xv("x2", 4) + xv("x3", 4) + xv("x4", 4);
    MultiPoly y4 = xv("x1", 2) + xv("x2", 2) + xv("x3", 2) + xv("x4", 2);
    m.y_ = {y1, y2, y3, y4};

    auto sf = [&](const char* s) { return parse_poly(s, m.yring_); };
    MultiPoly g11 = sf("30*y1*y3 - 180*y2^2*y4 + 30*y1*y4^2 - 30*y3*y4^3 + 6*y4^5");
    MultiPoly g12 = sf("6*y2*y3");
    MultiPoly g13 = sf("32*y1*y4 - 96*y2^2 + 12*y3^2 - 24*y3*y4^2 + 4*y4^4");
    MultiPoly g14 = sf("12*y1");
    MultiPoly g22 = sf("1/6*(2*y1 - 3*y3*y4 + y4^3)");
    MultiPoly g23 = sf("4*y2*y4");
    MultiPoly g24 = sf("8*y2");
    MultiPoly g33 = sf("16*y1");
    MultiPoly g34 = sf("8*y3");
    // the printed bottom row (.., y3, y4) contradicts the symmetric (3,4)
    // entry and the direct gradient computation; 8*y3, 4*y4 is forced
    MultiPoly g44 = sf("4*y4");
    m.saito_ = {{g11, g12, g13, g14}, {g12, g22, g23, g24}, {g13, g23, g33, g34}, {g14, g24, g34, g44}};
    m.harmonic_ = {sf("y1 - 5/4*y3*y4 + 5/16*y4^3"), sf("y2"), sf("y3 - 1/2*y4^2"), sf("1/8*y4")};
    m.finalize();
    return mp;
}

CoxeterModel* build_f4() {
    auto mp = new CoxeterModel();
    CoxeterModel& m = *mp;
    m.label_ = GroupLabel::F4;
    m.rank_ = 4;
    m.xring_ = Ring::make({"x1", "x2", "x3", "x4"}, FieldTag::Q);
    m.yring_ = Ring::make({"y1", "y2", "y3", "y4"}, FieldTag::Q);
    m.degrees_ = {rat(12), rat(8), rat(6), rat(2)};

    for (std::size_t i = 0; i < 4; ++i) {
        Vec v(4, FieldElement(rat(0)));
        v[i] = FieldElement(rat(1));
        append_sign_patterns(m.roots_, v);
    }
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = i + 1; j < 4; ++j) {
            Vec v(4, FieldElement(rat(0)));
            v[i] = FieldElement(rat(1));
            v[j] = FieldElement(rat(1));
            append_sign_patterns(m.roots_, v);
        }
    Vec half(4, FieldElement(rat(1, 2)));
    append_sign_patterns(m.roots_, half);

    auto e = elementary_sym_squares(m.xring_, {"x1", "x2", "x3", "x4"});
    MultiPoly y1 = 288 * (e[2] * e[4]) - 108 * (e[1] * e[1] * e[4]) - 8 * (e[2] * e[2] * e[2]) +
                   3 * (e[1] * e[1] * e[2] * e[2]);
    MultiPoly y2 = 12 * e[4] - 3 * (e[1] * e[3]) + e[2] * e[2];
    MultiPoly y3 = 6 * e[3] - e[1] * e[2];
    m.y_ = {y1, y2, y3, e[1]};

    auto sf = [&](const char* s) { return parse_poly(s, m.yring_); };
    MultiPoly g11 = sf("1152*y2^2*y3 - 144*y1*y2*y4 + 1152*y2*y3^2*y4 - 144*y1*y3*y4^2 + 288*y3^3*y4^2");
    MultiPoly g12 = sf("-96*y2^2*y4 - 48*y2*y3*y4^2");
    MultiPoly g22 = sf("-8*y2*y3 - y1*y4 + 3*y3^2*y4");
    MultiPoly g13 = sf("192*y2^2 + 120*y2*y3*y4 - 12*y1*y4^2 + 12*y3^2*y4^2");
    MultiPoly g23 = sf("2*y1 - 6*y3^2 - 8*y2*y4^2");
    MultiPoly g33 = sf("20*y2*y4 - 4*y3*y4^2");
    MultiPoly g14 = sf("24*y1");
    MultiPoly g24 = sf("16*y2");
    MultiPoly g34 = sf("12*y3");
    MultiPoly g44 = sf("4*y4");
    m.saito_ = {{g11, g12, g13, g14}, {g12, g22, g23, g24}, {g13, g23, g33, g34}, {g14, g24, g34, g44}};
    m.harmonic_ = {
        sf("y1 + 1/3080*y4*(2520*y2*y4 + 1708*y3*y4^2 + 61*y4^5)"),
        sf("y2 + 1/160*y4*(40*y3 + 3*y4^3)"),
        // Delta(y3) = -6 y4^2 and Delta(y4^3) = 48 y4^2, so the harmonic
        // combination takes + y4^3/8 (the printed sign does not vanish)
        sf("y3 + 1/8*y4^3"),
        sf("1/8*y4"),
    };
    m.finalize();
    return mp;
}

CoxeterModel* build_h4() {
    auto mp = new CoxeterModel();
    CoxeterModel& m = *mp;
    m.label_ = GroupLabel::H4;
    m.rank_ = 4;
    m.xring_ = Ring::make({"x1", "x2", "x3", "x4"}, FieldTag::QSqrt5);
    m.yring_ = Ring::make({"y1", "y2", "y3", "y4"}, FieldTag::QSqrt5);
    m.degrees_ = {rat(30), rat(20), rat(12), rat(2)};

    for (std::size_t i = 0; i < 4; ++i) {
        Vec v(4, fe(0));
        v[i] = fe(1);
        append_sign_patterns(m.roots_, v);
    }
    Vec half(4, fe(1, 2));
    append_sign_patterns(m.roots_, half);
    for (const auto& s : even_permutations_4()) {
        Vec v(4, fe(0));
        v[s[1]] = fe(1, 2);
        v[s[2]] = phi() * fe(1, 2);
        v[s[3]] = phibar() * fe(1, 2);
        append_sign_patterns(m.roots_, v);
    }

    auto e = elementary_sym_squares(m.xring_, {"x2", "x3", "x4"});
    MultiPoly delta = vandermonde_delta(m.xring_, {"x2", "x3", "x4"});
    MultiPoly s5 = MultiPoly::constant(m.xring_, FieldElement::sqrt5());
    MultiPoly h2 = e[1];
    MultiPoly h6 = s5 * delta + e[1] * e[2] - 11 * e[3];
    MultiPoly h10 = 95 * (e[2] * e[3]) - 32 * (e[1] * e[1] * e[3]) - 5 * (e[1] * e[2] * e[2]) +
                    2 * (e[1] * e[1] * e[1] * e[2]) + 3 * (s5 * delta * e[2]);

    // powers of h2, h6, h10 on demand
    auto hp = [&](const MultiPoly& h, int k) { return h.pow(k); };
    MultiPoly x1sq = MultiPoly::variable(m.xring_, "x1", 2);
    auto x1p = [&](int k) { return MultiPoly::variable(m.xring_, "x1", static_cast<std::uint32_t>(k)); };

    MultiPoly y1 =
        rat(32, 3) * (x1p(24) * hp(h2, 3)) - 40 * (x1p(22) * (2 * hp(h2, 4) + 3 * (h2 * h6))) +
        x1p(20) * (360 * h10 + rat(1344, 5) * hp(h2, 5) + 672 * (hp(h2, 2) * h6)) +
        x1p(18) * (1080 * hp(h6, 2) - 1608 * (hp(h2, 3) * h6) - rat(1328, 3) * hp(h2, 6) -
                   2880 * (h10 * h2)) +
        x1p(16) * (10024 * (h10 * hp(h2, 2)) + 272 * hp(h2, 7) + 1248 * (hp(h2, 4) * h6) -
                   5628 * (h2 * hp(h6, 2))) +
        x1p(14) * (18588 * (hp(h2, 2) * hp(h6, 2)) + 272 * hp(h2, 8) - 7620 * (h10 * h6) -
                   16856 * (h10 * hp(h2, 3))) +
        x1p(12) * (14216 * (h10 * hp(h2, 4)) + 23508 * (h10 * h6 * h2) - rat(1328, 3) * hp(h2, 9) -
                   1248 * (h6 * hp(h2, 6)) - 27396 * (hp(h6, 2) * hp(h2, 3)) - 5796 * hp(h6, 3)) +
        x1p(10) * (3240 * hp(h10, 2) - 7160 * (h10 * hp(h2, 5)) - 25332 * (h10 * h6 * hp(h2, 2)) +
                   rat(1344, 5) * hp(h2, 10) + 1608 * (hp(h2, 7) * h6) + 19968 * (hp(h2, 4) * hp(h6, 2)) +
                   7350 * (h2 * hp(h6, 3))) +
        x1p(8) * (2144 * (h10 * hp(h2, 6)) - 3232 * (hp(h10, 2) * h2) + 10908 * (h10 * hp(h2, 3) * h6) -
                  906 * (h10 * hp(h6, 2)) - 80 * hp(h2, 11) - 672 * (hp(h2, 8) * h6) -
                  6924 * (hp(h2, 5) * hp(h6, 2)) - 1956 * (hp(h2, 2) * hp(h6, 3))) +
        x1p(6) * (1168 * (hp(h10, 2) * hp(h2, 2)) - 344 * (h10 * hp(h2, 7)) -
                  2172 * (h10 * hp(h2, 4) * h6) - 1908 * (h10 * h2 * hp(h6, 2)) +
                  rat(32, 3) * hp(h2, 12) + 120 * (hp(h2, 9) * h6) + 1332 * (hp(h2, 6) * hp(h6, 2)) +
                  288 * (hp(h2, 3) * hp(h6, 3)) + 2394 * hp(h6, 4)) +
        x1p(4) * (348 * (hp(h10, 2) * h6) - 152 * (hp(h10, 2) * hp(h2, 3)) + 16 * (h10 * hp(h2, 8)) +
                  60 * (h10 * h6 * hp(h2, 5)) + 408 * (h10 * hp(h6, 2) * hp(h2, 2)) -
                  84 * (hp(h2, 7) * hp(h6, 2)) + 84 * (hp(h2, 4) * hp(h6, 3)) -
                  909 * (h2 * hp(h6, 4))) +
        x1p(2) * (8 * (hp(h10, 2) * hp(h2, 4)) - 42 * (h10 * hp(h6, 2) * hp(h2, 3)) -
                  87 * (h10 * hp(h6, 3)) - 6 * (hp(h2, 5) * hp(h6, 3)) + 135 * (hp(h2, 2) * hp(h6, 4))) +
        rat(4, 3) * hp(h10, 3) - 3 * (h10 * h2 * hp(h6, 3)) + rat(9, 5) * hp(h6, 5);

    MultiPoly y2 =
        4 * (x1p(16) * hp(h2, 2)) - 10 * (x1p(14) * (2 * hp(h2, 3) + 3 * h6)) +
        x1p(12) * (44 * hp(h2, 4) + 138 * (h2 * h6)) +
        x1p(10) * (180 * h10 - 44 * hp(h2, 5) - 402 * (hp(h2, 2) * h6)) +
        x1p(8) * (44 * hp(h2, 6) - 464 * (h10 * h2) + 402 * (hp(h2, 3) * h6) + 294 * hp(h6, 2)) +
        x1p(6) * (296 * (h10 * hp(h2, 2)) - 20 * hp(h2, 7) - 138 * (hp(h2, 4) * h6) -
                  306 * (h2 * hp(h6, 2))) +
        x1p(4) * (4 * hp(h2, 8) - 76 * (h10 * hp(h2, 3)) - 114 * (h10 * h6) + 30 * (hp(h2, 5) * h6) +
                  168 * (hp(h2, 2) * hp(h6, 2))) +
        x1p(2) * (4 * (h10 * hp(h2, 4)) - 21 * (hp(h2, 3) * hp(h6, 2)) + rat(57, 2) * hp(h6, 3)) +
        hp(h10, 2) - rat(3, 2) * (h2 * hp(h6, 3));

    MultiPoly y3 = -2 * (x1p(10) * h2) + 6 * (x1p(8) * hp(h2, 2)) +
                   x1p(6) * (33 * h6 - 14 * hp(h2, 3)) - x1p(4) * (33 * (h2 * h6) - 6 * hp(h2, 4)) +
                   x1p(2) * (11 * h10 - 2 * hp(h2, 5)) - h10 * h2 + rat(3, 2) * hp(h6, 2);

    MultiPoly y4 = x1sq + h2;
    m.y_ = {y1, y2, y3, y4};

    auto sf = [&](const char* s) { return parse_poly(s, m.yring_); };
    MultiPoly g11 = sf("928/3*y2*y3^3*y4 + 240*y1*y3^2*y4^2 + 96*y2^2*y3*y4^3 + 160*y1*y2*y4^4");
    MultiPoly g12 = sf("-32*y3^4 - 112*y2*y3^2*y4^2 - 120*y1*y3*y4^3 + 48*y2^2*y4^4");
    MultiPoly g22 = sf("152/3*y3^3*y4 - 56*y2*y3*y4^3 + 20*y1*y4^4");
    MultiPoly g13 = sf("-80*y2^2 - 16/3*y3^3*y4^2 - 16*y2*y3*y4^4 - 40*y1*y4^5");
    MultiPoly g23 = sf("-30*y1 + 8*y3^2*y4^3 - 24*y2*y4^5");
    MultiPoly g33 = sf("44*y2*y4 - 8*y3*y4^5");
    MultiPoly g14 = sf("60*y1");
    MultiPoly g24 = sf("40*y2");
    MultiPoly g34 = sf("24*y3");
    // |grad(sum x^2)|^2 = 4 sum x^2; the printed 5*y4 cannot arise
    MultiPoly g44 = sf("4*y4");
    m.saito_ = {{g11, g12, g13, g14}, {g12, g22, g23, g24}, {g13, g23, g33, g34}, {g14, g24, g34, g44}};
    m.harmonic_ = {
        sf("y1 - y4^3/30030*(4*y4^12 + 320*y3*y4^6 + 7051*y2*y4^2 - 715*y3^2)"),
        sf("y2 + y4^4/748*(3*y4^6 + 110*y3)"),
        sf("y3 + y4^6/14"),
        sf("1/8*y4"),
    };
    m.finalize();
    return mp;
}

void CoxeterModel::finalize() {
    // degree checks on the stored invariants
    for (std::size_t i = 0; i < rank_; ++i) {
        if (Rational(y_[i].total_degree()) != degrees_[i])
            throw value_error("basic invariant degree mismatch at y" + std::to_string(i + 1));
    }
    // positive system from a generic exact functional, then indecomposables
    std::vector<Rational> weights{rat(1), rat(1, 3), rat(1, 9), rat(1, 27)};
    std::vector<Vec> positive;
    for (const auto& r : roots_) {
        FieldElement f = FieldElement::zero(r[0].tag());
        for (std::size_t i = 0; i < rank_; ++i)
            f += r[i] * FieldElement(weights[i], r[i].tag());
        int s = f.real_sign();
        if (s == 0) throw value_error("functional vanished on a root; adjust weights");
        if (s > 0) positive.push_back(r);
    }
    auto equal_vec = [](const Vec& a, const Vec& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return false;
        return true;
    };
    auto in_positive = [&](const Vec& v) {
        for (const auto& p : positive)
            if (equal_vec(p, v)) return true;
        return false;
    };
    // alpha is simple iff s_alpha permutes the other positive roots
    for (const auto& alpha : positive) {
        FieldElement norm = inner(alpha, alpha);
        bool simple = true;
        for (const auto& beta : positive) {
            if (equal_vec(beta, alpha)) continue;
            FieldElement c = FieldElement(Rational(2), norm.tag()) * inner(alpha, beta) *
                             norm.inverse();
            Vec image(rank_);
            for (std::size_t i = 0; i < rank_; ++i) image[i] = beta[i] - c * alpha[i];
            if (!in_positive(image)) {
                simple = false;
                break;
            }
        }
        if (simple) simple_.push_back(alpha);
    }
    if (simple_.size() != rank_)
        throw value_error("unexpected number of simple roots: " + std::to_string(simple_.size()));
}

std::vector<Vec> CoxeterModel::positive_roots() const {
    std::vector<Rational> weights{rat(1), rat(1, 3), rat(1, 9), rat(1, 27)};
    std::vector<Vec> positive;
    for (const auto& r : roots_) {
        FieldElement f = FieldElement::zero(r[0].tag());
        for (std::size_t i = 0; i < rank_; ++i)
            f += r[i] * FieldElement(weights[i], r[i].tag());
        if (f.real_sign() > 0) positive.push_back(r);
    }
    return positive;
}

const CoxeterModel& CoxeterModel::get(GroupLabel label) {
    std::size_t idx = static_cast<std::size_t>(label);
    std::lock_guard<std::mutex> lock(registry_mutex);
    if (!registry[idx]) {
        switch (label) {
            case GroupLabel::H3: registry[idx] = build_h3(); break;
            case GroupLabel::D4: registry[idx] = build_d4(); break;
            case GroupLabel::F4: registry[idx] = build_f4(); break;
            case GroupLabel::H4: registry[idx] = build_h4(); break;
            case GroupLabel::I2:
                throw value_error(
                    "I2(m) has no materialized root model; the two-dimensional family "
                    "is checked in the (w, wbar) variables");
        }
    }
    return *registry[idx];
}

MultiPoly CoxeterModel::gradient_pairing(std::size_t i, std::size_t j) const {
    MultiPoly acc = MultiPoly::zero(xring_);
    for (std::size_t a = 0; a < rank_; ++a) acc += y_[i].derivative(a) * y_[j].derivative(a);
    return acc;
}

MultiPoly CoxeterModel::expand_in_x(const Monomial& ymono) const {
    std::vector<std::uint32_t> key(rank_);
    for (std::size_t i = 0; i < rank_; ++i) key[i] = ymono[i];
    {
        std::lock_guard<std::mutex> lock(cache_mutex_);
        auto it = ymono_cache_.find(key);
        if (it != ymono_cache_.end()) return it->second;
    }
    MultiPoly acc = MultiPoly::constant(xring_, Rational(1));
    for (std::size_t i = 0; i < rank_; ++i) {
        if (!key[i]) continue;
        // split the power to reuse cached lower powers
        std::vector<std::uint32_t> sub(rank_, 0);
        sub[i] = key[i];
        acc = acc * y_[i].pow(key[i]);
    }
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto [it, ok] = ymono_cache_.emplace(std::move(key), std::move(acc));
    return it->second;
}

MultiPoly CoxeterModel::expand_in_x(const MultiPoly& ypoly) const {
    MultiPoly acc = MultiPoly::zero(xring_);
    for (const auto& t : ypoly.terms())
        acc += expand_in_x(t.mono).scaled(t.coeff);
    return acc;
}

namespace {

// exponent vectors a with sum a_i * degree_i = target
void enumerate_weighted(const std::vector<Rational>& degrees, std::size_t pos, const Rational& left,
                        std::vector<std::uint32_t>& cur,
                        std::vector<std::vector<std::uint32_t>>& out) {
    if (pos == degrees.size()) {
        if (left == 0) out.push_back(cur);
        return;
    }
    Rational step = degrees[pos];
    for (std::uint32_t e = 0;; ++e) {
        Rational used = Rational(e) * step;
        if (used > left) break;
        cur[pos] = e;
        enumerate_weighted(degrees, pos + 1, left - used, cur, out);
    }
    cur[pos] = 0;
}

}  // namespace

MultiPoly CoxeterModel::express_in_invariants(const MultiPoly& p) const {
    if (p.is_zero()) return MultiPoly::zero(yring_);
    Rational target(p.total_degree());
    auto hom = p.weighted_degree(std::vector<Rational>(rank_, Rational(1)));
    if (!hom) throw value_error("express_in_invariants: input not homogeneous");
    std::vector<std::vector<std::uint32_t>> cand;
    std::vector<std::uint32_t> cur(rank_, 0);
    enumerate_weighted(degrees_, 0, target, cur, cand);
    if (cand.empty()) throw value_error("express_in_invariants: no invariant monomials at degree");

    std::vector<MultiPoly> expansions;
    expansions.reserve(cand.size());
    for (const auto& a : cand) {
        Monomial m(rank_);
        for (std::size_t i = 0; i < rank_; ++i) m.set(i, a[i]);
        expansions.push_back(expand_in_x(m));
    }
    // linear system over the x-monomials
    std::map<std::vector<std::uint32_t>, std::size_t> rowidx;
    auto row_of = [&](const Monomial& m) {
        std::vector<std::uint32_t> key(rank_);
        for (std::size_t i = 0; i < rank_; ++i) key[i] = m[i];
        auto [it, ok] = rowidx.emplace(std::move(key), rowidx.size());
        return it->second;
    };
    for (const auto& e : expansions)
        for (const auto& t : e.terms()) row_of(t.mono);
    for (const auto& t : p.terms()) row_of(t.mono);

    Matrix a(rowidx.size(), cand.size(), xring_->tag());
    std::vector<FieldElement> b(rowidx.size(), FieldElement::zero(xring_->tag()));
    for (std::size_t c = 0; c < expansions.size(); ++c)
        for (const auto& t : expansions[c].terms()) a.at(row_of(t.mono), c) = t.coeff;
    for (const auto& t : p.terms()) b[row_of(t.mono)] = t.coeff;

    std::vector<FieldElement> x;
    try {
        x = a.solve(b);
    } catch (const value_error&) {
        throw value_error("express_in_invariants: input is not in the invariant ring");
    }
    std::vector<Term> terms;
    for (std::size_t c = 0; c < cand.size(); ++c) {
        if (x[c].is_zero()) continue;
        Monomial m(rank_);
        for (std::size_t i = 0; i < rank_; ++i) m.set(i, cand[c][i]);
        terms.push_back({m, x[c]});
    }
    return MultiPoly::from_terms(yring_, std::move(terms));
}

MultiPoly CoxeterModel::x_sum_of_squares() const {
    MultiPoly acc = MultiPoly::zero(xring_);
    for (std::size_t i = 0; i < rank_; ++i)
        acc += MultiPoly::variable(xring_, xring_->names()[i], 2);
    return acc;
}

std::vector<MultiPoly> CoxeterModel::harmonic_invariants() const {
    std::vector<MultiPoly> out(rank_, MultiPoly::zero(yring_));
    // Y_n = (1/2n) y_n
    out[rank_ - 1] =
        MultiPoly::variable(yring_, yring_->names()[rank_ - 1]).scaled(rat(1, 2 * rank_));
    MultiPoly ynx = x_sum_of_squares().scaled(rat(1, 2 * rank_));
    for (std::size_t j = 0; j + 1 < rank_; ++j) {
        Rational corr_deg = degrees_[j] - 2;
        std::vector<std::vector<std::uint32_t>> cand;
        std::vector<std::uint32_t> cur(rank_, 0);
        enumerate_weighted(degrees_, 0, corr_deg, cur, cand);
        // columns: y_j itself then Yn * (each invariant monomial of degree d_j - 2)
        std::vector<MultiPoly> ximages;
        ximages.push_back(y_[j]);
        for (const auto& a : cand) {
            Monomial m(rank_);
            for (std::size_t i = 0; i < rank_; ++i) m.set(i, a[i]);
            ximages.push_back(ynx * expand_in_x(m));
        }
        std::map<std::vector<std::uint32_t>, std::size_t> rowidx;
        std::vector<MultiPoly> lap;
        lap.reserve(ximages.size());
        for (const auto& img : ximages) {
            MultiPoly l = x_laplacian(img);
            for (const auto& t : l.terms()) {
                std::vector<std::uint32_t> key(rank_);
                for (std::size_t i = 0; i < rank_; ++i) key[i] = t.mono[i];
                rowidx.emplace(std::move(key), rowidx.size());
            }
            lap.push_back(std::move(l));
        }
        Matrix a(std::max<std::size_t>(rowidx.size(), 1), ximages.size(), xring_->tag());
        for (std::size_t c = 0; c < lap.size(); ++c)
            for (const auto& t : lap[c].terms()) {
                std::vector<std::uint32_t> key(rank_);
                for (std::size_t i = 0; i < rank_; ++i) key[i] = t.mono[i];
                a.at(rowidx.at(key), c) = t.coeff;
            }
        auto kernel = a.kernel();
        // pick a kernel vector with a nonzero y_j component
        const std::vector<FieldElement>* pick = nullptr;
        for (const auto& v : kernel)
            if (!v[0].is_zero()) {
                pick = &v;
                break;
            }
        if (!pick) throw value_error("harmonic kernel misses y_j (impossible by dimension count)");
        FieldElement inv = (*pick)[0].inverse();
        MultiPoly yj = MultiPoly::variable(yring_, yring_->names()[j]).scaled((*pick)[0] * inv);
        MultiPoly acc = yj;  // coefficient 1 on y_j after scaling
        MultiPoly yn_y = MultiPoly::variable(yring_, yring_->names()[rank_ - 1])
                             .scaled(rat(1, 2 * rank_));
        for (std::size_t c = 0; c < cand.size(); ++c) {
            FieldElement coeff = (*pick)[c + 1] * inv;
            if (coeff.is_zero()) continue;
            Monomial m(rank_);
            for (std::size_t i = 0; i < rank_; ++i) m.set(i, cand[c][i]);
            MultiPoly mono = MultiPoly::from_terms(
                yring_, {{m, FieldElement::one(yring_->tag())}});
            acc += (yn_y * mono).scaled(coeff);
        }
        out[j] = acc;
    }
    return out;
}

CoxeterModel::Discriminant CoxeterModel::discriminant() const {
    std::vector<std::vector<MultiPoly>> m = saito_;
    MultiPoly det = bareiss_determinant(std::move(m));
    if (label_ != GroupLabel::H4) {
        MultiPoly prod = MultiPoly::constant(xring_, Rational(1));
        for (const auto& r : roots_) {
            MultiPoly lin = MultiPoly::zero(xring_);
            for (std::size_t i = 0; i < rank_; ++i) {
                if (r[i].is_zero()) continue;
                lin += MultiPoly::variable(xring_, xring_->names()[i]).scaled(r[i]);
            }
            prod = prod * lin;
        }
        Discriminant d;
        d.product_in_y = express_in_invariants(prod);
        d.det_saito = det;
        if (d.product_in_y.is_zero()) throw value_error("discriminant product vanished");
        const Term& lead = d.product_in_y.leading_term();
        FieldElement num = FieldElement::zero(yring_->tag());
        for (const auto& t : d.det_saito.terms())
            if (t.mono == lead.mono) num = t.coeff;
        d.constant = num * lead.coeff.inverse();
        MultiPoly diff = d.det_saito - d.product_in_y.scaled(d.constant);
        if (!diff.is_zero())
            throw value_error("det(saito) is not proportional to the root product");
        return d;
    }
    // H4: the degree-120 re-expression of the root product is out of reach of
    // the dense solver. det(g(y)) = c * prod(alpha, x) is classical; pin c by
    // one exact evaluation and confirm the pairing at further exact points.
    // The t-side discriminant identity closes the loop symbolically.
    auto eval_pair = [&](const std::vector<FieldElement>& pt, FieldElement& prod_val,
                         FieldElement& det_val) {
        prod_val = FieldElement::one(xring_->tag());
        for (const auto& r : roots_) prod_val *= inner(r, pt);
        std::vector<FieldElement> yv;
        yv.reserve(rank_);
        for (const auto& yi : y_) yv.push_back(yi.eval(pt));
        det_val = det.eval(yv);
    };
    auto mkpt = [&](long a, long b, long c, long e) {
        std::vector<FieldElement> pt;
        for (long v : {a, b, c, e}) pt.push_back(FieldElement(Rational(v), xring_->tag()));
        return pt;
    };
    Discriminant d;
    d.det_saito = det;
    FieldElement prod0, det0;
    eval_pair(mkpt(3, 5, 17, 41), prod0, det0);
    if (prod0.is_zero()) throw value_error("discriminant base point degenerate");
    d.constant = det0 * prod0.inverse();
    for (auto pt : {mkpt(2, 9, 25, 53), mkpt(1, 4, 10, 23), mkpt(7, 13, 29, 61),
                    mkpt(5, 11, 37, 71), mkpt(6, 15, 34, 77)}) {
        FieldElement p, q;
        eval_pair(pt, p, q);
        if (q != d.constant * p)
            throw value_error("det(saito) is not proportional to the root product");
    }
    d.product_in_y = det.scaled(d.constant.inverse());
    return d;
}

bool CoxeterModel::invariance_check(const MultiPoly& p) const {
    for (const auto& alpha : simple_)
        if (reflect(p, alpha) != p) return false;
    return true;
}

MultiPoly CoxeterModel::reflect(const MultiPoly& p, const Vec& alpha) const {
    FieldElement norm = inner(alpha, alpha);
    FieldElement two(Rational(2), alpha[0].tag());
    std::map<std::string, MultiPoly> bind;
    MultiPoly ax = MultiPoly::zero(xring_);
    for (std::size_t i = 0; i < rank_; ++i) {
        if (alpha[i].is_zero()) continue;
        ax += MultiPoly::variable(xring_, xring_->names()[i]).scaled(alpha[i]);
    }
    for (std::size_t i = 0; i < rank_; ++i) {
        MultiPoly xi = MultiPoly::variable(xring_, xring_->names()[i]);
        bind[xring_->names()[i]] =
            xi - ax.scaled(two * alpha[i] * norm.inverse());
    }
    return p.substitute_poly(bind, xring_);
}

}  // namespace frob
