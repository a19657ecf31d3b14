#include "frob/dual.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <random>

using namespace frob;

namespace {

double tensor_gap(const DualSample& a, const DualSample& b) {
    double scale = 0.0, gap = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k) scale = std::max(scale, std::abs(b.at(i, j, k)));
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k)
                gap = std::max(gap, std::abs(a.at(i, j, k) - b.at(i, j, k)) / scale);
    return gap;
}

}  // namespace

TEST_SUITE("dual") {

TEST_CASE("gauss series against (1-w)^{-a}") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> num(-24, 24);
    std::uniform_real_distribution<double> re(-0.6, 0.6), im(-0.6, 0.6);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Cplx w(re(rng), im(rng));
        if (std::abs(w) >= 0.9) continue;
        Rational a = rat(num(rng), 12), b = rat(num(rng) + 30, 12);
        Cplx lhs = hyp2f1(a, b, b, w);
        Cplx rhs = std::exp(-a.get_d() * std::log(1.0 - w));
        worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    CHECK(worst < 1e-12);
    CHECK(hyp2f1(rat(1, 3), rat(2, 5), rat(7, 5), Cplx(0, 0)) == Cplx(1.0, 0.0));
    CHECK_THROWS_AS(hyp2f1(rat(1), rat(1), rat(2), Cplx(1.2, 0)), branch_error);
}

TEST_CASE("contiguous relation via numerical differentiation") {
    Rational a = rat(1, 3), b = rat(1, 3), c = rat(4, 3);
    double worst = 0.0;
    for (auto& p : sample_region(10, 3)) {
        Cplx w = (Cplx(0, 1) * p[0] + p[1]) / (2.0 * p[1]);
        double h = 1e-6;
        Cplx fd = (hyp2f1(a, b, c, w + h) - hyp2f1(a, b, c, w - h)) / (2.0 * h);
        Cplx rel = (c.get_d() - 1.0) / w * (hyp2f1(a, b, c - Rational(1), w) - hyp2f1(a, b, c, w));
        worst = std::max(worst, std::abs(fd - rel) / std::abs(rel));
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("pinned high-precision reference at k = 1/2") {
    Cplx x1(0.3, 0.1), x2(1.5, 1.2);
    DualSample s = dual_third_closed_2d(rat(1, 2), x1, x2);
    CHECK(std::abs(s.c111 - Cplx(-0.379864890622314665, 0.269479232435661017)) < 1e-12);
    CHECK(std::abs(s.c112 - Cplx(0.246594132477840256, -0.225846826427916764)) < 1e-12);
    CHECK(std::abs(s.c122 - Cplx(-0.0252387051388906303, 0.0489207205648398399)) < 1e-12);
    CHECK(std::abs(s.c222 - Cplx(0.204366588241341814, -0.17159483436344871)) < 1e-12);
}

TEST_CASE("parity of the closed formulas under x2 -> -x2") {
    for (auto& p : sample_region(5, 11)) {
        DualSample a = dual_third_closed_2d(rat(5, 3), p[0], p[1]);
        DualSample b = dual_third_closed_2d(rat(5, 3), p[0], -p[1]);
        CHECK(std::abs(a.c111 - b.c111) < 1e-10 * std::abs(a.c111));
        CHECK(std::abs(a.c122 - b.c122) < 1e-10 * std::abs(a.c122));
        CHECK(std::abs(a.c112 + b.c112) < 1e-10 * std::abs(a.c112));
        CHECK(std::abs(a.c222 + b.c222) < 1e-10 * std::abs(a.c222));
    }
}

TEST_CASE("closed form against the tensor route") {
    for (auto k : {rat(2), rat(1, 2), rat(5, 3)}) {
        double worst = 0.0;
        for (auto& p : sample_region(20, 3))
            worst = std::max(worst, tensor_gap(dual_third_closed_2d(k, p[0], p[1]),
                                               dual_third_tensor_2d(k, p[0], p[1])));
        CHECK(worst < 1e-10);
    }
}

TEST_CASE("closed form against the I2(m) logarithmic sum") {
    for (long m : {2L, 3L}) {
        double worst = 0.0;
        for (auto& p : sample_region(10, 31))
            worst = std::max(worst, tensor_gap(dual_third_closed_2d(rat(m), p[0], p[1]),
                                               coxeter_dual_third_i2(m, p[0], p[1])));
        CHECK(worst < 1e-8);
    }
}

TEST_CASE("finite differences of the dual prepotential") {
    for (long l : {2L, 3L, 4L}) {
        double worst = 0.0;
        for (auto& p : sample_region(20, 17 + l))
            worst = std::max(worst, tensor_gap(dual_third_fd(l, '+', p[0], p[1]),
                                               dual_third_closed_2d(rat(1, l), p[0], p[1])));
        CHECK(worst < 1e-6);
    }
    // inversion side: sign '-' realizes k = -1/l
    double worst = 0.0;
    for (auto& p : sample_region(8, 29))
        worst = std::max(worst, tensor_gap(dual_third_fd(2, '-', p[0], p[1]),
                                           dual_third_closed_2d(rat(-1, 2), p[0], p[1])));
    CHECK(worst < 1e-6);
}

TEST_CASE("inversion difference formula pointwise") {
    for (long l : {2L, 3L})
        for (auto& p : sample_region(10, 23)) {
            Cplx lhs = dual_prepotential_2d(l, '-', p[0], p[1]) -
                       dual_prepotential_2d(l, '+', p[0], p[1]);
            Cplx r2 = p[0] * p[0] + p[1] * p[1];
            Cplx rhs = -r2 / (2.0 * l) * std::log(r2);
            CHECK(std::abs(lhs - rhs) < 1e-10);
        }
}

TEST_CASE("durand-kerner roots") {
    // (Z-1)(Z-2)(Z+3) = Z^3 - 7Z + 6
    auto roots = poly_roots({Cplx(6, 0), Cplx(-7, 0), Cplx(0, 0), Cplx(1, 0)});
    REQUIRE(roots.size() == 3);
    CHECK(std::abs(roots[0] - Cplx(-3, 0)) < 1e-10);
    CHECK(std::abs(roots[1] - Cplx(1, 0)) < 1e-10);
    CHECK(std::abs(roots[2] - Cplx(2, 0)) < 1e-10);
}

TEST_CASE("catalog tensor smoke for (H3)''") {
    CatalogDual cd(load_example("h3doubleprime"));
    std::vector<Cplx> x = {Cplx(0.7, 0.02), Cplx(1.1, 0.03), Cplx(0.4, 0.01)};
    auto sheets = cd.z_sheets(x);
    REQUIRE(sheets.size() == 5);
    auto T = cd.dual_third_tensor(x, sheets[0]);
    double scale = 0.0, asym = 0.0;
    std::size_t n = cd.n();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Cplx v = T[(i * n + j) * n + k];
                CHECK(std::isfinite(v.real()));
                CHECK(std::isfinite(v.imag()));
                scale = std::max(scale, std::abs(v));
                asym = std::max(asym, std::abs(v - T[(j * n + i) * n + k]));
                asym = std::max(asym, std::abs(v - T[(i * n + k) * n + j]));
            }
    CHECK(asym / scale < 1e-8);
}

TEST_CASE("mirror restrictions factor as K L^2") {
    CatalogDual h3(load_example("h3doubleprime"));
    for (const auto& alpha : h3.cox().positive_roots()) {
        MirrorFactorization f = mirror_restriction_factor(h3, alpha);
        CHECK(f.pass);
        CHECK(f.gcd_degree == 1);
        CHECK(f.cofactor_degree == 3);
    }
    CatalogDual d4(load_example("d4a1"));
    for (const auto& alpha : d4.cox().positive_roots()) {
        MirrorFactorization f = mirror_restriction_factor(d4, alpha);
        CHECK(f.pass);
        CHECK(f.cofactor_degree == 4);
    }
    // degree bookkeeping: 3 + 2*1 = 5, 4 + 2*1 = 6
    CHECK(3 + 2 == 5);
}

TEST_CASE("mirror limits on both branches") {
    CatalogDual h3(load_example("h3doubleprime"));
    auto pos = h3.cox().positive_roots();
    // three roots, K- and L-branch, diagonal components
    for (std::size_t r = 0; r < 3; ++r) {
        MirrorLimit k = mirror_limit_check(h3, pos[r], 'K', 0, 0, 0);
        CHECK(k.pass);
        MirrorLimit l = mirror_limit_check(h3, pos[r], 'L', 0, 0, 0);
        CHECK(l.pass);
        CHECK(std::abs(l.expected) == 0.0);
    }
    // alpha_i = 0 forces a vanishing K-limit through the alpha_i alpha_j alpha_k factor
    std::vector<FieldElement> e1{FieldElement(rat(1), FieldTag::QSqrt5),
                                 FieldElement(rat(0), FieldTag::QSqrt5),
                                 FieldElement(rat(0), FieldTag::QSqrt5)};
    MirrorLimit mixed = mirror_limit_check(h3, e1, 'K', 1, 1, 1);
    CHECK(mixed.pass);
    CHECK(std::abs(mixed.expected) == 0.0);
}

}  // TEST_SUITE
