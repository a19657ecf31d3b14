#include "frob/parser.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace frob;

namespace {

MultiPoly random_poly(const RingPtr& ring, std::mt19937_64& rng, int terms = 4, int maxdeg = 3) {
    std::uniform_int_distribution<int> coeff(-6, 6), expo(0, maxdeg);
    std::vector<Term> ts;
    for (int t = 0; t < terms; ++t) {
        Monomial m(ring->nvars());
        for (std::size_t v = 0; v < ring->nvars(); ++v) m.set(v, expo(rng));
        ts.push_back({m, FieldElement(Rational(coeff(rng)), ring->tag())});
    }
    return MultiPoly::from_terms(ring, std::move(ts));
}

}  // namespace

TEST_SUITE("exact-arith") {

TEST_CASE("rational literals stay canonical") {
    Rational r = rat_from_string("34/-51");
    CHECK(r == rat(-2, 3));
    CHECK(r.get_den() > 0);
    CHECK_THROWS_AS(rat_from_string("1/0"), value_error);
}

TEST_CASE("golden ratio arithmetic") {
    FieldElement phi(rat(1, 2), rat(1, 2), FieldTag::QSqrt5);
    FieldElement phibar(rat(1, 2), rat(-1, 2), FieldTag::QSqrt5);
    CHECK(phi * phibar == FieldElement(rat(-1), FieldTag::QSqrt5));
    // phi^-1 = phi - 1
    CHECK(phi.inverse() == phi - FieldElement::one(FieldTag::QSqrt5));
    // (3+sqrt5)^-1 = (3-sqrt5)/4
    FieldElement e(rat(3), rat(1), FieldTag::QSqrt5);
    CHECK(e.inverse() == FieldElement(rat(3, 4), rat(-1, 4), FieldTag::QSqrt5));
    CHECK(FieldElement(rat(2, 3)).inverse() == FieldElement(rat(3, 2)));
    CHECK_THROWS_AS(FieldElement().inverse(), value_error);
    CHECK_THROWS_AS(phi + FieldElement(rat(1)), context_error);
}

TEST_CASE("float cross-check of the quadratic field") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> d(-50, 50);
    for (int i = 0; i < 200; ++i) {
        FieldElement e(rat(d(rng), 7), rat(d(rng), 9), FieldTag::QSqrt5);
        double expect = e.a().get_d() + e.b().get_d() * 2.2360679774997896;
        CHECK(std::fabs(e.to_double() - expect) < 1e-9);
    }
}

TEST_CASE("monomial products and exact division") {
    auto ring = Ring::make({"t3"});
    MultiPoly t3 = MultiPoly::variable(ring, "t3");
    CHECK(t3 * t3 == MultiPoly::variable(ring, "t3", 2));
    MultiPoly q;
    CHECK((t3 * t3 + t3).try_divide(t3, q));
    CHECK(q == t3 + MultiPoly::constant(ring, Rational(1)));
    CHECK_FALSE((t3 + MultiPoly::constant(ring, Rational(1))).try_divide(t3, q));
}

TEST_CASE("exponent overflow is a hard error") {
    auto ring = Ring::make({"x"});
    MultiPoly big = MultiPoly::variable(ring, "x", 1u << 30);
    MultiPoly ok = big * MultiPoly::variable(ring, "x", (1u << 30) - 1);
    CHECK(ok.degree_in(0) == (1 << 31) - 1);
    CHECK_THROWS_AS(big * big, value_error);
}

TEST_CASE("vandermonde evaluation oracle") {
    auto ring = Ring::make({"x1", "x2", "x3"});
    MultiPoly p = parse_poly("(x1^2 - x2^2)*(x1^2 - x3^2)*(x2^2 - x3^2)", ring);
    std::vector<FieldElement> pt{FieldElement(rat(1)), FieldElement(rat(2)),
                                 FieldElement(rat(3))};
    // (1-4)(1-9)(4-9) evaluated directly
    long expect = (1 - 4) * (1 - 9) * (4 - 9);
    CHECK(p.eval(pt) == FieldElement(Rational(expect)));
    CHECK(expect == -120);
}

TEST_CASE("partial derivatives") {
    auto ring = Ring::make({"t1", "t2", "t3", "Z"});
    CHECK(parse_poly("1/2*t1^2*t3", ring).derivative("t2").is_zero());
    CHECK(parse_poly("Z^4 + t3*Z + t2", ring).derivative("Z") ==
          parse_poly("4*Z^3 + t3", ring));
    auto xring = Ring::make({"x1", "x2", "x3"});
    CHECK(parse_poly("x1^2*x2^2*x3^2", xring).derivative("x1") ==
          parse_poly("2*x1*x2^2*x3^2", xring));
    CHECK_THROWS_AS(parse_poly("t1", ring).derivative("q9"), context_error);
}

TEST_CASE("substitution examples") {
    auto tring = Ring::make({"t3"});
    auto yring = Ring::make({"y3"});
    std::map<std::string, RationalFunction> bind{
        {"t3", parse_expression("3/20*y3", yring)}};
    RationalFunction img = parse_poly("20/3*t3", tring).substitute(bind, yring);
    CHECK(img.is_polynomial());
    CHECK(img.as_poly() == parse_poly("y3", yring));

    auto ring = Ring::make({"x1", "x2"});
    MultiPoly p = random_poly(ring, *(new std::mt19937_64(3)));
    std::map<std::string, RationalFunction> identity;
    CHECK(p.substitute(identity, ring).as_poly() == p);
}

TEST_CASE("H3 invariant value pinned by direct arithmetic") {
    // y2 = sqrt5 delta + e1 e2 - 11 e3 at x = (1,2,3):
    // e1 = 14, e2 = 49, e3 = 36, delta = -120 -> 290 - 120 sqrt5
    auto ring = Ring::make({"x1", "x2", "x3"}, FieldTag::QSqrt5);
    MultiPoly e1 = parse_poly("x1^2 + x2^2 + x3^2", ring);
    MultiPoly e2 = parse_poly("x1^2*x2^2 + x1^2*x3^2 + x2^2*x3^2", ring);
    MultiPoly e3 = parse_poly("x1^2*x2^2*x3^2", ring);
    MultiPoly delta = parse_poly("(x1^2 - x2^2)*(x1^2 - x3^2)*(x2^2 - x3^2)", ring);
    MultiPoly y2 = MultiPoly::constant(ring, FieldElement::sqrt5()) * delta + e1 * e2 -
                   e3.scaled(rat(11));
    std::vector<FieldElement> pt;
    for (long v : {1, 2, 3}) pt.push_back(FieldElement(Rational(v), FieldTag::QSqrt5));
    CHECK(y2.eval(pt) == FieldElement(rat(290), rat(-120), FieldTag::QSqrt5));
}

TEST_CASE("ring axioms on random operands") {
    auto ring = Ring::make({"a", "b", "c"});
    std::mt19937_64 rng(17);
    for (int i = 0; i < 30; ++i) {
        MultiPoly p = random_poly(ring, rng), q = random_poly(ring, rng),
                  r = random_poly(ring, rng);
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK(p + q == q + p);
    }
}

TEST_CASE("substitution is a ring homomorphism") {
    auto ring = Ring::make({"a", "b"});
    auto target = Ring::make({"u", "v"});
    std::mt19937_64 rng(23);
    for (int i = 0; i < 12; ++i) {
        MultiPoly p = random_poly(ring, rng, 3, 2), q = random_poly(ring, rng, 3, 2);
        std::map<std::string, RationalFunction> bind{
            {"a", RationalFunction(random_poly(target, rng, 2, 2))},
            {"b", RationalFunction(random_poly(target, rng, 2, 2))}};
        CHECK((p * q).substitute(bind, target) ==
              p.substitute(bind, target) * q.substitute(bind, target));
        CHECK((p + q).substitute(bind, target) ==
              p.substitute(bind, target) + q.substitute(bind, target));
    }
}

TEST_CASE("leibniz rule for partial derivatives") {
    auto ring = Ring::make({"a", "b"});
    std::mt19937_64 rng(29);
    for (int i = 0; i < 20; ++i) {
        MultiPoly p = random_poly(ring, rng), q = random_poly(ring, rng);
        CHECK((p * q).derivative("a") == p.derivative("a") * q + q.derivative("a") * p);
    }
}

TEST_CASE("rational function normalization") {
    auto ring = Ring::make({"t2", "t3"});
    RationalFunction rf = parse_expression("(t2^2 - t3^2)/(t2 - t3)", ring);
    CHECK(rf.is_polynomial());
    CHECK(rf.as_poly() == parse_poly("t2 + t3", ring));
    RationalFunction g = parse_expression("t2/( -2*t3 + 4*t2 )", ring);
    // den primitive with positive leading coefficient
    CHECK(g.den() == parse_poly("2*t2 - t3", ring));
    CHECK(g == parse_expression("(3*t2)/(12*t2 - 6*t3)", ring));
    CHECK_THROWS_AS(parse_expression("t2/(t3 - t3)", ring), parse_error);
}

TEST_CASE("parser grammar") {
    auto ring = Ring::make({"t1", "Z"});
    CHECK_THROWS_AS(parse_poly("2 t1", ring), parse_error);       // implicit product
    CHECK_THROWS_AS(parse_poly("t1^-2", ring), parse_error);      // negative power
    CHECK_THROWS_AS(parse_poly("sqrt5*t1", ring), parse_error);   // sqrt5 needs Q(sqrt5)
    CHECK_THROWS_AS(parse_poly("q7 + 1", ring), parse_error);     // unknown variable
    CHECK_THROWS_AS(parse_poly("(t1", ring), parse_error);
    CHECK(parse_poly("-t1^2*Z + 3/4", ring) ==
          parse_poly("3/4 - t1*t1*Z", ring));
    auto qring = Ring::make({"x"}, FieldTag::QSqrt5);
    CHECK(parse_poly("sqrt5*sqrt5", qring) == MultiPoly::constant(qring, Rational(5)));
    try {
        parse_poly("t1 + + Z", ring);
        CHECK(false);
    } catch (const parse_error& e) {
        CHECK(e.position == 5);
    }
}

}  // TEST_SUITE
