#include "frob/dual.hpp"
#include "frob/parser.hpp"
#include "frob/quotient.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace frob;

namespace {

QuotientRingPtr h3prime_ring() {
    auto ring = Ring::make({"t1", "t2", "t3", "Z"});
    return QuotientRing::make(parse_poly("Z^4 + t3*Z + t2", ring), "Z");
}

QuotientRingPtr h3pp_ring() {
    auto ring = Ring::make({"t1", "t2", "t3", "Z"});
    return QuotientRing::make(parse_poly("Z^2 + t2 - t3^2", ring), "Z");
}

MultiPoly random_tz_poly(const RingPtr& ring, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-5, 5), expo(0, 2), zexp(0, 5);
    std::vector<Term> ts;
    for (int t = 0; t < 4; ++t) {
        Monomial m(ring->nvars());
        for (std::size_t v = 0; v < ring->nvars() - 1; ++v) m.set(v, expo(rng));
        m.set(ring->nvars() - 1, zexp(rng));
        ts.push_back({m, FieldElement(Rational(coeff(rng)))});
    }
    return MultiPoly::from_terms(ring, std::move(ts));
}

}  // namespace

TEST_SUITE("quotient") {

TEST_CASE("reduction against the catalogue relations") {
    auto qr = h3prime_ring();
    const RingPtr& ring = qr->ring();
    CHECK(qr->from_poly(parse_poly("Z^4", ring)) ==
          qr->from_poly(parse_poly("-t3*Z - t2", ring)));
    auto q2 = h3pp_ring();
    CHECK(q2->from_poly(parse_poly("Z^2", q2->ring())) ==
          q2->from_poly(parse_poly("t3^2 - t2", q2->ring())));
}

TEST_CASE("repeated reduction agrees with a numeric root") {
    auto qr = h3prime_ring();
    const RingPtr& ring = qr->ring();
    QuotientElement z8 = qr->from_poly(parse_poly("Z^8", ring));
    // random rational (t2, t3), numeric root Z of P
    std::vector<Cplx> roots =
        poly_roots({Cplx(2.0 / 3, 0), Cplx(5.0 / 7, 0), Cplx(0, 0), Cplx(0, 0), Cplx(1, 0)});
    REQUIRE(roots.size() == 4);
    std::vector<Cplx> pt{Cplx(0, 0), Cplx(2.0 / 3, 0), Cplx(5.0 / 7, 0), roots[0]};
    Cplx direct = std::pow(roots[0], 8);
    CHECK(std::abs(z8.eval(pt) - direct) < 1e-9);
}

TEST_CASE("inversion examples") {
    auto qr = h3prime_ring();
    const RingPtr& ring = qr->ring();
    CHECK(qr->one().inverse() == qr->one());
    QuotientElement z = qr->from_poly(parse_poly("Z", ring));
    QuotientElement zi = z.inverse();
    CHECK(z * zi == qr->one());
    // -(Z^3 + t3)/t2 from Z Z^3 = -t3 Z - t2
    QuotientElement expect =
        qr->from_rf(parse_expression("-(Z^3 + t3)/t2", ring));
    CHECK(zi == expect);

    auto q2 = h3pp_ring();
    QuotientElement pz = q2->from_poly(parse_poly("2*Z", q2->ring()));
    QuotientElement pzi = pz.inverse();
    CHECK(pz * pzi == q2->one());
    CHECK(pzi == q2->from_rf(parse_expression("Z/(2*(t3^2 - t2))", q2->ring())));
}

TEST_CASE("a reducible relation trips the irreducibility diagnostic") {
    auto ring = Ring::make({"t1", "t2", "Z"});
    auto qr = QuotientRing::make(parse_poly("Z^2 - t2^2", ring), "Z");
    QuotientElement e = qr->from_poly(parse_poly("Z - t2", ring));
    CHECK_THROWS_AS(e.inverse(), irreducibility_error);
}

TEST_CASE("dz/dt fixtures") {
    auto qr = h3prime_ring();
    const RingPtr& ring = qr->ring();
    CHECK(qr->dz(ring->index_of("t1")).is_zero());
    QuotientElement expect = qr->from_poly(parse_poly("4*Z^3 + t3", ring)).inverse();
    CHECK(qr->dz(ring->index_of("t2")) == -expect);

    auto q2 = h3pp_ring();
    QuotientElement dz3 = q2->dz(q2->ring()->index_of("t3"));
    CHECK(dz3 == q2->from_rf(parse_expression("t3*Z/(t3^2 - t2)", q2->ring())));
}

TEST_CASE("total derivative fixtures") {
    auto qr = h3prime_ring();
    const RingPtr& ring = qr->ring();
    QuotientElement t2 = qr->from_poly(parse_poly("t2", ring));
    CHECK(t2.total_derivative(2).is_zero());
    QuotientElement z = qr->from_poly(parse_poly("Z", ring));
    CHECK(z.total_derivative(0).is_zero());
    QuotientElement y3 = qr->from_poly(parse_poly("20/3*t3", ring));
    CHECK(y3.total_derivative(2) == qr->constant(rat(20, 3)));
}

TEST_CASE("polynomiality witness") {
    auto qr = h3prime_ring();
    const RingPtr& ring = qr->ring();
    CHECK(qr->from_poly(parse_poly("Z", ring)).is_polynomial());
    RationalFunction witness;
    QuotientElement bad = qr->from_rf(parse_expression("1/t2", ring));
    CHECK_FALSE(bad.is_polynomial(&witness));
    CHECK(witness == parse_expression("1/t2", ring));
}

TEST_CASE("total derivative satisfies leibniz") {
    auto qr = h3prime_ring();
    std::mt19937_64 rng(5);
    for (int i = 0; i < 8; ++i) {
        QuotientElement f = qr->from_poly(random_tz_poly(qr->ring(), rng));
        QuotientElement g = qr->from_poly(random_tz_poly(qr->ring(), rng));
        for (std::size_t v : {0u, 1u, 2u}) {
            QuotientElement lhs = (f * g).total_derivative(v);
            QuotientElement rhs =
                f.total_derivative(v) * g + g.total_derivative(v) * f;
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("mixed total derivatives commute and respect reduction") {
    auto qr = h3prime_ring();
    std::mt19937_64 rng(7);
    for (int i = 0; i < 6; ++i) {
        MultiPoly raw = random_tz_poly(qr->ring(), rng);
        QuotientElement f = qr->from_poly(raw);
        CHECK(f.total_derivative(1).total_derivative(2) ==
              f.total_derivative(2).total_derivative(1));
    }
}

TEST_CASE("numeric consistency of reduced elements") {
    auto qr = h3pp_ring();
    std::mt19937_64 rng(13);
    std::vector<Cplx> roots = poly_roots(
        {Cplx(3.0 / 5 - 49.0 / 25, 0), Cplx(0, 0), Cplx(1, 0)});  // Z^2 + t2 - t3^2 at t2=3/5,t3=7/5
    REQUIRE(!roots.empty());
    std::vector<Cplx> pt{Cplx(0.37, 0), Cplx(3.0 / 5, 0), Cplx(7.0 / 5, 0), roots[0]};
    for (int i = 0; i < 6; ++i) {
        MultiPoly raw = random_tz_poly(qr->ring(), rng);
        QuotientElement reduced = qr->from_poly(raw);
        CHECK(std::abs(raw.eval(pt) - reduced.eval(pt)) < 1e-9);
    }
}

}  // TEST_SUITE
