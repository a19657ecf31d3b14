#include "frob/family.hpp"
#include "frob/parser.hpp"

#include <doctest.h>

using namespace frob;

TEST_SUITE("family") {

TEST_CASE("catalogued pairs pass exactly") {
    for (auto [m, l] : std::vector<std::pair<long, long>>{{3, 1}, {5, 1}, {5, 2},
                                                          {7, 2}, {7, 3}, {8, 3}}) {
        CheckResult res = two_dim_bridge_check(TwoDimFamily(m, l));
        CHECK(res.pass);
    }
}

TEST_CASE("invalid parameters are rejected") {
    CHECK_THROWS_AS(TwoDimFamily(4, 2), value_error);   // not coprime
    CHECK_THROWS_AS(TwoDimFamily(6, 3), value_error);
    CHECK_THROWS_AS(TwoDimFamily(5, 3), value_error);   // l > m/2
    CHECK_THROWS_AS(TwoDimFamily(2, 1), value_error);   // m too small
    CHECK(TwoDimFamily(7, 2).charge() == rat(3, 7));
    CHECK(TwoDimFamily(7, 2).k() == rat(7, 2));
}

TEST_CASE("I2(3) discriminant by brute force") {
    // det g(y) = 864 y2^3 - y1^2 with y1 = z^3 + zb^3, y2 = z zb / 6,
    // computed from (grad, grad) = 2 (p_z q_zb + p_zb q_z)
    auto ring = Ring::make({"z", "zb"});
    MultiPoly y1 = parse_poly("z^3 + zb^3", ring);
    MultiPoly y2 = parse_poly("1/6*z*zb", ring);
    auto pair = [&](const MultiPoly& p, const MultiPoly& q) {
        return (p.derivative("z") * q.derivative("zb") +
                p.derivative("zb") * q.derivative("z")).scaled(rat(2));
    };
    MultiPoly det = pair(y1, y1) * pair(y2, y2) - pair(y1, y2) * pair(y1, y2);
    MultiPoly expect = y2.pow(3).scaled(rat(864)) - y1 * y1;
    CHECK(det == expect);
}

}  // TEST_SUITE
