#include "frob/family.hpp"

#include <numeric>

namespace frob {

TwoDimFamily::TwoDimFamily(long m_, long l_) : m(m_), l(l_) {
    if (m < 3 || l < 1) throw value_error("I2(m) family needs m >= 3, l >= 1");
    if (std::gcd(m, l) != 1) throw value_error("(m, l) must be coprime");
    if (2 * l > m) throw value_error("l <= m/2 required");
}

CheckResult two_dim_bridge_check(const TwoDimFamily& family) {
    CheckResult res;
    const long m = family.m, l = family.l;
    RingPtr ring = Ring::make({"w", "wb", "i"});
    MultiPoly i_rel = MultiPoly::variable(ring, "i", 2) + MultiPoly::constant(ring, Rational(1));
    auto qr = QuotientRing::make(i_rel, "i");

    auto var = [&](const char* n, long p) {
        return qr->from_poly(MultiPoly::variable(ring, n, static_cast<std::uint32_t>(p)));
    };
    QuotientElement i = var("i", 1);
    QuotientElement z = var("w", l);
    QuotientElement zb = var("wb", l);
    QuotientElement half = qr->constant(rat(1, 2));

    // x1 = (z + zbar)/2, x2 = -i (z - zbar)/2
    QuotientElement x1 = (z + zb) * half;
    QuotientElement x2 = (z - zb) * half * (-i);

    // x1^2 + x2^2 = z zbar
    QuotientElement sum_sq = x1 * x1 + x2 * x2;
    if (!(sum_sq == z * zb)) res.fail("x1^2 + x2^2 != z zbar");

    // t2 = z zbar / (2k) = l/(2m) z zbar;  y2 (basic invariant) = (x1^2+x2^2)/(2m)
    QuotientElement t2 = (z * zb).scaled(rat(l, 2 * m));
    QuotientElement y2 = sum_sq.scaled(rat(1, 2 * m));
    if (!(y2 == t2.scaled(rat(1, l)))) res.fail("y2 != t2 / l");

    // u± = w^m, wbar^m are the two branch values:
    QuotientElement up = var("w", m), um = var("wb", m);
    QuotientElement t1 = up + um;  // t1 = z^k + zbar^k with z = w^l
    // (x1 + i x2)^k interpretation: x1 + i x2 = z exactly
    if (!((x1 + i * x2) == z)) res.fail("x1 + i x2 != z");
    if (!((up + um) == t1)) res.fail("u+ + u- != t1");
    // (2m/l) t2 = z zbar, so (2m/l)^{m/l} t2^{m/l} = (z zbar)^{m/l} = (w wb)^m
    if (!(t2.scaled(rat(2 * m, l)) == z * zb)) res.fail("(2m/l) t2 != z zbar");
    QuotientElement wwb_m = var("w", m) * var("wb", m);
    if (!(up * um == wwb_m)) res.fail("u+ u- != (w wb)^m");

    // y1 two ways: u+^l + u-^l  versus  z^m + zbar^m (basic invariant with z = w^l)
    QuotientElement upl = var("w", m * l), uml = var("wb", m * l);
    QuotientElement y1_branches = upl + uml;
    QuotientElement y1_invariant = var("w", m * l) + var("wb", m * l);
    // u+^l literally:
    QuotientElement up_l = qr->one();
    QuotientElement um_l = qr->one();
    for (long j = 0; j < l; ++j) {
        up_l = up_l * up;
        um_l = um_l * um;
    }
    if (!(up_l + um_l == y1_branches)) res.fail("u+^l + u-^l != w^{ml} + wb^{ml}");
    if (!(y1_branches == y1_invariant)) res.fail("y1 branch expression != basic invariant");
    return res;
}

}  // namespace frob
