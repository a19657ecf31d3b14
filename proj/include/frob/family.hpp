#pragma once

#include "frob/pipeline.hpp"

namespace frob {

// Quasi-Coxeter datum in I2(m): w = c^l with gcd(m, l) = 1, l <= m/2.
// Degrees d1 = 1, d2 = 2l/m; charge d = (m - 2l)/m; k = m/l.
struct TwoDimFamily {
    long m = 0;
    long l = 0;

    TwoDimFamily(long m_, long l_);

    Rational k() const { return rat(m, l); }
    Rational charge() const { return rat(m - 2 * l, m); }
};

// Exact identities in Q(w, wbar)[i]/(i^2 + 1) with z = w^l:
//   x1^2 + x2^2 = z zbar,   y2 = t2 / l,
//   u+ + u- = t1,  u+ u- = (2m/l)^{m/l} t2^{m/l}  (via (2m/l) t2 = z zbar),
//   y1 = u+^l + u-^l with u± = w^m, wbar^m.
CheckResult two_dim_bridge_check(const TwoDimFamily& family);

}  // namespace frob
