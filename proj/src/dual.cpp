#include "frob/dual.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace frob {

namespace {

double rat_d(const Rational& r) { return r.get_d(); }

Cplx cpow(Cplx base, double e) { return std::exp(e * std::log(base)); }
Cplx cpow(Cplx base, const Rational& e) { return cpow(base, rat_d(e)); }

constexpr double kPoleGuard = 1e-9;

}  // namespace

Cplx hyp2f1(const Rational& a, const Rational& b, const Rational& c, Cplx w) {
    if (std::abs(w) >= 1.0) throw branch_error("2F1 argument outside |w| < 1");
    double ad = rat_d(a), bd = rat_d(b), cd = rat_d(c);
    Cplx term(1.0, 0.0), sum(1.0, 0.0);
    for (int n = 0; n < 20000; ++n) {
        term *= (ad + n) * (bd + n) / ((cd + n) * (n + 1.0)) * w;
        sum += term;
        if (std::abs(term) <= 1e-14 * std::abs(sum) && n > 2) return sum;
    }
    throw branch_error("2F1 series did not converge within the term cap");
}

Cplx& DualSample::at(int i, int j, int k) {
    int ones = (i == 1) + (j == 1) + (k == 1);
    switch (ones) {
        case 0: return c111;
        case 1: return c112;
        case 2: return c122;
        default: return c222;
    }
}

const Cplx& DualSample::at(int i, int j, int k) const {
    return const_cast<DualSample*>(this)->at(i, j, k);
}

DualSample dual_third_closed_2d(const Rational& k, Cplx x1, Cplx x2) {
    Cplx I(0.0, 1.0);
    Cplx z = x1 + I * x2, zb = x1 - I * x2;
    Cplx zz = z * zb;
    if (std::abs(zz) < kPoleGuard) throw branch_error("z zbar too close to zero");
    Cplx zk = cpow(z, k), zbk = cpow(zb, k);
    if (std::abs(zbk - zk) < kPoleGuard) throw branch_error("zbar^k - z^k too close to zero");
    Cplx ratio = (zbk + zk) / (zbk - zk);
    double kd = rat_d(k);
    Cplx zz2 = zz * zz;
    DualSample s;
    s.c111 = kd * x1 * (x1 * x1 + 3.0 * x2 * x2) / zz2 + 2.0 * kd * I * x2 * x2 * x2 / zz2 * ratio;
    s.c112 = kd * x2 * (x2 * x2 - x1 * x1) / zz2 - 2.0 * kd * I * x1 * x2 * x2 / zz2 * ratio;
    s.c122 = kd * x1 * (x1 * x1 - x2 * x2) / zz2 + 2.0 * kd * I * x1 * x1 * x2 / zz2 * ratio;
    s.c222 = kd * x2 * (x2 * x2 + 3.0 * x1 * x1) / zz2 - 2.0 * kd * I * x1 * x1 * x1 / zz2 * ratio;
    return s;
}

DualSample dual_third_tensor_2d(const Rational& k, Cplx x1, Cplx x2) {
    Cplx I(0.0, 1.0);
    double kd = rat_d(k);
    Cplx z = x1 + I * x2, zb = x1 - I * x2;
    Cplx t1 = cpow(z, k) + cpow(zb, k);
    Cplx t2 = z * zb / (2.0 * kd);
    double twok_k = std::pow(2.0 * kd, kd);
    Cplx t2k = cpow(t2, k);
    Cplx disc = 4.0 * twok_k * t2k - t1 * t1;
    Cplx D = 1.0 / (disc * disc);
    // c* in the t coordinates
    Cplx ct[2][2][2];
    Cplx c111 = -4.0 / kd * t1 * t2 * D;
    Cplx c112 = (4.0 * twok_k * t2k + t1 * t1) * D;
    Cplx c122 = -2.0 * twok_k * (2.0 * kd) * t1 * cpow(t2, k - 1) * D;
    Cplx c222 = twok_k * kd * kd * cpow(t2, k - 2) * (4.0 * twok_k * t2k + t1 * t1) * D;
    ct[0][0][0] = c111;
    ct[0][0][1] = ct[0][1][0] = ct[1][0][0] = c112;
    ct[0][1][1] = ct[1][0][1] = ct[1][1][0] = c122;
    ct[1][1][1] = c222;
    // dt_a/dx_i
    Cplx zk1 = cpow(z, k - 1), zbk1 = cpow(zb, k - 1);
    Cplx J[2][2];
    J[0][0] = kd * (zk1 + zbk1);
    J[0][1] = kd * I * (zk1 - zbk1);
    J[1][0] = x1 / kd;
    J[1][1] = x2 / kd;
    DualSample s;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int l = j; l < 2; ++l) {
                Cplx acc(0.0, 0.0);
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        for (int c = 0; c < 2; ++c)
                            acc += ct[a][b][c] * J[a][i] * J[b][j] * J[c][l];
                s.at(i, j, l) = acc;
            }
    return s;
}

Cplx dual_prepotential_2d(long l, char sign, Cplx x1, Cplx x2) {
    if (l < 2) throw branch_error("dual prepotential needs l >= 2");
    Cplx I(0.0, 1.0);
    Cplx z = x1 + I * x2, zb = x1 - I * x2;
    Cplx f = x2 * x2 / double(l) * std::log(x2) + zb * zb / (4.0 * l) * std::log(zb) +
             z * z / (4.0 * l) * std::log(z);
    Cplx w = (I * x1 + x2) / (2.0 * x2);
    for (long j = 1; j < l; ++j) {
        Rational jl = rat(j, l);
        Cplx zbjl = cpow(zb, jl);
        Cplx bterm = (double(l) * x1 + double(l - 2 * j) * I * x2) /
                     (double(j - l) * cpow(z, rat_d(jl) - 1.0));
        Cplx cterm = cpow(2.0 * I * x2, 2.0 - rat_d(jl)) *
                     hyp2f1(jl, jl, jl + Rational(1), w);
        f += zbjl / (4.0 * j) * (bterm + cterm);
    }
    if (sign == '-') {
        Cplx r2 = x1 * x1 + x2 * x2;
        f -= r2 / (2.0 * l) * std::log(r2);
    }
    return f;
}

namespace {

template <typename F>
Cplx third_diff(const F& f, Cplx x1, Cplx x2, int i, int j, int k, double h) {
    auto shift = [&](int dir, double d, Cplx a, Cplx b) {
        return dir == 0 ? std::pair<Cplx, Cplx>{a + d, b} : std::pair<Cplx, Cplx>{a, b + d};
    };
    // compose three central differences
    auto d1 = [&](int dir, auto g) {
        return [dir, g, h, &shift](Cplx a, Cplx b) {
            auto [ap, bp] = shift(dir, h, a, b);
            auto [am, bm] = shift(dir, -h, a, b);
            return (g(ap, bp) - g(am, bm)) / (2.0 * h);
        };
    };
    auto g1 = d1(k, f);
    auto g2 = d1(j, g1);
    auto g3 = d1(i, g2);
    return g3(x1, x2);
}

}  // namespace

DualSample dual_third_fd(long l, char sign, Cplx x1, Cplx x2, double h) {
    auto f = [&](Cplx a, Cplx b) { return dual_prepotential_2d(l, sign, a, b); };
    DualSample s;
    for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                Cplx coarse = third_diff(f, x1, x2, i, j, k, h);
                Cplx fine = third_diff(f, x1, x2, i, j, k, h / 2);
                s.at(i, j, k) = (4.0 * fine - coarse) / 3.0;
            }
    return s;
}

DualSample coxeter_dual_third_i2(long m, Cplx x1, Cplx x2) {
    DualSample s;
    s.c111 = s.c112 = s.c122 = s.c222 = Cplx(0.0, 0.0);
    // mirrors of the family sit on the lines arg(x) = pi j / m, so the
    // positive roots point along their normals
    for (long j = 0; j < m; ++j) {
        double a1 = -std::sin(M_PI * j / m), a2 = std::cos(M_PI * j / m);
        Cplx ax = a1 * x1 + a2 * x2;
        double norm = a1 * a1 + a2 * a2;
        Cplx base = 2.0 / (norm * ax);
        s.c111 += base * a1 * a1 * a1;
        s.c112 += base * a1 * a1 * a2;
        s.c122 += base * a1 * a2 * a2;
        s.c222 += base * a2 * a2 * a2;
    }
    return s;
}

std::vector<std::array<Cplx, 2>> sample_region(std::size_t count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> small(-0.8, 0.8), big(1.05, 1.9);
    std::vector<std::array<Cplx, 2>> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        Cplx x1(small(rng), small(rng));
        Cplx x2(big(rng), big(rng));
        out.push_back({x1, x2});
    }
    return out;
}

CatalogDual::CatalogDual(const Manifest& manifest)
    : model_(manifest.to_data()),
      cox_(&CoxeterModel::get(manifest.group)),
      bridge_(manifest.to_bridge(model_)) {
    if (!bridge_.has_inverse)
        throw value_error("numeric dual tensor needs the inverse maps");
    const std::size_t n = model_.n();
    dy_.assign(n, std::vector<QuotientElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            dy_[i][j] = model_.qring()->from_poly(bridge_.forward[i]).total_derivative(j);
    cstar_upper_.assign(n * n * n, QuotientElement());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                QuotientElement acc = model_.qring()->zero();
                for (std::size_t d = 0; d < n; ++d)
                    acc = acc + model_.intersection_form(a, d) * model_.c_up2(b, c, d);
                cstar_upper_[(a * n + b) * n + c] = acc;
            }
}

std::vector<Cplx> CatalogDual::z_sheets(const std::vector<Cplx>& x) const {
    const std::size_t n = model_.n();
    std::vector<Cplx> ypt(n);
    for (std::size_t r = 0; r < n; ++r) ypt[r] = cox_->basic_invariants()[r].eval(x);
    const RingPtr& bring = bridge_.inverse_ring;
    std::size_t zv = bring->index_of("Z");
    auto cs = bridge_.z_min_poly.coeffs_in(zv);
    std::vector<Cplx> coeffs(cs.size());
    std::vector<Cplx> point(bring->nvars(), Cplx(0, 0));
    for (std::size_t r = 0; r < n; ++r) point[r] = ypt[r];
    for (std::size_t k = 0; k < cs.size(); ++k) coeffs[k] = cs[k].eval(point);
    return poly_roots(coeffs);
}

Cplx CatalogDual::tensor_at(const std::vector<Cplx>& t, std::size_t i, std::size_t j,
                            std::size_t k) const {
    const std::size_t n = model_.n();
    return cstar_upper_[(i * n + j) * n + k].eval(t);
}

std::vector<Cplx> CatalogDual::dual_third_tensor(const std::vector<Cplx>& x,
                                                 Cplx z_sheet) const {
    const std::size_t n = model_.n();
    std::vector<Cplx> ypt(n);
    for (std::size_t r = 0; r < n; ++r) ypt[r] = cox_->basic_invariants()[r].eval(x);
    const RingPtr& bring = bridge_.inverse_ring;
    std::vector<Cplx> bpoint(bring->nvars(), Cplx(0, 0));
    for (std::size_t r = 0; r < n; ++r) bpoint[r] = ypt[r];
    bpoint[bring->index_of("Z")] = z_sheet;
    std::vector<Cplx> tpoint(model_.ring()->nvars(), Cplx(0, 0));
    for (std::size_t a = 0; a < n; ++a) tpoint[a] = bridge_.inverse[a].eval(bpoint);
    tpoint[model_.zvar()] = z_sheet;
    // consistency
    Cplx pval = model_.qring()->p().eval(tpoint);
    double scale = 0.0;
    for (auto v : tpoint) scale = std::max(scale, std::abs(v));
    if (std::abs(pval) > 1e-6 * std::max(1.0, std::pow(scale, 4)))
        throw branch_error("inconsistent (t, Z) sample: |P| too large");

    // J2 dy/dx, J1 dy/dt, M = J2^{-1} J1
    std::vector<std::vector<Cplx>> j2(n, std::vector<Cplx>(n));
    std::vector<std::vector<Cplx>> j1(n, std::vector<Cplx>(n));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t i = 0; i < n; ++i) {
            j2[r][i] = cox_->basic_invariants()[r].derivative(i).eval(x);
            j1[r][i] = dy_[r][i].eval(tpoint);
        }
    // solve j2 * M = j1
    std::vector<std::vector<Cplx>> m(n, std::vector<Cplx>(n));
    {
        std::vector<std::vector<Cplx>> a = j2;
        std::vector<std::vector<Cplx>> rhs = j1;
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < n; ++r)
                if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
            if (std::abs(a[piv][col]) < 1e-12) throw branch_error("singular Jacobian at sample");
            std::swap(a[piv], a[col]);
            std::swap(rhs[piv], rhs[col]);
            for (std::size_t r = 0; r < n; ++r) {
                if (r == col) continue;
                Cplx f = a[r][col] / a[col][col];
                for (std::size_t c2 = 0; c2 < n; ++c2) {
                    a[r][c2] -= f * a[col][c2];
                    rhs[r][c2] -= f * rhs[col][c2];
                }
            }
        }
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c2 = 0; c2 < n; ++c2) m[r][c2] = rhs[r][c2] / a[r][r];
    }
    // T^{abc} at the sample
    std::vector<Cplx> tt(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                tt[(a * n + b) * n + c] = cstar_upper_[(a * n + b) * n + c].eval(tpoint);
    std::vector<Cplx> out(n * n * n, Cplx(0, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Cplx acc(0, 0);
                for (std::size_t a = 0; a < n; ++a)
                    for (std::size_t b = 0; b < n; ++b)
                        for (std::size_t c = 0; c < n; ++c)
                            acc += tt[(a * n + b) * n + c] * m[i][a] * m[j][b] * m[k][c];
                out[(i * n + j) * n + k] = acc;
            }
    return out;
}

namespace {

// Z-coefficient vector form for pseudo-division work
std::vector<MultiPoly> zvec(const MultiPoly& p, std::size_t zvar) {
    return p.coeffs_in(zvar);
}

long zdeg_of(const std::vector<MultiPoly>& v) {
    for (std::size_t k = v.size(); k-- > 0;)
        if (!v[k].is_zero()) return static_cast<long>(k);
    return -1;
}

std::vector<MultiPoly> scale_vec(const std::vector<MultiPoly>& v, const MultiPoly& f) {
    std::vector<MultiPoly> out(v.size(), MultiPoly::zero(f.ring()));
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!v[k].is_zero()) out[k] = v[k] * f;
    return out;
}

// R with lc(B)^{dA-dB+1} A = Q B + R
std::vector<MultiPoly> prem_vec(std::vector<MultiPoly> a, const std::vector<MultiPoly>& b,
                                const RingPtr& ring) {
    long da = zdeg_of(a), db = zdeg_of(b);
    if (db < 0) throw value_error("pseudo-division by zero");
    MultiPoly lb = b[db];
    long steps = da - db + 1;
    for (long s = 0; s < steps; ++s) {
        long dr = zdeg_of(a);
        if (dr < db) {
            a = scale_vec(a, lb);
            continue;
        }
        MultiPoly lr = a[dr];
        // a = lb*a - lr*Z^{dr-db} b
        std::vector<MultiPoly> next(a.size(), MultiPoly::zero(ring));
        for (std::size_t k = 0; k < a.size(); ++k)
            if (!a[k].is_zero()) next[k] = a[k] * lb;
        for (long k = 0; k <= db; ++k) {
            if (b[k].is_zero()) continue;
            next[k + dr - db] -= lr * b[k];
        }
        a = std::move(next);
    }
    return a;
}

// subresultant PRS gcd (up to coefficient-ring content)
std::vector<MultiPoly> gcd_z(std::vector<MultiPoly> a, std::vector<MultiPoly> b,
                             const RingPtr& ring) {
    if (zdeg_of(a) < zdeg_of(b)) std::swap(a, b);
    MultiPoly g = MultiPoly::constant(ring, Rational(1));
    MultiPoly h = MultiPoly::constant(ring, Rational(1));
    while (true) {
        long db = zdeg_of(b);
        if (db < 0) return a;
        long da = zdeg_of(a);
        long delta = da - db;
        std::vector<MultiPoly> r = prem_vec(a, b, ring);
        a = b;
        if (zdeg_of(r) < 0) return a;
        // b = r / (g h^delta)
        MultiPoly divisor = g;
        for (long i = 0; i < delta; ++i) divisor = divisor * h;
        std::vector<MultiPoly> nb(r.size(), MultiPoly::zero(ring));
        for (std::size_t k = 0; k < r.size(); ++k) {
            if (r[k].is_zero()) continue;
            MultiPoly qq;
            if (!r[k].try_divide(divisor, qq))
                throw value_error("subresultant division failed");
            nb[k] = std::move(qq);
        }
        b = std::move(nb);
        g = a[zdeg_of(a)];
        if (delta == 0) {
            // h unchanged
        } else if (delta == 1) {
            h = g;
        } else {
            MultiPoly num = g;
            for (long i = 1; i < delta; ++i) num = num * g;
            MultiPoly den = h;
            for (long i = 2; i < delta; ++i) den = den * h;
            MultiPoly qq;
            if (!num.try_divide(den, qq)) throw value_error("subresultant h update failed");
            h = std::move(qq);
        }
    }
}

}  // namespace

MirrorFactorization mirror_restriction_factor(const CatalogDual& cd,
                                              const std::vector<FieldElement>& alpha) {
    MirrorFactorization out;
    const CoxeterModel& cox = cd.cox();
    const std::size_t n = cox.rank();
    // eliminate the coordinate with the largest |alpha_p|
    std::size_t p = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!alpha[i].is_zero()) p = i;
    (void)0;
    std::vector<std::string> params;
    for (std::size_t i = 0; i < n; ++i)
        if (i != p) params.push_back(cox.xring()->names()[i]);
    params.push_back("Z");
    RingPtr pring = Ring::make(params, cox.xring()->tag());

    MultiPoly xp = MultiPoly::zero(pring);
    FieldElement inv = promote(alpha[p], pring->tag()).inverse();
    for (std::size_t i = 0; i < n; ++i) {
        if (i == p || alpha[i].is_zero()) continue;
        xp -= MultiPoly::variable(pring, cox.xring()->names()[i])
                  .scaled(promote(alpha[i], pring->tag()) * inv);
    }
    std::map<std::string, MultiPoly> xbind{{cox.xring()->names()[p], xp}};
    std::map<std::string, MultiPoly> ybind;
    for (std::size_t r = 0; r < n; ++r)
        ybind["y" + std::to_string(r + 1)] =
            cox.basic_invariants()[r].substitute_poly(xbind, pring);
    MultiPoly pbar = cd.bridge().z_min_poly.substitute_poly(ybind, pring);

    std::size_t zv = pring->index_of("Z");
    long deg = pbar.degree_in(zv);
    std::vector<MultiPoly> pv = zvec(pbar, zv);
    std::vector<MultiPoly> dv(pv.size(), MultiPoly::zero(pring));
    for (std::size_t k = 1; k < pv.size(); ++k) dv[k - 1] = pv[k].scaled(Rational(k));
    // A root of multiplicity m contributes m-1 to gcd(Pbar, Pbar'), so
    // gcd degree 1 is exactly the pattern "one double root, rest simple",
    // i.e. Pbar = K L^2 with L linear in Z and K squarefree of degree
    // deg - 2, prime to L.
    std::vector<MultiPoly> g = gcd_z(pv, dv, pring);
    out.gcd_degree = zdeg_of(g);
    out.cofactor_degree = deg - 2;
    if (out.gcd_degree != 1) {
        out.detail = "gcd(Pbar, Pbar') has Z-degree " + std::to_string(out.gcd_degree);
        return out;
    }
    // witness-point cross-check: univariate gcd over Q(sqrt5) at an exact
    // rational specialization can only gain degree, so degree 1 there
    // certifies the generic degree is exactly 1 as well
    {
        std::vector<FieldElement> pt;
        long seed = 3;
        for (std::size_t i = 0; i + 1 < pring->nvars(); ++i)
            pt.push_back(FieldElement(rat(seed += 4, 7), pring->tag()));
        pt.push_back(FieldElement(rat(0), pring->tag()));  // Z slot unused
        auto eval_vec = [&](const std::vector<MultiPoly>& v) {
            std::vector<FieldElement> c;
            for (const auto& p : v) c.push_back(p.eval(pt));
            while (!c.empty() && c.back().is_zero()) c.pop_back();
            return c;
        };
        auto a = eval_vec(pv);
        auto b = eval_vec(dv);
        while (!b.empty()) {
            // univariate remainder over the field
            while (a.size() >= b.size() && !a.empty()) {
                FieldElement f = a.back() * b.back().inverse();
                for (std::size_t k = 0; k < b.size(); ++k)
                    a[a.size() - b.size() + k] -= f * b[k];
                while (!a.empty() && a.back().is_zero()) a.pop_back();
            }
            std::swap(a, b);
        }
        long point_gcd_deg = static_cast<long>(a.size()) - 1;
        if (point_gcd_deg != 1) {
            out.detail = "witness-point gcd degree " + std::to_string(point_gcd_deg) +
                         " (specialization degenerate)";
            return out;
        }
    }
    out.pass = true;
    return out;
}

MirrorLimit mirror_limit_check(const CatalogDual& cd, const std::vector<FieldElement>& alpha,
                               char branch, std::size_t i, std::size_t j, std::size_t k,
                               unsigned seed) {
    const std::size_t n = cd.n();
    FieldElement norm_fe = inner(alpha, alpha);
    double norm = norm_fe.to_double();
    std::vector<double> adbl(n);
    for (std::size_t q = 0; q < n; ++q) adbl[q] = alpha[q].to_double();

    MirrorLimit res;
    double expected_k = 2.0 * adbl[i] * adbl[j] * adbl[k] / norm;
    res.expected = (branch == 'K') ? Cplx(expected_k, 0.0) : Cplx(0.0, 0.0);

    MirrorLimit best;
    best.rel_error = 1e100;
    for (unsigned attempt = 0; attempt < 10; ++attempt) {
        std::mt19937_64 rng(seed + 101 * attempt);
        std::uniform_real_distribution<double> box(0.35, 1.25), jitter(0.01, 0.05);
        std::vector<Cplx> x0(n);
        for (std::size_t q = 0; q < n; ++q) x0[q] = Cplx(box(rng), jitter(rng));
        // project onto the mirror
        Cplx ax(0, 0);
        for (std::size_t q = 0; q < n; ++q) ax += adbl[q] * x0[q];
        for (std::size_t q = 0; q < n; ++q) x0[q] -= ax / norm * adbl[q];
        // stay generic w.r.t. the other mirrors
        bool generic = true;
        for (const auto& beta : cd.cox().roots()) {
            double bnorm = 0.0;
            Cplx bx(0, 0);
            bool is_alpha = true;
            for (std::size_t q = 0; q < n; ++q) {
                double bq = beta[q].to_double();
                bnorm += bq * bq;
                bx += bq * x0[q];
                if (std::abs(bq - adbl[q]) > 1e-12 && std::abs(bq + adbl[q]) > 1e-12)
                    is_alpha = false;
            }
            (void)bnorm;
            if (!is_alpha && std::abs(bx) < 0.05) generic = false;
        }
        if (!generic) continue;
        try {
            // ratio-2 ladder: at eps <= 1e-3 the quotient denominators
            // (disc P ~ eps) wipe out doubles, so stay on the clean side
            // and extrapolate through third order instead
            const double eps[4] = {5e-2, 2.5e-2, 1.25e-2, 6.25e-3};
            Cplx vals[4];
            Cplx prev_root;
            bool have_prev = false;
            // branch targets from the on-mirror sheets: the clustered double
            // root is the L target, the rest are K targets
            std::vector<Cplx> base = cd.z_sheets(x0);
            if (base.size() < 3) continue;
            std::size_t bi = 0, bj = 1;
            double pairgap = 1e100;
            for (std::size_t a = 0; a < base.size(); ++a)
                for (std::size_t b = a + 1; b < base.size(); ++b)
                    if (std::abs(base[a] - base[b]) < pairgap) {
                        pairgap = std::abs(base[a] - base[b]);
                        bi = a;
                        bj = b;
                    }
            Cplx l_target = (base[bi] + base[bj]) / 2.0;
            Cplx k_target;
            {
                double bestd = -1.0;
                for (std::size_t a = 0; a < base.size(); ++a) {
                    if (a == bi || a == bj) continue;
                    double d = std::abs(base[a] - l_target);
                    if (d > bestd) {
                        bestd = d;
                        k_target = base[a];
                    }
                }
            }
            Cplx target = (branch == 'K') ? k_target : l_target;
            for (int e = 0; e < 4; ++e) {
                std::vector<Cplx> xe(n);
                for (std::size_t q = 0; q < n; ++q)
                    xe[q] = x0[q] + eps[e] / norm * adbl[q];
                std::vector<Cplx> sheets = cd.z_sheets(xe);
                if (branch == 'L') {
                    // the double root splits like +-sqrt(eps); averaging the
                    // split pair cancels the half-integer powers so the
                    // ladder extrapolation stays valid
                    Cplx want = have_prev ? prev_root : target;
                    std::size_t p1 = 0, p2 = 1;
                    double b1 = 1e100, b2 = 1e100;
                    for (std::size_t a = 0; a < sheets.size(); ++a) {
                        double d = std::abs(sheets[a] - want);
                        if (d < b1) {
                            b2 = b1;
                            p2 = p1;
                            b1 = d;
                            p1 = a;
                        } else if (d < b2) {
                            b2 = d;
                            p2 = a;
                        }
                    }
                    prev_root = (sheets[p1] + sheets[p2]) / 2.0;
                    have_prev = true;
                    std::vector<Cplx> t1 = cd.dual_third_tensor(xe, sheets[p1]);
                    std::vector<Cplx> t2 = cd.dual_third_tensor(xe, sheets[p2]);
                    vals[e] = eps[e] *
                              (t1[(i * n + j) * n + k] + t2[(i * n + j) * n + k]) / 2.0;
                } else {
                    Cplx want = have_prev ? prev_root : target;
                    std::size_t pick = 0;
                    double bestd = 1e100, second = 1e100;
                    for (std::size_t a = 0; a < sheets.size(); ++a) {
                        double d = std::abs(sheets[a] - want);
                        if (d < bestd) {
                            second = bestd;
                            bestd = d;
                            pick = a;
                        } else if (d < second) {
                            second = d;
                        }
                    }
                    if (second < 2.0 * bestd && e == 0)
                        throw branch_error("root collision along the path");
                    prev_root = sheets[pick];
                    have_prev = true;
                    std::vector<Cplx> tensor = cd.dual_third_tensor(xe, sheets[pick]);
                    vals[e] = eps[e] * tensor[(i * n + j) * n + k];
                }
            }
            Cplx table[4];
            for (int e = 0; e < 4; ++e) table[e] = vals[e];
            for (int lvl = 1; lvl < 4; ++lvl) {
                double f = std::pow(2.0, lvl);
                for (int e = 3; e >= lvl; --e)
                    table[e] = (f * table[e] - table[e - 1]) / (f - 1.0);
            }
            res.limit = table[3];
            double denom = std::max(std::abs(res.expected), 1.0);
            res.rel_error = std::abs(res.limit - res.expected) / denom;
            res.pass = res.rel_error < 1e-4;
            if (res.pass) return res;
            if (res.rel_error < best.rel_error) best = res;
        } catch (const branch_error&) {
            continue;
        }
    }
    return best;
}

}  // namespace frob
