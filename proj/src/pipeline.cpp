#include "frob/pipeline.hpp"

#include "frob/linalg.hpp"

#include "frob/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstdio>
#include <set>
#include <sstream>

namespace frob {

namespace {

void enumerate_graded(const FrobeniusModel& model, std::size_t var, Rational left, Monomial& cur,
                      std::vector<Monomial>& out) {
    const RingPtr& ring = model.ring();
    std::size_t nv = model.n() + 1;  // t1..tn, Z
    if (var == nv) {
        if (left == 0) out.push_back(cur);
        return;
    }
    std::size_t ridx = (var < model.n()) ? var : model.zvar();
    Rational w = model.x_weights()[ridx];
    long cap = (ridx == model.zvar()) ? model.qring()->zdeg() - 1 : -1;
    for (std::uint32_t e = 0;; ++e) {
        if (cap >= 0 && e > static_cast<std::uint32_t>(cap)) break;
        Rational used = Rational(e) * w;
        if (used > left) break;
        cur.set(ridx, e);
        enumerate_graded(model, var + 1, left - used, cur, out);
    }
    cur.set(ridx, 0);
    (void)ring;
}

// transport a quotient element to a ring that extends the variable set
QuotientElement transport_qe(const QuotientElement& e, const QuotientRingPtr& target) {
    MultiPoly num = e.num().transport(target->ring());
    std::vector<std::pair<MultiPoly, int>> den;
    den.reserve(e.den_factors().size());
    for (const auto& f : e.den_factors())
        den.push_back({f.first.transport(target->ring()), f.second});
    return target->element(std::move(num), std::move(den));
}

QuotientElement det_laplace(const QuotientRingPtr& qr,
                            const std::vector<std::vector<QuotientElement>>& m,
                            std::vector<std::size_t> rows, std::vector<std::size_t> cols) {
    if (rows.size() == 1) return m[rows[0]][cols[0]];
    QuotientElement acc = qr->zero();
    std::vector<std::size_t> sub_rows(rows.begin() + 1, rows.end());
    for (std::size_t k = 0; k < cols.size(); ++k) {
        if (m[rows[0]][cols[k]].is_zero()) continue;
        std::vector<std::size_t> sub_cols;
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (j != k) sub_cols.push_back(cols[j]);
        QuotientElement minor = det_laplace(qr, m, sub_rows, sub_cols);
        QuotientElement term = m[rows[0]][cols[k]] * minor;
        acc = (k % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

QuotientElement quotient_det(const QuotientRingPtr& qr,
                             const std::vector<std::vector<QuotientElement>>& m) {
    std::vector<std::size_t> idx(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) idx[i] = i;
    return det_laplace(qr, m, idx, idx);
}

}  // namespace

GradedMonomialSpace graded_space(const FrobeniusModel& model, const Rational& degree) {
    GradedMonomialSpace out;
    out.degree = degree;
    Monomial cur(model.ring()->nvars());
    enumerate_graded(model, 0, degree, cur, out.monomials);
    std::sort(out.monomials.begin(), out.monomials.end(),
              [](const Monomial& a, const Monomial& b) { return b.graded_lex_less(a); });
    return out;
}

MultiPoly HarmonicSolution::element(const FrobeniusModel& model, std::size_t k) const {
    std::vector<Term> terms;
    for (std::size_t i = 0; i < space.monomials.size(); ++i) {
        if (kernel[k][i] == 0) continue;
        terms.push_back({space.monomials[i], FieldElement(kernel[k][i], model.ring()->tag())});
    }
    return MultiPoly::from_terms(model.ring(), std::move(terms));
}

HarmonicSolution harmonic_elements(const FrobeniusModel& model, const Rational& degree) {
    HarmonicSolution sol;
    sol.space = graded_space(model, degree);
    const std::size_t m = sol.space.monomials.size();
    if (m == 0) return sol;

    std::vector<QuotientElement> lap(m);
    parallel_for(m, [&](std::size_t i) {
        MultiPoly mono = MultiPoly::from_terms(
            model.ring(), {{sol.space.monomials[i], FieldElement::one(model.ring()->tag())}});
        lap[i] = model.laplacian(model.qring()->from_poly(mono));
    });

    // common denominator across columns
    std::vector<std::pair<MultiPoly, int>> common;
    for (const auto& l : lap) {
        for (const auto& f : l.den_factors()) {
            bool found = false;
            for (auto& c : common)
                if (c.first == f.first) {
                    c.second = std::max(c.second, f.second);
                    found = true;
                }
            if (!found) common.push_back(f);
        }
    }
    std::vector<MultiPoly> cleared(m);
    for (std::size_t i = 0; i < m; ++i) {
        MultiPoly num = lap[i].num();
        for (const auto& c : common) {
            int have = 0;
            for (const auto& f : lap[i].den_factors())
                if (f.first == c.first) have = f.second;
            for (int r = have; r < c.second; ++r) num = num * c.first;
        }
        cleared[i] = std::move(num);
    }

    std::map<std::vector<std::uint32_t>, std::size_t> rowidx;
    auto key_of = [&](const Monomial& mo) {
        std::vector<std::uint32_t> key(model.ring()->nvars());
        for (std::size_t v = 0; v < model.ring()->nvars(); ++v) key[v] = mo[v];
        return key;
    };
    for (const auto& p : cleared)
        for (const auto& t : p.terms()) rowidx.emplace(key_of(t.mono), rowidx.size());
    Matrix a(std::max<std::size_t>(rowidx.size(), 1), m, FieldTag::Q);
    for (std::size_t c = 0; c < m; ++c)
        for (const auto& t : cleared[c].terms())
            a.at(rowidx.at(key_of(t.mono)), c) = promote(t.coeff, FieldTag::Q);
    for (const auto& v : a.kernel()) {
        std::vector<Rational> vec(m);
        for (std::size_t i = 0; i < m; ++i) vec[i] = v[i].rational_value();
        sol.kernel.push_back(std::move(vec));
    }
    return sol;
}

CheckResult verify_bridge(const FrobeniusModel& model, const CoxeterModel& cox,
                          const CoordinateBridge& bridge) {
    CheckResult res;
    const std::size_t n = model.n();
    if (bridge.forward.size() != n) {
        res.fail("forward maps missing");
        return res;
    }
    for (std::size_t i = 0; i < n; ++i) {
        auto deg = model.x_degree(bridge.forward[i]);
        if (!deg || *deg != cox.invariant_degrees()[i])
            res.fail("y" + std::to_string(i + 1) + " is not x-homogeneous of degree " +
                     rat_to_string(cox.invariant_degrees()[i].get_num()));
    }
    std::map<std::string, MultiPoly> ybind;
    for (std::size_t i = 0; i < n; ++i)
        ybind[cox.yring()->names()[i]] = bridge.forward[i];

    std::vector<QuotientElement> dy(n * n);
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) all.push_back({i, l});
    parallel_for(all.size(), [&](std::size_t idx) {
        auto [i, l] = all[idx];
        dy[i * n + l] = model.qring()->from_poly(bridge.forward[i]).total_derivative(l);
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) {
            RationalFunction witness;
            if (!dy[i * n + l].is_polynomial(&witness))
                res.fail("dy" + std::to_string(i + 1) + "/dt" + std::to_string(l + 1) +
                         " not polynomial: " + witness.to_string());
        }

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.push_back({i, j});
    std::vector<std::string> errs(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        auto [i, j] = pairs[idx];
        MultiPoly a_poly = cox.saito_form()[i][j].substitute_poly(ybind, model.ring());
        QuotientElement a = model.qring()->from_poly(a_poly);
        QuotientElement b = model.qring()->zero();
        for (std::size_t lam = 0; lam < n; ++lam)
            for (std::size_t mu = 0; mu < n; ++mu)
                b = b + model.intersection_form(lam, mu) * dy[i * n + lam] * dy[j * n + mu];
        QuotientElement diff = a - b;
        if (!diff.is_zero())
            errs[idx] = "g(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") mismatch, residual " + diff.to_string().substr(0, 200);
    });
    for (const auto& e : errs)
        if (!e.empty()) res.fail(e);
    return res;
}

namespace {

// reduction in Q[y, Z, s] modulo s^2 = R(y, Z) and the monic Z-polynomial
struct Tower {
    RingPtr ring;
    std::size_t zvar;
    long zdeg;
    std::vector<MultiPoly> zcoeffs;            // of the monic z-poly
    std::optional<std::size_t> svar;
    MultiPoly sq;                              // s^2 value

    MultiPoly reduce(MultiPoly p) const {
        if (svar) {
            long sd = p.degree_in(*svar);
            if (sd >= 2) {
                auto cs = p.coeffs_in(*svar);
                MultiPoly acc = MultiPoly::zero(ring);
                std::vector<MultiPoly> sqpow{MultiPoly::constant(ring, Rational(1))};
                for (long k = 0; k <= sd; ++k) {
                    if (cs[k].is_zero()) continue;
                    long half = k / 2;
                    while (static_cast<long>(sqpow.size()) <= half)
                        sqpow.push_back(sqpow.back() * sq);
                    MultiPoly part = cs[k] * sqpow[half];
                    if (k % 2) {
                        Monomial m(ring->nvars());
                        m.set(*svar, 1);
                        part = part.mono_times(m, FieldElement::one(ring->tag()));
                    }
                    acc += part;
                }
                p = std::move(acc);
            }
        }
        while (p.degree_in(zvar) >= zdeg) {
            auto cs = p.coeffs_in(zvar);
            MultiPoly acc = MultiPoly::zero(ring);
            long top = static_cast<long>(cs.size()) - 1;
            for (long k = 0; k <= top; ++k) {
                if (cs[k].is_zero()) continue;
                if (k < zdeg) {
                    Monomial m(ring->nvars());
                    m.set(zvar, static_cast<std::uint32_t>(k));
                    acc += cs[k].mono_times(m, FieldElement::one(ring->tag()));
                } else {
                    for (long j = 0; j < zdeg; ++j) {
                        if (zcoeffs[j].is_zero()) continue;
                        Monomial m(ring->nvars());
                        m.set(zvar, static_cast<std::uint32_t>(k - zdeg + j));
                        acc -= (cs[k] * zcoeffs[j])
                                   .mono_times(m, FieldElement::one(ring->tag()));
                    }
                }
            }
            p = std::move(acc);
            if (svar && p.degree_in(*svar) >= 2) return reduce(p);
        }
        return p;
    }
};

Tower make_tower(const CoordinateBridge& bridge) {
    Tower t;
    t.ring = bridge.inverse_ring;
    t.zvar = t.ring->index_of("Z");
    auto cs = bridge.z_min_poly.coeffs_in(t.zvar);
    t.zdeg = static_cast<long>(cs.size()) - 1;
    if (!cs.back().is_constant())
        throw value_error("z_min_poly is not monic-normalizable in Z");
    FieldElement inv = cs.back().constant_value().inverse();
    t.zcoeffs.resize(t.zdeg + 1);
    for (long k = 0; k <= t.zdeg; ++k) t.zcoeffs[k] = cs[k].scaled(inv);
    if (bridge.radical_square) {
        t.svar = t.ring->index_of("s");
        t.sq = *bridge.radical_square;
    }
    return t;
}

}  // namespace

CheckResult invert_bridge_check(const FrobeniusModel& model, const CoordinateBridge& bridge) {
    CheckResult res;
    if (!bridge.has_inverse) {
        res.fail("no inverse maps supplied");
        return res;
    }
    Tower tower = make_tower(bridge);
    const RingPtr& B = bridge.inverse_ring;
    const std::size_t n = model.n();

    std::map<std::string, RationalFunction> tbind;
    for (std::size_t i = 0; i < n; ++i)
        tbind[model.ring()->names()[i]] = bridge.inverse[i];

    // (i) P(t(y,Z); Z) = 0 modulo the tower
    RationalFunction pcomp = model.qring()->p().substitute(tbind, B);
    if (!tower.reduce(pcomp.num()).is_zero())
        res.fail("P(t(y,Z)) does not vanish modulo the Z minimal polynomial");

    // (ii) y_i(t(y,Z), Z) = y_i
    for (std::size_t i = 0; i < n; ++i) {
        RationalFunction comp = bridge.forward[i].substitute(tbind, B);
        MultiPoly yi = MultiPoly::variable(B, "y" + std::to_string(i + 1));
        MultiPoly residual = tower.reduce(comp.num() - yi * comp.den());
        if (!residual.is_zero())
            res.fail("forward(inverse) != y" + std::to_string(i + 1) + ": residual " +
                     residual.to_string().substr(0, 200));
    }

    // (iii) already enforced by make_tower (monic-normalizable leading coefficient)
    return res;
}

CheckResult jacobian_discriminant_check(const FrobeniusModel& model, const CoxeterModel& cox,
                                        const CoordinateBridge& bridge) {
    CheckResult res;
    if (!bridge.has_discriminant) {
        res.fail("no discriminant data supplied");
        return res;
    }
    const std::size_t n = model.n();
    std::vector<std::vector<QuotientElement>> jac(n, std::vector<QuotientElement>(n));
    std::vector<std::vector<QuotientElement>> g(n, std::vector<QuotientElement>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            jac[i][j] = model.qring()->from_poly(bridge.forward[i]).total_derivative(j);
            g[i][j] = model.intersection_form(i, j);
        }
    QuotientElement detj = quotient_det(model.qring(), jac);
    QuotientElement detg = quotient_det(model.qring(), g);
    QuotientElement q = model.qring()->from_poly(bridge.discriminant_q);

    auto disc = cox.discriminant();
    if (!disc.constant.is_rational())
        res.fail("y-side discriminant constant is not rational");
    Rational lemma_c = disc.constant.rational_value();

    // (det J)^2 = (c_y / c) Q^2, where c_y is the y-side Lemma constant
    Rational ratio = lemma_c / bridge.discriminant_c;
    if (!((detj * detj) == (q * q).scaled(ratio)))
        res.fail("(det J)^2 differs from (c_y/c) Q(t,Z)^2");

    // det(g) Q^2 = c * D(y(t,Z))
    std::map<std::string, MultiPoly> ybind;
    for (std::size_t i = 0; i < n; ++i)
        ybind[cox.yring()->names()[i]] = bridge.forward[i];
    MultiPoly dsub = disc.product_in_y.substitute_poly(ybind, model.ring());
    QuotientElement lhs = detg * q * q;
    QuotientElement rhs = model.qring()->from_poly(dsub).scaled(bridge.discriminant_c);
    if (!(lhs == rhs)) res.fail("det(g) Q^2 != c * D(y(t,Z)) with the stated c");
    return res;
}

std::vector<QuotientElement> unity_field(const FrobeniusModel& model,
                                         const CoordinateBridge& bridge) {
    std::vector<QuotientElement> e;
    e.reserve(model.n());
    for (std::size_t i = 0; i < model.n(); ++i)
        e.push_back(model.qring()->from_poly(bridge.forward[i]).total_derivative(0));
    return e;
}

CheckResult unity_field_check(const FrobeniusModel& model, const CoordinateBridge& bridge) {
    CheckResult res;
    auto e = unity_field(model, bridge);
    for (std::size_t i = 0; i < model.n(); ++i) {
        RationalFunction witness;
        if (!e[i].is_polynomial(&witness))
            res.fail("e^" + std::to_string(i + 1) + " not polynomial");
    }
    if (bridge.has_unity) {
        for (std::size_t i = 0; i < model.n(); ++i) {
            QuotientElement expect = model.qring()->from_poly(bridge.unity[i]);
            if (!(e[i] == expect))
                res.fail("e^" + std::to_string(i + 1) + " = " + e[i].to_string().substr(0, 120) +
                         " differs from the stated unity component");
        }
    }
    return res;
}

Ansatz ansatz_assembly(const FrobeniusModel& model, const CoxeterModel& cox) {
    const std::size_t n = model.n();
    std::map<Rational, HarmonicSolution> kernels;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        Rational d = cox.invariant_degrees()[j];
        if (!kernels.count(d)) kernels.emplace(d, harmonic_elements(model, d));
    }
    // fresh unknown names u{j}_{k}
    std::vector<std::string> names;
    std::vector<std::string> vars = model.ring()->names();
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto& ker = kernels.at(cox.invariant_degrees()[j]).kernel;
        for (std::size_t k = 0; k < ker.size(); ++k) {
            std::string nm = "u" + std::to_string(j + 1) + "_" + std::to_string(k + 1);
            names.push_back(nm);
            vars.push_back(nm);
        }
    }
    Ansatz a;
    a.ring = Ring::make(vars, model.ring()->tag());
    a.unknowns = names;
    a.maps.assign(n, MultiPoly::zero(a.ring));

    // step 1: y_n = (4/(1-d)) t_n
    Rational scale = Rational(4) / (Rational(1) - model.charge());
    a.maps[n - 1] = MultiPoly::variable(a.ring, model.ring()->names()[n - 1]).scaled(scale);

    std::size_t name_at = 0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        // placeholder; filled below in descending j order
        (void)j;
    }
    // successively j = n-2 .. 0: y_j = sum_k u_jk H_k - (Y_j - y_j)(y_{j+1..n})
    std::vector<std::size_t> name_base(n, 0);
    {
        std::size_t at = 0;
        for (std::size_t j = 0; j + 1 < n; ++j) {
            name_base[j] = at;
            at += kernels.at(cox.invariant_degrees()[j]).kernel.size();
        }
        name_at = at;
    }
    (void)name_at;
    for (std::size_t jj = n - 1; jj-- > 0;) {
        const auto& sol = kernels.at(cox.invariant_degrees()[jj]);
        MultiPoly acc = MultiPoly::zero(a.ring);
        for (std::size_t k = 0; k < sol.kernel.size(); ++k) {
            MultiPoly h = sol.element(model, k).transport(a.ring);
            acc += h * MultiPoly::variable(a.ring, names[name_base[jj] + k]);
        }
        // correction: Y_j = y_j + corr(y_{j+1..n})
        MultiPoly corr = cox.harmonic_set()[jj] -
                         MultiPoly::variable(cox.yring(), cox.yring()->names()[jj]);
        for (const auto& t : corr.terms())
            for (std::size_t v = 0; v <= jj; ++v)
                if (t.mono[v])
                    throw value_error("triangularity failure at y" + std::to_string(jj + 1));
        std::map<std::string, MultiPoly> bind;
        for (std::size_t v = jj + 1; v < n; ++v) bind[cox.yring()->names()[v]] = a.maps[v];
        acc -= corr.substitute_poly(bind, a.ring);
        a.maps[jj] = acc;
    }
    return a;
}

namespace {

struct SolverBranch {
    std::vector<MultiPoly> eqs;  // over the unknowns ring
    // name -> num/den expression in the remaining unknowns (den constant 1
    // for plain linear pivots)
    std::vector<std::tuple<std::string, MultiPoly, MultiPoly>> elim;
    std::vector<MultiPoly> nonzero;  // side conditions from rational pivots
    std::string note;
};

MultiPoly normalize_equation(const MultiPoly& e) {
    if (e.is_zero()) return e;
    Rational c = e.content();
    if (e.leading_term().coeff.real_sign() < 0) c = -c;
    return e.scaled(Rational(1) / c);
}

void substitute_all(std::vector<MultiPoly>& eqs, const std::string& name, const MultiPoly& expr,
                    const RingPtr& uring) {
    std::map<std::string, MultiPoly> bind{{name, expr}};
    std::set<std::string> seen;
    std::vector<MultiPoly> out;
    for (auto& e : eqs) {
        MultiPoly s = normalize_equation(e.substitute_poly(bind, uring));
        if (s.is_zero()) continue;
        auto key = s.to_string();
        if (seen.insert(key).second) out.push_back(std::move(s));
    }
    eqs = std::move(out);
}

// substitute v = num/den into every equation, clearing den powers
void substitute_rational(std::vector<MultiPoly>& eqs, std::size_t v, const MultiPoly& num,
                         const MultiPoly& den, const RingPtr& uring) {
    std::set<std::string> seen;
    std::vector<MultiPoly> out;
    for (auto& e : eqs) {
        auto cs = e.coeffs_in(v);
        MultiPoly acc = MultiPoly::zero(uring);
        MultiPoly numpow = MultiPoly::constant(uring, Rational(1));
        std::vector<MultiPoly> denpow(cs.size(), MultiPoly::constant(uring, Rational(1)));
        for (std::size_t k = cs.size() - 1; k + 1 > 0; --k) {
            if (k + 1 < cs.size()) denpow[k] = denpow[k + 1] * den;
        }
        for (std::size_t k = 0; k < cs.size(); ++k) {
            if (!cs[k].is_zero()) acc += cs[k] * numpow * denpow[k];
            if (k + 1 < cs.size()) numpow = numpow * num;
        }
        MultiPoly s = normalize_equation(acc);
        if (s.is_zero()) continue;
        if (seen.insert(s.to_string()).second) out.push_back(std::move(s));
    }
    eqs = std::move(out);
}

// rational roots: exact through degree 2, numeric isolation plus
// continued-fraction rationalization with exact verification above
std::vector<Rational> rational_roots(const MultiPoly& eq, std::size_t var);


std::vector<Rational> rational_roots(const MultiPoly& eq, std::size_t var) {
    std::vector<Rational> roots;
    auto cs = eq.coeffs_in(var);
    std::vector<Rational> c(cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
        if (!cs[k].is_constant()) throw value_error("not univariate");
        c[k] = cs[k].is_zero() ? Rational(0) : cs[k].constant_value().rational_value();
    }
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.size() <= 1) return roots;
    if (c.size() == 2) {
        roots.push_back(-c[0] / c[1]);
        return roots;
    }
    if (c.size() == 3) {
        Rational disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (disc < 0) return roots;
        mpz_class dn = disc.get_num(), dd = disc.get_den();
        mpz_class rn, rd;
        if (mpz_perfect_square_p(dn.get_mpz_t()) && mpz_perfect_square_p(dd.get_mpz_t())) {
            mpz_sqrt(rn.get_mpz_t(), dn.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), dd.get_mpz_t());
            Rational r(rn, rd);
            r.canonicalize();
            roots.push_back((-c[1] + r) / (2 * c[2]));
            if (r != 0) roots.push_back((-c[1] - r) / (2 * c[2]));
        }
        return roots;
    }
    // degree >= 3: numeric roots, continued-fraction rationalization,
    // exact verification
    auto evalq = [&](const Rational& x) {
        Rational acc(0);
        for (std::size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    };
    std::vector<std::complex<double>> dc;
    dc.reserve(c.size());
    for (const auto& q : c) dc.push_back(std::complex<double>(q.get_d(), 0.0));
    std::set<std::string> found;
    for (const auto& r : poly_roots(dc)) {
        if (std::fabs(r.imag()) > 1e-7 * (1.0 + std::fabs(r.real()))) continue;
        double cf = r.real();
        long long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
        for (int it = 0; it < 40; ++it) {
            double fl = std::floor(cf);
            if (std::fabs(fl) > 1e15) break;
            long long a = static_cast<long long>(fl);
            long long p2 = a * p1 + p0, q2 = a * q1 + q0;
            p0 = p1;
            q0 = q1;
            p1 = p2;
            q1 = q2;
            if (q1 != 0) {
                Rational cand(static_cast<long>(p1), static_cast<long>(q1));
                cand.canonicalize();
                // must rationalize THIS root, not merely hit some other root
                bool close = std::fabs(cand.get_d() - r.real()) <
                             1e-6 * (1.0 + std::fabs(r.real()));
                if (close && evalq(cand) == 0) {
                    if (found.insert(rat_to_string(cand)).second) roots.push_back(cand);
                    break;
                }
            }
            double rem = cf - fl;
            if (std::fabs(rem) < 1e-12) break;
            cf = 1.0 / rem;
        }
    }
    return roots;
}

void solve_branches(SolverBranch branch, const RingPtr& uring,
                    std::vector<SolverBranch>& terminal, int depth) {
    const bool dbg = std::getenv("FROB_SOLVER_DEBUG") != nullptr;
    if (dbg)
        fprintf(stderr, "[solver d=%d] eqs=%zu elim=%zu\n", depth, branch.eqs.size(),
                branch.elim.size());
    if (depth > 64) {
        branch.note = "elimination depth exceeded";
        terminal.push_back(std::move(branch));
        return;
    }
    std::vector<MultiPoly> eqs;
    for (auto& e : branch.eqs) {
        if (e.is_zero()) continue;
        if (e.is_constant()) return;  // inconsistent branch
        eqs.push_back(e);
    }
    branch.eqs = std::move(eqs);
    if (branch.eqs.empty()) {
        terminal.push_back(std::move(branch));
        return;
    }
    // 1) linear pivot with constant coefficient
    for (const auto& e : branch.eqs) {
        for (std::size_t v = 0; v < uring->nvars(); ++v) {
            if (e.degree_in(v) != 1) continue;
            auto cs = e.coeffs_in(v);
            if (!cs[1].is_constant()) continue;
            FieldElement pivot = cs[1].constant_value();
            MultiPoly expr = cs[0].scaled(Rational(-1) / pivot.rational_value());
            if (dbg)
                fprintf(stderr, "[solver] eliminate %s = %s\n", uring->names()[v].c_str(),
                        expr.to_string().substr(0, 100).c_str());
            SolverBranch next = branch;
            substitute_all(next.eqs, uring->names()[v], expr, uring);
            next.elim.push_back(
                {uring->names()[v], expr, MultiPoly::constant(uring, Rational(1))});
            solve_branches(std::move(next), uring, terminal, depth + 1);
            return;
        }
    }
    // 2) univariate branching
    for (const auto& e : branch.eqs) {
        std::vector<std::size_t> used;
        for (std::size_t v = 0; v < uring->nvars(); ++v)
            if (e.degree_in(v) > 0) used.push_back(v);
        if (used.size() != 1) continue;
        std::vector<Rational> roots = rational_roots(e, used[0]);
        if (dbg)
            fprintf(stderr, "[solver] univariate %s -> %zu rational roots\n",
                    e.to_string().substr(0, 120).c_str(), roots.size());
        if (roots.empty()) return;  // no rational solution on this branch
        for (const auto& r : roots) {
            SolverBranch next = branch;
            MultiPoly expr = MultiPoly::constant(uring, r);
            substitute_all(next.eqs, uring->names()[used[0]], expr, uring);
            next.elim.push_back(
                {uring->names()[used[0]], expr, MultiPoly::constant(uring, Rational(1))});
            solve_branches(std::move(next), uring, terminal, depth + 1);
        }
        return;
    }
    // 3) linear pivot with a non-constant coefficient: split on A != 0 / A = 0
    for (std::size_t ei = 0; ei < branch.eqs.size(); ++ei) {
        const MultiPoly& e = branch.eqs[ei];
        for (std::size_t v = 0; v < uring->nvars(); ++v) {
            if (e.degree_in(v) != 1) continue;
            auto cs = e.coeffs_in(v);
            MultiPoly a = cs[1], b = cs[0];
            if (dbg)
                fprintf(stderr, "[solver] rational pivot %s = -(%s)/(%s)\n",
                        uring->names()[v].c_str(), b.to_string().substr(0, 60).c_str(),
                        a.to_string().substr(0, 60).c_str());
            {
                SolverBranch next = branch;
                next.eqs.erase(next.eqs.begin() + ei);
                substitute_rational(next.eqs, v, -b, a, uring);
                next.elim.push_back({uring->names()[v], -b, a});
                next.nonzero.push_back(a);
                solve_branches(std::move(next), uring, terminal, depth + 1);
            }
            {
                SolverBranch next = branch;
                next.eqs.erase(next.eqs.begin() + ei);
                next.eqs.push_back(normalize_equation(a));
                if (!b.is_zero()) next.eqs.push_back(normalize_equation(b));
                solve_branches(std::move(next), uring, terminal, depth + 1);
            }
            return;
        }
    }
    branch.note = "nonlinear core";
    terminal.push_back(std::move(branch));
}


}  // namespace

MatchReport coefficient_match(const FrobeniusModel& model, const CoxeterModel& cox,
                              const RingPtr& ext_ring, const std::vector<std::string>& unknowns,
                              const std::vector<MultiPoly>& maps,
                              const std::vector<std::map<std::string, Rational>>& candidates) {
    MatchReport report;
    report.status = MatchReport::Status::Unsolved;
    const std::size_t n = model.n();

    MultiPoly p_ext = model.qring()->p().transport(ext_ring);
    QuotientRingPtr eqr = QuotientRing::make(p_ext, "Z", ext_ring->names()[0]);

    std::map<std::string, MultiPoly> ybind;
    for (std::size_t i = 0; i < n; ++i) ybind[cox.yring()->names()[i]] = maps[i];

    std::vector<QuotientElement> dy(n * n);
    std::vector<std::pair<std::size_t, std::size_t>> all;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < n; ++l) all.push_back({i, l});
    parallel_for(all.size(), [&](std::size_t idx) {
        auto [i, l] = all[idx];
        dy[i * n + l] = eqr->from_poly(maps[i]).total_derivative(l);
    });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) pairs.push_back({i, j});
    std::vector<QuotientElement> residuals(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t idx) {
        auto [i, j] = pairs[idx];
        MultiPoly a_poly = cox.saito_form()[i][j].substitute_poly(ybind, ext_ring);
        QuotientElement a = eqr->from_poly(a_poly);
        QuotientElement b = eqr->zero();
        for (std::size_t lam = 0; lam < n; ++lam)
            for (std::size_t mu = 0; mu < n; ++mu)
                b = b + transport_qe(model.intersection_form(lam, mu), eqr) * dy[i * n + lam] *
                            dy[j * n + mu];
        residuals[idx] = a - b;
    });

    // split each residual numerator into equations over the unknowns
    std::vector<std::string> unames = unknowns;
    RingPtr uring = Ring::make(unames, FieldTag::Q);
    std::vector<std::size_t> uidx;
    for (const auto& nm : unknowns) uidx.push_back(ext_ring->index_of(nm));
    std::set<std::string> eqset;
    std::vector<MultiPoly> eqs;
    for (const auto& r : residuals) {
        std::map<std::vector<std::uint32_t>, std::vector<Term>> groups;
        for (const auto& t : r.num().terms()) {
            std::vector<std::uint32_t> tz;
            Monomial um(uring->nvars());
            for (std::size_t v = 0; v < ext_ring->nvars(); ++v) {
                bool is_u = false;
                for (std::size_t k = 0; k < uidx.size(); ++k)
                    if (uidx[k] == v) {
                        um.set(k, t.mono[v]);
                        is_u = true;
                    }
                if (!is_u) tz.push_back(t.mono[v]);
            }
            groups[tz].push_back({um, t.coeff});
        }
        for (auto& [tz, terms] : groups) {
            MultiPoly eq = normalize_equation(MultiPoly::from_terms(uring, terms));
            if (eq.is_zero()) continue;
            if (eq.is_constant()) {
                report.status = MatchReport::Status::Inconsistent;
                report.detail = "unknown-free residual term";
                return report;
            }
            if (eqset.insert(eq.to_string()).second) eqs.push_back(eq);
        }
    }

    // candidate verification against the raw equations
    auto candidate_solves = [&](const std::map<std::string, Rational>& cand) {
        std::map<std::string, MultiPoly> bind;
        for (const auto& [k, v] : cand) bind[k] = MultiPoly::constant(uring, v);
        for (const auto& e : eqs)
            if (!e.substitute_poly(bind, uring).is_zero()) return false;
        return true;
    };

    std::vector<SolverBranch> terminal;
    SolverBranch root;
    root.eqs = eqs;
    solve_branches(std::move(root), uring, terminal, 0);

    bool any_clean = false;
    for (auto& br : terminal) {
        if (!br.note.empty() || !br.eqs.empty()) continue;
        any_clean = true;
        // back-substitute; rational pivots resolve as num/den of constants
        std::map<std::string, MultiPoly> resolved;
        bool parametric = false, degenerate = false;
        for (auto it = br.elim.rbegin(); it != br.elim.rend(); ++it) {
            const auto& [nm, num, den] = *it;
            MultiPoly n2 = num.substitute_poly(resolved, uring);
            MultiPoly d2 = den.substitute_poly(resolved, uring);
            if (!n2.is_constant() || !d2.is_constant()) {
                parametric = true;
                break;
            }
            if (d2.is_zero()) {
                degenerate = true;
                break;
            }
            FieldElement val = d2.constant_value().inverse() *
                               (n2.is_zero() ? FieldElement::zero(FieldTag::Q)
                                             : n2.constant_value());
            resolved[nm] = MultiPoly::constant(uring, val.rational_value());
        }
        if (degenerate) continue;
        CoefficientSolution sol;
        std::set<std::string> assigned;
        for (const auto& [nm, expr] : resolved) {
            assigned.insert(nm);
            sol.values[nm] = expr.is_zero() ? Rational(0)
                                            : expr.constant_value().rational_value();
        }
        for (const auto& nm : unknowns)
            if (!assigned.count(nm)) sol.free_unknowns.push_back(nm);
        if (parametric) continue;  // expression depends on a free unknown; keep frees only
        // side conditions from rational pivots must hold at the values
        bool violated = false;
        std::map<std::string, MultiPoly> bindv;
        for (const auto& [nm, expr] : resolved) bindv[nm] = expr;
        for (const auto& cond : br.nonzero) {
            MultiPoly cv = cond.substitute_poly(bindv, uring);
            if (cv.is_zero()) violated = true;
        }
        if (violated) continue;
        // dedupe
        bool dup = false;
        for (const auto& s : report.solutions)
            if (s.values == sol.values && s.free_unknowns == sol.free_unknowns) dup = true;
        if (!dup) report.solutions.push_back(std::move(sol));
    }
    if (any_clean && !report.solutions.empty()) report.status = MatchReport::Status::Solved;

    for (const auto& cand : candidates) {
        if (!candidate_solves(cand)) continue;
        report.candidate_is_member = true;
        if (report.status != MatchReport::Status::Solved)
            report.status = MatchReport::Status::CandidateVerified;
        // locate in the reported solutions, appending when the elimination
        // missed this branch (it is an exactly verified solution either way)
        bool located = false;
        for (std::size_t s = 0; s < report.solutions.size(); ++s) {
            const auto& sol = report.solutions[s];
            bool same = true;
            for (const auto& [k, v] : cand) {
                auto it = sol.values.find(k);
                bool free_ok = std::find(sol.free_unknowns.begin(), sol.free_unknowns.end(), k) !=
                               sol.free_unknowns.end();
                if (it != sol.values.end()) {
                    if (it->second != v) same = false;
                } else if (!free_ok) {
                    same = false;
                }
            }
            if (same) {
                report.candidate_index = s;
                located = true;
                break;
            }
        }
        if (!located) {
            CoefficientSolution sol;
            sol.values = cand;
            report.candidate_index = report.solutions.size();
            report.solutions.push_back(std::move(sol));
        }
        break;
    }
    if (report.status == MatchReport::Status::Unsolved && !terminal.empty()) {
        for (const auto& br : terminal)
            if (!br.note.empty()) report.detail = br.note;
    }
    return report;
}

std::vector<MultiPoly> apply_solution(const FrobeniusModel& model, const RingPtr& ext_ring,
                                      const std::vector<MultiPoly>& maps,
                                      const CoefficientSolution& sol) {
    std::map<std::string, MultiPoly> bind;
    for (const auto& [k, v] : sol.values) bind[k] = MultiPoly::constant(model.ring(), v);
    for (const auto& k : sol.free_unknowns)
        bind[k] = MultiPoly::constant(model.ring(), Rational(0));
    std::vector<MultiPoly> out;
    out.reserve(maps.size());
    for (const auto& m : maps) out.push_back(m.substitute_poly(bind, model.ring()));
    (void)ext_ring;
    return out;
}

}  // namespace frob
