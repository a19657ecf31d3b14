#include "frob/quotient.hpp"

#include <algorithm>
#include <sstream>

namespace frob {

namespace {

// Canonical order on Z-free polynomials so factor lists merge deterministically.
bool poly_less(const MultiPoly& a, const MultiPoly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    const auto& ta = a.terms();
    const auto& tb = b.terms();
    for (std::size_t i = 0; i < ta.size(); ++i) {
        if (!(ta[i].mono == tb[i].mono)) return ta[i].mono.graded_lex_less(tb[i].mono);
        if (ta[i].coeff != tb[i].coeff) return ta[i].coeff < tb[i].coeff;
    }
    return false;
}

// integer-primitive, positive leading coefficient; returns the removed scalar
MultiPoly make_primitive(const MultiPoly& p, Rational& removed) {
    Rational c = p.content();
    if (p.leading_term().coeff.real_sign() < 0) c = -c;
    removed = c;
    if (c == 1) return p;
    return p.scaled(Rational(1) / c);
}

MultiPoly reduce_raw(const QuotientRing& qr, MultiPoly raw, const std::vector<MultiPoly>& pc,
                     std::size_t zvar, long zdeg) {
    long d = raw.degree_in(zvar);
    if (d < zdeg) return raw;
    auto cs = raw.coeffs_in(zvar);
    for (long k = d; k >= zdeg; --k) {
        if (cs[k].is_zero()) continue;
        MultiPoly c = std::move(cs[k]);
        cs[k] = MultiPoly::zero(raw.ring());
        for (long j = 0; j < zdeg; ++j) {
            if (pc[j].is_zero()) continue;
            cs[k - zdeg + j] -= c * pc[j];
        }
    }
    MultiPoly acc = MultiPoly::zero(raw.ring());
    for (long j = 0; j < zdeg && j < static_cast<long>(cs.size()); ++j) {
        if (cs[j].is_zero()) continue;
        Monomial m(raw.ring()->nvars());
        m.set(zvar, static_cast<std::uint32_t>(j));
        acc += cs[j].mono_times(m, FieldElement::one(raw.ring()->tag()));
    }
    (void)qr;
    return acc;
}

}  // namespace

std::shared_ptr<const QuotientRing> QuotientRing::make(MultiPoly p, const std::string& zvar,
                                                       const std::string& t1) {
    auto qr = std::shared_ptr<QuotientRing>(new QuotientRing());
    qr->ring_ = p.ring();
    qr->zvar_ = qr->ring_->index_of(zvar);
    qr->zdeg_ = p.degree_in(qr->zvar_);
    if (qr->zdeg_ < 1) throw value_error("relation has no Z dependence");
    auto t1idx = qr->ring_->find(t1);
    if (t1idx && p.degree_in(*t1idx) > 0)
        throw value_error("relation P may not depend on " + t1);
    auto pc = p.coeffs_in(qr->zvar_);
    if (!pc.back().is_constant())
        throw value_error("relation is not monic in Z");
    FieldElement lead = pc.back().constant_value();
    if (!lead.is_one()) p = p.scaled(lead.inverse());
    qr->p_ = p;
    qr->p_coeffs_ = p.coeffs_in(qr->zvar_);
    qr->p_z_ = p.derivative(qr->zvar_);
    qr->build_caches();
    return qr;
}

void QuotientRing::build_caches() {
    QuotientRingPtr self = shared_from_this();
    inv_pz_ = std::make_unique<QuotientElement>(from_poly(p_z_).inverse());
    dz_.resize(ring_->nvars());
    for (std::size_t v = 0; v < ring_->nvars(); ++v) {
        if (v == zvar_) continue;
        MultiPoly pt = p_.derivative(v);
        if (pt.is_zero()) {
            dz_[v] = zero();
        } else {
            dz_[v] = from_poly(-pt) * (*inv_pz_);
        }
    }
}

QuotientElement QuotientRing::zero() const {
    return QuotientElement(shared_from_this(), MultiPoly::zero(ring_), {});
}

QuotientElement QuotientRing::one() const { return constant(Rational(1)); }

QuotientElement QuotientRing::constant(const Rational& c) const {
    return QuotientElement(shared_from_this(), MultiPoly::constant(ring_, c), {});
}

QuotientElement QuotientRing::from_poly(MultiPoly raw) const {
    return QuotientElement(shared_from_this(), std::move(raw), {});
}

QuotientElement QuotientRing::element(MultiPoly num,
                                      std::vector<std::pair<MultiPoly, int>> den) const {
    return QuotientElement(shared_from_this(), std::move(num), std::move(den));
}

QuotientElement QuotientRing::from_rf(const RationalFunction& rf) const {
    if (rf.den().degree_in(zvar_) > 0)
        return from_poly(rf.num()) * from_poly(rf.den()).inverse();
    Rational removed;
    if (rf.den().is_constant())
        return from_poly(rf.num().scaled(rf.den().constant_value().inverse()));
    MultiPoly prim = make_primitive(rf.den(), removed);
    MultiPoly num = rf.num().scaled(Rational(1) / removed);
    return QuotientElement(shared_from_this(), std::move(num), {{prim, 1}});
}

QuotientElement::QuotientElement(QuotientRingPtr qring, MultiPoly num,
                                 std::vector<std::pair<MultiPoly, int>> den)
    : qring_(std::move(qring)), num_(std::move(num)), den_(std::move(den)) {
    reduce();
    normalize();
}

void QuotientElement::reduce() {
    num_ = reduce_raw(*qring_, std::move(num_), qring_->p_coeffs_, qring_->zvar_, qring_->zdeg_);
}

void QuotientElement::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    std::sort(den_.begin(), den_.end(),
              [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
    std::vector<std::pair<MultiPoly, int>> merged;
    for (auto& f : den_) {
        if (!merged.empty() && merged.back().first == f.first)
            merged.back().second += f.second;
        else
            merged.push_back(std::move(f));
    }
    den_ = std::move(merged);
    for (auto& f : den_) {
        MultiPoly q;
        while (f.second > 0 && num_.try_divide(f.first, q)) {
            num_ = q;
            --f.second;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(),
                              [](const auto& f) { return f.second == 0; }),
               den_.end());
}

void QuotientElement::check_ring(const QuotientElement& rhs) const {
    if (qring_ == rhs.qring_) return;
    if (qring_ && rhs.qring_ && qring_->same_as(*rhs.qring_)) return;
    throw context_error("quotient ring mismatch");
}

bool QuotientElement::is_constant() const { return den_.empty() && num_.is_constant(); }

MultiPoly QuotientElement::den_expanded() const {
    MultiPoly d = MultiPoly::constant(qring_->ring(), Rational(1));
    for (const auto& f : den_)
        for (int i = 0; i < f.second; ++i) d = d * f.first;
    return d;
}

QuotientElement QuotientElement::operator-() const {
    QuotientElement out = *this;
    out.num_ = -out.num_;
    return out;
}

QuotientElement operator+(const QuotientElement& a, const QuotientElement& b) {
    a.check_ring(b);
    const QuotientRingPtr& qr = a.qring_ ? a.qring_ : b.qring_;
    // merged denominator with per-factor max exponents
    std::vector<std::pair<MultiPoly, int>> common;
    std::size_t i = 0, j = 0;
    auto less = [](const MultiPoly& x, const MultiPoly& y) { return poly_less(x, y); };
    while (i < a.den_.size() || j < b.den_.size()) {
        if (j >= b.den_.size() || (i < a.den_.size() && less(a.den_[i].first, b.den_[j].first)))
            common.push_back(a.den_[i++]);
        else if (i >= a.den_.size() || less(b.den_[j].first, a.den_[i].first))
            common.push_back(b.den_[j++]);
        else {
            common.push_back({a.den_[i].first, std::max(a.den_[i].second, b.den_[j].second)});
            ++i, ++j;
        }
    }
    auto complement = [&](const std::vector<std::pair<MultiPoly, int>>& own, MultiPoly num) {
        std::size_t k = 0;
        for (const auto& f : common) {
            int e = f.second;
            if (k < own.size() && own[k].first == f.first) {
                e -= own[k].second;
                ++k;
            }
            for (int r = 0; r < e; ++r) num = num * f.first;
        }
        return num;
    };
    MultiPoly na = complement(a.den_, a.num_);
    MultiPoly nb = complement(b.den_, b.num_);
    return QuotientElement(qr, na + nb, std::move(common));
}

QuotientElement operator-(const QuotientElement& a, const QuotientElement& b) { return a + (-b); }

QuotientElement operator*(const QuotientElement& a, const QuotientElement& b) {
    a.check_ring(b);
    const QuotientRingPtr& qr = a.qring_ ? a.qring_ : b.qring_;
    std::vector<std::pair<MultiPoly, int>> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return QuotientElement(qr, a.num_ * b.num_, std::move(den));
}

QuotientElement QuotientElement::scaled(const Rational& c) const {
    QuotientElement out = *this;
    out.num_ = out.num_.scaled(c);
    if (c == 0) out.den_.clear();
    return out;
}

QuotientElement QuotientElement::mul_poly(const MultiPoly& p) const {
    return QuotientElement(qring_, num_ * p, den_);
}

bool QuotientElement::operator==(const QuotientElement& rhs) const {
    return (*this - rhs).is_zero();
}

QuotientElement QuotientElement::inverse() const {
    if (is_zero()) throw value_error("inverse of zero quotient element");
    const long n = qring_->zdeg_;
    const RingPtr& ring = qring_->ring();
    // multiplication matrix of num_ acting on 1, Z, .., Z^{N-1}
    std::vector<std::vector<MultiPoly>> m(
        static_cast<std::size_t>(n),
        std::vector<MultiPoly>(static_cast<std::size_t>(n), MultiPoly::zero(ring)));
    MultiPoly zpow = MultiPoly::constant(ring, Rational(1));
    MultiPoly z = MultiPoly::variable(ring, ring->names()[qring_->zvar_]);
    for (long col = 0; col < n; ++col) {
        MultiPoly image = reduce_raw(*qring_, num_ * zpow, qring_->p_coeffs_, qring_->zvar_,
                                     qring_->zdeg_);
        auto cs = image.coeffs_in(qring_->zvar_);
        for (long row = 0; row < n && row < static_cast<long>(cs.size()); ++row)
            m[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)] = cs[row];
        if (col + 1 < n) zpow = zpow * z;
    }
    std::vector<MultiPoly> b(static_cast<std::size_t>(n), MultiPoly::zero(ring));
    b[0] = MultiPoly::constant(ring, Rational(1));
    PolySolution sol;
    try {
        sol = bareiss_solve(m, b);
    } catch (const value_error&) {
        throw irreducibility_error(
            "element shares a factor with P: irreducibility assumption violated");
    }
    MultiPoly w = MultiPoly::zero(ring);
    for (long k = 0; k < n; ++k) {
        Monomial mono(ring->nvars());
        mono.set(qring_->zvar_, static_cast<std::uint32_t>(k));
        w += sol.numerators[static_cast<std::size_t>(k)].mono_times(
            mono, FieldElement::one(ring->tag()));
    }
    Rational removed;
    std::vector<std::pair<MultiPoly, int>> den;
    if (!sol.denominator.is_constant()) {
        MultiPoly prim = make_primitive(sol.denominator, removed);
        den.push_back({prim, 1});
    } else {
        removed = sol.denominator.constant_value().rational_value();
    }
    MultiPoly numerator = (w * den_expanded()).scaled(Rational(1) / removed);
    return QuotientElement(qring_, std::move(numerator), std::move(den));
}

QuotientElement QuotientElement::total_derivative(std::size_t var) const {
    if (var == qring_->zvar_) throw value_error("total derivative in Z is not defined");
    QuotientElement out = QuotientElement(qring_, num_.derivative(var), den_);
    MultiPoly dz_part = num_.derivative(qring_->zvar_);
    if (!dz_part.is_zero() && !qring_->dz(var).is_zero())
        out = out + QuotientElement(qring_, std::move(dz_part), den_) * qring_->dz(var);
    // denominator contribution: -num * e_i * f_i' / (den * f_i)
    for (std::size_t i = 0; i < den_.size(); ++i) {
        MultiPoly fprime = den_[i].first.derivative(var);
        if (fprime.is_zero()) continue;
        std::vector<std::pair<MultiPoly, int>> den = den_;
        den[i].second += 1;
        MultiPoly num = (num_ * fprime).scaled(Rational(-den_[i].second));
        out = out + QuotientElement(qring_, std::move(num), std::move(den));
    }
    return out;
}

QuotientElement QuotientElement::total_derivative(const std::string& var) const {
    return total_derivative(qring_->ring()->index_of(var));
}

RationalFunction QuotientElement::coeff_rf(long zpow) const {
    auto cs = num_.coeffs_in(qring_->zvar_);
    const RingPtr& ring = qring_->ring();
    if (zpow >= static_cast<long>(cs.size()) || cs[zpow].is_zero())
        return RationalFunction(MultiPoly::zero(ring));
    return RationalFunction(cs[zpow], den_expanded());
}

bool QuotientElement::is_polynomial(RationalFunction* witness) const {
    if (den_.empty()) return true;
    for (long k = 0; k < qring_->zdeg_; ++k) {
        RationalFunction c = coeff_rf(k);
        if (!c.is_polynomial()) {
            if (witness) *witness = c;
            return false;
        }
    }
    return true;  // every coefficient cancelled individually
}

MultiPoly QuotientElement::as_poly() const {
    if (den_.empty()) return num_;
    MultiPoly out = MultiPoly::zero(qring_->ring());
    for (long k = 0; k < qring_->zdeg_; ++k) {
        RationalFunction c = coeff_rf(k);
        Monomial m(qring_->ring()->nvars());
        m.set(qring_->zvar_, static_cast<std::uint32_t>(k));
        out += c.as_poly().mono_times(m, FieldElement::one(qring_->ring()->tag()));
    }
    return out;
}

std::complex<double> QuotientElement::eval(const std::vector<std::complex<double>>& point) const {
    std::complex<double> v = num_.eval(point);
    for (const auto& f : den_) {
        std::complex<double> fv = f.first.eval(point);
        for (int i = 0; i < f.second; ++i) v /= fv;
    }
    return v;
}

std::string QuotientElement::to_string() const {
    if (den_.empty()) return num_.to_string();
    std::ostringstream os;
    os << "(" << num_.to_string() << ") / (";
    bool first = true;
    for (const auto& f : den_) {
        if (!first) os << " * ";
        first = false;
        os << "(" << f.first.to_string() << ")";
        if (f.second > 1) os << "^" << f.second;
    }
    os << ")";
    return os.str();
}

}  // namespace frob
