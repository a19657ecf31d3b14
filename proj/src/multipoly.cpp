#include "frob/multipoly.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace frob {

namespace {

struct MonoHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

bool term_desc(const Term& a, const Term& b) { return b.mono.graded_lex_less(a.mono); }

}  // namespace

Ring::Ring(std::vector<std::string> names, FieldTag tag) : names_(std::move(names)), tag_(tag) {}

RingPtr Ring::make(std::vector<std::string> names, FieldTag tag) {
    if (names.size() > kMaxVars) throw context_error("too many ring variables");
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j]) throw context_error("duplicate ring variable " + names[i]);
    return RingPtr(new Ring(std::move(names), tag));
}

std::size_t Ring::index_of(const std::string& name) const {
    auto idx = find(name);
    if (!idx) throw context_error("unknown variable " + name);
    return *idx;
}

std::optional<std::size_t> Ring::find(const std::string& name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

Monomial Monomial::operator*(const Monomial& rhs) const {
    Monomial out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        std::uint64_t s = std::uint64_t(e_[i]) + rhs.e_[i];
        if (s > 0x7fffffffu) throw value_error("monomial exponent overflow");
        out.e_[i] = static_cast<std::uint32_t>(s);
    }
    out.deg_ = deg_ + rhs.deg_;
    return out;
}

std::optional<Monomial> Monomial::divide(const Monomial& rhs) const {
    Monomial out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
        if (e_[i] < rhs.e_[i]) return std::nullopt;
        out.e_[i] = e_[i] - rhs.e_[i];
    }
    out.deg_ = deg_ - rhs.deg_;
    return out;
}

MultiPoly MultiPoly::constant(RingPtr ring, const FieldElement& c) {
    MultiPoly p(ring);
    if (!c.is_zero()) p.terms_.push_back({Monomial(ring->nvars()), promote(c, ring->tag())});
    return p;
}

MultiPoly MultiPoly::constant(RingPtr ring, const Rational& c) {
    return constant(ring, FieldElement(c, ring->tag()));
}

MultiPoly MultiPoly::variable(RingPtr ring, const std::string& name, std::uint32_t power) {
    std::size_t idx = ring->index_of(name);
    MultiPoly p(ring);
    if (power == 0) return constant(ring, Rational(1));
    Monomial m(ring->nvars());
    m.set(idx, power);
    p.terms_.push_back({m, FieldElement::one(ring->tag())});
    return p;
}

MultiPoly MultiPoly::from_terms(RingPtr ring, std::vector<Term> terms) {
    MultiPoly p(ring);
    p.terms_ = std::move(terms);
    std::sort(p.terms_.begin(), p.terms_.end(), term_desc);
    // merge duplicates
    std::vector<Term> merged;
    merged.reserve(p.terms_.size());
    for (auto& t : p.terms_) {
        if (!merged.empty() && merged.back().mono == t.mono)
            merged.back().coeff += t.coeff;
        else
            merged.push_back(std::move(t));
    }
    p.terms_ = std::move(merged);
    p.normalize_sorted();
    return p;
}

FieldElement MultiPoly::constant_value() const {
    if (terms_.empty()) return FieldElement::zero(ring_ ? ring_->tag() : FieldTag::Q);
    if (!is_constant()) throw value_error("polynomial is not constant");
    return terms_[0].coeff;
}

const Term& MultiPoly::leading_term() const {
    if (terms_.empty()) throw value_error("leading term of zero polynomial");
    return terms_[0];
}

void MultiPoly::check_ring(const MultiPoly& rhs) const {
    if (ring_ == rhs.ring_) return;
    if (ring_ && rhs.ring_ && ring_->same_as(*rhs.ring_)) return;
    throw context_error("ring context mismatch");
}

void MultiPoly::normalize_sorted() {
    terms_.erase(std::remove_if(terms_.begin(), terms_.end(),
                                [](const Term& t) { return t.coeff.is_zero(); }),
                 terms_.end());
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly out(ring_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono, -t.coeff});
    return out;
}

MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    MultiPoly out(a.ring_ ? a.ring_ : b.ring_);
    out.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() && j < b.terms_.size()) {
        const Term& ta = a.terms_[i];
        const Term& tb = b.terms_[j];
        if (ta.mono == tb.mono) {
            FieldElement c = ta.coeff + tb.coeff;
            if (!c.is_zero()) out.terms_.push_back({ta.mono, std::move(c)});
            ++i, ++j;
        } else if (tb.mono.graded_lex_less(ta.mono)) {
            out.terms_.push_back(ta);
            ++i;
        } else {
            out.terms_.push_back(tb);
            ++j;
        }
    }
    for (; i < a.terms_.size(); ++i) out.terms_.push_back(a.terms_[i]);
    for (; j < b.terms_.size(); ++j) out.terms_.push_back(b.terms_[j]);
    return out;
}

MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) { return a + (-b); }

MultiPoly& MultiPoly::operator+=(const MultiPoly& rhs) {
    *this = *this + rhs;
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& rhs) {
    *this = *this - rhs;
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    a.check_ring(b);
    const RingPtr& ring = a.ring_ ? a.ring_ : b.ring_;
    MultiPoly out(ring);
    if (a.terms_.empty() || b.terms_.empty()) return out;
    if (a.is_constant()) return b.scaled(a.terms_[0].coeff);
    if (b.is_constant()) return a.scaled(b.terms_[0].coeff);

    std::unordered_map<Monomial, FieldElement, MonoHash> acc;
    acc.reserve(a.terms_.size() * 2);
    for (const auto& ta : a.terms_) {
        for (const auto& tb : b.terms_) {
            Monomial m = ta.mono * tb.mono;
            FieldElement c = ta.coeff * tb.coeff;
            auto it = acc.find(m);
            if (it == acc.end())
                acc.emplace(std::move(m), std::move(c));
            else
                it->second += c;
        }
    }
    out.terms_.reserve(acc.size());
    for (auto& kv : acc)
        if (!kv.second.is_zero()) out.terms_.push_back({kv.first, std::move(kv.second)});
    std::sort(out.terms_.begin(), out.terms_.end(), term_desc);
    return out;
}

MultiPoly MultiPoly::scaled(const FieldElement& c) const {
    if (c.is_zero()) return MultiPoly(ring_);
    MultiPoly out(ring_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono, t.coeff * c});
    return out;
}

MultiPoly MultiPoly::scaled(const Rational& c) const {
    return scaled(FieldElement(c, ring_ ? ring_->tag() : FieldTag::Q));
}

MultiPoly operator*(const Rational& c, const MultiPoly& p) { return p.scaled(c); }

MultiPoly MultiPoly::mono_times(const Monomial& m, const FieldElement& c) const {
    if (c.is_zero()) return MultiPoly(ring_);
    MultiPoly out(ring_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) out.terms_.push_back({t.mono * m, t.coeff * c});
    return out;
}

MultiPoly MultiPoly::pow(long e) const {
    if (e < 0) throw value_error("negative polynomial power");
    MultiPoly acc = constant(ring_, Rational(1));
    MultiPoly sq = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc = acc * sq;
        if (n >>= 1) sq = sq * sq;
    }
    return acc;
}

bool MultiPoly::operator==(const MultiPoly& rhs) const {
    if (terms_.size() != rhs.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
        if (!(terms_[i].mono == rhs.terms_[i].mono) || terms_[i].coeff != rhs.terms_[i].coeff)
            return false;
    return true;
}

MultiPoly MultiPoly::derivative(const std::string& var) const {
    return derivative(ring_->index_of(var));
}

MultiPoly MultiPoly::derivative(std::size_t var) const {
    MultiPoly out(ring_);
    out.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
        std::uint32_t e = t.mono[var];
        if (e == 0) continue;
        Monomial m = t.mono;
        m.set(var, e - 1);
        out.terms_.push_back({m, t.coeff * FieldElement(Rational(e), ring_->tag())});
    }
    std::sort(out.terms_.begin(), out.terms_.end(), term_desc);
    return out;
}

long MultiPoly::degree_in(std::size_t var) const {
    long d = is_zero() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, static_cast<long>(t.mono[var]));
    return d;
}

std::uint64_t MultiPoly::total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(std::size_t var) const {
    long d = degree_in(var);
    std::vector<MultiPoly> out;
    out.resize(static_cast<std::size_t>(d + 1), MultiPoly(ring_));
    for (const auto& t : terms_) {
        std::uint32_t e = t.mono[var];
        Monomial m = t.mono;
        m.set(var, 0);
        out[e].terms_.push_back({m, t.coeff});
    }
    for (auto& p : out) {
        std::sort(p.terms_.begin(), p.terms_.end(), term_desc);
        p.normalize_sorted();
    }
    return out;
}

std::optional<Rational> MultiPoly::weighted_degree(const std::vector<Rational>& weights) const {
    if (terms_.empty()) return Rational(0);
    std::optional<Rational> deg;
    for (const auto& t : terms_) {
        Rational d(0);
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            if (t.mono[i]) d += Rational(t.mono[i]) * weights[i];
        if (!deg)
            deg = d;
        else if (*deg != d)
            return std::nullopt;
    }
    return deg;
}

Rational MultiPoly::content() const {
    if (terms_.empty()) return Rational(1);
    mpz_class num_gcd(0), den_lcm(1);
    auto feed = [&](const Rational& q) {
        if (q == 0) return;
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), q.get_num().get_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), q.get_den().get_mpz_t());
    };
    for (const auto& t : terms_) {
        feed(t.coeff.a());
        feed(t.coeff.b());
    }
    if (num_gcd == 0) return Rational(1);
    Rational c(num_gcd, den_lcm);
    c.canonicalize();
    return c;
}

bool MultiPoly::try_divide(const MultiPoly& divisor, MultiPoly& quotient) const {
    check_ring(divisor);
    if (divisor.is_zero()) throw value_error("division by zero polynomial");
    MultiPoly q(ring_);
    if (is_zero()) {
        quotient = q;
        return true;
    }
    if (divisor.is_constant()) {
        quotient = scaled(divisor.terms_[0].coeff.inverse());
        return true;
    }
    MultiPoly r = *this;
    const Term& dlt = divisor.leading_term();
    FieldElement dinv = dlt.coeff.inverse();
    while (!r.is_zero()) {
        const Term& rlt = r.leading_term();
        auto m = rlt.mono.divide(dlt.mono);
        if (!m) return false;
        FieldElement c = rlt.coeff * dinv;
        q.terms_.push_back({*m, c});
        r -= divisor.mono_times(*m, c);
    }
    std::sort(q.terms_.begin(), q.terms_.end(), term_desc);
    quotient = std::move(q);
    return true;
}

FieldElement MultiPoly::eval(const std::vector<FieldElement>& point) const {
    FieldElement acc = FieldElement::zero(ring_->tag());
    for (const auto& t : terms_) {
        FieldElement v = t.coeff;
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            for (std::uint32_t e = 0; e < t.mono[i]; ++e) v *= point[i];
        }
        acc += v;
    }
    return acc;
}

std::complex<double> MultiPoly::eval(const std::vector<std::complex<double>>& point) const {
    std::complex<double> acc(0.0, 0.0);
    for (const auto& t : terms_) {
        std::complex<double> v(t.coeff.to_double(), 0.0);
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            std::uint32_t e = t.mono[i];
            if (!e) continue;
            std::complex<double> p(1.0, 0.0), sq = point[i];
            while (e) {
                if (e & 1) p *= sq;
                if (e >>= 1) sq *= sq;
            }
            v *= p;
        }
        acc += v;
    }
    return acc;
}

RationalFunction MultiPoly::substitute(const std::map<std::string, RationalFunction>& bindings,
                                       const RingPtr& target) const {
    std::vector<std::vector<RationalFunction>> powers(ring_->nvars());
    std::vector<std::optional<RationalFunction>> images(ring_->nvars());
    auto image_of = [&](std::size_t i) -> const RationalFunction& {
        if (!images[i]) {
            auto it = bindings.find(ring_->names()[i]);
            if (it != bindings.end()) {
                if (!it->second.ring()->same_as(*target))
                    throw context_error("substitution image in wrong ring");
                images[i] = it->second;
            } else {
                images[i] = RationalFunction(MultiPoly::variable(target, ring_->names()[i]));
            }
        }
        return *images[i];
    };
    RationalFunction acc = RationalFunction::zero(target);
    for (const auto& t : terms_) {
        RationalFunction v(
            MultiPoly::constant(target, promote(t.coeff, target->tag())));
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            std::uint32_t e = t.mono[i];
            if (!e) continue;
            auto& tab = powers[i];
            if (tab.empty()) tab.push_back(RationalFunction(MultiPoly::constant(target, Rational(1))));
            while (tab.size() <= e) tab.push_back(tab.back() * image_of(i));
            v = v * tab[e];
        }
        acc = acc + v;
    }
    return acc;
}

MultiPoly MultiPoly::substitute_poly(const std::map<std::string, MultiPoly>& bindings,
                                     const RingPtr& target) const {
    std::vector<std::vector<MultiPoly>> powers(ring_->nvars());
    std::vector<std::optional<MultiPoly>> images(ring_->nvars());
    auto image_of = [&](std::size_t i) -> const MultiPoly& {
        if (!images[i]) {
            auto it = bindings.find(ring_->names()[i]);
            if (it != bindings.end()) {
                if (!it->second.ring()->same_as(*target))
                    throw context_error("substitution image in wrong ring");
                images[i] = it->second;
            } else {
                images[i] = MultiPoly::variable(target, ring_->names()[i]);
            }
        }
        return *images[i];
    };
    MultiPoly acc = MultiPoly::zero(target);
    for (const auto& t : terms_) {
        MultiPoly v = MultiPoly::constant(target, promote(t.coeff, target->tag()));
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            std::uint32_t e = t.mono[i];
            if (!e) continue;
            auto& tab = powers[i];
            if (tab.empty()) tab.push_back(MultiPoly::constant(target, Rational(1)));
            while (tab.size() <= e) tab.push_back(tab.back() * image_of(i));
            v = v * tab[e];
        }
        acc += v;
    }
    return acc;
}

MultiPoly MultiPoly::transport(const RingPtr& target,
                               const std::map<std::string, std::string>& rename) const {
    std::vector<std::size_t> map(ring_->nvars());
    for (std::size_t i = 0; i < ring_->nvars(); ++i) {
        std::string name = ring_->names()[i];
        auto it = rename.find(name);
        if (it != rename.end()) name = it->second;
        auto idx = target->find(name);
        if (!idx) {
            if (degree_in(i) > 0) throw context_error("transport drops used variable " + name);
            map[i] = 0;
        } else {
            map[i] = *idx;
        }
    }
    std::vector<Term> terms;
    terms.reserve(terms_.size());
    for (const auto& t : terms_) {
        Monomial m(target->nvars());
        for (std::size_t i = 0; i < ring_->nvars(); ++i)
            if (t.mono[i]) m.set(map[i], t.mono[i]);
        terms.push_back({m, promote(t.coeff, target->tag())});
    }
    return from_terms(target, std::move(terms));
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : terms_) {
        std::string cs = t.coeff.to_string();
        bool neg = !cs.empty() && cs[0] == '-' && cs.find("sqrt5") == std::string::npos;
        if (first) {
            if (neg) {
                os << "-";
                cs = cs.substr(1);
            }
        } else {
            if (neg) {
                os << " - ";
                cs = cs.substr(1);
            } else {
                os << " + ";
            }
        }
        first = false;
        bool printed = false;
        bool coeff_is_one = (cs == "1");
        if (!coeff_is_one || t.mono.is_constant()) {
            if (cs.find('+') != std::string::npos ||
                (cs.find("sqrt5") != std::string::npos && cs.find('-') != std::string::npos))
                os << "(" << cs << ")";
            else
                os << cs;
            printed = true;
        }
        for (std::size_t i = 0; i < ring_->nvars(); ++i) {
            std::uint32_t e = t.mono[i];
            if (!e) continue;
            if (printed) os << "*";
            os << ring_->names()[i];
            if (e > 1) os << "^" << e;
            printed = true;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------

RationalFunction::RationalFunction(MultiPoly num)
    : num_(std::move(num)), den_(MultiPoly::constant(num_.ring(), Rational(1))) {}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw value_error("denominator identically zero");
    normalize();
}

void RationalFunction::normalize() {
    const RingPtr& ring = num_.ring() ? num_.ring() : den_.ring();
    if (num_.is_zero()) {
        den_ = MultiPoly::constant(ring, Rational(1));
        return;
    }
    // common monomial factor
    std::size_t nv = ring->nvars();
    Monomial mins(nv);
    bool have = false;
    auto scan = [&](const MultiPoly& p) {
        for (const auto& t : p.terms()) {
            if (!have) {
                mins = t.mono;
                have = true;
            } else {
                Monomial m(nv);
                for (std::size_t i = 0; i < nv; ++i)
                    m.set(i, std::min(mins[i], t.mono[i]));
                mins = m;
            }
        }
    };
    scan(num_);
    scan(den_);
    if (!mins.is_constant()) {
        MultiPoly shift(ring);
        std::vector<Term> one{{mins, FieldElement::one(ring->tag())}};
        shift = MultiPoly::from_terms(ring, one);
        MultiPoly q;
        if (num_.try_divide(shift, q)) num_ = q;
        if (den_.try_divide(shift, q)) den_ = q;
    }
    if (den_.is_constant()) {
        num_ = num_.scaled(den_.constant_value().inverse());
        den_ = MultiPoly::constant(ring, Rational(1));
        return;
    }
    MultiPoly q;
    if (num_.try_divide(den_, q)) {
        num_ = std::move(q);
        den_ = MultiPoly::constant(ring, Rational(1));
        return;
    }
    if (!num_.is_constant() && den_.try_divide(num_, q)) {
        den_ = std::move(q);
        num_ = MultiPoly::constant(ring, Rational(1));
    }
    // den integer-primitive, positive leading coefficient
    Rational c = den_.content();
    FieldElement lead = den_.leading_term().coeff;
    int sign = lead.is_rational() ? sgn(lead.a()) : lead.real_sign();
    if (sign < 0) c = -c;
    if (c != 1) {
        FieldElement f(Rational(1) / c, den_.ring()->tag());
        den_ = den_.scaled(f);
        num_ = num_.scaled(f);
    }
}

MultiPoly RationalFunction::as_poly() const {
    if (!is_polynomial()) throw value_error("rational function is not polynomial: " + to_string());
    if (den_.constant_value().is_one()) return num_;
    return num_.scaled(den_.constant_value().inverse());
}

RationalFunction RationalFunction::operator-() const {
    RationalFunction out;
    out.num_ = -num_;
    out.den_ = den_;
    return out;
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return RationalFunction(a.num_ + b.num_, a.den_);
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return a + (-b);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    return a * b.inverse();
}

RationalFunction RationalFunction::inverse() const {
    if (is_zero()) throw value_error("inverse of zero rational function");
    return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RationalFunction acc(MultiPoly::constant(ring(), Rational(1)));
    RationalFunction sq = *this;
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc = acc * sq;
        if (n >>= 1) sq = sq * sq;
    }
    return acc;
}

RationalFunction RationalFunction::derivative(const std::string& var) const {
    MultiPoly dn = num_.derivative(var), dd = den_.derivative(var);
    if (dd.is_zero()) return RationalFunction(dn, den_);
    return RationalFunction(dn * den_ - num_ * dd, den_ * den_);
}

bool RationalFunction::operator==(const RationalFunction& rhs) const {
    if (den_ == rhs.den_) return num_ == rhs.num_;
    return num_ * rhs.den_ == rhs.num_ * den_;
}

std::complex<double> RationalFunction::eval(const std::vector<std::complex<double>>& point) const {
    return num_.eval(point) / den_.eval(point);
}

std::string RationalFunction::to_string() const {
    if (is_polynomial()) return as_poly().to_string();
    return "(" + num_.to_string() + ") / (" + den_.to_string() + ")";
}

}  // namespace frob
