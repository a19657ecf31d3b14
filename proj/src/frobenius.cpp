#include "frob/frobenius.hpp"

#include "frob/parallel.hpp"

#include <array>

namespace frob {

FrobeniusModel::FrobeniusModel(FrobeniusData data) : data_(std::move(data)) {
    ring_ = data_.prepotential.ring();
    if (data_.n + 1 > ring_->nvars())
        throw value_error("model ring must contain t1..tn and Z");
    if (data_.degrees.size() != data_.n) throw value_error("degrees size mismatch");
    if (data_.degrees[0] != 1) throw value_error("d_1 must be 1");
    if (data_.degrees[data_.n - 1] != Rational(1) - data_.charge)
        throw value_error("d_n = 1 - d violated");
    if (data_.x_weights.size() != ring_->nvars())
        throw value_error("x_weights must cover every ring variable");
    Rational dn = data_.degrees[data_.n - 1];
    for (std::size_t i = 0; i < data_.n; ++i)
        if (data_.x_weights[i] != 2 * data_.degrees[i] / dn)
            throw value_error("deg_x t_i = 2 d_i / d_n violated");
    if (data_.x_weights[data_.n - 1] != 2) throw value_error("deg_x t_n must be 2");
    qring_ = QuotientRing::make(data_.relation, "Z", ring_->names()[0]);
    if (!data_.relation.weighted_degree(data_.x_weights))
        throw value_error("relation P is not x-homogeneous");
    build_tensors();
}

Rational FrobeniusModel::euler_weight_z() const {
    return data_.degrees[data_.n - 1] * data_.x_weights[zvar()] / 2;
}

std::size_t FrobeniusModel::triple_index(std::size_t i, std::size_t j, std::size_t k) const {
    std::array<std::size_t, 3> s{i, j, k};
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    if (s[1] > s[2]) std::swap(s[1], s[2]);
    if (s[0] > s[1]) std::swap(s[0], s[1]);
    // index into the list of non-decreasing triples over n symbols
    auto c2 = [](std::size_t m) { return m * (m + 1) / 2; };
    auto c3 = [](std::size_t m) { return m * (m + 1) * (m + 2) / 6; };
    return c3(s[2]) + c2(s[1]) + s[0];
}

void FrobeniusModel::build_tensors() {
    const std::size_t n = data_.n;
    QuotientElement f = qring_->from_poly(data_.prepotential);

    std::vector<QuotientElement> d1(n);
    parallel_for(n, [&](std::size_t k) { d1[k] = f.total_derivative(k); });

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) pairs.push_back({j, k});
    std::vector<QuotientElement> d2(pairs.size());
    parallel_for(pairs.size(),
                 [&](std::size_t idx) { d2[idx] = d1[pairs[idx].second].total_derivative(pairs[idx].first); });

    std::vector<std::array<std::size_t, 3>> triples;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k) triples.push_back({i, j, k});
    c_.assign(triple_index(n - 1, n - 1, n - 1) + 1, QuotientElement());
    std::vector<QuotientElement> c3(triples.size());
    parallel_for(triples.size(), [&](std::size_t idx) {
        auto [i, j, k] = triples[idx];
        std::size_t pair_idx = 0;
        for (std::size_t p = 0; p < pairs.size(); ++p)
            if (pairs[p].first == j && pairs[p].second == k) pair_idx = p;
        c3[idx] = d2[pair_idx].total_derivative(i);
    });
    for (std::size_t idx = 0; idx < triples.size(); ++idx) {
        auto [i, j, k] = triples[idx];
        c_[triple_index(i, j, k)] = std::move(c3[idx]);
    }

    // g^{ij} = sum_l d_l t_l c^{ij}_l
    g_.assign(n * n, QuotientElement());
    std::vector<std::pair<std::size_t, std::size_t>> gpairs;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) gpairs.push_back({i, j});
    parallel_for(gpairs.size(), [&](std::size_t idx) {
        auto [i, j] = gpairs[idx];
        QuotientElement acc = qring_->zero();
        for (std::size_t l = 0; l < n; ++l) {
            MultiPoly tl = MultiPoly::variable(ring_, ring_->names()[l]);
            acc = acc + c_up2(i, j, l).mul_poly(tl.scaled(data_.degrees[l]));
        }
        g_[i * n + j] = acc;
    });
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) g_[i * n + j] = g_[j * n + i];

    delta_.assign(n, QuotientElement());
    parallel_for(n, [&](std::size_t i) {
        QuotientElement trace = qring_->zero();
        for (std::size_t l = 0; l < n; ++l) trace = trace + c_up2(i, l, l);
        Rational factor = (data_.charge - 1) / 2 + data_.degrees[i];
        delta_[i] = trace.scaled(factor);
    });
}

const QuotientElement& FrobeniusModel::c_lower(std::size_t i, std::size_t j,
                                               std::size_t k) const {
    return c_[triple_index(i, j, k)];
}

std::vector<std::vector<Rational>> FrobeniusModel::eta_from_prepotential() const {
    const std::size_t n = data_.n;
    std::vector<std::vector<Rational>> eta(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const QuotientElement& e = c_lower(i, j, 0);
            if (!e.is_constant())
                throw value_error("eta entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ") is not constant: " + e.to_string());
            FieldElement v = e.num().constant_value();
            eta[i][j] = v.is_zero() ? Rational(0) : v.rational_value();
            Rational expect = (i + j == n - 1) ? 1 : 0;
            if (eta[i][j] != expect)
                throw value_error("eta is not the antidiagonal identity at (" +
                                  std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
        }
    }
    return eta;
}

QuotientElement FrobeniusModel::euler_residual() const {
    QuotientElement f = qring_->from_poly(data_.prepotential);
    QuotientElement acc = qring_->zero();
    for (std::size_t l = 0; l < data_.n; ++l) {
        MultiPoly tl = MultiPoly::variable(ring_, ring_->names()[l]);
        acc = acc + f.total_derivative(l).mul_poly(tl.scaled(data_.degrees[l]));
    }
    return acc - f.scaled(Rational(3) - data_.charge);
}

const QuotientElement& FrobeniusModel::intersection_form(std::size_t i, std::size_t j) const {
    return g_[i * data_.n + j];
}

const QuotientElement& FrobeniusModel::laplacian_flat_coord(std::size_t i) const {
    return delta_[i];
}

QuotientElement FrobeniusModel::laplacian(const QuotientElement& f) const {
    const std::size_t n = data_.n;
    std::vector<QuotientElement> df(n);
    for (std::size_t v = 0; v < n; ++v) df[v] = f.total_derivative(v);
    QuotientElement acc = qring_->zero();
    for (std::size_t nu = 0; nu < n; ++nu) {
        for (std::size_t mu = nu; mu < n; ++mu) {
            QuotientElement second = df[mu].total_derivative(nu);
            QuotientElement term = intersection_form(nu, mu) * second;
            acc = acc + (mu == nu ? term : term + term);
        }
        acc = acc + delta_[nu] * df[nu];
    }
    return acc;
}

QuotientElement FrobeniusModel::wdvv_entry(std::size_t i, std::size_t j, std::size_t k,
                                           std::size_t l) const {
    QuotientElement acc = qring_->zero();
    for (std::size_t lam = 0; lam < data_.n; ++lam) {
        acc = acc + c_lower(i, j, lam) * c_lower(mirror(lam), k, l);
        acc = acc - c_lower(k, j, lam) * c_lower(mirror(lam), i, l);
    }
    return acc;
}

FrobeniusModel::WdvvReport FrobeniusModel::wdvv_scan(bool parallel) const {
    const std::size_t n = data_.n;
    std::vector<std::array<std::size_t, 4>> todo;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i + 1; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t l = j; l < n; ++l) todo.push_back({i, j, k, l});
    std::vector<char> bad(todo.size(), 0);
    std::vector<std::string> residuals(todo.size());
    auto body = [&](std::size_t idx) {
        auto [i, j, k, l] = todo[idx];
        QuotientElement r = wdvv_entry(i, j, k, l);
        if (!r.is_zero()) {
            bad[idx] = 1;
            residuals[idx] = r.to_string();
        }
    };
    if (parallel)
        parallel_for(todo.size(), body);
    else
        serial_for(todo.size(), body);
    WdvvReport report;
    for (std::size_t idx = 0; idx < todo.size(); ++idx) {
        if (!bad[idx]) continue;
        report.pass = false;
        report.offending.push_back(todo[idx]);
        if (report.first_residual.empty()) report.first_residual = residuals[idx];
    }
    return report;
}

Rational FrobeniusModel::x_degree(const Monomial& m) const {
    Rational d(0);
    for (std::size_t v = 0; v < ring_->nvars(); ++v)
        if (m[v]) d += Rational(m[v]) * data_.x_weights[v];
    return d;
}

std::optional<Rational> FrobeniusModel::x_degree(const MultiPoly& p) const {
    return p.weighted_degree(data_.x_weights);
}

bool FrobeniusModel::euler_grading_ok() const {
    std::vector<Rational> w(ring_->nvars(), Rational(0));
    for (std::size_t i = 0; i < data_.n; ++i) w[i] = data_.degrees[i];
    w[zvar()] = euler_weight_z();
    auto deg = data_.prepotential.weighted_degree(w);
    return deg && *deg == Rational(3) - data_.charge;
}

}  // namespace frob
