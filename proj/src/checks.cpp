#include "frob/checks.hpp"

#include "frob/parser.hpp"

#include <chrono>

namespace frob {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// is v inside the rational span of the kernel basis?
bool in_kernel_span(const std::vector<std::vector<Rational>>& kernel,
                    const std::vector<Rational>& v) {
    if (kernel.empty()) return false;
    std::size_t m = v.size();
    Matrix a(m, kernel.size(), FieldTag::Q);
    std::vector<FieldElement> b(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < kernel.size(); ++c)
            a.at(r, c) = FieldElement(kernel[c][r]);
        b[r] = FieldElement(v[r]);
    }
    try {
        a.solve(b);
        return true;
    } catch (const value_error&) {
        return false;
    }
}

}  // namespace

const std::set<std::string>& known_check_ids() {
    static const std::set<std::string> ids = {
        "bridge-forward", "bridge-inverse", "derive-coefficients", "discriminant",
        "eta",            "euler",          "harmonic-spaces",     "intersection-form-fixture",
        "laplacian-fixtures", "unity",      "wdvv"};
    return ids;
}

VerificationReport run_checks(const Manifest& manifest, const CheckSelection& sel) {
    VerificationReport report;
    report.example = manifest.name;
    for (const auto& id : sel.ids)
        if (!known_check_ids().count(id)) throw value_error("unknown check id: " + id);

    FrobeniusModel model(manifest.to_data());
    CoordinateBridge bridge = manifest.to_bridge(model);
    const CoxeterModel& cox = CoxeterModel::get(manifest.group);

    if (sel.wants("eta")) {
        auto t0 = Clock::now();
        try {
            model.eta_from_prepotential();
            report.add("eta", CheckStatus::Pass, "", elapsed(t0));
        } catch (const std::exception& e) {
            report.add("eta", CheckStatus::Fail, e.what(), elapsed(t0));
        }
    }
    if (sel.wants("euler")) {
        auto t0 = Clock::now();
        QuotientElement r = model.euler_residual();
        bool grading = model.euler_grading_ok();
        if (r.is_zero() && grading)
            report.add("euler", CheckStatus::Pass, "", elapsed(t0));
        else
            report.add("euler", CheckStatus::Fail,
                       r.is_zero() ? "E-grading scan failed" : r.to_string().substr(0, 160),
                       elapsed(t0));
    }
    if (sel.wants("wdvv")) {
        auto t0 = Clock::now();
        auto w = model.wdvv_scan();
        if (w.pass)
            report.add("wdvv", CheckStatus::Pass, "", elapsed(t0));
        else {
            auto& o = w.offending.front();
            report.add("wdvv", CheckStatus::Fail,
                       "first offending (i,j,k,l) = (" + std::to_string(o[0] + 1) + "," +
                           std::to_string(o[1] + 1) + "," + std::to_string(o[2] + 1) + "," +
                           std::to_string(o[3] + 1) + "): " + w.first_residual.substr(0, 160),
                       elapsed(t0));
        }
    }
    if (sel.wants("intersection-form-fixture")) {
        auto t0 = Clock::now();
        if (manifest.intersection_form_text.empty()) {
            report.add("intersection-form-fixture", CheckStatus::Skipped, "no fixture", 0.0);
        } else {
            auto fixture = manifest.intersection_fixture(model.ring());
            CheckResult res;
            for (std::size_t i = 0; i < model.n(); ++i)
                for (std::size_t j = i; j < model.n(); ++j) {
                    QuotientElement expect = model.qring()->from_poly(fixture[i][j]);
                    if (!(model.intersection_form(i, j) == expect))
                        res.fail("g(" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                 ") = " + model.intersection_form(i, j).to_string().substr(0, 120));
                }
            report.add("intersection-form-fixture",
                       res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                       res.pass ? "" : res.failures.front(), elapsed(t0));
        }
    }
    if (sel.wants("laplacian-fixtures")) {
        auto t0 = Clock::now();
        if (manifest.laplacian_text.empty()) {
            report.add("laplacian-fixtures", CheckStatus::Skipped, "no fixture", 0.0);
        } else {
            auto fixture = manifest.laplacian_fixture(model.ring());
            CheckResult res;
            for (std::size_t i = 0; i < model.n(); ++i) {
                QuotientElement expect = model.qring()->from_rf(fixture[i]);
                QuotientElement got = model.laplacian_flat_coord(i);
                if (!(got == expect))
                    res.fail("Delta(t" + std::to_string(i + 1) +
                             ") = " + got.to_string().substr(0, 120));
                // internal consistency of the two Prop formulas
                MultiPoly ti = MultiPoly::variable(model.ring(), model.ring()->names()[i]);
                QuotientElement via_general = model.laplacian(model.qring()->from_poly(ti));
                if (!(via_general == got))
                    res.fail("laplacian_general(t" + std::to_string(i + 1) +
                             ") disagrees with the trace formula");
            }
            report.add("laplacian-fixtures", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                       res.pass ? "" : res.failures.front(), elapsed(t0));
        }
    }
    if (sel.wants("harmonic-spaces")) {
        auto t0 = Clock::now();
        if (manifest.harmonic_spaces.empty()) {
            report.add("harmonic-spaces", CheckStatus::Skipped, "no expectations", 0.0);
        } else {
            CheckResult res;
            for (const auto& exp : manifest.harmonic_spaces) {
                HarmonicSolution sol = harmonic_elements(model, exp.degree);
                if (sol.kernel.size() != exp.kernel_dim) {
                    res.fail("degree " + rat_to_string(exp.degree.get_num()) + "/" +
                             rat_to_string(exp.degree.get_den()) + " kernel dim " +
                             std::to_string(sol.kernel.size()) + " != " +
                             std::to_string(exp.kernel_dim));
                    continue;
                }
                for (const auto& rep_text : exp.representatives) {
                    MultiPoly rep = parse_poly(rep_text, model.ring());
                    std::vector<Rational> vec(sol.space.monomials.size(), Rational(0));
                    bool listed = true;
                    for (const auto& t : rep.terms()) {
                        bool found = false;
                        for (std::size_t i = 0; i < sol.space.monomials.size(); ++i)
                            if (sol.space.monomials[i] == t.mono) {
                                vec[i] = t.coeff.rational_value();
                                found = true;
                            }
                        if (!found) listed = false;
                    }
                    if (!listed || !in_kernel_span(sol.kernel, vec))
                        res.fail("representative not in the harmonic kernel at degree " +
                                 rat_to_string(exp.degree.get_num()));
                }
            }
            report.add("harmonic-spaces", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                       res.pass ? "" : res.failures.front(), elapsed(t0));
        }
    }
    if (sel.wants("bridge-forward")) {
        auto t0 = Clock::now();
        CheckResult res = verify_bridge(model, cox, bridge);
        report.add("bridge-forward", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                   res.pass ? "" : res.failures.front(), elapsed(t0));
    }
    if (sel.wants("bridge-inverse")) {
        auto t0 = Clock::now();
        if (!bridge.has_inverse) {
            report.add("bridge-inverse", CheckStatus::Skipped,
                       "inverse maps not supplied (too long to present)", 0.0);
        } else {
            CheckResult res = invert_bridge_check(model, bridge);
            report.add("bridge-inverse", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                       res.pass ? "" : res.failures.front(), elapsed(t0));
        }
    }
    if (sel.wants("discriminant")) {
        auto t0 = Clock::now();
        if (!bridge.has_discriminant) {
            report.add("discriminant", CheckStatus::Skipped, "no stated (c, Q)", 0.0);
        } else {
            CheckResult res = jacobian_discriminant_check(model, cox, bridge);
            report.add("discriminant", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                       res.pass ? "" : res.failures.front(), elapsed(t0));
        }
    }
    if (sel.wants("unity")) {
        auto t0 = Clock::now();
        if (!bridge.has_unity) {
            report.add("unity", CheckStatus::Skipped, "no stated unity field", 0.0);
        } else {
            CheckResult res = unity_field_check(model, bridge);
            report.add("unity", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
                       res.pass ? "" : res.failures.front(), elapsed(t0));
        }
    }
    if (sel.wants("derive-coefficients")) {
        auto t0 = Clock::now();
        if (!bridge.has_ansatz) {
            report.add("derive-coefficients", CheckStatus::Skipped, "no ansatz", 0.0);
        } else {
            MatchReport mr = coefficient_match(model, cox, bridge.ansatz_ring, bridge.unknowns,
                                               bridge.ansatz, bridge.candidate_solutions);
            CheckStatus st = CheckStatus::Fail;
            std::string detail;
            switch (mr.status) {
                case MatchReport::Status::Solved:
                    st = mr.candidate_is_member ? CheckStatus::Pass : CheckStatus::Fail;
                    detail = std::to_string(mr.solutions.size()) + " solution(s)";
                    if (!mr.candidate_is_member) detail += "; paper values not among them";
                    break;
                case MatchReport::Status::CandidateVerified:
                    st = CheckStatus::Pass;
                    detail = "candidate verified against a nonlinear core";
                    break;
                case MatchReport::Status::Unsolved:
                    st = CheckStatus::Unsolved;
                    detail = mr.detail;
                    break;
                case MatchReport::Status::Inconsistent:
                    st = CheckStatus::Fail;
                    detail = mr.detail;
                    break;
            }
            report.add("derive-coefficients", st, detail, elapsed(t0));
        }
    }
    report.sort_by_id();
    return report;
}

}  // namespace frob
