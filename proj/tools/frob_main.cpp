#include "frob/checks.hpp"
#include "frob/dual.hpp"
#include "frob/family.hpp"
#include "frob/parallel.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

using namespace frob;

namespace {

std::string manifest_path(const std::string& dir, const std::string& name) {
    return dir + "/" + name + ".json";
}

std::vector<std::string> example_names(const std::string& dir) {
    std::vector<std::string> names;
    for (const auto& path : list_manifests(dir))
        names.push_back(std::filesystem::path(path).stem().string());
    return names;
}

int run_verify(const std::string& dir, const std::string& example, const std::string& checks,
               const std::string& format) {
    CheckSelection sel;
    if (!checks.empty()) {
        std::size_t start = 0;
        while (start < checks.size()) {
            std::size_t comma = checks.find(',', start);
            if (comma == std::string::npos) comma = checks.size();
            sel.ids.insert(checks.substr(start, comma - start));
            start = comma + 1;
        }
    }
    std::vector<std::string> names;
    if (example == "all")
        names = example_names(dir);
    else
        names.push_back(example);
    std::vector<VerificationReport> reports(names.size());
    for (std::size_t i = 0; i < names.size(); ++i) {
        Manifest m = Manifest::load_file(manifest_path(dir, names[i]));
        reports[i] = run_checks(m, sel);
    }
    std::cout << (format == "json" ? emit_json(reports) : emit_text(reports));
    return exit_code(reports);
}

int run_derive(const std::string& dir, const std::string& example) {
    Manifest mf = Manifest::load_file(manifest_path(dir, example));
    FrobeniusModel model(mf.to_data());
    const CoxeterModel& cox = CoxeterModel::get(mf.group);
    CoordinateBridge bridge = mf.to_bridge(model);

    std::cout << example << ": assembling the ansatz from the harmonic kernels\n";
    Ansatz a = ansatz_assembly(model, cox);
    std::cout << "  unknowns:";
    for (const auto& u : a.unknowns) std::cout << " " << u;
    std::cout << "\n";
    MatchReport own = coefficient_match(model, cox, a.ring, a.unknowns, a.maps, {});
    std::cout << "  constructed-ansatz solutions: " << own.solutions.size() << "\n";
    bool matches_theorem = false;
    for (const auto& sol : own.solutions) {
        auto maps = apply_solution(model, a.ring, a.maps, sol);
        bool same = true;
        for (std::size_t i = 0; i < model.n(); ++i)
            if (maps[i] != bridge.forward[i]) same = false;
        if (same) matches_theorem = true;
    }
    std::cout << "  one solution reproduces the catalogued forward maps: "
              << (matches_theorem ? "yes" : "no") << "\n";

    if (bridge.has_ansatz) {
        MatchReport mr = coefficient_match(model, cox, bridge.ansatz_ring, bridge.unknowns,
                                           bridge.ansatz, bridge.candidate_solutions);
        std::cout << "  catalogued parameterization: ";
        switch (mr.status) {
            case MatchReport::Status::Solved: std::cout << "solved"; break;
            case MatchReport::Status::CandidateVerified: std::cout << "candidate verified"; break;
            case MatchReport::Status::Unsolved: std::cout << "UNSOLVED " << mr.detail; break;
            case MatchReport::Status::Inconsistent: std::cout << "INCONSISTENT"; break;
        }
        std::cout << "\n";
        for (const auto& sol : mr.solutions) {
            std::cout << "   ";
            for (const auto& [k, v] : sol.values) std::cout << " " << k << " = " << rat_to_string(v);
            for (const auto& k : sol.free_unknowns) std::cout << " " << k << " free";
            std::cout << "\n";
        }
        if (mr.candidate_is_member) std::cout << "   catalogued values are a member\n";
        return (mr.status == MatchReport::Status::Solved ||
                mr.status == MatchReport::Status::CandidateVerified)
                   ? 0
                   : 1;
    }
    return matches_theorem ? 0 : 1;
}

int run_family(long m, long l, const std::string& format) {
    TwoDimFamily fam(m, l);
    CheckResult res = two_dim_bridge_check(fam);
    VerificationReport report;
    report.example = "I2(" + std::to_string(m) + "," + std::to_string(l) + ")";
    report.add("two-dim-bridge", res.pass ? CheckStatus::Pass : CheckStatus::Fail,
               res.pass ? "" : res.failures.front(), 0.0);
    std::vector<VerificationReport> reports{report};
    std::cout << (format == "json" ? emit_json(reports) : emit_text(reports));
    return exit_code(reports);
}

int run_dual_family(long l, const std::string& sign, std::size_t samples, unsigned seed,
                    const std::string& format) {
    char sgn = (sign == "-") ? '-' : '+';
    Rational k = sgn == '-' ? rat(-1, l) : rat(1, l);
    auto pts = sample_region(samples, seed);
    double worst = 0.0;
    nlohmann::json dump = nlohmann::json::array();
    for (const auto& p : pts) {
        DualSample fd = dual_third_fd(l, sgn, p[0], p[1]);
        DualSample cf = dual_third_closed_2d(k, p[0], p[1]);
        double scale = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j)
                for (int kk = j; kk < 2; ++kk) scale = std::max(scale, std::abs(cf.at(i, j, kk)));
        double err = 0.0;
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j)
                for (int kk = j; kk < 2; ++kk)
                    err = std::max(err, std::abs(fd.at(i, j, kk) - cf.at(i, j, kk)) / scale);
        worst = std::max(worst, err);
        nlohmann::json js;
        js["x1"] = {p[0].real(), p[0].imag()};
        js["x2"] = {p[1].real(), p[1].imag()};
        js["rel_error"] = err;
        js["c111"] = {cf.c111.real(), cf.c111.imag()};
        js["c112"] = {cf.c112.real(), cf.c112.imag()};
        js["c122"] = {cf.c122.real(), cf.c122.imag()};
        js["c222"] = {cf.c222.real(), cf.c222.imag()};
        dump.push_back(js);
    }
    bool pass = worst < 1e-6;
    if (format == "json") {
        nlohmann::json out;
        out["l"] = l;
        out["sign"] = sign;
        out["worst_rel_error"] = worst;
        out["pass"] = pass;
        out["samples"] = dump;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "dual family l=" << l << " sign=" << sign << " samples=" << samples
                  << ": worst relative error " << worst << " -> " << (pass ? "PASS" : "FAIL")
                  << "\n";
    }
    return pass ? 0 : 1;
}

int run_dual_mirror(const std::string& dir, const std::string& example, std::size_t alpha_index,
                    const std::string& branch, const std::string& format) {
    std::string name = example == "h3pp" ? "h3doubleprime" : example;
    Manifest mf = Manifest::load_file(manifest_path(dir, name));
    CatalogDual cd(mf);
    auto positive = cd.cox().positive_roots();
    if (alpha_index >= positive.size()) {
        std::cerr << "alpha index out of range (0.." << positive.size() - 1 << ")\n";
        return 2;
    }
    const auto& alpha = positive[alpha_index];
    MirrorFactorization fac = mirror_restriction_factor(cd, alpha);
    nlohmann::json out;
    out["example"] = name;
    out["alpha_index"] = alpha_index;
    out["factorization"] = {{"pass", fac.pass},
                            {"gcd_degree", fac.gcd_degree},
                            {"cofactor_degree", fac.cofactor_degree},
                            {"detail", fac.detail}};
    bool pass = fac.pass;
    char br = branch == "L" ? 'L' : 'K';
    nlohmann::json limits = nlohmann::json::array();
    std::size_t n = cd.n();
    for (std::size_t i = 0; i < n; ++i) {
        MirrorLimit lim = mirror_limit_check(cd, alpha, br, i, i, i);
        nlohmann::json jl;
        jl["ijk"] = {i + 1, i + 1, i + 1};
        jl["limit"] = {lim.limit.real(), lim.limit.imag()};
        jl["expected"] = {lim.expected.real(), lim.expected.imag()};
        jl["rel_error"] = lim.rel_error;
        jl["pass"] = lim.pass;
        limits.push_back(jl);
        pass = pass && lim.pass;
    }
    out["branch"] = branch;
    out["limits"] = limits;
    if (format == "json") {
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << name << " alpha#" << alpha_index << " factorization: "
                  << (fac.pass ? "PASS" : ("FAIL " + fac.detail)) << " (gcd degree "
                  << fac.gcd_degree << ", cofactor degree " << fac.cofactor_degree << ")\n";
        for (const auto& jl : limits)
            std::cout << "  " << branch << "-limit (" << jl["ijk"][0] << jl["ijk"][1]
                      << jl["ijk"][2] << "): rel " << jl["rel_error"].get<double>() << " "
                      << (jl["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    }
    return pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    configure_threads_from_env();
    CLI::App app{"exact verification of the coordinate bridges of algebraic Frobenius manifolds"};
    app.require_subcommand(1);
    std::string dir = manifest_dir_default();
    app.add_option("--manifest-dir", dir, "directory with the example manifests");

    auto* verify = app.add_subcommand("verify", "run identity checks for one or all examples");
    std::string example = "all", checks, format = "text";
    verify->add_option("--example", example, "example name or 'all'");
    verify->add_option("--check", checks, "comma-separated check ids");
    verify->add_option("--format", format, "text|json")->check(CLI::IsMember({"text", "json"}));

    auto* derive = app.add_subcommand("derive", "run the seven-step derivation for one example");
    std::string derive_example;
    derive->add_option("--example", derive_example, "example name")->required();

    auto* family = app.add_subcommand("family", "check the two-dimensional I2(m,l) bridge");
    long fam_m = 0, fam_l = 0;
    family->add_option("--m", fam_m, "m")->required();
    family->add_option("--l", fam_l, "l")->required();
    std::string fam_format = "text";
    family->add_option("--format", fam_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* dual = app.add_subcommand("dual", "almost-duality numerics");
    dual->require_subcommand(1);
    auto* dfam = dual->add_subcommand("family", "finite differences of the dual prepotential");
    long dual_l = 2;
    std::string dual_sign = "+", dual_format = "text";
    std::size_t dual_samples = 20;
    unsigned dual_seed = 1;
    dfam->add_option("--l", dual_l, "l >= 2")->required();
    dfam->add_option("--sign", dual_sign, "+ or -")->check(CLI::IsMember({"+", "-"}));
    dfam->add_option("--samples", dual_samples, "sample count");
    dfam->add_option("--seed", dual_seed, "rng seed");
    dfam->add_option("--format", dual_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    auto* dmir = dual->add_subcommand("mirror", "mirror restriction and limits");
    std::string mir_example, mir_branch = "K", mir_format = "text";
    std::size_t mir_alpha = 0;
    dmir->add_option("--example", mir_example, "h3pp or d4a1")->required();
    dmir->add_option("--alpha", mir_alpha, "positive-root index");
    dmir->add_option("--branch", mir_branch, "K|L")->check(CLI::IsMember({"K", "L"}));
    dmir->add_option("--format", mir_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    auto* list = app.add_subcommand("list", "list the shipped manifests");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (verify->parsed()) return run_verify(dir, example, checks, format);
        if (derive->parsed()) return run_derive(dir, derive_example);
        if (family->parsed()) return run_family(fam_m, fam_l, fam_format);
        if (dfam->parsed()) return run_dual_family(dual_l, dual_sign, dual_samples, dual_seed,
                                                   dual_format);
        if (dmir->parsed())
            return run_dual_mirror(dir, mir_example, mir_alpha, mir_branch, mir_format);
        if (list->parsed()) {
            for (const auto& name : example_names(dir)) std::cout << name << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
