#include "frob/checks.hpp"
#include "frob/parser.hpp"
#include "test_util.hpp"

#include <doctest.h>

using namespace frob;

namespace {

struct Loaded {
    Manifest manifest;
    FrobeniusModel model;
    CoordinateBridge bridge;
    const CoxeterModel& cox;
    explicit Loaded(const std::string& name)
        : manifest(load_example(name)),
          model(manifest.to_data()),
          bridge(manifest.to_bridge(model)),
          cox(CoxeterModel::get(manifest.group)) {}
};

Loaded& loaded(const std::string& name) {
    static std::map<std::string, Loaded*> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, new Loaded(name)).first;
    return *it->second;
}

}  // namespace

TEST_SUITE("pipeline") {

TEST_CASE("graded monomial spaces of (H3)'") {
    Loaded& h = loaded("h3prime");
    GradedMonomialSpace deg0 = graded_space(h.model, rat(0));
    CHECK(deg0.monomials.size() == 1);
    GradedMonomialSpace deg6 = graded_space(h.model, rat(6));
    CHECK(deg6.monomials.size() == 6);
    // exactly the displayed general element of V2
    std::set<std::string> got;
    for (const auto& m : deg6.monomials)
        got.insert(MultiPoly::from_terms(h.model.ring(),
                                         {{m, FieldElement::one(FieldTag::Q)}})
                       .to_string());
    std::set<std::string> expect{"t1*t2", "t1*t3*Z", "t2^2*Z", "t2*t3*Z^2", "t3^3", "t3^2*Z^3"};
    CHECK(got == expect);
    CHECK(graded_space(h.model, rat(10)).monomials.size() == 13);
}

TEST_CASE("harmonic kernels recover the displayed representatives") {
    Loaded& h = loaded("h3prime");
    HarmonicSolution v2 = harmonic_elements(h.model, rat(6));
    REQUIRE(v2.kernel.size() == 1);
    MultiPoly rep = v2.element(h.model, 0);
    MultiPoly display = parse_poly(
        "1260*t1*t2 - 224*t2^2*Z - 154*t2*t3*Z^2 - 80*t3^3 - 35*t3^2*Z^3", h.model.ring());
    // proportional up to scalar
    MultiPoly q;
    bool prop = display.try_divide(rep, q) && q.is_constant();
    CHECK(prop);
    HarmonicSolution v1 = harmonic_elements(h.model, rat(10));
    CHECK(v1.kernel.size() == 1);

    Loaded& d = loaded("d4a1");
    HarmonicSolution v2d = harmonic_elements(d.model, rat(4));
    CHECK(v2d.kernel.size() == 2);
}

TEST_CASE("verify_bridge passes the catalogue and localizes a broken map") {
    Loaded& d = loaded("d4a1");
    CHECK(verify_bridge(d.model, d.cox, d.bridge).pass);
    CoordinateBridge broken = d.bridge;
    broken.forward[3] = parse_poly("7*t4", d.model.ring());
    CheckResult res = verify_bridge(d.model, d.cox, broken);
    CHECK_FALSE(res.pass);
    // pinned regression for the (4,4) entry: 4*(7 t4) - (t4/2)*49 = 7/2 t4
    QuotientElement a = d.model.qring()->from_poly(parse_poly("4*7*t4", d.model.ring()));
    QuotientElement b = d.model.intersection_form(3, 3).scaled(rat(49));
    CHECK(a - b == d.model.qring()->from_poly(parse_poly("7/2*t4", d.model.ring())));
    bool mentions44 = false;
    for (const auto& f : res.failures)
        if (f.find("g(4,4)") != std::string::npos) mentions44 = true;
    CHECK(mentions44);
}

TEST_CASE("inverse bridge checks") {
    Loaded& h = loaded("h3doubleprime");
    CHECK(invert_bridge_check(h.model, h.bridge).pass);
    // z_poly is monic-normalizable of the stated degree
    std::size_t zv = h.bridge.inverse_ring->index_of("Z");
    CHECK(h.bridge.z_min_poly.degree_in(zv) == 5);
    Loaded& d = loaded("d4a1");
    CHECK(d.bridge.z_min_poly.degree_in(d.bridge.inverse_ring->index_of("Z")) == 6);
    auto lead = d.bridge.z_min_poly.coeffs_in(d.bridge.inverse_ring->index_of("Z")).back();
    CHECK(lead == MultiPoly::constant(d.bridge.inverse_ring, rat_pow(rat(2), 10)));
    CHECK(invert_bridge_check(d.model, d.bridge).pass);
    // forward(inverse) = y for the linear map: t3 = y3/12 into y3 = 12 t3
    CHECK(loaded("h3prime").bridge.has_inverse);
    CHECK(invert_bridge_check(loaded("h3prime").model, loaded("h3prime").bridge).pass);
}

TEST_CASE("jacobian discriminant identities") {
    for (const char* name : {"h3prime", "h3doubleprime", "d4a1"}) {
        Loaded& l = loaded(name);
        CHECK(jacobian_discriminant_check(l.model, l.cox, l.bridge).pass);
    }
    CHECK(loaded("h3prime").bridge.discriminant_c == -rat_pow(rat(3), 26) * 5);
    CHECK(loaded("h3doubleprime").bridge.discriminant_c ==
          -rat_pow(rat(2), 14) * rat_pow(rat(5), 5));
    CHECK(loaded("d4a1").bridge.discriminant_c == 9);
}

TEST_CASE("unity fields") {
    Loaded& d = loaded("d4a1");
    auto e = unity_field(d.model, d.bridge);
    CHECK(e[1] == d.model.qring()->constant(rat(16)));
    CHECK(e[0] == d.model.qring()->from_poly(parse_poly("-384*t3", d.model.ring())));
    CHECK(e[2].is_zero());
    CHECK(e[3].is_zero());
    CHECK(unity_field_check(d.model, d.bridge).pass);
    Loaded& h = loaded("h3doubleprime");
    auto eh = unity_field(h.model, h.bridge);
    CHECK(eh[1] == h.model.qring()->constant(rat(216, 5)));
    CHECK(eh[0] ==
          h.model.qring()->from_poly(parse_poly("7776/5*(t2 + 3*t3^2)", h.model.ring())));
    // the y_n component vanishes for every catalogued model (y_n is a
    // multiple of t_n and n >= 2)
    CHECK(eh[2].is_zero());
}

TEST_CASE("ansatz assembly shapes") {
    Loaded& h1 = loaded("h3prime");
    Ansatz a1 = ansatz_assembly(h1.model, h1.cox);
    CHECK(a1.unknowns.size() == 2);
    Loaded& h2 = loaded("h3doubleprime");
    CHECK(ansatz_assembly(h2.model, h2.cox).unknowns.size() == 2);
    Loaded& d = loaded("d4a1");
    CHECK(ansatz_assembly(d.model, d.cox).unknowns.size() == 5);
    // y_n = 4/(1-d) t_n
    CHECK(a1.maps[2].transport(h1.model.ring()) ==
          parse_poly("20/3*t3", h1.model.ring()));
}

TEST_CASE("coefficient match recovers the catalogued values") {
    Loaded& h1 = loaded("h3prime");
    MatchReport r1 = coefficient_match(h1.model, h1.cox, h1.bridge.ansatz_ring,
                                       h1.bridge.unknowns, h1.bridge.ansatz,
                                       h1.bridge.candidate_solutions);
    REQUIRE(r1.status == MatchReport::Status::Solved);
    REQUIRE(r1.solutions.size() == 1);
    CHECK(r1.solutions[0].values.at("a") == rat_from_string("133120000/6561"));
    CHECK(r1.solutions[0].values.at("b") == rat_from_string("-16000/729"));
    CHECK(r1.candidate_is_member);

    Loaded& h2 = loaded("h3doubleprime");
    MatchReport r2 = coefficient_match(h2.model, h2.cox, h2.bridge.ansatz_ring,
                                       h2.bridge.unknowns, h2.bridge.ansatz,
                                       h2.bridge.candidate_solutions);
    REQUIRE(r2.status == MatchReport::Status::Solved);
    CHECK(r2.solutions[0].values.at("a") == rat_from_string("62208/25"));
    CHECK(r2.solutions[0].values.at("b") == rat_from_string("640/7"));

    Loaded& d = loaded("d4a1");
    MatchReport rd = coefficient_match(d.model, d.cox, d.bridge.ansatz_ring,
                                       d.bridge.unknowns, d.bridge.ansatz,
                                       d.bridge.candidate_solutions);
    CHECK(rd.candidate_is_member);  // the particular solution solves the system
}

TEST_CASE("derived ansatz reproduces the theorem maps") {
    Loaded& h2 = loaded("h3doubleprime");
    Ansatz a = ansatz_assembly(h2.model, h2.cox);
    MatchReport mr = coefficient_match(h2.model, h2.cox, a.ring, a.unknowns, a.maps, {});
    REQUIRE(mr.status == MatchReport::Status::Solved);
    bool reproduced = false;
    for (const auto& sol : mr.solutions) {
        auto maps = apply_solution(h2.model, a.ring, a.maps, sol);
        bool same = true;
        for (std::size_t i = 0; i < h2.model.n(); ++i)
            if (maps[i] != h2.bridge.forward[i]) same = false;
        if (same) reproduced = true;
    }
    CHECK(reproduced);
}

TEST_CASE("run_checks end to end") {
    for (const char* name : {"h3prime", "h3doubleprime", "d4a1"}) {
        VerificationReport rep = run_checks(load_example(name), {});
        CHECK(rep.all_green());
        CHECK(rep.checks.size() == known_check_ids().size());
    }
    CheckSelection sel;
    sel.ids = {"eta", "euler"};
    VerificationReport rep = run_checks(load_example("h3prime"), sel);
    CHECK(rep.checks.size() == 2);
    sel.ids = {"no-such-check"};
    CHECK_THROWS_AS(run_checks(load_example("h3prime"), sel), value_error);
}

}  // TEST_SUITE
