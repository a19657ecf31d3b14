#include "frob/checks.hpp"
#include "test_util.hpp"

#include <doctest.h>
#include <json.hpp>

using namespace frob;

TEST_SUITE("manifest") {

TEST_CASE("round trip print/parse") {
    for (const char* name : {"h3prime", "h3doubleprime", "d4a1"}) {
        Manifest m = load_example(name);
        Manifest again = Manifest::parse(m.print());
        CHECK(again.name == m.name);
        CHECK(again.charge == m.charge);
        CHECK(again.forward_text == m.forward_text);
        CHECK(again.inverse_text == m.inverse_text);
        CHECK(again.print() == m.print());
    }
}

TEST_CASE("syntax and consistency errors") {
    CHECK_THROWS_AS(Manifest::parse(""), manifest_error);
    CHECK_THROWS_AS(Manifest::parse("{"), manifest_error);
    Manifest m = load_example("h3doubleprime");
    nlohmann::json j = nlohmann::json::parse(m.print());
    j["degrees"][1] = "3/5";  // breaks nothing else, but d_n chain still holds
    j["degrees"][2] = "3/5";  // now d_n != 1 - d
    CHECK_THROWS_AS(Manifest::parse(j.dump()), manifest_error);
    nlohmann::json g = nlohmann::json::parse(m.print());
    g["group"] = "X9";
    CHECK_THROWS_AS(Manifest::parse(g.dump()), value_error);
}

TEST_CASE("constant expressions") {
    CHECK(parse_constant("-3^26*5") == -rat_pow(rat(3), 26) * 5);
    CHECK(parse_constant("2^72*5") == rat_pow(rat(2), 72) * 5);
    CHECK(parse_constant("9") == 9);
    CHECK(parse_constant("2^36*3^42*5^8*13^4") ==
          rat_pow(rat(2), 36) * rat_pow(rat(3), 42) * rat_pow(rat(5), 8) * rat_pow(rat(13), 4));
}

TEST_CASE("report emission and exit codes") {
    VerificationReport a;
    a.example = "alpha";
    a.add("wdvv", CheckStatus::Pass, "", 0.25);
    a.add("eta", CheckStatus::Pass, "", 0.0);
    a.sort_by_id();
    CHECK(a.checks[0].id == "eta");
    VerificationReport b;
    b.example = "beta";
    b.add("bridge-inverse", CheckStatus::Skipped, "inverse maps not supplied", 0.0);
    std::vector<VerificationReport> ok{a, b};
    CHECK(exit_code(ok) == 0);
    std::string text = emit_text(ok);
    CHECK(text.find("SKIPPED") != std::string::npos);
    b.add("wdvv", CheckStatus::Fail, "residual", 1.0);
    std::vector<VerificationReport> bad{a, b};
    CHECK(exit_code(bad) == 1);
    // deterministic json modulo the seconds field
    auto strip = [](std::string s) {
        nlohmann::json j = nlohmann::json::parse(s);
        for (auto& r : j)
            for (auto& c : r["checks"]) c["seconds"] = 0;
        return j.dump();
    };
    CHECK(strip(emit_json(ok)) == strip(emit_json(ok)));
}

}  // TEST_SUITE
