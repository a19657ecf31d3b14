#include "frob/checks.hpp"
#include "frob/parallel.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <atomic>

using namespace frob;

TEST_SUITE("parallel") {

TEST_CASE("parallel_for covers the range once") {
    std::vector<std::atomic<int>> hits(257);
    for (auto& h : hits) h = 0;
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) CHECK(h == 1);
}

TEST_CASE("exceptions propagate to the caller") {
    CHECK_THROWS_AS(parallel_for(8, [](std::size_t i) {
        if (i == 3) throw value_error("boom");
    }), value_error);
}

TEST_CASE("serial and parallel wdvv scans agree") {
    Manifest mf = load_example("h3doubleprime");
    FrobeniusModel model(mf.to_data());
    auto serial = model.wdvv_scan_serial();
    auto parallel = model.wdvv_scan(true);
    CHECK(serial.pass == parallel.pass);
    CHECK(serial.offending == parallel.offending);
    mf.prepotential_text += " + t2^3";
    FrobeniusModel broken(mf.to_data());
    auto s2 = broken.wdvv_scan_serial();
    auto p2 = broken.wdvv_scan(true);
    CHECK_FALSE(s2.pass);
    CHECK(s2.offending == p2.offending);
}

}  // TEST_SUITE
