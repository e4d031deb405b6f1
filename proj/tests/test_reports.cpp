#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>

#include "report.hpp"

using namespace kres::report;
using kres::ringdef::EngineOptions;
using kres::ringdef::RingDefinition;
using kres::ringdef::parse_ring_definition;
using json = nlohmann::ordered_json;

namespace {

RingDefinition golod2_def() {
    return parse_ring_definition("field: QQ\nvars: x, y\nideal: x^2, x*y, y^2\n");
}

RingDefinition massey4_def() {
    return parse_ring_definition(
        "field: QQ\nvars: x, y, z, w\n"
        "ideal: x^3, y^3, z^3 - x*y^2, x^2*z^2, x*y*z^2, y^2*w, w^2\n");
}

}  // namespace

TEST_CASE("ring definition parsing") {
    RingDefinition def = parse_ring_definition(
        "# comment line\n"
        "field: GF(7)\n"
        "vars: x, y   # trailing comment\n"
        "ideal: x^2 + 3*y^2, x*y\n"
        "cutoff: 9\n"
        "depth: 1\n");
    CHECK(def.field_text == "GF(7)");
    CHECK(def.vars == std::vector<std::string>{"x", "y"});
    CHECK(def.ideal == std::vector<std::string>{"x^2 + 3*y^2", "x*y"});
    CHECK(def.cutoff == 9);
    CHECK(def.depth == 1);

    CHECK_THROWS_AS(parse_ring_definition("vars: x\n"), kres::Error);           // no ideal
    CHECK_THROWS_AS(parse_ring_definition("ideal: x^2\n"), kres::Error);        // no vars
    CHECK_THROWS_AS(parse_ring_definition("vars: x\nideal: x^2\nbogus: 1\n"),
                    kres::Error);                                               // unknown key
    CHECK_THROWS_AS(parse_ring_definition("vars: x\nideal: x^2\ncutoff: -2\n"),
                    kres::Error);
    CHECK_THROWS_AS(kres::ringdef::parse_field("RR"), kres::Error);
    CHECK(kres::ringdef::parse_field("GF(32003)").characteristic() == 32003);
}

TEST_CASE("machine reports are byte-identical across runs") {
    Session s1(golod2_def(), {});
    Session s2(golod2_def(), {});
    CHECK(s1.ring_check().render(true) == s2.ring_check().render(true));
    CHECK(s1.invariants().render(true) == s2.invariants().render(true));
    CHECK(s1.resolution(true, "").render(true) == s2.resolution(true, "").render(true));
    CHECK(s1.massey().render(true) == s2.massey().render(true));
    CHECK(s1.oracle_betti(5).render(true) == s2.oracle_betti(5).render(true));

    // text reports match up to the wall-clock footer
    auto strip = [](std::string text) {
        auto at = text.find("elapsed:");
        return at == std::string::npos ? text : text.substr(0, at);
    };
    CHECK(strip(s1.invariants().text) == strip(s2.invariants().text));
    CHECK(s1.invariants().text.find("elapsed:") != std::string::npos);
}

TEST_CASE("json and text reports carry the same numbers") {
    Session s(golod2_def(), {});
    Report inv = s.invariants();
    json j = inv.json;
    CHECK(j["schema_version"] == 1);
    CHECK(j["homology"]["a"] == json::array({3, 2}));
    CHECK(j["invariants"]["betti"]["values"] == json::array({1, 2, 4, 8, 16, 32}));
    CHECK(j["invariants"]["defect"]["values"] == json::array({0, 0, 0, 0, 0, 0}));
    CHECK(inv.text.find("(1, 2, 4, 8, 16, 32)") != std::string::npos);
    CHECK(inv.text.find("a = (3, 2)") != std::string::npos);

    Report res = s.resolution(true, "");
    CHECK(res.exit_code == 0);
    CHECK(res.json["ranks"] == json::array({1, 2, 4, 8, 16, 32}));
    CHECK(res.json["verification"]["verified"] == true);
    CHECK(res.text.find("verification: pass") != std::string::npos);

    Report orc = s.oracle_betti(5);
    CHECK(orc.json["beta"] == json::array({1, 2, 4, 8, 16, 32}));
}

TEST_CASE("verification failures set exit code 2") {
    Session s(massey4_def(), {});
    Report bad = s.resolution(true, "flip-d3-z2");
    CHECK(bad.exit_code == 2);
    CHECK(bad.json["verification"]["verified"] == false);
    CHECK(bad.json["injected_fault"] == "flip-d3-z2");
    CHECK(bad.text.find("FAIL") != std::string::npos);
}

TEST_CASE("field override and GF(p) reports") {
    EngineOptions opt;
    opt.field_override = "GF(13)";
    Session s(golod2_def(), opt);
    Report rc = s.ring_check();
    CHECK(rc.json["ring"]["field"] == "GF(13)");
    Report inv = s.invariants();
    CHECK(inv.json["invariants"]["betti"]["values"] == json::array({1, 2, 4, 8, 16, 32}));
}

TEST_CASE("gorenstein codepth-4 class table round-trips through the denominator") {
    std::ifstream in("data/gorenstein_codepth4.json");
    REQUIRE(in.good());
    json table = json::parse(in);
    for (const auto& row : table["classes"]) {
        std::vector<std::pair<long long, long long>> qpairs;  // (q11, q12) samples
        if (row["q11"].is_string()) {
            for (long long p = 1; p <= 3; ++p) qpairs.emplace_back(p, p + 1);
        } else {
            qpairs.emplace_back(row["q11"].get<long long>(), row["q12"].get<long long>());
        }
        for (auto [q11, q12] : qpairs) {
            kres::invariants::InvariantInput in2;
            in2.n = 4;
            in2.c = 4;
            long long a1 = std::max<long long>(4, (q11 + 2 + 1) / 2);  // q11 <= 2a1-2
            in2.a = {a1, 2 * a1 - 2, a1, 1};
            in2.q11 = q11;
            in2.q12 = q12;
            in2.q22 = row["q22"].get<long long>();
            in2.q13 = row["q13"].get<long long>();
            in2.a_span = row["a"].get<long long>();
            in2.b = row["b"].get<long long>();
            auto d = kres::invariants::poincare_denominator(in2);
            auto solved = kres::invariants::invariants_from_denominator(4, 4, in2.a, d);
            CHECK(solved.q11 == q11);
            CHECK(solved.q12 == q12);
            CHECK(solved.a_minus_b == in2.a_span - in2.b);
        }
    }
}
