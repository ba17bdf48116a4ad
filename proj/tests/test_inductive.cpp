#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "core/inductive.h"

using namespace coops;

namespace {

std::string read_golden() {
    std::string path = std::string(COOPS_DATA_DIR) + "/golden/inductive_table_p3.txt";
    std::ifstream f(path);
    REQUIRE_MESSAGE(f.good(), "cannot open " << path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("the generator table matches the golden text up to its flagged misprints") {
    InductiveTable T = build_inductive_table(3, 9);
    TableDiff d = diff_against_golden(T.render(), read_golden());
    for (const auto& x : d.deltas) MESSAGE("delta: " << x);
    CHECK(d.deltas.empty());
    REQUIRE(d.flagged.size() == 4);
    CHECK(d.flagged[0].substr(0, 7) == "note q:");
    CHECK(d.flagged[1].substr(0, 12) == "S^62 -> S^61");
    CHECK(d.flagged[2].substr(0, 12) == "S^69 -> S^73");
    CHECK(d.flagged[3].substr(0, 14) == "S^117 -> S^121");
}

TEST_CASE("table rows have the expected shape") {
    InductiveTable T = build_inductive_table(3, 9);
    REQUIRE(T.rows.size() == 10);
    // lines per row: leaves 1; i > 0 rows 3 (no [1]-line when i = p-1);
    // i = 0 rows carry the embedded copy of row j.
    const size_t expect[] = {1, 1, 1, 3, 3, 2, 3, 3, 2, 5};
    for (size_t m = 0; m < 10; ++m) CHECK(T.rows[m].lines.size() == expect[m]);
    // red generators per row, own Q-line only
    const size_t reds[] = {0, 0, 0, 2, 1, 0, 4, 2, 0, 6};
    for (size_t m = 0; m < 10; ++m) {
        size_t n = 0;
        for (const auto& g : T.rows[m].lines[0].gens)
            if (g.red && !g.v2) ++n;
        CHECK(n == reds[m]);
    }
    CHECK_THROWS_AS(build_inductive_table(3, 10), std::invalid_argument);
    CHECK_THROWS_AS(build_inductive_table(3, -1), std::invalid_argument);

    InductiveTable T5 = build_inductive_table(5, 6);
    REQUIRE(T5.rows.size() == 7);
    CHECK(T5.rows[5].lines.size() == 3);   // Q-line, embedded leaf, [1]-line
    CHECK(T5.rows[5].lines[2].susps.size() == 4);  // K = 1..4 cokernel summands
    CHECK(T5.rows[6].lines[1].tensor);
}

TEST_CASE("the length-one Koszul relations hold") {
    // v_2 z1^9 = -v_1 z2^3 - v_0 z3 on Ext(l_3)'s weight piece
    LengthRelation r = check_length_relation(3, parse_mono("z1^9"));
    CHECK(r.holds);
    CHECK(mono_str(r.m1) == "z2^3");
    CHECK(mono_str(r.m2) == "z3");
    // v_2 (z1^9 z3) = -v_1 (z2^3 z3) - v_0 z3^2 on Ext(S^72 l_6)'s piece
    r = check_length_relation(3, parse_mono("z1^9 z3"));
    CHECK(r.holds);
    CHECK(mono_str(r.m1) == "z2^3 z3");
    CHECK(mono_str(r.m2) == "z3^2");

    CHECK_THROWS_AS(check_length_relation(3, parse_mono("z1^3")), std::invalid_argument);
    CHECK_THROWS_AS(check_length_relation(3, parse_mono("z1^9 t2")), std::invalid_argument);
}

TEST_CASE("every eligible row generator satisfies its length relation") {
    const size_t expect[] = {1, 2, 3, 5, 7, 9, 12};  // rows 3..9
    size_t total = 0;
    for (long long m = 3; m <= 9; ++m) {
        auto rels = length_relations_for_row(3, m);
        CHECK(rels.size() == expect[m - 3]);
        for (const auto& r : rels) {
            CHECK_MESSAGE(r.holds, "row " << m << ": " << mono_str(r.m) << " " << r.detail);
            ++total;
        }
    }
    CHECK(total == 39);
    CHECK(length_relations_for_row(3, 2).empty());
}

TEST_CASE("table generator names are Ext^0 names of the weight piece") {
    for (long long m = 0; m <= 9; ++m) {
        std::string errs = ext0_name_check(3, m);
        CHECK_MESSAGE(errs.empty(), errs);
    }
}

TEST_CASE("red generators support their hidden v_2-extensions") {
    const size_t expect[] = {2, 1, 0, 4, 2, 0, 6};  // rows 3..9
    size_t total = 0;
    for (long long m = 3; m <= 9; ++m) {
        auto checks = hidden_extension_checks(3, m);
        CHECK(checks.size() == expect[m - 3]);
        for (const auto& h : checks) {
            CHECK_MESSAGE(h.holds, "row " << m << ", " << h.source << ": " << h.detail);
            CHECK(h.unit == 1);
            CHECK(h.target == "v2 " + h.source);
            ++total;
        }
    }
    CHECK(total == 15);
}
