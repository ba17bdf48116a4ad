#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <memory>

#include "core/browngitler.h"
#include "core/cobar.h"
#include "core/koszul.h"
#include "core/localized.h"

using namespace coops;

namespace {

// #{(e_0..e_n) : sum e_i = s, sum e_i (2 p^i - 1) = t}
uint32_t poly_dim(uint32_t p, int n, int s, long long t) {
    std::function<uint32_t(int, int, long long)> rec = [&](int i, int left, long long deg) -> uint32_t {
        if (deg < 0) return 0;
        if (i > n) return (left == 0 && deg == 0) ? 1 : 0;
        long long pi = 1;
        for (int k = 0; k < i; ++k) pi *= p;
        long long w = 2 * pi - 1;
        uint32_t total = 0;
        for (int e = 0; e <= left; ++e) total += rec(i + 1, left - e, deg - e * w);
        return total;
    };
    return rec(0, s, t);
}

std::shared_ptr<Comodule> own(Comodule&& c) { return std::make_shared<Comodule>(std::move(c)); }

}  // namespace

TEST_CASE("Ext of the sphere is a polynomial algebra on the v_i") {
    auto sphere = own(trivial_comodule(3, 2, {{"1", 0}}, "S^0"));
    KoszulExt K = koszul_ext(sphere, 5, 40);
    for (int s = 0; s <= 5; ++s)
        for (long long t = 0; t <= 40; ++t) CHECK(K.dim_at(s, t) == poly_dim(3, 2, s, t));
    CHECK(K.cell(0, 0)->names == std::vector<std::string>{"1"});
    CHECK(K.cell(1, 1)->names == std::vector<std::string>{"v0"});
    CHECK(K.cell(1, 5)->names == std::vector<std::string>{"v1"});
    CHECK(K.cell(1, 17)->names == std::vector<std::string>{"v2"});
    CHECK(K.cell(2, 34)->names == std::vector<std::string>{"v2^2"});
    CHECK(K.cell(3, 23)->names == std::vector<std::string>{"v0 v1 v2"});

    // v_1 carries v_2 to the single class v_1 v_2.
    FpMatrix m = v_mult(K, 1, 1, 17);
    CHECK(m.rows == 1);
    CHECK(m.cols == 1);
    CHECK(m.get(0, 0) == 1);
    CHECK(K.cell(2, 22)->names == std::vector<std::string>{"v1 v2"});

    // Window edges: v_0 has room for >= 3 more steps, v_2 does not.
    auto report = torsion_report(K, 3);
    bool found = false;
    for (const auto& line : report) {
        if (line.s != 0) continue;
        found = true;
        CHECK(line.kind[0] == TorsionLine::FREE);
        CHECK(line.kind[2] == TorsionLine::UNDECIDED);
    }
    CHECK(found);

    auto sphere5 = own(trivial_comodule(5, 1, {{"1", 0}}, "S^0"));
    KoszulExt K5 = koszul_ext(sphere5, 4, 40);
    for (int s = 0; s <= 4; ++s)
        for (long long t = 0; t <= 40; ++t) CHECK(K5.dim_at(s, t) == poly_dim(5, 1, s, t));
}

TEST_CASE("a free exterior comodule has Ext concentrated in s = 0") {
    std::vector<Monomial> monos{Monomial::one(), Monomial::tgen(0)};
    auto m = own(comodule_from_monomials(3, -1, 0, monos, "E(t0)", LLONG_MAX));
    KoszulExt K = koszul_ext(m, 4, 12);
    uint32_t total = 0;
    for (const auto& [key, cell] : K.cells) {
        total += cell.dim;
        if (cell.dim) {
            CHECK(key.first == 0);
            CHECK(key.second == 0);
        }
    }
    CHECK(total == 1);
    CHECK(K.cell(0, 0)->names == std::vector<std::string>{"1"});
}

TEST_CASE("the two coactions on E(t2) give different Ext") {
    // Genuine coaction: Q_2 t2 = 1, so the v_2-towers cancel.
    std::shared_ptr<const Comodule> genuine = build_q_quotient(3, 0).q;
    KoszulExt KG = koszul_ext(genuine, 4, 40);
    for (int s = 0; s <= 4; ++s)
        for (long long t = 0; t <= 40; ++t) CHECK(KG.dim_at(s, t) == poly_dim(3, 1, s, t));
    CHECK(KG.dim_at(0, 17) == 0);

    // Trivial coaction: Ext is free over F_3[v_0, v_1, v_2] on both generators.
    auto trivial = own(trivial_comodule(3, 2, {{"1", 0}, {"x17", 17}}, "F_3 + S^17 F_3"));
    KoszulExt KT = koszul_ext(trivial, 4, 40);
    for (int s = 0; s <= 4; ++s)
        for (long long t = 0; t <= 40; ++t)
            CHECK(KT.dim_at(s, t) == poly_dim(3, 2, s, t) + poly_dim(3, 2, s, t - 17));
    CHECK(KT.dim_at(0, 17) == 1);

    // The generator of the genuine module is v_2-torsion of order one.
    for (const auto& line : torsion_report(KG, 3)) {
        if (line.s == 0 && line.t == 0) {
            CHECK(line.kind[2] == TorsionLine::ORDER);
            CHECK(line.order[2] == 1);
            CHECK(line.kind[0] == TorsionLine::FREE);
        }
    }
}

TEST_CASE("the Koszul differential of ell_3 encodes the three-term relation") {
    auto ell = own(build_ell(3, 3));
    KoszulExt K = koszul_ext(ell, 3, 40);

    // Ext^0 = primitives: the z-monomials survive, t2 does not.
    for (long long t : {0, 4, 8, 12, 16}) CHECK(K.dim_at(0, t) == 1);
    CHECK(K.dim_at(0, 17) == 0);
    CHECK(K.cell(0, 16)->names == std::vector<std::string>{"z2"});

    // d(t2) = v_0 z2 + v_1 z1^3 + v_2, so those three classes sum to zero.
    REQUIRE(K.dim_at(1, 17) == 2);
    CHECK(K.cell(1, 17)->names == std::vector<std::string>{"v1 z1^3", "v0 z2"});
    FpCtx F(3);
    FpMatrix v2 = v_mult(K, 2, 0, 0);
    FpMatrix v1 = v_mult(K, 1, 0, 12);
    FpMatrix v0 = v_mult(K, 0, 0, 16);
    for (uint32_t r = 0; r < 2; ++r)
        CHECK(F.add(v2.get(r, 0), F.add(v1.get(r, 0), v0.get(r, 0))) == 0);
    bool nonzero = false;
    for (uint32_t r = 0; r < 2; ++r) nonzero |= v2.get(r, 0) != 0;
    CHECK(nonzero);

    // Chart output of the same cells.
    ExtChart chart = make_chart(K);
    bool saw = false;
    for (const auto& c : chart.cells) {
        if (c.s == 0 && c.t == 0) {
            saw = true;
            CHECK(c.gens == std::vector<std::string>{"1"});
            CHECK(c.v[2][0] == "2 v1 z1^3");
        }
    }
    CHECK(saw);
}

TEST_CASE("the Ext window is refused past the completeness bound") {
    auto m = own(build_a_mod_e(3, 2, 2, DegreeBound{30}));
    CHECK_THROWS_AS(koszul_ext(m, 2, 40), std::invalid_argument);
    CHECK_NOTHROW(koszul_ext(m, 2, 30));
}

TEST_CASE("cobar dims agree with the Koszul dims") {
    auto check_both = [](std::shared_ptr<const Comodule> m, int s_max, long long t_max) {
        KoszulExt K = koszul_ext(m, s_max, t_max);
        auto cb = cobar_ext_dims(m, s_max, t_max);
        for (int s = 0; s <= s_max; ++s)
            for (long long t = 0; t <= t_max; ++t) {
                auto it = cb.find({s, t});
                uint32_t c = it == cb.end() ? 0 : it->second;
                CHECK(K.dim_at(s, t) == c);
            }
    };
    check_both(own(trivial_comodule(3, 2, {{"1", 0}}, "S^0")), 3, 40);
    check_both(build_q_quotient(3, 0).q, 3, 40);
    for (long long j = 0; j <= 3; ++j) check_both(own(build_ell(3, j)), 3, 40);
}

TEST_CASE("cobar dims of the sphere count v-monomials") {
    auto sphere = own(trivial_comodule(3, 2, {{"1", 0}}, "S^0"));
    auto cb = cobar_ext_dims(sphere, 3, 30);
    for (int s = 0; s <= 3; ++s)
        for (long long t = 0; t <= 30; ++t) {
            auto it = cb.find({s, t});
            uint32_t c = it == cb.end() ? 0 : it->second;
            CHECK(c == poly_dim(3, 2, s, t));
        }
    CHECK_THROWS_AS(cobar_ext_dims(sphere, 3, 30, 10), std::runtime_error);
}

TEST_CASE("the v2 connecting map is appending t2") {
    CHECK(certify_v2_connecting(3, 3, 40) == "");
    CHECK(certify_v2_connecting(5, 2, 30) == "");
}

TEST_CASE("v_0-inverted Ext of N_2(j) is free on the weight-bounded z-monomials") {
    for (long long j : {0LL, 1LL, 4LL}) CHECK(v0_inverted_ext(3, j, 12, 30).matches_closed_form);

    LocalizedExt l3 = v0_inverted_ext(3, 3, 12, 30);
    CHECK(l3.matches_closed_form);
    CHECK(l3.detail == "");
    using G = std::pair<std::string, long long>;
    CHECK(l3.generators == std::vector<G>{{"1", 0}, {"z1", 4}, {"z1^2", 8}, {"z1^3", 12}, {"z2", 16}});

    // at j = 9, t3 enters and z3 is absorbed as a v_1 v_0^{-1}-multiple of z2^3
    LocalizedExt l9 = v0_inverted_ext(3, 9, 16, 50);
    CHECK(l9.matches_closed_form);
    CHECK(l9.generators.size() == 22);
    for (const auto& [name, deg] : l9.generators) CHECK(name.find("z3") == std::string::npos);

    CHECK(v0_inverted_ext(5, 2, 10, 20).matches_closed_form);
    CHECK_THROWS_AS(v0_inverted_ext(3, 9, 14, 40), std::invalid_argument);  // gens past stem_max
    CHECK_THROWS_AS(v0_inverted_ext(3, 9, 14, 50), std::invalid_argument);  // s_max cannot stabilize
}

TEST_CASE("Ext of M_1(k) climbs the Adams cover tower") {
    for (long long k : {0LL, 1LL, 3LL, 4LL, 6LL, 9LL}) {
        AdamsCoverReport r = adams_cover_check(3, k);
        CHECK(r.matches);
        CHECK(r.torsion.empty());
        CHECK(r.detail == "");
    }
    CHECK(adams_cover_check(3, 0).cover_index == 0);
    CHECK(adams_cover_check(3, 3).cover_index == 1);
    CHECK(adams_cover_check(3, 9).cover_index == 4);

    // k = 12 has honest v_0-torsion: z2^4 - z1^3 z3 dies, the pattern holds modulo it
    AdamsCoverReport r12 = adams_cover_check(3, 12);
    CHECK(r12.matches);
    CHECK(r12.cover_index == 5);
    REQUIRE(!r12.torsion.empty());
    CHECK(r12.torsion.front() == std::tuple<int, long long, uint32_t>{0, 64, 1});

    AdamsCoverReport r5 = adams_cover_check(5, 5);
    CHECK(r5.matches);
    CHECK(r5.cover_index == 1);
}
