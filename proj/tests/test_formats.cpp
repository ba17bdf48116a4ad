#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <memory>

#include <json.hpp>

#include "core/browngitler.h"
#include "core/cache.h"
#include "core/chartio.h"
#include "core/comodule.h"
#include "core/koszul.h"

using namespace coops;

TEST_CASE("basis text lists names in (degree, lex) order") {
    CHECK(basis_text(build_ell(3, 3)) == "1\nz1\nz1^2\nz1^3\nz2\nt2\n");
    CHECK(basis_text(build_ell(3, 0)) == "1\n");
}

TEST_CASE("margolis text is one t-dim pair per degree") {
    Comodule M = build_a_mod_e(3, 2, 2, DegreeBound{41});
    std::string txt = margolis_text(margolis_homology(M, 0, 0, 40));
    CHECK(txt.substr(0, 4) == "0\t1\n");
    size_t lines = 0;
    for (char c : txt)
        if (c == '\n') ++lines;
    CHECK(lines == 41);
    CHECK(txt.back() == '\n');
}

TEST_CASE("chart exports agree with the chart and parse back") {
    auto l1 = std::make_shared<Comodule>(build_ell(3, 1));
    KoszulExt K = koszul_ext(l1, 3, 30);
    ExtChart chart = make_chart(K);

    std::string tsv = chart_tsv(chart);
    CHECK(tsv.substr(0, tsv.find('\n')) == "s\tt\tdim\tgenerators");
    size_t rows = 0;
    for (char c : tsv)
        if (c == '\n') ++rows;
    CHECK(rows == chart.cells.size() + 1);

    nlohmann::json j = nlohmann::json::parse(chart_json(chart));
    CHECK(j["prime"] == 3);
    CHECK(j["window"]["s_max"] == 3);
    CHECK(j["window"]["t_max"] == 30);
    CHECK(j["cells"].size() == chart.cells.size());
    CHECK(j["cells"][0].contains("v0"));
    CHECK(j["cells"][0].contains("v2"));

    std::string svg = chart_svg(chart);
    CHECK(svg.substr(0, 4) == "<svg");
    CHECK(svg.find("<circle") != std::string::npos);
    CHECK(svg.rfind("</svg>\n") == svg.size() - 7);
}

TEST_CASE("chart text is identical across thread counts") {
    auto l2 = std::make_shared<Comodule>(build_ell(3, 2));
    std::string one = chart_tsv(make_chart(koszul_ext(l2, 3, 40, 1)));
    std::string four = chart_tsv(make_chart(koszul_ext(l2, 3, 40, 4)));
    CHECK(one == four);

    Comodule M = build_a_mod_e(3, 2, 2, DegreeBound{60});
    CHECK(margolis_text(margolis_homology(M, 1, 0, 50, 1)) ==
          margolis_text(margolis_homology(M, 1, 0, 50, 3)));
}

TEST_CASE("cache round trip honors the directory override") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "coops_cache_test";
    fs::remove_all(dir);
    setenv("COOPS_CACHE_DIR", dir.string().c_str(), 1);

    CHECK(cache_dir() == dir.string());
    CHECK(!cache_get("basis|ell:3|p=3").has_value());
    std::string payload = "1\nz1\nline with\ttab\n";
    CHECK(cache_put("basis|ell:3|p=3", payload));
    auto hit = cache_get("basis|ell:3|p=3");
    REQUIRE(hit.has_value());
    CHECK(*hit == payload);

    // a different key with the same payload is its own entry
    CHECK(!cache_get("basis|ell:4|p=3").has_value());

    // version or key mismatch inside the entry file reads as a miss
    char name[32];
    std::snprintf(name, sizeof name, "%016llx.json",
                  static_cast<unsigned long long>(fnv1a64("stale")));
    {
        std::ofstream f(dir / name);
        f << "{\"version\":\"coops-cache-0\",\"key\":\"stale\",\"payload\":\"x\"}";
    }
    CHECK(!cache_get("stale").has_value());

    // corrupt JSON reads as a miss
    std::snprintf(name, sizeof name, "%016llx.json",
                  static_cast<unsigned long long>(fnv1a64("broken")));
    {
        std::ofstream f(dir / name);
        f << "not json";
    }
    CHECK(!cache_get("broken").has_value());

    fs::remove_all(dir);
    unsetenv("COOPS_CACHE_DIR");
}
