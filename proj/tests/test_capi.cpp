// Exercises the C interface through the public header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <coops/coops.h>

#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct Session {
    coops_session* s;
    explicit Session(uint32_t p = 3, long long t_max = -1, int threads = 1)
        : s(coops_session_new(p, t_max, threads)) {}
    ~Session() { coops_session_free(s); }
};

struct Buf {
    char* b = nullptr;
    ~Buf() { coops_buffer_free(b); }
    std::string str() const { return b ? b : ""; }
};

}  // namespace

TEST_CASE("session creation validates the prime") {
    CHECK(coops_session_new(4, -1, 1) == nullptr);
    CHECK(coops_session_new(2, -1, 1) == nullptr);
    Session s(5);
    REQUIRE(s.s != nullptr);
    CHECK(std::string(coops_last_error(s.s)) == "");
    coops_session_free(nullptr);
    coops_buffer_free(nullptr);
}

TEST_CASE("status strings name every code") {
    CHECK(std::string(coops_status_str(COOPS_OK)) == "ok");
    CHECK(std::string(coops_status_str(COOPS_EINVAL)) == "invalid argument");
    CHECK(std::string(coops_status_str(COOPS_EDISAGREE)) == "comparison found differences");
}

TEST_CASE("basis output matches the documented lists") {
    Session s;
    Buf out;
    REQUIRE(coops_basis(s.s, "ell:3", &out.b) == COOPS_OK);
    CHECK(out.str() == "1\nz1\nz1^2\nz1^3\nz2\nt2\n");

    Buf one;
    REQUIRE(coops_basis(s.s, "ell:0", &one.b) == COOPS_OK);
    CHECK(one.str() == "1\n");

    Buf m2;
    REQUIRE(coops_basis(s.s, "m2:18", &m2.b) == COOPS_OK);
    CHECK(m2.str().find("z1^9 z3\n") != std::string::npos);

    Buf q;
    REQUIRE(coops_basis(s.s, "qquot:2", &q.b) == COOPS_OK);
    CHECK(q.str().find("t2\n") != std::string::npos);
}

TEST_CASE("bad targets report invalid argument") {
    Session s;
    Buf out;
    CHECK(coops_basis(s.s, "nope:3", &out.b) == COOPS_EINVAL);
    CHECK(std::string(coops_last_error(s.s)).find("unknown target") != std::string::npos);
    CHECK(coops_basis(s.s, "ell", &out.b) == COOPS_EINVAL);
    CHECK(coops_basis(s.s, "a-mod-en:2", &out.b) == COOPS_EINVAL);  // no session t_max
    CHECK(std::string(coops_last_error(s.s)).find("t_max") != std::string::npos);
}

TEST_CASE("margolis output is t-dim lines over the safe window") {
    Session s(3, 40);
    Buf out;
    REQUIRE(coops_margolis(s.s, "a-mod-en:2", 0, &out.b) == COOPS_OK);
    std::string txt = out.str();
    CHECK(txt.substr(0, 4) == "0\t1\n");
    size_t lines = 0;
    for (char c : txt)
        if (c == '\n') ++lines;
    CHECK(lines == 40);  // t in [0, 39]: the cap retreats by the degree of Q_0

    Buf fp;
    REQUIRE(coops_margolis(s.s, "fp", 2, &fp.b) == COOPS_OK);
    CHECK(fp.str().substr(0, 4) == "0\t1\n");

    Buf bad;
    CHECK(coops_margolis(s.s, "a-mod-en:2", 7, &bad.b) == COOPS_EINVAL);
    Session no_cap(3, -1);
    CHECK(coops_margolis(no_cap.s, "fp", 0, &bad.b) == COOPS_EINVAL);
}

TEST_CASE("ext chart formats and the dual-engine comparison") {
    Session s;
    Buf tsv;
    REQUIRE(coops_ext_chart(s.s, "ell:3", "both", 3, 40, "tsv", &tsv.b) == COOPS_OK);
    CHECK(tsv.str().substr(0, tsv.str().find('\n')) == "s\tt\tdim\tgenerators");

    Buf json;
    REQUIRE(coops_ext_chart(s.s, "fp", "koszul", 3, 30, "json", &json.b) == COOPS_OK);
    CHECK(json.str().front() == '{');
    CHECK(json.str().find("\"prime\": 3") != std::string::npos);

    Buf svg;
    REQUIRE(coops_ext_chart(s.s, "fp", "koszul", 3, 30, "svg", &svg.b) == COOPS_OK);
    CHECK(svg.str().substr(0, 4) == "<svg");

    Buf cb;
    REQUIRE(coops_ext_chart(s.s, "ell:1", "cobar", 2, 20, "tsv", &cb.b) == COOPS_OK);
    CHECK(cb.str().find("0\t0\t1") != std::string::npos);

    Buf bad;
    CHECK(coops_ext_chart(s.s, "ell:1", "magic", 2, 20, "tsv", &bad.b) == COOPS_EINVAL);
    CHECK(coops_ext_chart(s.s, "ell:1", "koszul", 2, 20, "pdf", &bad.b) == COOPS_EINVAL);

    Session capped(3, 20);
    CHECK(coops_ext_chart(capped.s, "a-mod-en:2", "koszul", 2, 30, "tsv", &bad.b) ==
          COOPS_EDOMAIN);
}

TEST_CASE("table render and golden diff") {
    Session s;
    std::string golden = std::string(COOPS_DATA_DIR) + "/golden/inductive_table_p3.txt";
    Buf table, report;
    REQUIRE(coops_table(s.s, 9, golden.c_str(), &table.b, &report.b) == COOPS_OK);
    CHECK(table.str().find("== S^108 l_9 ==") != std::string::npos);
    std::string rep = report.str();
    size_t flags = 0;
    for (size_t pos = 0; (pos = rep.find("flagged\t", pos)) != std::string::npos; pos += 8)
        ++flags;
    CHECK(flags == 4);
    CHECK(rep.find("delta\t") == std::string::npos);

    Buf t2;
    REQUIRE(coops_table(s.s, 2, nullptr, &t2.b, nullptr) == COOPS_OK);
    CHECK(t2.str().find("l_0") != std::string::npos);

    Buf t3;
    CHECK(coops_table(s.s, 3, "/no/such/file", &t3.b, nullptr) == COOPS_EINVAL);
}

TEST_CASE("verify runs a fast suite through the C surface") {
    Session s;
    int failed = -1;
    Buf out;
    REQUIRE(coops_verify(s.s, "sequences", 1, "", &failed, &out.b) == COOPS_OK);
    CHECK(failed == 0);
    CHECK(out.str().find("PASS\t") != std::string::npos);
    CHECK(out.str().find("FAIL\t") == std::string::npos);

    Buf bad;
    CHECK(coops_verify(s.s, "everything", 1, "", &failed, &bad.b) == COOPS_EINVAL);
}

TEST_CASE("cache calls round-trip through the C surface") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "coops_capi_cache";
    fs::remove_all(dir);
    setenv("COOPS_CACHE_DIR", dir.string().c_str(), 1);

    Buf miss;
    CHECK(coops_cache_get("capi|k", &miss.b) == COOPS_EINVAL);
    CHECK(miss.b == nullptr);
    CHECK(coops_cache_put("capi|k", "payload\n") == COOPS_OK);
    Buf hit;
    CHECK(coops_cache_get("capi|k", &hit.b) == COOPS_OK);
    CHECK(hit.str() == "payload\n");

    fs::remove_all(dir);
    unsetenv("COOPS_CACHE_DIR");
}
