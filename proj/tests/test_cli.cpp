// Spawns the CLI binary and checks the documented command surface.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the CLI via the shell; stderr is dropped unless merge_stderr.
RunResult run(const std::string& args, bool merge_stderr = false, const std::string& env = "") {
    std::string cmd = env + " \"" + COOPS_CLI_PATH + "\" " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    RunResult r;
    FILE* f = popen(cmd.c_str(), "r");
    REQUIRE(f != nullptr);
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
    int st = pclose(f);
    r.exit_code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string data_dir_flag() { return std::string("--data-dir \"") + COOPS_DATA_DIR + "\""; }

}  // namespace

TEST_CASE("basis commands print the documented lists") {
    RunResult r = run("basis --ell 3 -p 3 --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\nz1\nz1^2\nz1^3\nz2\nt2\n");

    r = run("basis --ell 0 -p 3 --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out == "1\n");

    r = run("basis --m2 18 -p 3 --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("z1^9 z3\n") != std::string::npos);

    r = run("basis --bp2 4 -p 3 --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("z2\n") != std::string::npos);
}

TEST_CASE("usage errors exit nonzero with nothing on stdout") {
    RunResult r = run("basis --ell 3 --m2 1 -p 3 --no-cache");
    CHECK(r.exit_code == 2);
    CHECK(r.out.empty());

    r = run("basis -p 3 --no-cache");
    CHECK(r.exit_code == 2);

    r = run("basis --ell 3 -p 4 --no-cache");
    CHECK(r.exit_code == 2);

    r = run("margolis --a-mod-en 2 --q 0 -p 3 --no-cache");  // missing --tmax
    CHECK(r.exit_code == 2);

    r = run("frobnicate");
    CHECK(r.exit_code != 0);
}

TEST_CASE("margolis matches the closed form for A//E(2)") {
    RunResult r = run("margolis --a-mod-en 2 --q 0 -p 3 --tmax 40 --no-cache");
    CHECK(r.exit_code == 0);
    // H(Q_0) = F_3[z1, z2]: dims 1 at 0, 4, 8, ... and at 16, 20, ...
    CHECK(r.out.substr(0, 4) == "0\t1\n");
    CHECK(r.out.find("\n4\t1\n") != std::string::npos);
    CHECK(r.out.find("\n16\t2\n") != std::string::npos);  // z1^4 and z2
    CHECK(r.out.find("\n20\t2\n") != std::string::npos);  // z1^5 and z1 z2
    CHECK(r.out.find("\n1\t0\n") != std::string::npos);
    size_t lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 40);
}

TEST_CASE("ext dual engine run agrees and renders all formats") {
    RunResult r = run("ext --ell 3 -p 3 --engine both --smax 3 --tmax 40 --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, r.out.find('\n')) == "s\tt\tdim\tgenerators");

    r = run("ext --fp -p 3 --smax 3 --tmax 30 --format svg --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out.substr(0, 4) == "<svg");

    r = run("ext --fp -p 3 --smax 3 --tmax 30 --format json --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"prime\": 3") != std::string::npos);
}

TEST_CASE("ext table run regenerates and diffs the tabulation") {
    RunResult r = run("ext --table 5.2 -p 3 --jmax 9 " + data_dir_flag() + " --no-cache");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("== S^108 l_9 ==") != std::string::npos);

    RunResult merged =
        run("ext --table 5.2 -p 3 --jmax 9 " + data_dir_flag() + " --no-cache", true);
    CHECK(merged.exit_code == 0);
    CHECK(merged.out.find("flagged\t") != std::string::npos);
    CHECK(merged.out.find("delta\t") == std::string::npos);

    r = run("ext --table 9.9 -p 3 --no-cache");
    CHECK(r.exit_code == 2);
}

TEST_CASE("verify suite exits by outcome and reports per check") {
    RunResult r = run("verify --suite sequences -p 3 --jmax 1 --no-cache " + data_dir_flag());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("PASS\t") != std::string::npos);
    CHECK(r.out.find("FAIL\t") == std::string::npos);
}

TEST_CASE("output is byte-identical across runs, thread counts, and caching") {
    std::string margolis_cmd = "margolis --a-mod-en 2 --q 1 -p 3 --tmax 60";
    RunResult a = run(margolis_cmd + " --no-cache --threads 1");
    RunResult b = run(margolis_cmd + " --no-cache --threads 3");
    CHECK(a.exit_code == 0);
    CHECK(a.out == b.out);

    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "coops_cli_cache";
    fs::remove_all(dir);
    std::string env = "COOPS_CACHE_DIR=\"" + dir.string() + "\"";
    RunResult cold = run(margolis_cmd, false, env);   // fills the cache
    RunResult warm = run(margolis_cmd, false, env);   // reads it back
    CHECK(cold.exit_code == 0);
    CHECK(warm.exit_code == 0);
    CHECK(cold.out == a.out);
    CHECK(warm.out == a.out);
    CHECK(fs::exists(dir));  // the cache was actually written
    fs::remove_all(dir);
}

TEST_CASE("out directory receives the emitted files") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "coops_cli_out";
    fs::remove_all(dir);
    RunResult r = run("basis --ell 3 -p 3 --no-cache --out \"" + dir.string() + "\"");
    CHECK(r.exit_code == 0);
    CHECK(fs::exists(dir / "basis_ell3_p3.txt"));
    std::FILE* f = fopen((dir / "basis_ell3_p3.txt").string().c_str(), "rb");
    REQUIRE(f != nullptr);
    char buf[256];
    size_t n = fread(buf, 1, sizeof buf, f);
    fclose(f);
    CHECK(std::string(buf, n) == r.out);
    fs::remove_all(dir);
}
