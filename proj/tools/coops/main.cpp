// coops: bases, Margolis homology, Ext charts, generator tables, and
// verification suites for comodules over exterior quotients of the dual
// Steenrod algebra at odd primes. Thin shell over the C API.
#include <coops/coops.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include <CLI11.hpp>

#ifndef COOPS_DATA_DIR
#define COOPS_DATA_DIR "data"
#endif

namespace {

struct Session {
    coops_session* s = nullptr;
    ~Session() { coops_session_free(s); }
};

struct Buffer {
    char* b = nullptr;
    ~Buffer() { coops_buffer_free(b); }
};

struct CommonOpts {
    uint32_t p = 3;
    long long t_max = -1;
    std::string out_dir;
    bool no_cache = false;
    int threads = 1;
    std::string data_dir = COOPS_DATA_DIR;
};

struct TargetOpts {
    long long ell = -1, m2 = -1, bp2 = -1, qquot = -1, a_mod_en = -1;
    bool fp = false;
};

void add_common(CLI::App* cmd, CommonOpts& c, bool with_tmax) {
    cmd->add_option("-p,--prime", c.p, "odd prime (default 3)");
    if (with_tmax) cmd->add_option("--tmax", c.t_max, "degree cap");
    cmd->add_option("--out", c.out_dir, "also write output files into this directory");
    cmd->add_flag("--no-cache", c.no_cache, "skip the on-disk cache");
    cmd->add_option("--threads", c.threads, "worker threads (default 1)");
    cmd->add_option("--data-dir", c.data_dir, "directory with bundled golden files");
}

void add_targets(CLI::App* cmd, TargetOpts& t) {
    cmd->add_option("--ell", t.ell, "the weight <= p j piece of A//E(1), over E(2)*");
    cmd->add_option("--m2", t.m2, "the exact-weight p k piece of A//E(2), over E(2)*");
    cmd->add_option("--bp2", t.bp2, "the weight <= p j piece of A//E(2), over E(2)*");
    cmd->add_option("--qquot", t.qquot, "the weight filtration quotient of A//E(1), over E(2)*");
    cmd->add_option("--a-mod-en", t.a_mod_en, "A//E(n) over E(n)*, degree-truncated at --tmax");
    cmd->add_flag("--fp", t.fp, "the trivial comodule F_p over E(2)*");
}

// Exactly one target flag must be set; returns "" and fills err otherwise.
std::string resolve_target(const TargetOpts& t, std::string& err) {
    int count = (t.ell >= 0) + (t.m2 >= 0) + (t.bp2 >= 0) + (t.qquot >= 0) + (t.a_mod_en >= 0) +
                (t.fp ? 1 : 0);
    if (count != 1) {
        err = "pass exactly one of --ell, --m2, --bp2, --qquot, --a-mod-en, --fp";
        return "";
    }
    if (t.fp) return "fp";
    if (t.ell >= 0) return "ell:" + std::to_string(t.ell);
    if (t.m2 >= 0) return "m2:" + std::to_string(t.m2);
    if (t.bp2 >= 0) return "bp2:" + std::to_string(t.bp2);
    if (t.qquot >= 0) return "qquot:" + std::to_string(t.qquot);
    return "a-mod-en:" + std::to_string(t.a_mod_en);
}

// "ell:3" -> "ell3", for file names.
std::string target_slug(const std::string& target) {
    std::string s;
    for (char c : target)
        if (c != ':') s += c == '-' ? '_' : c;
    return s;
}

int fail(coops_session* s, coops_status st) {
    std::fprintf(stderr, "error: %s: %s\n", coops_status_str(st), coops_last_error(s));
    return st == COOPS_EINVAL || st == COOPS_EDOMAIN ? 2 : 1;
}

bool write_file(const std::string& dir, const std::string& name, const std::string& text,
                std::string& err) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        err = "cannot create " + dir;
        return false;
    }
    std::ofstream f(dir + "/" + name, std::ios::binary);
    f << text;
    if (!f.good()) {
        err = "cannot write " + dir + "/" + name;
        return false;
    }
    return true;
}

// Emits the final text: stdout always, a file under --out when set.
int emit(const CommonOpts& c, const std::string& name, const std::string& text) {
    std::fputs(text.c_str(), stdout);
    if (!c.out_dir.empty()) {
        std::string err;
        if (!write_file(c.out_dir, name, text, err)) {
            std::fprintf(stderr, "error: %s\n", err.c_str());
            return 1;
        }
    }
    return 0;
}

// Wraps a computation in the text cache: on a hit the cached payload is
// emitted; on a miss compute() fills text and the result is stored.
template <class Fn>
int cached_emit(const CommonOpts& c, const std::string& key, const std::string& name,
                Fn&& compute) {
    if (!c.no_cache) {
        Buffer hit;
        if (coops_cache_get(key.c_str(), &hit.b) == COOPS_OK) return emit(c, name, hit.b);
    }
    std::string text;
    int rc = compute(text);
    if (rc) return rc;
    if (!c.no_cache) coops_cache_put(key.c_str(), text.c_str());
    return emit(c, name, text);
}

int run_basis(const CommonOpts& c, const TargetOpts& t) {
    std::string err, target = resolve_target(t, err);
    if (target.empty()) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }
    Session ses{coops_session_new(c.p, c.t_max, c.threads)};
    if (!ses.s) {
        std::fprintf(stderr, "error: p must be an odd prime\n");
        return 2;
    }
    std::string key = "coops-1|basis|" + target + "|p=" + std::to_string(c.p) +
                      "|tmax=" + std::to_string(c.t_max);
    return cached_emit(c, key, "basis_" + target_slug(target) + "_p" + std::to_string(c.p) + ".txt",
                       [&](std::string& text) {
                           Buffer out;
                           coops_status st = coops_basis(ses.s, target.c_str(), &out.b);
                           if (st != COOPS_OK) return fail(ses.s, st);
                           text = out.b;
                           return 0;
                       });
}

int run_margolis(const CommonOpts& c, const TargetOpts& t, int q) {
    std::string err, target = resolve_target(t, err);
    if (target.empty()) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }
    Session ses{coops_session_new(c.p, c.t_max, c.threads)};
    if (!ses.s) {
        std::fprintf(stderr, "error: p must be an odd prime\n");
        return 2;
    }
    std::string key = "coops-1|margolis|" + target + "|q=" + std::to_string(q) +
                      "|p=" + std::to_string(c.p) + "|tmax=" + std::to_string(c.t_max);
    return cached_emit(c, key,
                       "margolis_" + target_slug(target) + "_q" + std::to_string(q) + "_p" +
                           std::to_string(c.p) + ".tsv",
                       [&](std::string& text) {
                           Buffer out;
                           coops_status st = coops_margolis(ses.s, target.c_str(), q, &out.b);
                           if (st != COOPS_OK) return fail(ses.s, st);
                           text = out.b;
                           return 0;
                       });
}

int run_table(const CommonOpts& c, const std::string& table_id, long long j_max) {
    if (table_id != "5.2") {
        std::fprintf(stderr, "error: unknown table id: %s (the bundled tabulation is 5.2)\n",
                     table_id.c_str());
        return 2;
    }
    Session ses{coops_session_new(c.p, c.t_max, c.threads)};
    if (!ses.s) {
        std::fprintf(stderr, "error: p must be an odd prime\n");
        return 2;
    }
    std::string golden;
    if (c.p == 3) golden = c.data_dir + "/golden/inductive_table_p3.txt";
    Buffer table, report;
    coops_status st =
        coops_table(ses.s, j_max, golden.empty() ? nullptr : golden.c_str(), &table.b, &report.b);
    if (st != COOPS_OK && st != COOPS_EDISAGREE) return fail(ses.s, st);

    int rc = emit(c, "table_p" + std::to_string(c.p) + ".txt", table.b ? table.b : "");
    if (rc) return rc;
    std::string rep = report.b ? report.b : "";
    if (!rep.empty()) {
        std::fputs(rep.c_str(), stderr);
        if (!c.out_dir.empty()) {
            std::string werr;
            if (!write_file(c.out_dir, "table_report_p" + std::to_string(c.p) + ".txt", rep, werr)) {
                std::fprintf(stderr, "error: %s\n", werr.c_str());
                return 1;
            }
        }
    }
    if (st == COOPS_EDISAGREE) {
        std::fprintf(stderr, "error: computed tables differ from the bundled golden file\n");
        return 1;
    }
    return 0;
}

int run_ext(const CommonOpts& c, const TargetOpts& t, const std::string& engine, int s_max,
            long long t_max, const std::string& format, const std::string& table_id,
            long long j_max) {
    if (!table_id.empty()) return run_table(c, table_id, j_max);
    std::string err, target = resolve_target(t, err);
    if (target.empty()) {
        std::fprintf(stderr, "error: %s\n", err.c_str());
        return 2;
    }
    // a-mod-en needs a build bound; default it to the window edge
    long long session_tmax = c.t_max >= 0 ? c.t_max : t_max;
    Session ses{coops_session_new(c.p, session_tmax, c.threads)};
    if (!ses.s) {
        std::fprintf(stderr, "error: p must be an odd prime\n");
        return 2;
    }
    std::string ext = format == "json" ? ".json" : format == "svg" ? ".svg" : ".tsv";
    std::string key = "coops-1|ext|" + target + "|engine=" + engine + "|p=" + std::to_string(c.p) +
                      "|smax=" + std::to_string(s_max) + "|tmax=" + std::to_string(t_max) +
                      "|fmt=" + format + "|build=" + std::to_string(session_tmax);
    return cached_emit(
        c, key, "ext_" + target_slug(target) + "_p" + std::to_string(c.p) + ext,
        [&](std::string& text) {
            Buffer out;
            coops_status st = coops_ext_chart(ses.s, target.c_str(), engine.c_str(), s_max, t_max,
                                              format.c_str(), &out.b);
            if (st == COOPS_EDISAGREE) {
                std::fputs(out.b ? out.b : "", stderr);
                if (!c.out_dir.empty() && out.b) {
                    std::string werr;
                    write_file(c.out_dir, "ext_diff_" + target_slug(target) + ".tsv", out.b, werr);
                }
                std::fprintf(stderr, "error: koszul and cobar dimensions disagree\n");
                return 1;
            }
            if (st != COOPS_OK) return fail(ses.s, st);
            text = out.b;
            return 0;
        });
}

int run_verify(const CommonOpts& c, const std::string& suite, long long j_max) {
    Session ses{coops_session_new(c.p, c.t_max, c.threads)};
    if (!ses.s) {
        std::fprintf(stderr, "error: p must be an odd prime\n");
        return 2;
    }
    int n_failed = 0;
    Buffer out;
    coops_status st =
        coops_verify(ses.s, suite.c_str(), j_max, c.data_dir.c_str(), &n_failed, &out.b);
    if (st != COOPS_OK && st != COOPS_EVERIFY) return fail(ses.s, st);
    int rc = emit(c, "verify_" + suite + "_p" + std::to_string(c.p) + ".txt", out.b ? out.b : "");
    if (rc) return rc;
    if (st == COOPS_EVERIFY) {
        std::fprintf(stderr, "error: %d checks failed\n", n_failed);
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"comodule engine for A//E(n) at odd primes"};
    app.require_subcommand(1);
    int rc = 0;

    auto* basis = app.add_subcommand("basis", "print a basis, one element name per line");
    auto bc = std::make_shared<CommonOpts>();
    auto bt = std::make_shared<TargetOpts>();
    add_common(basis, *bc, true);
    add_targets(basis, *bt);
    basis->callback([&rc, bc, bt]() { rc = run_basis(*bc, *bt); });

    auto* margolis = app.add_subcommand("margolis", "Margolis homology dims, one t-dim line each");
    auto mc = std::make_shared<CommonOpts>();
    auto mt = std::make_shared<TargetOpts>();
    auto mq = std::make_shared<int>(0);
    add_common(margolis, *mc, true);
    add_targets(margolis, *mt);
    margolis->add_option("--q", *mq, "Margolis operator index (0, 1, or 2)");
    margolis->callback([&rc, mc, mt, mq]() { rc = run_margolis(*mc, *mt, *mq); });

    auto* ext = app.add_subcommand("ext", "Ext chart over E(n)*, or the generator tabulation");
    auto ec = std::make_shared<CommonOpts>();
    auto et = std::make_shared<TargetOpts>();
    auto engine = std::make_shared<std::string>("koszul");
    auto smax = std::make_shared<int>(4);
    auto etmax = std::make_shared<long long>(40);
    auto format = std::make_shared<std::string>("tsv");
    auto table_id = std::make_shared<std::string>();
    auto ejmax = std::make_shared<long long>(9);
    add_common(ext, *ec, false);
    add_targets(ext, *et);
    ext->add_option("--engine", *engine, "koszul, cobar, or both")
        ->check(CLI::IsMember({"koszul", "cobar", "both"}));
    ext->add_option("--smax", *smax, "filtration cap (default 4)");
    ext->add_option("--tmax", *etmax, "degree cap of the window (default 40)");
    ext->add_option("--format", *format, "tsv, json, or svg")
        ->check(CLI::IsMember({"tsv", "json", "svg"}));
    ext->add_option("--table", *table_id, "render the bundled generator tabulation (id 5.2)");
    ext->add_option("--jmax", *ejmax, "table rows to generate (default 9)");
    ext->callback([&rc, ec, et, engine, smax, etmax, format, table_id, ejmax]() {
        rc = run_ext(*ec, *et, *engine, *smax, *etmax, *format, *table_id, *ejmax);
    });

    auto* verify = app.add_subcommand("verify", "run a verification suite and report per check");
    auto vc = std::make_shared<CommonOpts>();
    auto suite = std::make_shared<std::string>("all");
    auto vjmax = std::make_shared<long long>(3);
    add_common(verify, *vc, true);
    verify->add_option("--suite", *suite, "hopf, sequences, splitting, tables, or all")
        ->check(CLI::IsMember({"hopf", "sequences", "splitting", "tables", "all"}));
    verify->add_option("--jmax", *vjmax, "bound for the indexed checks (default 3)");
    verify->callback([&rc, vc, suite, vjmax]() { rc = run_verify(*vc, *suite, *vjmax); });

    CLI11_PARSE(app, argc, argv);
    return rc;
}
