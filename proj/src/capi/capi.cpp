#include <coops/coops.h>

#include <cstdlib>
#include <cstring>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>

#include "core/browngitler.h"
#include "core/cache.h"
#include "core/chartio.h"
#include "core/cobar.h"
#include "core/comodule.h"
#include "core/fp.h"
#include "core/inductive.h"
#include "core/koszul.h"
#include "core/verify.h"

struct coops_session {
    uint32_t p = 3;
    long long t_max = -1;
    int threads = 1;
    std::string last_error;
};

namespace {

using namespace coops;

char* dup_out(const std::string& s) {
    char* buf = static_cast<char*>(std::malloc(s.size() + 1));
    if (buf) std::memcpy(buf, s.c_str(), s.size() + 1);
    return buf;
}

// Runs fn, translating exceptions into status codes and last_error.
template <class Fn>
coops_status guarded(coops_session* s, Fn&& fn) {
    if (!s) return COOPS_EINVAL;
    s->last_error.clear();
    try {
        return fn();
    } catch (const std::invalid_argument& e) {
        s->last_error = e.what();
        return COOPS_EINVAL;
    } catch (const std::domain_error& e) {
        s->last_error = e.what();
        return COOPS_EDOMAIN;
    } catch (const std::logic_error& e) {
        s->last_error = e.what();
        return COOPS_EINTERNAL;
    } catch (const std::runtime_error& e) {
        s->last_error = e.what();
        return COOPS_EDOMAIN;
    } catch (const std::exception& e) {
        s->last_error = e.what();
        return COOPS_EINTERNAL;
    }
}

// "name" or "name:ARG" with a decimal ARG.
bool split_target(const std::string& t, std::string& name, long long& arg, bool& has_arg) {
    size_t colon = t.find(':');
    if (colon == std::string::npos) {
        name = t;
        has_arg = false;
        return !name.empty();
    }
    name = t.substr(0, colon);
    std::string rest = t.substr(colon + 1);
    if (name.empty() || rest.empty()) return false;
    for (size_t i = 0; i < rest.size(); ++i)
        if (!isdigit(static_cast<unsigned char>(rest[i])) && !(i == 0 && rest[i] == '-'))
            return false;
    arg = std::strtoll(rest.c_str(), nullptr, 10);
    has_arg = true;
    return true;
}

std::shared_ptr<Comodule> build_target(coops_session* s, const char* target) {
    if (!target) throw std::invalid_argument("missing target");
    std::string name;
    long long arg = 0;
    bool has_arg = false;
    if (!split_target(target, name, arg, has_arg))
        throw std::invalid_argument(std::string("malformed target: ") + target);

    auto need_arg = [&](const char* what) {
        if (!has_arg)
            throw std::invalid_argument(std::string(what) + " needs an index, e.g. \"" + name +
                                        ":3\"");
    };
    if (name == "fp") {
        return std::make_shared<Comodule>(
            trivial_comodule(s->p, 2, {{"1", 0}}, "F_" + std::to_string(s->p)));
    }
    if (name == "ell") {
        need_arg("ell");
        return std::make_shared<Comodule>(build_ell(s->p, arg));
    }
    if (name == "m2") {
        need_arg("m2");
        return std::make_shared<Comodule>(build_bg(s->p, 2, arg, BgKind::M).c);
    }
    if (name == "bp2") {
        need_arg("bp2");
        return std::make_shared<Comodule>(build_bg(s->p, 2, arg, BgKind::N).c);
    }
    if (name == "qquot") {
        need_arg("qquot");
        return build_q_quotient(s->p, arg).q;
    }
    if (name == "a-mod-en") {
        need_arg("a-mod-en");
        if (arg < 0) throw std::invalid_argument("a-mod-en needs n >= 0");
        if (s->t_max < 0)
            throw std::invalid_argument("a-mod-en is degree-truncated; the session needs t_max");
        return std::make_shared<Comodule>(
            build_a_mod_e(s->p, static_cast<int>(arg), static_cast<int>(arg),
                          DegreeBound{s->t_max}));
    }
    throw std::invalid_argument("unknown target: " + name);
}

ExtChart chart_from_dims(const Comodule& mod, int s_max, long long t_max,
                         const std::map<std::pair<int, long long>, uint32_t>& dims) {
    ExtChart c;
    c.p = mod.p;
    c.n = mod.n;
    c.module = mod.label;
    c.s_max = s_max;
    c.t_max = t_max;
    for (const auto& [st, d] : dims) {
        if (!d) continue;
        ExtChart::Cell cell;
        cell.s = st.first;
        cell.t = st.second;
        cell.dim = d;
        c.cells.push_back(std::move(cell));
    }
    return c;
}

std::string render_chart(const ExtChart& chart, const std::string& format) {
    if (format == "tsv") return chart_tsv(chart);
    if (format == "json") return chart_json(chart);
    if (format == "svg") return chart_svg(chart);
    throw std::invalid_argument("unknown format: " + format + " (expected tsv, json, svg)");
}

}  // namespace

extern "C" {

const char* coops_status_str(coops_status st) {
    switch (st) {
        case COOPS_OK: return "ok";
        case COOPS_EINVAL: return "invalid argument";
        case COOPS_EDOMAIN: return "window out of range";
        case COOPS_EDISAGREE: return "comparison found differences";
        case COOPS_EVERIFY: return "verification failed";
        case COOPS_EINTERNAL: return "internal invariant violated";
    }
    return "unknown status";
}

coops_session* coops_session_new(uint32_t p, long long t_max, int threads) {
    if (!is_odd_prime(p)) return nullptr;
    auto* s = new (std::nothrow) coops_session;
    if (!s) return nullptr;
    s->p = p;
    s->t_max = t_max < 0 ? -1 : t_max;
    s->threads = threads < 1 ? 1 : threads;
    return s;
}

void coops_session_free(coops_session* s) { delete s; }

const char* coops_last_error(const coops_session* s) {
    return s ? s->last_error.c_str() : "";
}

void coops_buffer_free(char* buf) { std::free(buf); }

coops_status coops_basis(coops_session* s, const char* target, char** out) {
    return guarded(s, [&]() -> coops_status {
        if (!out) throw std::invalid_argument("out must not be NULL");
        *out = dup_out(basis_text(*build_target(s, target)));
        return *out ? COOPS_OK : COOPS_EINTERNAL;
    });
}

coops_status coops_margolis(coops_session* s, const char* target, int i, char** out) {
    return guarded(s, [&]() -> coops_status {
        if (!out) throw std::invalid_argument("out must not be NULL");
        if (i < 0 || i > 2) throw std::invalid_argument("q index must be 0, 1, or 2");
        if (s->t_max < 0) throw std::invalid_argument("margolis needs a session t_max");
        std::shared_ptr<Comodule> mod = build_target(s, target);
        long long hi = s->t_max;
        long long qdeg = mod->qi_degree(i);
        if (mod->complete_through < hi + qdeg) hi = mod->complete_through - qdeg;
        if (hi < 0) throw std::domain_error("t_max is below the degree of Q_i");
        *out = dup_out(margolis_text(margolis_homology(*mod, i, 0, hi, s->threads)));
        return *out ? COOPS_OK : COOPS_EINTERNAL;
    });
}

coops_status coops_ext_chart(coops_session* s, const char* target, const char* engine,
                             int s_max, long long t_max, const char* format, char** out) {
    return guarded(s, [&]() -> coops_status {
        if (!out) throw std::invalid_argument("out must not be NULL");
        if (s_max < 0 || t_max < 0) throw std::invalid_argument("window must be nonnegative");
        std::string eng = engine ? engine : "koszul";
        std::string fmt = format ? format : "tsv";
        std::shared_ptr<Comodule> mod = build_target(s, target);
        if (t_max > mod->complete_through)
            throw std::domain_error("t_max exceeds the module's completeness bound");

        if (eng == "cobar") {
            auto dims = cobar_ext_dims(mod, s_max, t_max);
            *out = dup_out(render_chart(chart_from_dims(*mod, s_max, t_max, dims), fmt));
            return *out ? COOPS_OK : COOPS_EINTERNAL;
        }
        if (eng != "koszul" && eng != "both")
            throw std::invalid_argument("unknown engine: " + eng +
                                        " (expected koszul, cobar, both)");

        KoszulExt K = koszul_ext(mod, s_max, t_max, s->threads);
        if (eng == "both") {
            auto dims = cobar_ext_dims(mod, s_max, t_max);
            std::string diff;
            for (int sd = 0; sd <= s_max; ++sd)
                for (long long td = 0; td <= t_max; ++td) {
                    auto it = dims.find({sd, td});
                    uint32_t want = it == dims.end() ? 0 : it->second;
                    uint32_t got = K.dim_at(sd, td);
                    if (got != want)
                        diff += std::to_string(sd) + "\t" + std::to_string(td) + "\tkoszul=" +
                                std::to_string(got) + "\tcobar=" + std::to_string(want) + "\n";
                }
            if (!diff.empty()) {
                s->last_error = "koszul and cobar dimensions disagree";
                *out = dup_out("s\tt\tkoszul\tcobar disagreements\n" + diff);
                return COOPS_EDISAGREE;
            }
        }
        *out = dup_out(render_chart(make_chart(K), fmt));
        return *out ? COOPS_OK : COOPS_EINTERNAL;
    });
}

coops_status coops_table(coops_session* s, long long m_max, const char* golden_path,
                         char** table_out, char** report_out) {
    return guarded(s, [&]() -> coops_status {
        if (table_out) *table_out = nullptr;
        if (report_out) *report_out = nullptr;
        InductiveTable table = build_inductive_table(s->p, m_max);
        std::string text;
        for (const std::string& line : table.render()) {
            text += line;
            text += '\n';
        }
        if (table_out && !(*table_out = dup_out(text))) return COOPS_EINTERNAL;

        if (!golden_path || !*golden_path) return COOPS_OK;
        std::string golden;
        {
            FILE* f = std::fopen(golden_path, "rb");
            if (!f) throw std::invalid_argument(std::string("cannot read golden file: ") +
                                                golden_path);
            char buf[4096];
            size_t n;
            while ((n = std::fread(buf, 1, sizeof buf, f)) > 0) golden.append(buf, n);
            std::fclose(f);
        }
        TableDiff diff = diff_against_golden(table.render(), golden);
        std::string report;
        for (const std::string& fl : diff.flagged) report += "flagged\t" + fl + "\n";
        for (const std::string& dl : diff.deltas) report += "delta\t" + dl + "\n";
        if (report_out && !(*report_out = dup_out(report))) return COOPS_EINTERNAL;
        if (!diff.clean()) {
            s->last_error = "computed tables differ from the golden file";
            return COOPS_EDISAGREE;
        }
        return COOPS_OK;
    });
}

coops_status coops_verify(coops_session* s, const char* suite, long long j_max,
                          const char* data_dir, int* n_failed, char** out) {
    return guarded(s, [&]() -> coops_status {
        if (!out) throw std::invalid_argument("out must not be NULL");
        if (!suite) throw std::invalid_argument("missing suite");
        VerifyReport r = run_suite(suite, s->p, j_max, data_dir ? data_dir : "");
        int failed = 0;
        for (const CheckLine& l : r.lines)
            if (l.status == CheckLine::FAIL) ++failed;
        if (n_failed) *n_failed = failed;
        *out = dup_out(r.render());
        if (!*out) return COOPS_EINTERNAL;
        if (failed) {
            s->last_error = std::to_string(failed) + " checks failed";
            return COOPS_EVERIFY;
        }
        return COOPS_OK;
    });
}

coops_status coops_cache_get(const char* key, char** out) {
    if (!key || !out) return COOPS_EINVAL;
    *out = nullptr;
    auto hit = cache_get(key);
    if (!hit) return COOPS_EINVAL;
    *out = dup_out(*hit);
    return *out ? COOPS_OK : COOPS_EINTERNAL;
}

coops_status coops_cache_put(const char* key, const char* payload) {
    if (!key || !payload) return COOPS_EINVAL;
    return cache_put(key, payload) ? COOPS_OK : COOPS_EINVAL;
}

}  // extern "C"
