/* C interface to the comodule engine: opaque session handle, status codes,
 * and text-producing calls. Every output buffer is NUL-terminated, allocated
 * with malloc, and owned by the caller; release it with coops_buffer_free.
 * Sessions are not thread-safe; use one per thread. */
#ifndef COOPS_H
#define COOPS_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct coops_session coops_session;

typedef enum coops_status {
    COOPS_OK = 0,
    COOPS_EINVAL = 1,    /* unknown target, bad flag value, malformed input */
    COOPS_EDOMAIN = 2,   /* window outside the truncation-safe range */
    COOPS_EDISAGREE = 3, /* dual-engine or golden-file comparison found differences */
    COOPS_EVERIFY = 4,   /* a verification check failed */
    COOPS_EINTERNAL = 5, /* engine invariant violated; see coops_last_error */
} coops_status;

/* Human-readable name of a status code ("ok", "invalid argument", ...). */
const char* coops_status_str(coops_status st);

/* p must be an odd prime. t_max is the default degree cap for targets that
 * need one (pass a nonnegative value or -1 for unset). threads >= 1.
 * Returns NULL only on allocation failure or non-prime p. */
coops_session* coops_session_new(uint32_t p, long long t_max, int threads);
void coops_session_free(coops_session* s);

/* Message describing the last failed call on this session, or "" if none. */
const char* coops_last_error(const coops_session* s);

void coops_buffer_free(char* buf);

/* Targets are strings:
 *   "fp"          the trivial comodule F_p over E(2)*
 *   "ell:J"       the weight <= pJ piece of A//E(1), over E(2)*
 *   "m2:K"        the exact-weight-pK piece of A//E(2), over E(2)*
 *   "bp2:J"       the weight <= pJ piece of A//E(2), over E(2)*
 *   "qquot:J"     the filtration quotient of A//E(1) by weight > pJ, over E(2)*
 *   "a-mod-en:N"  A//E(N) over E(N)*, truncated at the session t_max
 */

/* Basis element names, one per line, in (degree, lex) order. */
coops_status coops_basis(coops_session* s, const char* target, char** out);

/* Margolis homology dims of Q_i as "t<TAB>dim" lines for t in [0, hi],
 * where hi = session t_max minus the degree of Q_i for degree-truncated
 * targets (weight-bounded targets are exact, so hi = t_max). Requires a
 * nonnegative session t_max; 0 <= i <= 2. */
coops_status coops_margolis(coops_session* s, const char* target, int i, char** out);

/* Ext chart over the window s <= s_max, t <= t_max.
 * engine: "koszul", "cobar" (dims only), or "both" (koszul chart after the
 * two engines are compared; on disagreement returns COOPS_EDISAGREE and a
 * diff listing in *out). format: "tsv", "json", or "svg". */
coops_status coops_ext_chart(coops_session* s, const char* target, const char* engine,
                             int s_max, long long t_max, const char* format, char** out);

/* The inductive generator tables for rows m <= m_max, rendered as text into
 * *table_out. When golden_path is non-NULL and non-empty, diffs the render
 * against that file: *report_out gets "flagged<TAB>..." / "delta<TAB>..."
 * lines, and any delta makes the status COOPS_EDISAGREE. Either output
 * pointer may be NULL when the caller does not need it. */
coops_status coops_table(coops_session* s, long long m_max, const char* golden_path,
                         char** table_out, char** report_out);

/* Runs a verification suite: "hopf", "sequences", "splitting", "tables",
 * or "all". j_max bounds the indexed checks; data_dir locates golden files
 * (may be "" when the suite needs none). *out gets one
 * "STATUS<TAB>name<TAB>seconds<TAB>detail" line per check; *n_failed gets
 * the number of failed checks. Returns COOPS_EVERIFY when any check fails. */
coops_status coops_verify(coops_session* s, const char* suite, long long j_max,
                          const char* data_dir, int* n_failed, char** out);

/* Versioned on-disk text cache under COOPS_CACHE_DIR (or ~/.cache/coops).
 * coops_cache_get returns COOPS_OK and fills *out on a hit; a miss returns
 * COOPS_EINVAL with *out = NULL. Both calls are best-effort. */
coops_status coops_cache_get(const char* key, char** out);
coops_status coops_cache_put(const char* key, const char* payload);

#ifdef __cplusplus
}
#endif

#endif /* COOPS_H */
