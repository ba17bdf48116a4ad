#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/monomial.h"

namespace coops {

// One named generator of a table line. v2 generators carry their underlying
// monomial in `mono`; `deg` is the raw degree (plus 2p^2 - 1 for v2 ones).
struct TableGen {
    std::string name;
    Monomial mono;
    bool v2 = false;
    long long deg = 0;
    bool red = false;  // supports a hidden v_2-extension
    long long i2 = 0, i3 = 0;
};

struct TableLine {
    std::vector<long long> susps;  // one or more suspensions joined by +
    std::string label;             // "F_3", "l_1", "Q^2 A//E(1)", "l_1 (x) l_1", "l_0[1]"
    bool tensor = false;
    std::vector<std::string> lfac, rfac;  // tensor factor names
    std::vector<TableGen> gens;
    std::string render() const;
};

struct TableRow {
    long long m = 0;
    long long j = 0;  // m = pj + i for m >= p, else j = i = 0
    long long i = 0;
    long long susp = 0;  // q p m
    std::vector<TableLine> lines;
};

// The generator table of the inductive spectral sequences: one row per
// S^{qpm} ell_m, m <= m_max <= p^2. Q-summand generators are the monomials
// z1^a z2^{i2} z3^{i3} with a = pm - p i2 - p^2 i3 and i2 + p i3 <= pj - 1,
// red iff a < p^2; rows with i = 0 embed row j shifted by sigma, rows with
// i > 0 carry a leaf tensor line; the [1]-lines collect v_2-multiples of the
// red generators with a = p(p - K), K = 1 .. p-1-i, in cokernel summands
// suspended by phi(j, i + K).
struct InductiveTable {
    uint32_t p = 3;
    long long m_max = 0;
    std::vector<TableRow> rows;
    std::vector<std::string> render() const;  // headers and lines
};

InductiveTable build_inductive_table(uint32_t p, long long m_max);

// Diff of rendered lines against a golden text. Lines beginning with
// "#flag " annotate the next content line with a "golden -> computed" token
// replacement (or, for "#flag note ...", a standing annotation); a mismatch
// explained by pending replacements counts as flagged, anything else is a
// delta.
struct TableDiff {
    std::vector<std::string> flagged;
    std::vector<std::string> deltas;
    bool clean() const { return deltas.empty(); }
};
TableDiff diff_against_golden(const std::vector<std::string>& computed, const std::string& golden);

// The length-1 Koszul relation v_2 m + v_1 (z2^p m / z1^{p^2}) +
// v_0 (z3 m / z1^{p^2}) = 0 in Ext^1 of the exact-weight piece containing m,
// all coefficients +1. Usage error unless m is a z-monomial divisible by
// z1^{p^2}.
struct LengthRelation {
    Monomial m, m1, m2;
    long long deg = 0;  // raw degree of m
    bool holds = false;
    std::string detail;
};
LengthRelation check_length_relation(uint32_t p, const Monomial& m);

// Relations for every eligible Q-line generator of row m (z1-exponent at
// least p^2, equivalently the non-red ones).
std::vector<LengthRelation> length_relations_for_row(uint32_t p, long long m);

// Every non-v2 generator of row m must appear among the Koszul Ext^0
// representative names of M_2(pm) over E(2)* at its degree. Empty iff so.
std::string ext0_name_check(uint32_t p, long long m);

// Certifies one hidden v_2-extension of row m = pj + i: with E = im(f1)
// inside the four-term sequence at (j, i), the corestriction of v_2 [x]
// from Ext^1(ell_m) equals a nonzero multiple of the connecting image of
// the cokernel class [x t2], where x = z1^{i2} z2^{i3} matches the red
// generator g = z1^{p(p-K)} z2^{i2} z3^{i3}.
struct HiddenExtension {
    long long m = 0, K = 0, i3 = 0;
    std::string source;  // g
    std::string target;  // v2 g
    uint32_t unit = 0;   // c with r(v_2 [x]) = c delta([x t2])
    bool holds = false;
    std::string detail;
};
std::vector<HiddenExtension> hidden_extension_checks(uint32_t p, long long m);

}  // namespace coops
