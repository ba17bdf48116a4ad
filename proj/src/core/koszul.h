#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "comodule.h"

namespace coops {

// Koszul complex computing Ext over E(n)* with coefficients in a comodule M:
//   C^{s,t} = span{ x (x) v_0^{e_0}..v_n^{e_n} : sum e_i = s,
//                   deg(x) + sum e_i (2p^i - 1) = t },
//   d(x (x) v^E) = sum_i Q_i(x) (x) v_i v^E,
// with no signs. Degrees t are displayed degrees (module suspension included).

// One basis element of a slice: v-exponent tuple and module element id.
struct KoszulBasisElem {
    std::vector<uint32_t> ve;  // ve[i] = exponent of v_i, size n + 1
    uint32_t id = 0;           // module element
};

struct KoszulCell {
    uint32_t dim = 0;
    EchelonSpan image;         // im d^{s-1,t} in slice coordinates
    std::vector<SparseVec> reps;  // homology reps, reduced against image and each other
    std::vector<std::string> names;  // leading basis element of each rep
};

struct KoszulExt {
    std::shared_ptr<const Comodule> mod;
    int s_max = 0;
    long long t_max = 0;

    // Slice bases keyed by (s, t), ordered by (v-exponents lex, element id).
    std::map<std::pair<int, long long>, std::vector<KoszulBasisElem>> basis;
    std::map<std::pair<int, long long>, KoszulCell> cells;

    uint32_t slice_dim(int s, long long t) const;
    uint32_t dim_at(int s, long long t) const;
    const KoszulCell* cell(int s, long long t) const;

    // Index of (ve, id) in the (s, t) slice; throws if absent.
    uint32_t slice_index(int s, long long t, const std::vector<uint32_t>& ve, uint32_t id) const;

    // Coordinates of the cycle v in homology at (s, t). Throws if v is not a
    // cycle modulo the image (the reps span homology, so this is internal).
    std::vector<uint32_t> classify(int s, long long t, const SparseVec& v) const;
};

// Builds the complex for 0 <= s <= s_max, 0 <= t <= t_max and takes homology.
// Verifies d . d = 0 on the whole window and throws std::logic_error if not.
// Throws std::invalid_argument when t_max runs past the completeness bound.
KoszulExt koszul_ext(std::shared_ptr<const Comodule> mod, int s_max, long long t_max,
                     int threads = 1);

// Matrix of v_i-multiplication Ext^{s,t} -> Ext^{s+1,t+2p^i-1} in homology
// coordinates. Throws std::out_of_range when the target is outside the window.
FpMatrix v_mult(const KoszulExt& k, int i, int s, long long t);

// Torsion order of each generator under each v_i. order = r means v_i^r kills
// the generator's cyclic tower; FREE means the tower reaches the window edge
// after at least `margin` steps; UNDECIDED means the edge came too soon.
struct TorsionLine {
    int s = 0;
    long long t = 0;
    std::string name;
    enum Kind { ORDER, FREE, UNDECIDED };
    Kind kind[3] = {UNDECIDED, UNDECIDED, UNDECIDED};
    int order[3] = {0, 0, 0};
};
std::vector<TorsionLine> torsion_report(const KoszulExt& k, int margin = 3);

// Chart of a computed window: per-cell dims, generator names, and where each
// generator goes under v_0, v_1, v_2 ("0" if killed, "?" if out of window).
struct ExtChart {
    uint32_t p = 0;
    int n = 0;
    std::string module;
    int s_max = 0;
    long long t_max = 0;
    struct Cell {
        int s = 0;
        long long t = 0;
        uint32_t dim = 0;
        std::vector<std::string> gens;
        std::vector<std::vector<std::string>> v;  // v[i][g], i <= n
    };
    std::vector<Cell> cells;  // sorted by (s, t), zero cells omitted
};
ExtChart make_chart(const KoszulExt& k, bool with_v = true);

}  // namespace coops
