#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "core/fp.h"

namespace coops {

// Sparse vector over F_p: entries sorted by index, coefficients nonzero.
struct SparseVec {
    std::vector<std::pair<uint32_t, uint32_t>> e;

    bool zero() const { return e.empty(); }

    static SparseVec unit(uint32_t i, uint32_t c = 1) {
        SparseVec v;
        if (c != 0) v.e.emplace_back(i, c);
        return v;
    }

    // Index of the leading (lowest-index) entry; vector must be nonzero.
    uint32_t lead() const { return e.front().first; }
    uint32_t lead_coeff() const { return e.front().second; }

    bool operator==(const SparseVec& o) const { return e == o.e; }
};

inline uint32_t coeff_of(const SparseVec& v, uint32_t i) {
    for (const auto& [idx, c] : v.e) {
        if (idx == i) return c;
        if (idx > i) break;
    }
    return 0;
}

// c*x + y, merged in index order.
inline SparseVec axpy(const FpCtx& F, uint32_t c, const SparseVec& x, const SparseVec& y) {
    SparseVec r;
    if (c == 0) return y;
    r.e.reserve(x.e.size() + y.e.size());
    size_t i = 0, j = 0;
    while (i < x.e.size() || j < y.e.size()) {
        if (j == y.e.size() || (i < x.e.size() && x.e[i].first < y.e[j].first)) {
            r.e.emplace_back(x.e[i].first, F.mul(c, x.e[i].second));
            ++i;
        } else if (i == x.e.size() || y.e[j].first < x.e[i].first) {
            r.e.push_back(y.e[j]);
            ++j;
        } else {
            uint32_t s = F.add(F.mul(c, x.e[i].second), y.e[j].second);
            if (s != 0) r.e.emplace_back(x.e[i].first, s);
            ++i;
            ++j;
        }
    }
    return r;
}

inline SparseVec scale(const FpCtx& F, uint32_t c, const SparseVec& x) {
    SparseVec r;
    if (c == 0) return r;
    r.e.reserve(x.e.size());
    for (const auto& [idx, v] : x.e) r.e.emplace_back(idx, F.mul(c, v));
    return r;
}

inline SparseVec add(const FpCtx& F, const SparseVec& x, const SparseVec& y) {
    return axpy(F, 1, x, y);
}

}  // namespace coops
