#include "core/fpmatrix.h"

#include <algorithm>
#include <stdexcept>

namespace coops {

void FpMatrix::set(uint32_t r, uint32_t c, uint32_t v) {
    if (r >= rows || c >= cols) throw std::out_of_range("FpMatrix::set out of range");
    auto& es = row[r].e;
    auto it = std::lower_bound(es.begin(), es.end(), c,
                               [](const auto& a, uint32_t col) { return a.first < col; });
    if (it != es.end() && it->first == c) {
        if (v == 0) {
            es.erase(it);
        } else {
            it->second = v;
        }
    } else if (v != 0) {
        es.insert(it, {c, v});
    }
}

RowReduced row_reduce(const FpCtx& F, const FpMatrix& A) {
    std::vector<SparseVec> work = A.row;
    std::vector<bool> used(A.rows, false);
    std::vector<SparseVec> pivots;
    std::vector<uint32_t> pivot_cols;

    for (uint32_t col = 0; col < A.cols; ++col) {
        // Lowest original row index among unused rows with a nonzero in col.
        int sel = -1;
        for (uint32_t r = 0; r < A.rows; ++r) {
            if (used[r] || work[r].zero()) continue;
            if (work[r].lead() == col) {
                sel = static_cast<int>(r);
                break;
            }
        }
        if (sel < 0) continue;
        used[sel] = true;
        SparseVec piv = scale(F, F.inv(work[sel].lead_coeff()), work[sel]);
        // Eliminate col from every other row, used or not (full RREF).
        for (uint32_t r = 0; r < A.rows; ++r) {
            if (static_cast<int>(r) == sel || work[r].zero()) continue;
            uint32_t c = coeff_of(work[r], col);
            if (c != 0) work[r] = axpy(F, F.neg(c), piv, work[r]);
        }
        for (auto& pr : pivots) {
            uint32_t c = coeff_of(pr, col);
            if (c != 0) pr = axpy(F, F.neg(c), piv, pr);
        }
        pivots.push_back(std::move(piv));
        pivot_cols.push_back(col);
        work[sel].e.clear();
    }

    RowReduced out;
    out.rank = static_cast<uint32_t>(pivots.size());
    out.pivot_cols = pivot_cols;
    out.rref.rows = out.rank;
    out.rref.cols = A.cols;
    out.rref.row = std::move(pivots);
    out.pivot_row_of_col.assign(A.cols, -1);
    for (uint32_t i = 0; i < out.rank; ++i) out.pivot_row_of_col[pivot_cols[i]] = static_cast<int>(i);
    return out;
}

std::vector<SparseVec> kernel_basis(const FpCtx& F, const FpMatrix& A) {
    RowReduced rr = row_reduce(F, A);
    std::vector<SparseVec> basis;
    for (uint32_t c = 0; c < A.cols; ++c) {
        if (rr.pivot_row_of_col[c] >= 0) continue;
        // x_c = 1, x_{pivot col} = -rref[pivot row][c].
        SparseVec v;
        for (uint32_t i = 0; i < rr.rank; ++i) {
            uint32_t coef = coeff_of(rr.rref.row[i], c);
            if (coef != 0) v.e.emplace_back(rr.pivot_cols[i], F.neg(coef));
        }
        v.e.emplace_back(c, 1);
        std::sort(v.e.begin(), v.e.end());
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<SparseVec> preimage(const FpCtx& F, const FpMatrix& A, const SparseVec& b) {
    // Reduce the augmented system deterministically.
    FpMatrix aug(A.rows, A.cols + 1);
    aug.row = A.row;
    for (uint32_t r = 0; r < A.rows; ++r) {
        uint32_t c = coeff_of(b, r);
        if (c != 0) aug.row[r].e.emplace_back(A.cols, c);
    }
    RowReduced rr = row_reduce(F, aug);
    SparseVec x;
    for (uint32_t i = 0; i < rr.rank; ++i) {
        uint32_t pc = rr.pivot_cols[i];
        if (pc == A.cols) return std::nullopt;  // row (0 ... 0 | 1): inconsistent
        uint32_t rhs = coeff_of(rr.rref.row[i], A.cols);
        if (rhs != 0) x.e.emplace_back(pc, rhs);
    }
    return x;
}

SparseVec apply(const FpCtx& F, const FpMatrix& A, const SparseVec& x) {
    SparseVec y;
    for (uint32_t r = 0; r < A.rows; ++r) {
        uint64_t acc = 0;
        size_t i = 0, j = 0;
        const auto& re = A.row[r].e;
        const auto& xe = x.e;
        while (i < re.size() && j < xe.size()) {
            if (re[i].first < xe[j].first) {
                ++i;
            } else if (xe[j].first < re[i].first) {
                ++j;
            } else {
                acc += static_cast<uint64_t>(re[i].second) * xe[j].second % F.p;
                ++i;
                ++j;
            }
        }
        uint32_t v = static_cast<uint32_t>(acc % F.p);
        if (v != 0) y.e.emplace_back(r, v);
    }
    return y;
}

FpMatrix mat_mul(const FpCtx& F, const FpMatrix& A, const FpMatrix& B) {
    if (A.cols != B.rows) throw std::invalid_argument("mat_mul shape mismatch");
    FpMatrix C(A.rows, B.cols);
    for (uint32_t r = 0; r < A.rows; ++r) {
        SparseVec acc;
        for (const auto& [k, a] : A.row[r].e) acc = axpy(F, a, B.row[k], acc);
        C.row[r] = std::move(acc);
    }
    return C;
}

std::vector<SparseVec> matrix_columns(const FpMatrix& A) {
    std::vector<SparseVec> cols(A.cols);
    for (uint32_t r = 0; r < A.rows; ++r)
        for (const auto& [c, v] : A.row[r].e) cols[c].e.emplace_back(r, v);
    return cols;
}

bool is_zero(const FpMatrix& A) {
    for (const auto& r : A.row)
        if (!r.zero()) return false;
    return true;
}

uint32_t rank(const FpCtx& F, const FpMatrix& A) { return row_reduce(F, A).rank; }

SparseVec EchelonSpan::reduce(const FpCtx& F, SparseVec v) const {
    for (const auto& [piv, r] : rows) {
        if (v.zero()) break;
        uint32_t c = coeff_of(v, piv);
        if (c != 0) v = axpy(F, F.neg(c), r, v);
    }
    return v;
}

bool EchelonSpan::insert(const FpCtx& F, SparseVec v) {
    v = reduce(F, v);
    if (v.zero()) return false;
    v = scale(F, F.inv(v.lead_coeff()), v);
    uint32_t piv = v.lead();
    // Back-substitute into existing rows so the basis stays fully reduced.
    for (auto& [q, r] : rows) {
        (void)q;
        uint32_t c = coeff_of(r, piv);
        if (c != 0) r = axpy(F, F.neg(c), v, r);
    }
    auto it = std::lower_bound(rows.begin(), rows.end(), piv,
                               [](const auto& a, uint32_t b) { return a.first < b; });
    rows.insert(it, {piv, std::move(v)});
    return true;
}

std::vector<uint32_t> HomologySlot::classify(const FpCtx& F, const SparseVec& v) const {
    SparseVec r = image.reduce(F, v);
    std::vector<uint32_t> coords(reps.size(), 0);
    for (size_t k = 0; k < reps.size(); ++k) {
        uint32_t a = coeff_of(r, reps[k].lead());
        if (!a) continue;
        coords[k] = a;
        r = axpy(F, F.neg(a), reps[k], r);
    }
    if (!r.zero()) throw std::logic_error("vector is not a cycle modulo the image");
    return coords;
}

HomologySlot homology_slot(const FpCtx& F, const FpMatrix& down, const FpMatrix& up) {
    HomologySlot h;
    EchelonSpan all;
    for (const auto& col : matrix_columns(up)) {
        h.image.insert(F, col);
        all.insert(F, col);
    }
    for (const auto& k : kernel_basis(F, down)) {
        SparseVec r = all.reduce(F, k);
        if (r.zero()) continue;
        if (r.lead_coeff() != 1) r = scale(F, F.inv(r.lead_coeff()), r);
        all.insert(F, r);
        h.reps.push_back(std::move(r));
    }
    return h;
}

}  // namespace coops
