#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "core/fpvec.h"

namespace coops {

// Sparse matrix over F_p, stored row-major, acting on column vectors:
// a rows x cols matrix maps F_p^cols -> F_p^rows.
struct FpMatrix {
    uint32_t rows = 0;
    uint32_t cols = 0;
    std::vector<SparseVec> row;

    FpMatrix() = default;
    FpMatrix(uint32_t r, uint32_t c) : rows(r), cols(c), row(r) {}

    void set(uint32_t r, uint32_t c, uint32_t v);
    uint32_t get(uint32_t r, uint32_t c) const { return coeff_of(row[r], c); }
};

struct RowReduced {
    // Reduced row echelon form: pivot rows first (ordered by pivot column),
    // zero rows dropped.
    FpMatrix rref;
    uint32_t rank = 0;
    std::vector<uint32_t> pivot_cols;        // ascending
    std::vector<int> pivot_row_of_col;       // col -> row in rref, or -1
};

// Deterministic RREF: pivots are chosen at the lowest unprocessed column,
// and among candidate rows the one with the lowest original row index.
RowReduced row_reduce(const FpCtx& F, const FpMatrix& A);

// Basis of { x : A x = 0 }, one vector per free column, ascending.
std::vector<SparseVec> kernel_basis(const FpCtx& F, const FpMatrix& A);

// A solution of A x = b with all free coordinates zero, or nullopt.
std::optional<SparseVec> preimage(const FpCtx& F, const FpMatrix& A, const SparseVec& b);

// y = A x.
SparseVec apply(const FpCtx& F, const FpMatrix& A, const SparseVec& x);

// C = A B (so C x = A (B x)).
FpMatrix mat_mul(const FpCtx& F, const FpMatrix& A, const FpMatrix& B);

bool is_zero(const FpMatrix& A);

// Columns of A as sparse vectors over the row index.
std::vector<SparseVec> matrix_columns(const FpMatrix& A);

uint32_t rank(const FpCtx& F, const FpMatrix& A);

// Incrementally maintained reduced echelon basis of a subspace of F_p^N.
// Rows are kept fully reduced against each other with unit leading
// coefficients, so reduce() yields canonical coset representatives.
struct EchelonSpan {
    // pivot index -> basis row with that leading index.
    std::vector<std::pair<uint32_t, SparseVec>> rows;  // sorted by pivot

    uint32_t dim() const { return static_cast<uint32_t>(rows.size()); }

    // Fully reduces v against the span (canonical representative of v's coset).
    SparseVec reduce(const FpCtx& F, SparseVec v) const;

    // Inserts v; returns true iff the dimension grew.
    bool insert(const FpCtx& F, SparseVec v);

    bool contains(const FpCtx& F, const SparseVec& v) const { return reduce(F, v).zero(); }
};

// Homology ker(down) / im(up) at one slot of a complex, with canonical
// representatives: cycles reduced against the image and each other.
struct HomologySlot {
    EchelonSpan image;
    std::vector<SparseVec> reps;
    uint32_t dim() const { return static_cast<uint32_t>(reps.size()); }
    // Coordinates of a cycle in the representative basis. Throws
    // std::logic_error if v is not a cycle modulo the image.
    std::vector<uint32_t> classify(const FpCtx& F, const SparseVec& v) const;
};
HomologySlot homology_slot(const FpCtx& F, const FpMatrix& down, const FpMatrix& up);

}  // namespace coops
