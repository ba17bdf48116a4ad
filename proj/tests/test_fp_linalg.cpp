#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "core/fpmatrix.h"

using namespace coops;

namespace {

FpMatrix from_dense(const std::vector<std::vector<int>>& d, const FpCtx& F) {
    FpMatrix A(static_cast<uint32_t>(d.size()), d.empty() ? 0 : static_cast<uint32_t>(d[0].size()));
    for (uint32_t r = 0; r < A.rows; ++r)
        for (uint32_t c = 0; c < A.cols; ++c) A.set(r, c, F.norm(d[r][c]));
    return A;
}

SparseVec vec(const std::vector<int>& d, const FpCtx& F) {
    SparseVec v;
    for (uint32_t i = 0; i < d.size(); ++i) {
        uint32_t c = F.norm(d[i]);
        if (c != 0) v.e.emplace_back(i, c);
    }
    return v;
}

}  // namespace

TEST_CASE("prime validation") {
    CHECK(is_odd_prime(3));
    CHECK(is_odd_prime(5));
    CHECK(is_odd_prime(13));
    CHECK_FALSE(is_odd_prime(2));
    CHECK_FALSE(is_odd_prime(9));
    CHECK_FALSE(is_odd_prime(1));
    CHECK_THROWS_AS(FpCtx(2), std::invalid_argument);
    CHECK_THROWS_AS(FpCtx(15), std::invalid_argument);
}

TEST_CASE("field arithmetic") {
    FpCtx F(13);
    CHECK(F.add(7, 9) == 3);
    CHECK(F.sub(2, 5) == 10);
    CHECK(F.mul(7, 9) == 11);
    CHECK(F.neg(0) == 0);
    for (uint32_t a = 1; a < 13; ++a) CHECK(F.mul(a, F.inv(a)) == 1);
    CHECK_THROWS_AS(F.inv(0), std::invalid_argument);
    CHECK(F.norm(-1) == 12);
    CHECK(F.norm(-26) == 0);
}

TEST_CASE("rank, kernel and preimage on the 2x2 example over F_3") {
    FpCtx F(3);
    FpMatrix A = from_dense({{1, 2}, {2, 1}}, F);

    RowReduced rr = row_reduce(F, A);
    CHECK(rr.rank == 1);
    REQUIRE(rr.pivot_cols.size() == 1);
    CHECK(rr.pivot_cols[0] == 0);

    auto ker = kernel_basis(F, A);
    REQUIRE(ker.size() == 1);
    CHECK(ker[0] == vec({1, 1}, F));

    auto x = preimage(F, A, vec({1, 2}, F));
    REQUIRE(x.has_value());
    CHECK(*x == vec({1, 0}, F));
    CHECK(apply(F, A, *x) == vec({1, 2}, F));
}

TEST_CASE("inconsistent systems report no preimage") {
    FpCtx F(3);
    FpMatrix A = from_dense({{1, 2}, {2, 1}}, F);
    // (1, 1) is not in the column span of A: columns are multiples of (1, 2).
    CHECK_FALSE(preimage(F, A, vec({1, 1}, F)).has_value());
}

TEST_CASE("rank-nullity and preimage consistency on random matrices") {
    for (uint32_t p : {3u, 5u, 7u}) {
        FpCtx F(p);
        std::mt19937 rng(20260819 + p);
        for (int trial = 0; trial < 40; ++trial) {
            uint32_t m = 1 + rng() % 8, n = 1 + rng() % 8;
            FpMatrix A(m, n);
            for (uint32_t r = 0; r < m; ++r)
                for (uint32_t c = 0; c < n; ++c)
                    if (rng() % 3 == 0) A.set(r, c, rng() % p);

            RowReduced rr = row_reduce(F, A);
            auto ker = kernel_basis(F, A);
            CHECK(rr.rank + ker.size() == n);
            for (const auto& k : ker) CHECK(apply(F, A, k).zero());

            // RREF is idempotent.
            RowReduced rr2 = row_reduce(F, rr.rref);
            CHECK(rr2.rank == rr.rank);
            CHECK(rr2.rref.row == rr.rref.row);

            // Any image vector has a preimage that maps back onto it.
            SparseVec x;
            for (uint32_t c = 0; c < n; ++c)
                if (rng() % 2) x.e.emplace_back(c, 1 + rng() % (p - 1));
            SparseVec b = apply(F, A, x);
            auto y = preimage(F, A, b);
            REQUIRE(y.has_value());
            CHECK(apply(F, A, *y) == b);
        }
    }
}

TEST_CASE("echelon span maintains canonical representatives") {
    FpCtx F(3);
    EchelonSpan S;
    CHECK(S.insert(F, vec({1, 2, 0}, F)));
    CHECK(S.insert(F, vec({0, 1, 1}, F)));
    CHECK_FALSE(S.insert(F, vec({1, 0, 1}, F)));  // = row1 - 2*row2 over F_3
    CHECK(S.dim() == 2);
    CHECK(S.contains(F, vec({1, 1, 2}, F)));  // row1 + 2*row2
    CHECK_FALSE(S.contains(F, vec({0, 0, 1}, F)));

    // Representatives are independent of insertion order.
    EchelonSpan T;
    T.insert(F, vec({0, 1, 1}, F));
    T.insert(F, vec({1, 0, 1}, F));
    SparseVec probe = vec({2, 2, 1}, F);
    CHECK(S.reduce(F, probe) == T.reduce(F, probe));
}

TEST_CASE("deterministic pivot selection prefers low column then low row") {
    FpCtx F(5);
    // Both rows have a nonzero in column 0; row 0 must be the pivot row,
    // and eliminating it empties column 1 of row 1 ((1,3,1) - (1,3,0)).
    FpMatrix A = from_dense({{2, 1, 0}, {1, 3, 1}}, F);
    RowReduced rr = row_reduce(F, A);
    REQUIRE(rr.rank == 2);
    CHECK(rr.pivot_cols == std::vector<uint32_t>{0, 2});
    // Leading coefficients are normalized to 1.
    CHECK(rr.rref.row[0].lead_coeff() == 1);
    CHECK(rr.rref.row[1].lead_coeff() == 1);
}
