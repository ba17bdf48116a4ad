#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <climits>

#include "core/comodule.h"

using namespace coops;

namespace {

int id_of(const Comodule& M, const std::string& name) {
    for (uint32_t i = 0; i < M.elems.size(); ++i)
        if (M.elems[i].name == name) return static_cast<int>(i);
    return -1;
}

Element q_of(const FpCtx& F, const Comodule& M, int i, uint32_t x) {
    Element e;
    for (const auto& term : M.coact[x])
        if (term.taus == (1u << i)) el_add_term(F, e, M.elems[term.target].mono, term.c);
    return e;
}

}  // namespace

TEST_CASE("A//E(2) over E(2): Q_i on generators and products") {
    FpCtx F(3);
    Comodule M = build_a_mod_e(3, 2, 2, DegreeBound{60});
    CHECK(M.dim_at(0) == 1);
    CHECK(M.elems[0].name == "1");
    CHECK(M.complete_through == 60);

    int t3 = M.find_mono(parse_mono("t3"));
    REQUIRE(t3 >= 0);
    CHECK(M.elems[t3].deg == 53);
    CHECK(el_str(q_of(F, M, 0, t3), 3) == "z3");
    CHECK(el_str(q_of(F, M, 1, t3), 3) == "z2^3");
    CHECK(el_str(q_of(F, M, 2, t3), 3) == "z1^9");

    int z1t3 = M.find_mono(parse_mono("z1 t3"));
    REQUIRE(z1t3 >= 0);
    CHECK(M.elems[z1t3].deg == 57);
    CHECK(el_str(q_of(F, M, 2, z1t3), 3) == "z1^10");

    // Q matrices land in the right slices.
    FpMatrix q2 = M.q_matrix(2, 57);
    CHECK(q2.cols == M.dim_at(57));
    CHECK(q2.rows == M.dim_at(40));
    int z1_10 = M.find_mono(parse_mono("z1^10"));
    REQUIRE(z1_10 >= 0);
    CHECK(q2.get(M.elems[z1_10].pos, M.elems[z1t3].pos) == 1);
}

TEST_CASE("Leibniz signs: Q_1 of t1 t2 in A//E(0)") {
    FpCtx F(3);
    Comodule M = build_a_mod_e(3, 0, 2, DegreeBound{30});
    int x = M.find_mono(parse_mono("t1 t2"));
    REQUIRE(x >= 0);
    CHECK(M.elems[x].deg == 22);
    CHECK(el_str(q_of(F, M, 1, x), 3) == "2 z1^3 t1 + t2");
    CHECK(el_str(q_of(F, M, 0, x), 3) == "z1 t2 + 2 z2 t1");
    CHECK(el_str(q_of(F, M, 2, x), 3) == "2 t1");
}

TEST_CASE("weight-bounded pieces are exact and correctly enumerated") {
    Comodule ell3 = build_a_mod_e(3, 1, 1, WeightBound{9, false}, "ell_3");
    CHECK(ell3.total_dim() == 6);
    CHECK(ell3.complete_through == LLONG_MAX);
    const char* names[] = {"1", "z1", "z1^2", "z1^3", "z2", "t2"};
    for (int i = 0; i < 6; ++i) CHECK(ell3.elems[i].name == names[i]);
    CHECK(ell3.label == "ell_3");

    // Exact-weight piece of the z1-free part: wt = 27 over E(1).
    std::vector<Monomial> monos;
    for (const auto& m : basis_of_weight(AlgebraSpec{3, Flavor::AModEn, 2}, 27, true))
        if (m.ze_at(1) == 0) monos.push_back(m);
    Comodule w = comodule_from_monomials(3, 2, 1, monos, "W_2(3)", LLONG_MAX);
    CHECK(w.total_dim() == 3);
    CHECK(w.elems[0].name == "z2^3");
    CHECK(w.elems[1].name == "z3");
    CHECK(w.elems[2].name == "t3");

    // Q_0 homology is spanned by z2^3, Q_1 homology by z3.
    auto h0 = margolis_homology(w, 0, 0, 60);
    auto h1 = margolis_homology(w, 1, 0, 60);
    long long t0 = -1, t1 = -1;
    uint32_t d0 = 0, d1 = 0;
    for (const auto& s : h0) {
        d0 += s.dim;
        if (s.dim) t0 = s.t;
    }
    for (const auto& s : h1) {
        d1 += s.dim;
        if (s.dim) t1 = s.t;
    }
    CHECK(d0 == 1);
    CHECK(t0 == 48);
    CHECK(d1 == 1);
    CHECK(t1 == 52);

    // All of it in exterior length zero.
    for (const auto& s : margolis_homology_by_length(w, 0, 0, 60))
        if (s.dim) CHECK(s.len == 0);
}

TEST_CASE("Margolis homology of A//E(2) matches the closed forms") {
    Comodule M = build_a_mod_e(3, 2, 2, DegreeBound{60});

    // H(Q_0) = F_3[z1, z2, ...]; below degree 41 only z1, z2 contribute.
    auto h0 = margolis_homology(M, 0, 0, 40, 2);
    for (const auto& s : h0) {
        uint32_t expect = 0;
        for (long long b = 0; 16 * b <= s.t; ++b)
            if ((s.t - 16 * b) % 4 == 0) ++expect;
        CHECK(s.dim == expect);
    }

    // H(Q_1) = F_3[z1] (x) T_1(z2, z3, ...): exponents of z2 below 3.
    auto h1 = margolis_homology(M, 1, 0, 40, 2);
    for (const auto& s : h1) {
        uint32_t expect = 0;
        for (long long b = 0; b < 3 && 16 * b <= s.t; ++b)
            if ((s.t - 16 * b) % 4 == 0) ++expect;
        CHECK(s.dim == expect);
    }

    // H(Q_2) = T_2(z1, z2, ...): exponents below 9.
    auto h2 = margolis_homology(M, 2, 0, 40, 2);
    for (const auto& s : h2) {
        uint32_t expect = 0;
        for (long long b = 0; b < 9 && 16 * b <= s.t; ++b) {
            long long r = s.t - 16 * b;
            if (r % 4 == 0 && r / 4 < 9) ++expect;
        }
        CHECK(s.dim == expect);
    }

    // The windows must respect the completeness bound.
    CHECK_THROWS(margolis_homology(M, 2, 0, 50));
}

TEST_CASE("sub and quotient comodules") {
    FpCtx F(3);
    Comodule M = build_a_mod_e(3, 0, 0, WeightBound{3, false});
    CHECK(M.total_dim() == 3);  // 1, z1, t1
    int one = id_of(M, "1"), z1 = id_of(M, "z1"), t1 = id_of(M, "t1");
    REQUIRE(one >= 0);
    REQUIRE(z1 >= 0);
    REQUIRE(t1 >= 0);

    std::vector<SparseVec> sub = {SparseVec::unit(one), SparseVec::unit(z1)};
    Comodule S = sub_comodule(M, sub, "poly part");
    CHECK(S.total_dim() == 2);
    CHECK(S.monomial_basis);
    CHECK(S.find_mono(parse_mono("z1")) >= 0);

    Comodule Q = quotient_comodule(M, sub, "top cell");
    CHECK(Q.total_dim() == 1);
    CHECK(Q.elems[0].name == "t1");
    CHECK(Q.coact[0].size() == 1);  // only the counit term survives

    // t1 alone does not span a subcomodule: its coaction hits z1.
    CHECK_THROWS(sub_comodule(M, {SparseVec::unit(t1)}, "bad"));
    CHECK_THROWS(quotient_comodule(M, {SparseVec::unit(t1)}, "bad"));

    // Non-homogeneous spans are rejected.
    SparseVec mixed = add(F, SparseVec::unit(one), SparseVec::unit(z1));
    CHECK_THROWS(sub_comodule(M, {mixed}, "bad"));
}

TEST_CASE("tensor square with Koszul signs") {
    FpCtx F(3);
    Comodule M = build_a_mod_e(3, 0, 0, WeightBound{3, false});
    Comodule T = tensor_comodule(M, M, "M (x) M");
    CHECK(T.total_dim() == 9);
    CHECK(!T.monomial_basis);

    int tt = id_of(T, "t1 (x) t1");
    REQUIRE(tt >= 0);
    CHECK(T.elems[tt].deg == 10);
    CHECK(T.elems[tt].len == 2);

    // Q_0(t1 (x) t1) = z1 (x) t1 - t1 (x) z1.
    int zt = id_of(T, "z1 (x) t1");
    int tz = id_of(T, "t1 (x) z1");
    REQUIRE(zt >= 0);
    REQUIRE(tz >= 0);
    std::map<uint32_t, uint32_t> col;
    for (const auto& term : T.coact[tt])
        if (term.taus == 1u) col[term.target] = term.c;
    CHECK(col.size() == 2);
    CHECK(col[zt] == 1);
    CHECK(col[tz] == 2);
}

TEST_CASE("corestriction agrees with building over the smaller coalgebra") {
    Comodule big = build_a_mod_e(3, 2, 2, DegreeBound{40});
    Comodule r = restrict_coalgebra(big, 0);
    Comodule direct = build_a_mod_e(3, 2, 0, DegreeBound{40});
    REQUIRE(r.total_dim() == direct.total_dim());
    for (uint32_t i = 0; i < r.elems.size(); ++i) {
        CHECK(r.elems[i].name == direct.elems[i].name);
        CHECK(r.coact[i] == direct.coact[i]);
    }
    CHECK(r.n == 0);
}

TEST_CASE("comodule maps: identity, multiplication, and violations") {
    FpCtx F(3);
    Comodule ell3 = build_a_mod_e(3, 1, 1, WeightBound{9, false}, "ell_3");

    ComoduleMap idmap;
    idmap.src = &ell3;
    idmap.dst = &ell3;
    idmap.shift = 0;
    for (const auto& [t, ids] : ell3.by_deg) {
        FpMatrix m(static_cast<uint32_t>(ids.size()), static_cast<uint32_t>(ids.size()));
        for (uint32_t i = 0; i < ids.size(); ++i) m.set(i, i, 1);
        idmap.mat[t] = m;
    }
    std::string why;
    CHECK(check_comodule_map(F, idmap, &why));

    // Killing t2 while keeping z2 breaks naturality.
    ComoduleMap bad = idmap;
    int t2 = id_of(ell3, "t2");
    REQUIRE(t2 >= 0);
    bad.mat[ell3.elems[t2].deg] = FpMatrix(1, 1);
    CHECK(!check_comodule_map(F, bad, &why));
    CHECK(why.find("t2") != std::string::npos);

    ComoduleMap odd;
    odd.src = &ell3;
    odd.dst = &ell3;
    odd.shift = 5;
    CHECK(!check_comodule_map(F, odd, &why));
    CHECK(why.find("odd") != std::string::npos);

    // Multiplication by z1^3 embeds the weight-9 piece into the weight-18 one.
    Comodule m13 = build_a_mod_e(3, 1, 1, WeightBound{9, true}, "M_1(3)");
    Comodule m16 = build_a_mod_e(3, 1, 1, WeightBound{18, true}, "M_1(6)");
    ComoduleMap mul;
    mul.src = &m13;
    mul.dst = &m16;
    mul.shift = 12;
    for (const auto& [t, ids] : m13.by_deg) {
        FpMatrix m(m16.dim_at(t + 12), static_cast<uint32_t>(ids.size()));
        for (uint32_t i = 0; i < ids.size(); ++i) {
            auto prod = mul_mono(m13.elems[ids[i]].mono, Monomial::zgen(1, 3));
            REQUIRE(prod.has_value());
            int tgt = m16.find_mono(prod->first);
            REQUIRE(tgt >= 0);
            m.set(m16.elems[tgt].pos, i, 1);
        }
        mul.mat[t] = m;
    }
    CHECK(check_comodule_map(F, mul, &why));
}

TEST_CASE("monomial sets whose coaction escapes are rejected") {
    CHECK_THROWS(comodule_from_monomials(3, 1, 1, {parse_mono("t2")}, "bad", LLONG_MAX));
}

#include "core/splitting.h"

TEST_CASE("closed-form Margolis oracle matches the computed homology") {
    Comodule M3 = build_a_mod_e(3, 2, 2, DegreeBound{60});
    for (int i = 0; i <= 2; ++i) {
        auto h = margolis_homology(M3, i, 0, 40, 2);
        for (const auto& s : h) CHECK(s.dim == margolis_closed_form_dim(3, 2, i, s.t));
    }
    Comodule M5 = build_a_mod_e(5, 1, 1, DegreeBound{60});
    for (int i = 0; i <= 1; ++i) {
        auto h = margolis_homology(M5, i, 0, 50);
        for (const auto& s : h) CHECK(s.dim == margolis_closed_form_dim(5, 1, i, s.t));
    }
}

TEST_CASE("length closure splits off a free summand") {
    // In A//E(0) up to weight 27 the closure of everything of length >= 1
    // leaves only the unit in the quotient.
    Comodule M = build_a_mod_e(3, 0, 0, WeightBound{27, false});
    SplittingReport rep = split_off_q_closure(M, 1, "S", "Q");
    CHECK(rep.s.total_dim() + rep.q.total_dim() == M.total_dim());
    CHECK(rep.q.total_dim() == 1);
    CHECK(rep.q.elems[0].name == "1");
    CHECK(rep.s_margolis_trivial);

    // No length-3 monomial of A//E(2) exists below degree 699.
    Comodule A = build_a_mod_e(3, 2, 2, DegreeBound{80});
    SplittingReport sq = split_s_q(A);
    CHECK(sq.s.total_dim() == 0);
    CHECK(sq.q.total_dim() == A.total_dim());
    CHECK(sq.s_margolis_trivial);
}

TEST_CASE("length-2 closure over E(1) is free where visible") {
    Comodule M = build_a_mod_e(3, 2, 1, DegreeBound{222});
    SplittingReport rep = split_sprime_qbar(M);
    CHECK(rep.s.total_dim() == 12);  // three length-2 generators, free of rank 3
    CHECK(rep.s.total_dim() + rep.q.total_dim() == M.total_dim());
    CHECK(rep.s_margolis_trivial);
    CHECK(rep.window_hi == 217);
}

TEST_CASE("weight pieces of the z1-free part") {
    Comodule R = build_r(3, 40);
    CHECK(R.find_mono(parse_mono("z2")) >= 0);
    CHECK(R.find_mono(parse_mono("z1")) == -1);

    Comodule w0 = weight_piece_w2(R, 0);
    CHECK(w0.total_dim() == 1);

    Comodule w1 = weight_piece_w2(R, 1);
    CHECK(w1.total_dim() == 1);
    CHECK(w1.elems[0].name == "z2");

    // k = 4 has base-3 digits (1, 1): Q_0 homology on z2^4, Q_1 on z2 z3.
    Comodule w4 = weight_piece_w2(R, 4);
    auto h0 = margolis_homology(w4, 0, 0, 80);
    auto h1 = margolis_homology(w4, 1, 0, 80);
    uint32_t d0 = 0, d1 = 0;
    long long t0 = -1, t1 = -1;
    for (const auto& s : h0)
        if (s.dim) {
            d0 += s.dim;
            t0 = s.t;
        }
    for (const auto& s : h1)
        if (s.dim) {
            d1 += s.dim;
            t1 = s.t;
        }
    CHECK(d0 == 1);
    CHECK(t0 == 64);
    CHECK(d1 == 1);
    CHECK(t1 == 68);

    CHECK_THROWS(weight_piece_w2(R, 10));
}
