#include "core/splitting.h"

#include <algorithm>
#include <stdexcept>

namespace coops {

uint32_t margolis_closed_form_dim(uint32_t p, int n, int i, long long t) {
    if (t < 0) return 0;
    std::vector<long long> dp(static_cast<size_t>(t) + 1, 0);
    dp[0] = 1;
    long long pi = 1;
    for (int s = 0; s < i; ++s) pi *= p;
    long long pk = p;
    for (int k = 1; 2 * (pk - 1) <= t; ++k, pk *= p) {
        long long d = 2 * (pk - 1);
        long long cap = (k <= n - i) ? t / d : pi - 1;
        std::vector<long long> next(dp.size(), 0);
        for (long long s = 0; s <= t; ++s)
            for (long long e = 0; e <= cap && e * d <= s; ++e) next[s] += dp[s - e * d];
        dp = std::move(next);
    }
    return static_cast<uint32_t>(dp[t]);
}

namespace {

// Closure of the length >= min_len basis elements under all Q_i, returned
// as global-coordinate spanning vectors.
std::vector<SparseVec> q_closure(const FpCtx& F, const Comodule& M, int min_len) {
    std::map<long long, EchelonSpan> es;
    std::vector<std::pair<long long, SparseVec>> work;
    auto push = [&](long long t, SparseVec v) {
        v = es[t].reduce(F, v);
        if (v.zero()) return;
        if (v.lead_coeff() != 1) v = scale(F, F.inv(v.lead_coeff()), v);
        es[t].insert(F, v);
        work.emplace_back(t, std::move(v));
    };
    for (const auto& e : M.elems) {
        if (e.len < 0)
            throw std::invalid_argument("length closure needs length-graded elements");
        if (e.len >= min_len) push(e.deg, SparseVec::unit(e.pos));
    }
    while (!work.empty()) {
        auto [t, v] = std::move(work.back());
        work.pop_back();
        for (int i = 0; i <= M.n; ++i) {
            SparseVec w = apply(F, M.q_matrix(i, t), v);
            if (!w.zero()) push(t - M.qi_degree(i), std::move(w));
        }
    }
    std::vector<SparseVec> out;
    for (const auto& [t, sp] : es) {
        const auto& ids = M.ids_at(t);
        for (const auto& [piv, v] : sp.rows) {
            (void)piv;
            SparseVec g;
            for (const auto& [pos, c] : v.e) g.e.emplace_back(ids[pos], c);
            std::sort(g.e.begin(), g.e.end());
            out.push_back(std::move(g));
        }
    }
    return out;
}

}  // namespace

SplittingReport split_off_q_closure(const Comodule& m, int min_len, const std::string& s_label,
                                    const std::string& q_label) {
    FpCtx F(m.p);
    std::vector<SparseVec> span = q_closure(F, m, min_len);
    SplittingReport rep;
    rep.min_len = min_len;
    rep.s = sub_comodule(m, span, s_label);
    rep.q = quotient_comodule(m, span, q_label);
    long long dmax = m.qi_degree(m.n);
    rep.window_hi =
        m.complete_through == LLONG_MAX ? LLONG_MAX : m.complete_through - dmax;
    if (!rep.s.elems.empty()) {
        long long hi = rep.s.elems.back().deg;
        if (rep.window_hi != LLONG_MAX) hi = std::min(hi, rep.window_hi);
        if (rep.window_hi == LLONG_MAX) rep.window_hi = hi;
        for (int i = 0; i <= m.n; ++i) {
            auto slices = margolis_homology(rep.s, i, 0, hi);
            for (const auto& sl : slices)
                if (sl.dim) rep.s_margolis_trivial = false;
            rep.s_margolis[i] = std::move(slices);
        }
    } else if (rep.window_hi == LLONG_MAX) {
        rep.window_hi = 0;
    }
    return rep;
}

SplittingReport split_s_q(const Comodule& a_mod_e2) {
    if (a_mod_e2.n != 2)
        throw std::invalid_argument("length-3 splitting expects an E(2)*-comodule");
    return split_off_q_closure(a_mod_e2, 3, "S", "Q");
}

SplittingReport split_sprime_qbar(const Comodule& q_over_e1) {
    if (q_over_e1.n != 1)
        throw std::invalid_argument("length-2 splitting expects an E(1)*-comodule");
    return split_off_q_closure(q_over_e1, 2, "S'", "Qbar");
}

Comodule build_r(uint32_t p, long long w_max) {
    AlgebraSpec s{p, Flavor::AModEn, 2, GenSystem::Conjugate, -1};
    std::vector<Monomial> monos;
    for (const auto& m : basis_of_weight(s, w_max, false))
        if (m.ze_at(1) == 0) monos.push_back(m);
    return comodule_from_monomials(p, 2, 1, std::move(monos),
                                   "R[wt<=" + std::to_string(w_max) + "]", LLONG_MAX);
}

Comodule weight_piece_w2(const Comodule& r, long long k) {
    if (k < 0) throw std::invalid_argument("weight index must be nonnegative");
    long long w = static_cast<long long>(r.p) * r.p * k;
    std::vector<SparseVec> span;
    bool seen_weight_cap = false;
    for (uint32_t i = 0; i < r.elems.size(); ++i) {
        if (r.elems[i].wt == w) span.push_back(SparseVec::unit(i));
        if (r.elems[i].wt >= w) seen_weight_cap = true;
    }
    if (!seen_weight_cap && w > 0)
        throw std::invalid_argument("weight piece exceeds the ambient weight bound");
    return sub_comodule(r, span, "W_2(" + std::to_string(k) + ")");
}

}  // namespace coops
