#include "core/cobar.h"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>
#include <vector>

#include "core/browngitler.h"
#include "core/fpmatrix.h"

namespace coops {

namespace {

// One bar word [eta_1|..|eta_s] x, masks outer to inner.
struct CobarElem {
    std::vector<uint32_t> masks;
    uint32_t id = 0;
};

bool cobar_less(const CobarElem& a, const CobarElem& b) {
    if (a.masks != b.masks) return a.masks < b.masks;
    return a.id < b.id;
}

long long mask_degree(uint32_t p, uint32_t mask) {
    long long d = 0;
    long long pw = 1;
    for (uint32_t i = 0; mask >> i; ++i, pw *= p)
        if (mask & (1u << i)) d += 2 * pw - 1;
    return d;
}

// Koszul sign of splitting the ascending word of eta into the subword S
// followed by the rest T: one transposition of odd factors per pair
// (t in T, s in S) with t < s.
int split_sign(uint32_t S, uint32_t T) {
    int inv = 0;
    for (uint32_t s = 0; S >> s; ++s)
        if (S & (1u << s)) inv += __builtin_popcount(T & ((1u << s) - 1));
    return (inv & 1) ? -1 : 1;
}

struct CobarComplex {
    std::shared_ptr<const Comodule> mod;
    int s_max = 0;
    long long t_max = 0;
    std::map<std::pair<int, long long>, std::vector<CobarElem>> basis;
    std::map<std::pair<int, long long>, FpMatrix> d;

    uint32_t slice_dim(int s, long long t) const {
        auto it = basis.find({s, t});
        return it == basis.end() ? 0 : static_cast<uint32_t>(it->second.size());
    }

    uint32_t index(int s, long long t, const CobarElem& e) const {
        const auto& slice = basis.at({s, t});
        auto pos = std::lower_bound(slice.begin(), slice.end(), e, cobar_less);
        if (pos == slice.end() || pos->masks != e.masks || pos->id != e.id)
            throw std::logic_error("cobar word not found in its slice");
        return static_cast<uint32_t>(pos - slice.begin());
    }

    const FpMatrix& diff(int s, long long t) const {
        static const FpMatrix empty;
        auto it = d.find({s, t});
        return it == d.end() ? empty : it->second;
    }
};

CobarComplex build_cobar(std::shared_ptr<const Comodule> mod, int s_max, long long t_max,
                         size_t basis_cap) {
    if (!mod) throw std::invalid_argument("null module");
    if (s_max < 0 || t_max < 0) throw std::invalid_argument("empty cobar window");
    const Comodule& M = *mod;
    if (M.complete_through != LLONG_MAX && t_max - M.suspension > M.complete_through)
        throw std::invalid_argument(
            "cobar window needs module degrees through " + std::to_string(t_max - M.suspension) +
            " but '" + M.label + "' is only complete through " +
            std::to_string(M.complete_through));
    FpCtx F(M.p);
    uint32_t mask_top = (1u << (M.n + 1)) - 1;

    CobarComplex C;
    C.mod = mod;
    C.s_max = s_max;
    C.t_max = t_max;

    // Slices for s <= s_max + 2 so d^2 = 0 can be checked on the window.
    size_t total = 0;
    for (int s = 0; s <= s_max + 2; ++s) {
        // Words are generated with masks ascending lexicographically.
        std::vector<uint32_t> word(static_cast<size_t>(s));
        std::function<void(int, long long)> rec = [&](int slot, long long used) {
            if (slot == s) {
                for (long long t = M.suspension + used; t <= t_max; ++t) {
                    long long u = t - M.suspension - used;
                    for (uint32_t id : M.ids_at(u)) {
                        C.basis[{s, t}].push_back({word, id});
                        ++total;
                    }
                }
                return;
            }
            for (uint32_t m = 1; m <= mask_top; ++m) {
                long long dm = mask_degree(M.p, m);
                if (M.suspension + used + dm > t_max) continue;
                word[slot] = m;
                rec(slot + 1, used + dm);
            }
        };
        rec(0, 0);
        if (total > basis_cap) throw std::runtime_error("cobar window too large");
    }
    for (auto& [key, slice] : C.basis) {
        (void)key;
        std::sort(slice.begin(), slice.end(), cobar_less);
    }

    for (int s = 0; s <= s_max + 1; ++s) {
        for (long long t = 0; t <= t_max; ++t) {
            uint32_t cols = C.slice_dim(s, t);
            uint32_t rows = C.slice_dim(s + 1, t);
            if (!cols && !rows) continue;
            FpMatrix A(rows, cols);
            const auto* slice = cols ? &C.basis.at({s, t}) : nullptr;
            for (uint32_t c = 0; slice && c < slice->size(); ++c) {
                const CobarElem& b = (*slice)[c];
                std::map<uint32_t, int> acc;
                // Coproduct on each bar slot, slot j carrying (-1)^j.
                for (int j = 1; j <= s; ++j) {
                    uint32_t eta = b.masks[j - 1];
                    int sj = (j & 1) ? -1 : 1;
                    for (uint32_t S = (eta - 1) & eta; S; S = (S - 1) & eta) {
                        uint32_t T = eta ^ S;
                        CobarElem e2;
                        e2.masks = b.masks;
                        e2.masks[j - 1] = S;
                        e2.masks.insert(e2.masks.begin() + j, T);
                        e2.id = b.id;
                        acc[C.index(s + 1, t, e2)] += sj * split_sign(S, T);
                    }
                }
                // Coaction on x appended in the last slot, carrying (-1)^{s+1}.
                int sc = (s & 1) ? 1 : -1;
                for (const CoTerm& term : M.coact[b.id]) {
                    if (!term.taus) continue;
                    CobarElem e2;
                    e2.masks = b.masks;
                    e2.masks.push_back(term.taus);
                    e2.id = term.target;
                    acc[C.index(s + 1, t, e2)] += sc * static_cast<int>(term.c);
                }
                for (const auto& [r, v] : acc) {
                    uint32_t coeff = F.norm(v);
                    if (coeff) A.set(r, c, coeff);
                }
            }
            C.d[{s, t}] = std::move(A);
        }
    }

    for (int s = 0; s <= s_max; ++s)
        for (long long t = 0; t <= t_max; ++t) {
            auto lo = C.d.find({s, t});
            auto hi = C.d.find({s + 1, t});
            if (lo == C.d.end() || hi == C.d.end()) continue;
            if (!is_zero(mat_mul(F, hi->second, lo->second)))
                throw std::logic_error("cobar differential fails d^2 = 0 at s = " +
                                       std::to_string(s) + ", t = " + std::to_string(t));
        }
    return C;
}

}  // namespace

std::map<std::pair<int, long long>, uint32_t> cobar_ext_dims(std::shared_ptr<const Comodule> mod,
                                                             int s_max, long long t_max,
                                                             size_t basis_cap) {
    CobarComplex C = build_cobar(mod, s_max, t_max, basis_cap);
    FpCtx F(mod->p);
    std::map<std::pair<int, long long>, uint32_t> out;
    for (int s = 0; s <= s_max; ++s)
        for (long long t = 0; t <= t_max; ++t) {
            uint32_t n = C.slice_dim(s, t);
            if (!n) continue;
            uint32_t r_out = rank(F, C.diff(s, t));
            uint32_t r_in = s ? rank(F, C.diff(s - 1, t)) : 0;
            uint32_t h = n - r_out - r_in;
            if (h) out[{s, t}] = h;
        }
    return out;
}

std::string certify_v2_connecting(uint32_t p, int s_max, long long t_max) {
    FpCtx F(p);
    auto fail = [](const std::string& msg) { return msg; };

    auto base = std::make_shared<Comodule>(
        comodule_from_monomials(p, -1, 2, {Monomial::one()}, "F_p", LLONG_MAX));
    std::shared_ptr<const Comodule> mid = build_q_quotient(p, 0).q;
    if (mid->elems.size() != 2 || mid->elems[0].name != "1" || mid->elems[1].name != "t2")
        return fail("E(t2) basis is not {1, t2}");
    auto top = std::make_shared<Comodule>(
        quotient_comodule(*mid, {SparseVec::unit(0)}, "S^{2p^2-1} F_p"));
    if (top->elems.size() != 1) return fail("quotient by F_p is not one-dimensional");

    CobarComplex CB = build_cobar(base, s_max + 1, t_max, 2000000);
    CobarComplex CE = build_cobar(mid, s_max + 1, t_max, 2000000);
    CobarComplex CT = build_cobar(top, s_max + 1, t_max, 2000000);
    uint32_t t2mask = 1u << 2;

    std::map<std::pair<int, long long>, HomologySlot> HB, HE, HT;
    for (int s = 0; s <= s_max + 1; ++s)
        for (long long t = 0; t <= t_max; ++t) {
            if (CB.slice_dim(s, t))
                HB[{s, t}] = homology_slot(F, CB.diff(s, t), s ? CB.diff(s - 1, t) : FpMatrix());
            if (CE.slice_dim(s, t))
                HE[{s, t}] = homology_slot(F, CE.diff(s, t), s ? CE.diff(s - 1, t) : FpMatrix());
            if (CT.slice_dim(s, t))
                HT[{s, t}] = homology_slot(F, CT.diff(s, t), s ? CT.diff(s - 1, t) : FpMatrix());
        }
    auto hdim = [](std::map<std::pair<int, long long>, HomologySlot>& H, int s, long long t) {
        auto it = H.find({s, t});
        return it == H.end() ? 0u : it->second.dim();
    };

    // iota: words over 1 in F_p include into E(t2); pi: drop 1, keep t2.
    auto incl = [&](int s, long long t, const SparseVec& v) {
        SparseVec out;
        const auto& slice = CB.basis.at({s, t});
        for (const auto& [i, c] : v.e)
            out = axpy(F, c, SparseVec::unit(CE.index(s, t, {slice[i].masks, 0})), out);
        return out;
    };
    auto proj = [&](int s, long long t, const SparseVec& v) {
        SparseVec out;
        const auto& slice = CE.basis.at({s, t});
        for (const auto& [i, c] : v.e) {
            if (slice[i].id != 1) continue;
            out = axpy(F, c, SparseVec::unit(CT.index(s, t, {slice[i].masks, 0})), out);
        }
        return out;
    };

    std::map<std::pair<int, long long>, FpMatrix> MI, MP, MD;
    for (int s = 0; s <= s_max; ++s) {
        for (long long t = 0; t <= t_max; ++t) {
            uint32_t hb = hdim(HB, s, t), he = hdim(HE, s, t), ht = hdim(HT, s, t);
            uint32_t hb1 = hdim(HB, s + 1, t);

            FpMatrix mi(he, hb), mp(ht, he), md(hb1, ht);
            if (hb) {
                const HomologySlot& src = HB.at({s, t});
                for (uint32_t g = 0; g < hb; ++g) {
                    auto coords = HE.at({s, t}).classify(F, incl(s, t, src.reps[g]));
                    for (uint32_t r = 0; r < coords.size(); ++r)
                        if (coords[r]) mi.set(r, g, coords[r]);
                }
            }
            if (he && ht) {
                const HomologySlot& src = HE.at({s, t});
                for (uint32_t g = 0; g < he; ++g) {
                    auto coords = HT.at({s, t}).classify(F, proj(s, t, src.reps[g]));
                    for (uint32_t r = 0; r < coords.size(); ++r)
                        if (coords[r]) mp.set(r, g, coords[r]);
                }
            }
            if (ht) {
                const HomologySlot& src = HT.at({s, t});
                const auto& tslice = CT.basis.at({s, t});
                for (uint32_t g = 0; g < ht; ++g) {
                    // Lift the cocycle into E(t2) and push it through d.
                    SparseVec lift;
                    for (const auto& [i, c] : src.reps[g].e)
                        lift = axpy(F, c, SparseVec::unit(CE.index(s, t, {tslice[i].masks, 1})),
                                    lift);
                    SparseVec de = apply(F, CE.diff(s, t), lift);
                    // The image must live over the base copy of F_p.
                    SparseVec back;
                    const auto& eslice = CE.basis.at({s + 1, t});
                    for (const auto& [i, c] : de.e) {
                        if (eslice[i].id != 0)
                            return fail("snake image of a cocycle leaves the base at s = " +
                                        std::to_string(s) + ", t = " + std::to_string(t));
                        back = axpy(F, c, SparseVec::unit(CB.index(s + 1, t, {eslice[i].masks, 0})),
                                    back);
                    }
                    // Cochain-level form of the connecting map: (-1)^{s+1} [z | t2].
                    SparseVec expected;
                    uint32_t sign = (s & 1) ? 1 : F.neg(1);
                    for (const auto& [i, c] : src.reps[g].e) {
                        CobarElem e2;
                        e2.masks = tslice[i].masks;
                        e2.masks.push_back(t2mask);
                        e2.id = 0;
                        expected = axpy(F, F.mul(sign, c),
                                        SparseVec::unit(CB.index(s + 1, t, e2)), expected);
                    }
                    if (!(back == expected))
                        return fail("connecting map is not appending [t2] at s = " +
                                    std::to_string(s) + ", t = " + std::to_string(t));
                    if (HB.count({s + 1, t})) {
                        auto coords = HB.at({s + 1, t}).classify(F, back);
                        for (uint32_t r = 0; r < coords.size(); ++r)
                            if (coords[r]) md.set(r, g, coords[r]);
                    } else if (!back.zero()) {
                        return fail("connecting image lands in an empty slice");
                    }
                }
            }
            MI[{s, t}] = std::move(mi);
            MP[{s, t}] = std::move(mp);
            MD[{s, t}] = std::move(md);
        }
    }

    // Exactness of the long sequence H(B) -> H(E) -> H(T) -> H(B)[s+1].
    for (int s = 0; s < s_max; ++s) {
        for (long long t = 0; t <= t_max; ++t) {
            const FpMatrix& mi = MI.at({s, t});
            const FpMatrix& mp = MP.at({s, t});
            const FpMatrix& md = MD.at({s, t});
            uint32_t ri = rank(F, mi), rp = rank(F, mp), rd = rank(F, md);
            std::string at = " at s = " + std::to_string(s) + ", t = " + std::to_string(t);
            if (s == 0 && ri != hdim(HB, 0, t)) return fail("iota is not injective" + at);
            if (!is_zero(mat_mul(F, mp, mi))) return fail("pi . iota is nonzero" + at);
            if (!is_zero(mat_mul(F, md, mp))) return fail("delta . pi is nonzero" + at);
            if (!is_zero(mat_mul(F, MI.at({s + 1, t}), md)))
                return fail("iota . delta is nonzero" + at);
            if (ri + rp != hdim(HE, s, t)) return fail("sequence not exact at H(E)" + at);
            if (rp + rd != hdim(HT, s, t)) return fail("sequence not exact at H(T)" + at);
            if (rd + rank(F, MI.at({s + 1, t})) != hdim(HB, s + 1, t))
                return fail("sequence not exact at H(B)" + at);
        }
    }
    return "";
}

}  // namespace coops
