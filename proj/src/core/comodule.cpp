#include "core/comodule.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "core/util.h"

namespace coops {

namespace {

Monomial mask_mono(uint32_t mask) {
    Monomial m;
    m.taus = mask;
    return m;
}

long long mask_degree(uint32_t mask, uint32_t p) {
    long long d = 0;
    long long pk = 1;
    for (uint32_t k = 0; mask >> k; ++k) {
        if ((mask >> k) & 1u) d += 2 * pk - 1;
        pk *= p;
    }
    return d;
}

// Merge of two exterior masks: nullopt on a repeated factor, otherwise the
// union and the sign of sorting the concatenation a, b into index order.
std::optional<std::pair<uint32_t, int>> ext_merge(uint32_t a, uint32_t b) {
    if (a & b) return std::nullopt;
    int inv = 0;
    for (uint32_t k = 0; b >> k; ++k)
        if ((b >> k) & 1u) inv += __builtin_popcount(a >> (k + 1));
    return std::make_pair(a | b, (inv & 1) ? -1 : 1);
}

using CoAcc = std::map<std::pair<uint32_t, uint32_t>, uint32_t>;  // (taus, target) -> c

void acc_add(const FpCtx& F, CoAcc& acc, uint32_t taus, uint32_t target, uint32_t c) {
    if (c == 0) return;
    auto key = std::make_pair(taus, target);
    uint32_t s = F.add(acc.count(key) ? acc[key] : 0, c);
    if (s == 0)
        acc.erase(key);
    else
        acc[key] = s;
}

std::vector<CoTerm> emit_coterms(const CoAcc& acc) {
    std::vector<CoTerm> out;
    out.reserve(acc.size());
    for (const auto& [key, c] : acc) out.push_back(CoTerm{key.first, c, key.second});
    return out;
}

// Expresses v (slice coordinates) over the rows of a reduced echelon span,
// or nullopt if v is outside the span.
std::optional<SparseVec> span_coords(const FpCtx& F, const EchelonSpan& es, SparseVec v) {
    SparseVec coords;
    while (!v.zero()) {
        uint32_t l = v.lead();
        auto it = std::lower_bound(es.rows.begin(), es.rows.end(), l,
                                   [](const auto& r, uint32_t piv) { return r.first < piv; });
        if (it == es.rows.end() || it->first != l) return std::nullopt;
        uint32_t c = v.lead_coeff();
        coords.e.emplace_back(static_cast<uint32_t>(it - es.rows.begin()), c);
        v = axpy(F, F.neg(c), it->second, v);
    }
    return coords;
}

void index_elems(Comodule& C) {
    C.by_deg.clear();
    C.mono_index.clear();
    for (uint32_t i = 0; i < C.elems.size(); ++i) {
        auto& e = C.elems[i];
        auto& slice = C.by_deg[e.deg];
        e.pos = static_cast<uint32_t>(slice.size());
        slice.push_back(i);
        if (C.monomial_basis) C.mono_index[e.mono] = i;
    }
    if (C.monomial_basis && C.mono_index.size() != C.elems.size())
        throw std::invalid_argument("duplicate monomial in comodule basis");
}

void derive_qmat(Comodule& C) {
    C.qmat.clear();
    for (int i = 0; i <= C.n; ++i) {
        long long d = C.qi_degree(i);
        uint32_t mask = 1u << i;
        for (const auto& [t, ids] : C.by_deg) {
            FpMatrix m(C.dim_at(t - d), static_cast<uint32_t>(ids.size()));
            for (uint32_t col = 0; col < ids.size(); ++col)
                for (const auto& term : C.coact[ids[col]])
                    if (term.taus == mask) m.set(C.elems[term.target].pos, col, term.c);
            C.qmat.emplace(std::make_pair(i, t), std::move(m));
        }
    }
}

void validate_counit(const Comodule& C) {
    for (uint32_t i = 0; i < C.elems.size(); ++i) {
        int found = 0;
        for (const auto& term : C.coact[i]) {
            if (C.elems[term.target].deg != C.elems[i].deg - mask_degree(term.taus, C.p))
                throw std::logic_error("coaction term with inconsistent degree on '" +
                                       C.elems[i].name + "'");
            if (term.taus != 0) continue;
            ++found;
            if (term.c != 1 || term.target != i)
                throw std::logic_error("counit term of '" + C.elems[i].name +
                                       "' is not 1 (x) itself");
        }
        if (found != 1)
            throw std::logic_error("missing counit term on '" + C.elems[i].name + "'");
    }
}

void validate_q_identities(const FpCtx& F, const Comodule& C) {
    for (int i = 0; i <= C.n; ++i) {
        long long di = C.qi_degree(i);
        for (int j = i; j <= C.n; ++j) {
            long long dj = C.qi_degree(j);
            for (const auto& [t, ids] : C.by_deg) {
                (void)ids;
                FpMatrix a = mat_mul(F, C.q_matrix(i, t - dj), C.q_matrix(j, t));
                FpMatrix b = mat_mul(F, C.q_matrix(j, t - di), C.q_matrix(i, t));
                FpMatrix sum(a.rows, a.cols);
                for (uint32_t r = 0; r < a.rows; ++r) sum.row[r] = add(F, a.row[r], b.row[r]);
                if (!is_zero(sum))
                    throw std::logic_error("Q_" + std::to_string(i) + " Q_" + std::to_string(j) +
                                           " + Q_" + std::to_string(j) + " Q_" +
                                           std::to_string(i) + " != 0 at degree " +
                                           std::to_string(t) + " in " + C.label);
            }
        }
    }
}

// (psi (x) 1) alpha == (1 (x) alpha) alpha, with psi the E(n)* coproduct.
void validate_coassoc(const FpCtx& F, const Comodule& C) {
    AlgebraSpec en{C.p, Flavor::DualExtN, C.n, GenSystem::Conjugate, -1};
    FpCtx Fp(C.p);
    using Key = std::tuple<uint32_t, uint32_t, uint32_t>;  // (taus1, taus2, target)
    for (uint32_t x = 0; x < C.elems.size(); ++x) {
        std::map<Key, uint32_t> lhs, rhs;
        for (const auto& term : C.coact[x]) {
            TensorElement psi = coproduct(Fp, en, mask_mono(term.taus));
            for (const auto& [tm, c] : psi.terms) {
                uint32_t s = F.mul(term.c, c);
                Key k{tm.a.taus, tm.b.taus, term.target};
                uint32_t v = F.add(lhs.count(k) ? lhs[k] : 0, s);
                if (v == 0)
                    lhs.erase(k);
                else
                    lhs[k] = v;
            }
            for (const auto& inner : C.coact[term.target]) {
                uint32_t s = F.mul(term.c, inner.c);
                Key k{term.taus, inner.taus, inner.target};
                uint32_t v = F.add(rhs.count(k) ? rhs[k] : 0, s);
                if (v == 0)
                    rhs.erase(k);
                else
                    rhs[k] = v;
            }
        }
        if (lhs != rhs)
            throw std::logic_error("coaction of '" + C.elems[x].name + "' in " + C.label +
                                   " is not coassociative");
    }
}

// For monomial bases, checks every Q_i column against the derivation rule
// Q_i(t_k) = z_{k-i}^{p^i} extended by the Leibniz formula with signs.
// Target monomials outside the basis count as projected to zero, which is
// the correct reading for quotients by monomial spans.
void validate_leibniz(const FpCtx& F, const Comodule& C) {
    for (int i = 0; i <= C.n; ++i) {
        long long pi = 1;
        for (int s = 0; s < i; ++s) pi *= C.p;
        for (uint32_t x = 0; x < C.elems.size(); ++x) {
            const Monomial& m = C.elems[x].mono;
            Element expect;
            int before = 0;
            for (uint32_t k = 0; m.taus >> k; ++k) {
                if (!((m.taus >> k) & 1u)) continue;
                if (k >= static_cast<uint32_t>(i)) {
                    Monomial rest = m;
                    rest.taus &= ~(1u << k);
                    rest.trim();
                    Monomial val = (k == static_cast<uint32_t>(i))
                                       ? Monomial::one()
                                       : Monomial::zgen(k - i, static_cast<uint32_t>(pi));
                    auto prod = mul_mono(rest, val);
                    if (C.mono_index.count(prod->first)) {
                        uint32_t c = (before & 1) ? F.neg(1) : 1;
                        el_add_term(F, expect, prod->first,
                                    prod->second < 0 ? F.neg(c) : c);
                    }
                }
                ++before;
            }
            Element got;
            for (const auto& term : C.coact[x])
                if (term.taus == (1u << i))
                    el_add_term(F, got, C.elems[term.target].mono, term.c);
            if (!(got == expect))
                throw std::logic_error("Q_" + std::to_string(i) + " of " + C.elems[x].name +
                                       " disagrees with the derivation rule in " + C.label);
        }
    }
}

// Shared tail of every builder: sorts coaction terms, indexes, derives the
// Q matrices and runs the structural checks.
void finalize(const FpCtx& F, Comodule& C) {
    if (C.elems.size() != C.coact.size())
        throw std::logic_error("comodule basis/coaction size mismatch");
    for (auto& terms : C.coact)
        std::sort(terms.begin(), terms.end(), [](const CoTerm& a, const CoTerm& b) {
            return a.taus != b.taus ? a.taus < b.taus : a.target < b.target;
        });
    index_elems(C);
    validate_counit(C);
    derive_qmat(C);
    validate_q_identities(F, C);
    validate_coassoc(F, C);
    if (C.monomial_basis) validate_leibniz(F, C);
}

std::string coeff_name(uint32_t c, const std::string& name) {
    return c == 1 ? name : std::to_string(c) + " " + name;
}

}  // namespace

long long Comodule::qi_degree(int i) const {
    long long pk = 1;
    for (int s = 0; s < i; ++s) pk *= p;
    return 2 * pk - 1;
}

uint32_t Comodule::dim_at(long long deg) const {
    auto it = by_deg.find(deg);
    return it == by_deg.end() ? 0 : static_cast<uint32_t>(it->second.size());
}

const std::vector<uint32_t>& Comodule::ids_at(long long deg) const {
    static const std::vector<uint32_t> empty;
    auto it = by_deg.find(deg);
    return it == by_deg.end() ? empty : it->second;
}

int Comodule::find_mono(const Monomial& m) const {
    auto it = mono_index.find(m);
    return it == mono_index.end() ? -1 : static_cast<int>(it->second);
}

FpMatrix Comodule::q_matrix(int i, long long t) const {
    auto it = qmat.find(std::make_pair(i, t));
    if (it != qmat.end()) return it->second;
    return FpMatrix(dim_at(t - qi_degree(i)), dim_at(t));
}

Comodule comodule_from_monomials(uint32_t p, int m, int n, std::vector<Monomial> monos,
                                 const std::string& label, long long complete_through) {
    FpCtx F(p);
    if (m < -1 || n < 0) throw std::invalid_argument("comodule requires m >= -1 and n >= 0");
    std::sort(monos.begin(), monos.end(),
              [p](const Monomial& a, const Monomial& b) { return graded_less(a, b, p); });
    monos.erase(std::unique(monos.begin(), monos.end()), monos.end());

    Comodule C;
    C.p = p;
    C.n = n;
    C.label = label;
    C.complete_through = complete_through;
    C.monomial_basis = true;
    C.env_m = m;
    C.elems.reserve(monos.size());
    for (const auto& mo : monos) {
        CmElem e;
        e.mono = mo;
        e.deg = mono_degree(mo, p);
        e.wt = mono_weight(mo, p);
        e.len = mono_length(mo);
        e.name = mono_str(mo);
        C.elems.push_back(std::move(e));
    }
    index_elems(C);

    C.coact.resize(C.elems.size());
    for (uint32_t i = 0; i < C.elems.size(); ++i) {
        TensorElement a = en_coaction(F, m, n, C.elems[i].mono);
        CoAcc acc;
        for (const auto& [tm, c] : a.terms) {
            int target = C.find_mono(tm.b);
            if (target < 0)
                throw std::invalid_argument("coaction leaves the span in " + label + ": " +
                                            mono_str(C.elems[i].mono) + " hits " + mono_str(tm.b));
            acc_add(F, acc, tm.a.taus, static_cast<uint32_t>(target), c);
        }
        C.coact[i] = emit_coterms(acc);
    }
    finalize(F, C);
    return C;
}

Comodule trivial_comodule(uint32_t p, int n, std::vector<std::pair<std::string, long long>> gens,
                          const std::string& label) {
    if (n < 0) throw std::invalid_argument("coalgebra index must be nonnegative");
    std::sort(gens.begin(), gens.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    FpCtx F(p);
    Comodule C;
    C.p = p;
    C.n = n;
    C.label = label;
    C.monomial_basis = false;
    for (const auto& [name, deg] : gens) {
        if (deg < 0) throw std::invalid_argument("generator degrees must be nonnegative");
        CmElem e;
        e.deg = deg;
        e.len = -1;
        e.name = name;
        C.elems.push_back(std::move(e));
    }
    C.coact.resize(C.elems.size());
    for (uint32_t i = 0; i < C.elems.size(); ++i) C.coact[i] = {CoTerm{0, 1, i}};
    finalize(F, C);
    return C;
}

Comodule build_a_mod_e(uint32_t p, int m, int n, DegreeBound b) {
    if (b.t_max < 0) throw std::invalid_argument("degree bound must be nonnegative");
    AlgebraSpec s{p, Flavor::AModEn, m, GenSystem::Conjugate, b.t_max};
    s.validate();
    std::vector<Monomial> monos;
    for (long long t = 0; t <= b.t_max; ++t) {
        auto bt = basis_of_degree(s, t);
        monos.insert(monos.end(), bt.begin(), bt.end());
    }
    std::string label = "A//E(" + std::to_string(m) + ")";
    if (n != m) label += " over E(" + std::to_string(n) + ")";
    return comodule_from_monomials(p, m, n, std::move(monos), label, b.t_max);
}

Comodule build_a_mod_e(uint32_t p, int m, int n, WeightBound b, const std::string& label) {
    AlgebraSpec s{p, Flavor::AModEn, m, GenSystem::Conjugate, -1};
    s.validate();
    std::vector<Monomial> monos = basis_of_weight(s, b.w, b.exact);
    std::string lab = label;
    if (lab.empty()) {
        lab = "A//E(" + std::to_string(m) + ")[wt" + (b.exact ? "=" : "<=") +
              std::to_string(b.w) + "]";
        if (n != m) lab += " over E(" + std::to_string(n) + ")";
    }
    return comodule_from_monomials(p, m, n, std::move(monos), lab, LLONG_MAX);
}

Comodule tensor_comodule(const Comodule& A, const Comodule& B, const std::string& label) {
    if (A.p != B.p || A.n != B.n)
        throw std::invalid_argument("tensor factors must share the prime and coalgebra");
    FpCtx F(A.p);

    Comodule C;
    C.p = A.p;
    C.n = A.n;
    C.label = label.empty() ? A.label + " (x) " + B.label : label;
    C.suspension = A.suspension + B.suspension;
    C.complete_through = std::min(A.complete_through, B.complete_through);
    C.monomial_basis = false;
    C.env_m = -1;

    // Pairs ordered by (total degree, id in A, id in B).
    std::vector<std::pair<uint32_t, uint32_t>> pairs;
    pairs.reserve(A.elems.size() * B.elems.size());
    for (uint32_t a = 0; a < A.elems.size(); ++a)
        for (uint32_t b = 0; b < B.elems.size(); ++b) pairs.emplace_back(a, b);
    std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
        return A.elems[x.first].deg + B.elems[x.second].deg <
               A.elems[y.first].deg + B.elems[y.second].deg;
    });
    std::map<std::pair<uint32_t, uint32_t>, uint32_t> pair_id;
    C.elems.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        CmElem e;
        e.deg = A.elems[a].deg + B.elems[b].deg;
        e.wt = (A.elems[a].wt >= 0 && B.elems[b].wt >= 0) ? A.elems[a].wt + B.elems[b].wt : -1;
        e.len = (A.elems[a].len >= 0 && B.elems[b].len >= 0) ? A.elems[a].len + B.elems[b].len : -1;
        e.name = A.elems[a].name + " (x) " + B.elems[b].name;
        pair_id[{a, b}] = static_cast<uint32_t>(C.elems.size());
        C.elems.push_back(std::move(e));
    }

    C.coact.resize(C.elems.size());
    for (const auto& [ab, id] : pair_id) {
        const auto& [a, b] = ab;
        CoAcc acc;
        for (const auto& ta : A.coact[a]) {
            int py = A.elems[ta.target].deg & 1;
            for (const auto& tb : B.coact[b]) {
                auto merged = ext_merge(ta.taus, tb.taus);
                if (!merged) continue;
                // Koszul sign from moving the second exterior factor past
                // the first right-hand slot.
                int sign = merged->second;
                if ((py & 1) && (__builtin_popcount(tb.taus) & 1)) sign = -sign;
                uint32_t c = F.mul(ta.c, tb.c);
                if (sign < 0) c = F.neg(c);
                acc_add(F, acc, merged->first, pair_id.at({ta.target, tb.target}), c);
            }
        }
        C.coact[id] = emit_coterms(acc);
    }
    finalize(F, C);
    return C;
}

namespace {

// Degree-homogeneous echelon spans in slice coordinates, from spanning
// vectors given in global coordinates.
std::map<long long, EchelonSpan> slice_spans(const FpCtx& F, const Comodule& M,
                                             const std::vector<SparseVec>& span) {
    std::map<long long, EchelonSpan> es;
    for (const auto& v : span) {
        if (v.zero()) throw std::invalid_argument("zero spanning vector");
        long long t = M.elems.at(v.e.front().first).deg;
        SparseVec slice;
        for (const auto& [g, c] : v.e) {
            if (M.elems.at(g).deg != t)
                throw std::invalid_argument("spanning vector is not degree-homogeneous");
            slice.e.emplace_back(M.elems[g].pos, c);
        }
        std::sort(slice.e.begin(), slice.e.end());
        es[t].insert(F, slice);
    }
    return es;
}

}  // namespace

Comodule sub_comodule(const Comodule& M, const std::vector<SparseVec>& span,
                      const std::string& label) {
    FpCtx F(M.p);
    auto es = slice_spans(F, M, span);

    Comodule C;
    C.p = M.p;
    C.n = M.n;
    C.label = label;
    C.suspension = M.suspension;
    C.complete_through = M.complete_through;
    C.monomial_basis = M.monomial_basis;
    C.env_m = M.env_m;

    // id of the first sub element in each degree.
    std::map<long long, uint32_t> base;
    for (const auto& [t, sp] : es) {
        base[t] = static_cast<uint32_t>(C.elems.size());
        for (const auto& [piv, v] : sp.rows) {
            (void)piv;
            CmElem e;
            e.deg = t;
            const auto& ids = M.ids_at(t);
            bool first = true;
            for (const auto& [pos, c] : v.e) {
                const CmElem& me = M.elems[ids[pos]];
                e.name += (first ? "" : " + ") + coeff_name(c, me.name);
                if (first) {
                    e.wt = me.wt;
                    e.len = me.len;
                } else {
                    if (e.wt != me.wt) e.wt = -1;
                    if (e.len != me.len) e.len = -1;
                }
                first = false;
            }
            if (v.e.size() == 1 && v.e.front().second == 1 && M.monomial_basis)
                e.mono = M.elems[ids[v.e.front().first]].mono;
            else
                C.monomial_basis = false;
            C.elems.push_back(std::move(e));
        }
    }
    if (!C.monomial_basis) C.env_m = -1;

    C.coact.resize(C.elems.size());
    uint32_t id = 0;
    for (const auto& [t, sp] : es) {
        const auto& ids = M.ids_at(t);
        for (const auto& [piv, v] : sp.rows) {
            (void)piv;
            // Coaction of the row, split by exterior mask into slice vectors.
            std::map<uint32_t, SparseVec> parts;
            for (const auto& [pos, cv] : v.e)
                for (const auto& term : M.coact[ids[pos]]) {
                    SparseVec u = SparseVec::unit(M.elems[term.target].pos, F.mul(cv, term.c));
                    parts[term.taus] = add(F, parts[term.taus], u);
                }
            CoAcc acc;
            for (const auto& [mask, vec] : parts) {
                if (vec.zero()) continue;
                long long u = t - mask_degree(mask, M.p);
                auto it = es.find(u);
                std::optional<SparseVec> coords =
                    it == es.end() ? std::nullopt : span_coords(F, it->second, vec);
                if (!coords)
                    throw std::invalid_argument("not a subcomodule: coaction of '" +
                                                C.elems[id].name + "' leaves the span");
                for (const auto& [r, c] : coords->e) acc_add(F, acc, mask, base.at(u) + r, c);
            }
            C.coact[id++] = emit_coterms(acc);
        }
    }
    finalize(F, C);
    return C;
}

Comodule quotient_comodule(const Comodule& M, const std::vector<SparseVec>& span,
                           const std::string& label) {
    FpCtx F(M.p);
    auto es = slice_spans(F, M, span);

    // The span must itself be a subcomodule for the quotient coaction to be
    // well defined.
    for (const auto& [t, sp] : es) {
        const auto& ids = M.ids_at(t);
        for (const auto& [piv, v] : sp.rows) {
            (void)piv;
            std::map<uint32_t, SparseVec> parts;
            for (const auto& [pos, cv] : v.e)
                for (const auto& term : M.coact[ids[pos]]) {
                    SparseVec u = SparseVec::unit(M.elems[term.target].pos, F.mul(cv, term.c));
                    parts[term.taus] = add(F, parts[term.taus], u);
                }
            for (const auto& [mask, vec] : parts) {
                if (vec.zero()) continue;
                long long u = t - mask_degree(mask, M.p);
                auto it = es.find(u);
                if (it == es.end() || !it->second.contains(F, vec))
                    throw std::invalid_argument(
                        "quotient span is not a subcomodule at degree " + std::to_string(t));
            }
        }
    }

    Comodule C;
    C.p = M.p;
    C.n = M.n;
    C.label = label;
    C.suspension = M.suspension;
    C.complete_through = M.complete_through;
    // Survivor classes are named by monomials only when the killed span is
    // itself spanned by basis monomials.
    bool mono_span = M.monomial_basis;
    for (const auto& [t, sp] : es) {
        (void)t;
        for (const auto& [piv, v] : sp.rows) {
            (void)piv;
            if (v.e.size() != 1 || v.e.front().second != 1) mono_span = false;
        }
    }
    C.monomial_basis = mono_span;
    C.env_m = mono_span ? M.env_m : -1;

    // Survivors: slice coordinates that are not pivots of the span.
    std::map<long long, std::map<uint32_t, uint32_t>> surv;  // deg -> slice pos -> new id
    for (const auto& [t, ids] : M.by_deg) {
        auto it = es.find(t);
        for (uint32_t pos = 0; pos < ids.size(); ++pos) {
            bool pivot = false;
            if (it != es.end())
                for (const auto& [piv, v] : it->second.rows)
                    if (piv == pos) {
                        (void)v;
                        pivot = true;
                        break;
                    }
            if (pivot) continue;
            surv[t][pos] = static_cast<uint32_t>(C.elems.size());
            CmElem e = M.elems[ids[pos]];
            C.elems.push_back(std::move(e));
        }
    }

    C.coact.resize(C.elems.size());
    for (const auto& [t, slots] : surv) {
        const auto& ids = M.ids_at(t);
        for (const auto& [pos, id] : slots) {
            CoAcc acc;
            for (const auto& term : M.coact[ids[pos]]) {
                long long u = t - mask_degree(term.taus, M.p);
                SparseVec vec = SparseVec::unit(M.elems[term.target].pos, term.c);
                auto it = es.find(u);
                if (it != es.end()) vec = it->second.reduce(F, vec);
                for (const auto& [q, c] : vec.e) acc_add(F, acc, term.taus, surv.at(u).at(q), c);
            }
            C.coact[id] = emit_coterms(acc);
        }
    }
    finalize(F, C);
    return C;
}

Comodule restrict_coalgebra(const Comodule& M, int n_new, const std::string& label) {
    if (n_new < 0 || n_new > M.n)
        throw std::invalid_argument("corestriction requires 0 <= n' <= n");
    FpCtx F(M.p);
    Comodule C = M;
    C.n = n_new;
    C.label = label.empty() ? M.label + "|E(" + std::to_string(n_new) + ")" : label;
    uint32_t limit = 1u << (n_new + 1);
    for (auto& terms : C.coact) {
        std::vector<CoTerm> kept;
        for (const auto& t : terms)
            if (t.taus < limit) kept.push_back(t);
        terms = std::move(kept);
    }
    finalize(F, C);
    return C;
}

Comodule suspend(const Comodule& M, long long delta) {
    Comodule C = M;
    C.suspension += delta;
    return C;
}

SparseVec ComoduleMap::apply_at(const FpCtx& F, long long t, const SparseVec& x) const {
    auto it = mat.find(t);
    if (it == mat.end()) return SparseVec{};
    return apply(F, it->second, x);
}

const FpMatrix& ComoduleMap::matrix_at(long long t) const {
    static const FpMatrix empty;
    auto it = mat.find(t);
    return it == mat.end() ? empty : it->second;
}

bool check_comodule_map(const FpCtx& F, const ComoduleMap& f, std::string* why) {
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    if (!f.src || !f.dst) return fail("map has no source or target");
    if (f.shift & 1) return fail("map has odd degree shift");
    const Comodule& A = *f.src;
    const Comodule& B = *f.dst;
    if (A.p != B.p || A.n != B.n) return fail("source and target disagree on p or n");

    for (const auto& [t, m] : f.mat) {
        if (m.cols != A.dim_at(t))
            return fail("matrix at degree " + std::to_string(t) + " has wrong column count");
        if (m.rows != B.dim_at(t + f.shift))
            return fail("matrix at degree " + std::to_string(t) + " has wrong row count");
    }

    using Key = std::pair<uint32_t, uint32_t>;  // (taus, target id in B)
    for (uint32_t x = 0; x < A.elems.size(); ++x) {
        long long t = A.elems[x].deg;
        std::map<Key, uint32_t> lhs, rhs;
        SparseVec fx = f.apply_at(F, t, SparseVec::unit(A.elems[x].pos));
        const auto& ids_t = B.ids_at(t + f.shift);
        for (const auto& [pos, c] : fx.e)
            for (const auto& term : B.coact[ids_t[pos]]) {
                Key k{term.taus, term.target};
                uint32_t v = F.add(lhs.count(k) ? lhs[k] : 0, F.mul(c, term.c));
                if (v == 0)
                    lhs.erase(k);
                else
                    lhs[k] = v;
            }
        for (const auto& term : A.coact[x]) {
            long long u = A.elems[term.target].deg;
            SparseVec fy = f.apply_at(F, u, SparseVec::unit(A.elems[term.target].pos));
            const auto& ids_u = B.ids_at(u + f.shift);
            for (const auto& [pos, c] : fy.e) {
                Key k{term.taus, ids_u[pos]};
                uint32_t v = F.add(rhs.count(k) ? rhs[k] : 0, F.mul(term.c, c));
                if (v == 0)
                    rhs.erase(k);
                else
                    rhs[k] = v;
            }
        }
        if (lhs != rhs)
            return fail("naturality fails on '" + A.elems[x].name + "' at degree " +
                        std::to_string(t));
    }
    return true;
}

std::vector<MargolisSlice> margolis_homology(const Comodule& M, int i, long long t_lo,
                                             long long t_hi, int threads) {
    if (i < 0 || i > M.n) throw std::invalid_argument("Q index out of range");
    if (t_hi < t_lo) return {};
    long long d = M.qi_degree(i);
    if (M.complete_through != LLONG_MAX && t_hi + d > M.complete_through)
        throw std::invalid_argument("Margolis window needs degrees through " +
                                    std::to_string(t_hi + d) + " but the module is only " +
                                    "complete through " + std::to_string(M.complete_through));
    FpCtx F(M.p);
    std::vector<MargolisSlice> out(static_cast<size_t>(t_hi - t_lo + 1));
    parallel_for(threads, out.size(), [&](size_t idx) {
        long long t = t_lo + static_cast<long long>(idx);
        MargolisSlice s;
        s.t = t;
        // Span of the incoming image, grown by each accepted representative,
        // so representatives are reduced against the image and each other.
        EchelonSpan all;
        for (const auto& col : matrix_columns(M.q_matrix(i, t + d))) all.insert(F, col);
        for (const auto& k : kernel_basis(F, M.q_matrix(i, t))) {
            SparseVec r = all.reduce(F, k);
            if (r.zero()) continue;
            if (r.lead_coeff() != 1) r = scale(F, F.inv(r.lead_coeff()), r);
            all.insert(F, r);
            s.reps.push_back(std::move(r));
        }
        s.dim = static_cast<uint32_t>(s.reps.size());
        out[idx] = std::move(s);
    });
    return out;
}

std::vector<MargolisSlice> margolis_homology_by_length(const Comodule& M, int i, long long t_lo,
                                                       long long t_hi) {
    if (i < 0 || i > M.n) throw std::invalid_argument("Q index out of range");
    long long d = M.qi_degree(i);
    if (M.complete_through != LLONG_MAX && t_hi + d > M.complete_through)
        throw std::invalid_argument("Margolis window exceeds the completeness bound");
    FpCtx F(M.p);
    std::vector<MargolisSlice> out;
    for (long long t = t_lo; t <= t_hi; ++t) {
        const auto& ids = M.ids_at(t);
        if (ids.empty()) continue;
        std::set<int> lens;
        for (uint32_t id : ids) {
            if (M.elems[id].len < 0)
                throw std::invalid_argument("length-graded homology needs length-graded elements");
            lens.insert(M.elems[id].len);
        }
        FpMatrix qt = M.q_matrix(i, t);
        FpMatrix qin = M.q_matrix(i, t + d);
        for (int len : lens) {
            // Columns of this length; Q_i sends them to length len - 1.
            std::vector<uint32_t> cols;
            for (uint32_t pos = 0; pos < ids.size(); ++pos)
                if (M.elems[ids[pos]].len == len) cols.push_back(pos);
            FpMatrix sub(qt.rows, static_cast<uint32_t>(cols.size()));
            for (uint32_t r = 0; r < qt.rows; ++r)
                for (uint32_t j = 0; j < cols.size(); ++j) {
                    uint32_t v = coeff_of(qt.row[r], cols[j]);
                    if (v) sub.set(r, j, v);
                }
            EchelonSpan rel;
            const auto& ids_in = M.ids_at(t + d);
            for (uint32_t c = 0; c < qin.cols; ++c) {
                if (M.elems[ids_in[c]].len != len + 1) continue;
                SparseVec img;
                for (uint32_t r = 0; r < qin.rows; ++r) {
                    uint32_t v = coeff_of(qin.row[r], c);
                    if (v) img.e.emplace_back(r, v);
                }
                rel.insert(F, img);
            }
            MargolisSlice s;
            s.t = t;
            s.len = len;
            EchelonSpan canon;
            for (const auto& k : kernel_basis(F, sub)) {
                SparseVec lifted;
                for (const auto& [j, c] : k.e) lifted.e.emplace_back(cols[j], c);
                std::sort(lifted.e.begin(), lifted.e.end());
                SparseVec r = rel.reduce(F, lifted);
                r = canon.reduce(F, r);
                if (!r.zero()) {
                    if (r.lead_coeff() != 1) r = scale(F, F.inv(r.lead_coeff()), r);
                    canon.insert(F, r);
                }
            }
            for (const auto& [piv, v] : canon.rows) {
                (void)piv;
                s.reps.push_back(v);
            }
            s.dim = static_cast<uint32_t>(s.reps.size());
            out.push_back(std::move(s));
        }
    }
    return out;
}

}  // namespace coops
