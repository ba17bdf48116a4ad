#include "core/koszul.h"

#include <algorithm>
#include <climits>
#include <functional>
#include <stdexcept>
#include <tuple>

#include "core/util.h"

namespace coops {

namespace {

// All exponent tuples (e_0..e_n) with sum s, ascending lex.
std::vector<std::vector<uint32_t>> v_tuples(int n, int s) {
    std::vector<std::vector<uint32_t>> out;
    std::vector<uint32_t> cur(static_cast<size_t>(n) + 1, 0);
    std::function<void(int, int)> rec = [&](int i, int left) {
        if (i == n) {
            cur[i] = static_cast<uint32_t>(left);
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= left; ++e) {
            cur[i] = static_cast<uint32_t>(e);
            rec(i + 1, left - e);
        }
    };
    rec(0, s);
    return out;
}

long long v_degree(const Comodule& M, const std::vector<uint32_t>& ve) {
    long long d = 0;
    for (size_t i = 0; i < ve.size(); ++i) d += static_cast<long long>(ve[i]) * M.qi_degree(static_cast<int>(i));
    return d;
}

std::string v_string(const std::vector<uint32_t>& ve) {
    std::string out;
    for (size_t i = 0; i < ve.size(); ++i) {
        if (!ve[i]) continue;
        if (!out.empty()) out += ' ';
        out += "v" + std::to_string(i);
        if (ve[i] > 1) out += "^" + std::to_string(ve[i]);
    }
    return out;
}

std::string basis_name(const Comodule& M, const KoszulBasisElem& b) {
    std::string v = v_string(b.ve);
    const std::string& x = M.elems[b.id].name;
    if (v.empty()) return x;
    if (x == "1") return v;
    return v + " " + x;
}

bool basis_less(const KoszulBasisElem& a, const KoszulBasisElem& b) {
    if (a.ve != b.ve) return a.ve < b.ve;
    return a.id < b.id;
}

}  // namespace

uint32_t KoszulExt::slice_dim(int s, long long t) const {
    auto it = basis.find({s, t});
    return it == basis.end() ? 0 : static_cast<uint32_t>(it->second.size());
}

uint32_t KoszulExt::dim_at(int s, long long t) const {
    auto it = cells.find({s, t});
    return it == cells.end() ? 0 : it->second.dim;
}

const KoszulCell* KoszulExt::cell(int s, long long t) const {
    auto it = cells.find({s, t});
    return it == cells.end() ? nullptr : &it->second;
}

uint32_t KoszulExt::slice_index(int s, long long t, const std::vector<uint32_t>& ve,
                                uint32_t id) const {
    auto it = basis.find({s, t});
    if (it == basis.end()) throw std::logic_error("empty Koszul slice");
    KoszulBasisElem key{ve, id};
    auto pos = std::lower_bound(it->second.begin(), it->second.end(), key, basis_less);
    if (pos == it->second.end() || pos->ve != ve || pos->id != id)
        throw std::logic_error("Koszul basis element not found in its slice");
    return static_cast<uint32_t>(pos - it->second.begin());
}

std::vector<uint32_t> KoszulExt::classify(int s, long long t, const SparseVec& v) const {
    auto it = cells.find({s, t});
    if (it == cells.end()) {
        if (!v.zero()) throw std::logic_error("nonzero vector classified in an empty cell");
        return {};
    }
    const KoszulCell& c = it->second;
    FpCtx F(mod->p);
    SparseVec r = c.image.reduce(F, v);
    std::vector<uint32_t> coords(c.reps.size(), 0);
    for (size_t k = 0; k < c.reps.size(); ++k) {
        uint32_t a = coeff_of(r, c.reps[k].lead());
        if (!a) continue;
        coords[k] = a;
        r = axpy(F, F.neg(a), c.reps[k], r);
    }
    if (!r.zero()) throw std::logic_error("vector is not a cycle modulo the image");
    return coords;
}

KoszulExt koszul_ext(std::shared_ptr<const Comodule> mod, int s_max, long long t_max,
                     int threads) {
    if (!mod) throw std::invalid_argument("null module");
    if (s_max < 0 || t_max < 0) throw std::invalid_argument("empty Ext window");
    const Comodule& M = *mod;
    if (M.complete_through != LLONG_MAX && t_max - M.suspension > M.complete_through)
        throw std::invalid_argument(
            "Ext window needs module degrees through " + std::to_string(t_max - M.suspension) +
            " but '" + M.label + "' is only complete through " +
            std::to_string(M.complete_through));
    FpCtx F(M.p);

    KoszulExt K;
    K.mod = mod;
    K.s_max = s_max;
    K.t_max = t_max;

    // Slices for s <= s_max + 2 so d^2 = 0 can be checked on the whole window.
    std::vector<std::vector<std::vector<uint32_t>>> tuples;
    for (int s = 0; s <= s_max + 2; ++s) tuples.push_back(v_tuples(M.n, s));
    for (int s = 0; s <= s_max + 2; ++s) {
        for (long long t = 0; t <= t_max; ++t) {
            std::vector<KoszulBasisElem> slice;
            for (const auto& ve : tuples[s]) {
                long long u = t - M.suspension - v_degree(M, ve);
                if (u < 0) continue;
                for (uint32_t id : M.ids_at(u)) slice.push_back({ve, id});
            }
            if (!slice.empty()) K.basis[{s, t}] = std::move(slice);
        }
    }

    // Differentials d^{s,t}: C^{s,t} -> C^{s+1,t}.
    std::map<std::pair<int, long long>, FpMatrix> d;
    std::vector<std::pair<int, long long>> keys;
    for (int s = 0; s <= s_max + 1; ++s)
        for (long long t = 0; t <= t_max; ++t)
            if (K.slice_dim(s, t) || K.slice_dim(s + 1, t)) {
                d[{s, t}] = FpMatrix();
                keys.push_back({s, t});
            }
    parallel_for(threads, keys.size(), [&](size_t idx) {
        auto [s, t] = keys[idx];
        const auto bit = K.basis.find({s, t});
        FpMatrix A(K.slice_dim(s + 1, t), K.slice_dim(s, t));
        if (bit != K.basis.end()) {
            for (uint32_t c = 0; c < bit->second.size(); ++c) {
                const KoszulBasisElem& b = bit->second[c];
                for (const CoTerm& term : M.coact[b.id]) {
                    if (!term.taus || (term.taus & (term.taus - 1))) continue;
                    int i = 0;
                    while (!(term.taus & (1u << i))) ++i;
                    std::vector<uint32_t> ve = b.ve;
                    ++ve[i];
                    A.set(K.slice_index(s + 1, t, ve, term.target), c, term.c);
                }
            }
        }
        d[{s, t}] = std::move(A);
    });

    for (int s = 0; s <= s_max; ++s)
        for (long long t = 0; t <= t_max; ++t) {
            auto lo = d.find({s, t});
            auto hi = d.find({s + 1, t});
            if (lo == d.end() || hi == d.end()) continue;
            if (!is_zero(mat_mul(F, hi->second, lo->second)))
                throw std::logic_error("Koszul differential fails d^2 = 0 at s = " +
                                       std::to_string(s) + ", t = " + std::to_string(t));
        }

    std::vector<std::pair<int, long long>> cell_keys;
    for (int s = 0; s <= s_max; ++s)
        for (long long t = 0; t <= t_max; ++t)
            if (K.slice_dim(s, t)) cell_keys.push_back({s, t});
    std::vector<KoszulCell> done(cell_keys.size());
    parallel_for(threads, cell_keys.size(), [&](size_t idx) {
        auto [s, t] = cell_keys[idx];
        KoszulCell cell;
        EchelonSpan all;
        if (s > 0) {
            auto pit = d.find({s - 1, t});
            if (pit != d.end())
                for (const auto& col : matrix_columns(pit->second)) {
                    cell.image.insert(F, col);
                    all.insert(F, col);
                }
        }
        const auto& bslice = K.basis.at({s, t});
        for (const auto& k : kernel_basis(F, d.at({s, t}))) {
            SparseVec r = all.reduce(F, k);
            if (r.zero()) continue;
            if (r.lead_coeff() != 1) r = scale(F, F.inv(r.lead_coeff()), r);
            all.insert(F, r);
            cell.names.push_back(basis_name(M, bslice[r.lead()]));
            cell.reps.push_back(std::move(r));
        }
        cell.dim = static_cast<uint32_t>(cell.reps.size());
        done[idx] = std::move(cell);
    });
    for (size_t i = 0; i < cell_keys.size(); ++i)
        if (done[i].dim || done[i].image.dim()) K.cells[cell_keys[i]] = std::move(done[i]);
    return K;
}

FpMatrix v_mult(const KoszulExt& k, int i, int s, long long t) {
    const Comodule& M = *k.mod;
    if (i < 0 || i > M.n) throw std::invalid_argument("v index out of range");
    long long t2 = t + M.qi_degree(i);
    if (s + 1 > k.s_max || t2 > k.t_max)
        throw std::out_of_range("v-multiplication target outside the window");
    FpCtx F(M.p);
    FpMatrix A(k.dim_at(s + 1, t2), k.dim_at(s, t));
    const KoszulCell* src = k.cell(s, t);
    if (!src || !src->dim) return A;
    const auto& bslice = k.basis.at({s, t});
    for (uint32_t g = 0; g < src->dim; ++g) {
        SparseVec img;
        for (const auto& [idx, c] : src->reps[g].e) {
            std::vector<uint32_t> ve = bslice[idx].ve;
            ++ve[static_cast<size_t>(i)];
            img = axpy(F, c, SparseVec::unit(k.slice_index(s + 1, t2, ve, bslice[idx].id)), img);
        }
        std::vector<uint32_t> coords = k.classify(s + 1, t2, img);
        for (uint32_t r = 0; r < coords.size(); ++r)
            if (coords[r]) A.set(r, g, coords[r]);
    }
    return A;
}

std::vector<TorsionLine> torsion_report(const KoszulExt& k, int margin) {
    const Comodule& M = *k.mod;
    FpCtx F(M.p);
    std::map<std::tuple<int, int, long long>, FpMatrix> cache;
    auto mult = [&](int i, int s, long long t) -> const FpMatrix& {
        auto key = std::make_tuple(i, s, t);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, v_mult(k, i, s, t)).first;
        return it->second;
    };
    std::vector<TorsionLine> out;
    for (const auto& [key, cell] : k.cells) {
        for (uint32_t g = 0; g < cell.dim; ++g) {
            TorsionLine line;
            line.s = key.first;
            line.t = key.second;
            line.name = cell.names[g];
            for (int i = 0; i <= M.n && i < 3; ++i) {
                SparseVec v = SparseVec::unit(g);
                int s = key.first;
                long long t = key.second;
                int steps = 0;
                while (true) {
                    if (s + 1 > k.s_max || t + M.qi_degree(i) > k.t_max) {
                        line.kind[i] = steps >= margin ? TorsionLine::FREE : TorsionLine::UNDECIDED;
                        break;
                    }
                    v = apply(F, mult(i, s, t), v);
                    ++steps;
                    if (v.zero()) {
                        line.kind[i] = TorsionLine::ORDER;
                        line.order[i] = steps;
                        break;
                    }
                    ++s;
                    t += M.qi_degree(i);
                }
            }
            out.push_back(std::move(line));
        }
    }
    return out;
}

ExtChart make_chart(const KoszulExt& k, bool with_v) {
    const Comodule& M = *k.mod;
    FpCtx F(M.p);
    ExtChart chart;
    chart.p = M.p;
    chart.n = M.n;
    chart.module = M.label;
    chart.s_max = k.s_max;
    chart.t_max = k.t_max;
    for (const auto& [key, cell] : k.cells) {
        if (!cell.dim) continue;
        ExtChart::Cell c;
        c.s = key.first;
        c.t = key.second;
        c.dim = cell.dim;
        c.gens = cell.names;
        if (with_v) {
            for (int i = 0; i <= M.n; ++i) {
                std::vector<std::string> col(cell.dim);
                long long t2 = key.second + M.qi_degree(i);
                if (key.first + 1 > k.s_max || t2 > k.t_max) {
                    for (auto& s : col) s = "?";
                } else {
                    FpMatrix A = v_mult(k, i, key.first, key.second);
                    const KoszulCell* tgt = k.cell(key.first + 1, t2);
                    for (uint32_t g = 0; g < cell.dim; ++g) {
                        std::string out;
                        for (uint32_t r = 0; r < A.rows; ++r) {
                            uint32_t a = A.get(r, g);
                            if (!a) continue;
                            if (!out.empty()) out += " + ";
                            if (a != 1) out += std::to_string(a) + " ";
                            out += tgt->names[r];
                        }
                        col[g] = out.empty() ? "0" : out;
                    }
                }
                c.v.push_back(std::move(col));
            }
        }
        chart.cells.push_back(std::move(c));
    }
    std::sort(chart.cells.begin(), chart.cells.end(), [](const auto& a, const auto& b) {
        if (a.s != b.s) return a.s < b.s;
        return a.t < b.t;
    });
    return chart;
}

}  // namespace coops
