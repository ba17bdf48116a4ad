#include "core/inductive.h"

#include <algorithm>
#include <map>
#include <memory>
#include <stdexcept>
#include <utility>

#include "core/browngitler.h"
#include "core/koszul.h"

namespace coops {

namespace {

Monomial z_mono(long long e1, long long e2, long long e3) {
    Monomial m;
    m.ze = {static_cast<uint32_t>(e1), static_cast<uint32_t>(e2), static_cast<uint32_t>(e3)};
    m.trim();
    return m;
}

Monomial mono_mul(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    if (r.ze.size() < b.ze.size()) r.ze.resize(b.ze.size(), 0);
    for (size_t k = 0; k < b.ze.size(); ++k) r.ze[k] += b.ze[k];
    if (r.taus & b.taus) throw std::logic_error("mono_mul: repeated exterior factor");
    r.taus |= b.taus;
    r.trim();
    return r;
}

TableGen plain_gen(uint32_t p, const Monomial& m, bool red, long long i2, long long i3) {
    return TableGen{mono_str(m), m, false, mono_degree(m, p), red, i2, i3};
}

void sort_gens(uint32_t p, std::vector<TableGen>& gens) {
    std::stable_sort(gens.begin(), gens.end(), [p](const TableGen& a, const TableGen& b) {
        long long da = mono_degree(a.mono, p), db = mono_degree(b.mono, p);
        if (da != db) return da < db;
        if (a.i3 != b.i3) return a.i3 < b.i3;
        return a.i2 < b.i2;
    });
}

TableLine leaf_line(uint32_t p, long long m) {
    long long q = 2LL * (p - 1);
    TableLine L;
    L.susps = {q * p * m};
    L.label = m == 0 ? "F_" + std::to_string(p) : "l_" + std::to_string(m);
    for (long long c = 0; c <= m; ++c)
        L.gens.push_back(plain_gen(p, z_mono(p * (m - c), c, 0), false, c, 0));
    return L;
}

TableRow make_row(uint32_t p, long long m, const std::vector<TableRow>& rows) {
    long long q = 2LL * (p - 1);
    TableRow r;
    r.m = m;
    r.susp = q * p * m;
    if (m < p) {
        r.lines.push_back(leaf_line(p, m));
        return r;
    }
    r.j = m / p;
    r.i = m % p;

    TableLine Q;
    Q.susps = {r.susp};
    Q.label = "Q^" + std::to_string(p * r.j - 1) + " A//E(1)";
    for (long long i3 = 0; p * i3 <= p * r.j - 1; ++i3)
        for (long long i2 = 0; i2 + p * i3 <= p * r.j - 1; ++i2) {
            long long a = p * m - p * i2 - p * p * i3;
            Q.gens.push_back(plain_gen(p, z_mono(a, i2, i3), a < p * p, i2, i3));
        }
    sort_gens(p, Q.gens);
    r.lines.push_back(Q);

    if (r.i == 0) {
        // ell_{pj} splits off a sigma-shifted copy of every summand of ell_j.
        for (const TableLine& src : rows[static_cast<size_t>(r.j)].lines) {
            TableLine L = src;
            for (auto& s : L.susps) s += r.susp;
            for (auto& n : L.lfac) n = mono_str(shift_up(parse_mono(n)));
            for (auto& n : L.rfac) n = mono_str(shift_up(parse_mono(n)));
            for (auto& g : L.gens) {
                g.mono = shift_up(g.mono);
                g.deg = mono_degree(g.mono, p) + (g.v2 ? 2LL * p * p - 1 : 0);
                g.name = (g.v2 ? "v2 " : "") + mono_str(g.mono);
                g.red = false;
            }
            r.lines.push_back(std::move(L));
        }
    } else {
        TableLine T;
        T.tensor = true;
        T.susps = {q * p * (m + r.j)};
        T.label = "l_" + std::to_string(r.j) + " (x) l_" + std::to_string(r.i);
        const auto& lg = rows[static_cast<size_t>(r.j)].lines[0].gens;
        const auto& rg = rows[static_cast<size_t>(r.i)].lines[0].gens;
        for (const auto& g : lg) T.lfac.push_back(mono_str(shift_up(g.mono)));
        for (const auto& g : rg) T.rfac.push_back(g.name);
        for (const auto& gl : lg)
            for (const auto& gr : rg) {
                Monomial prod = mono_mul(shift_up(gl.mono), gr.mono);
                T.gens.push_back(plain_gen(p, prod, false, 0, 0));
            }
        r.lines.push_back(std::move(T));
    }

    TableLine one;
    one.label = "l_" + std::to_string(r.j - 1) + "[1]";
    for (long long K = 1; K <= p - 1 - r.i; ++K) {
        size_t before = one.gens.size();
        for (long long i3 = 0; i3 <= r.j - 1; ++i3) {
            long long i2 = m - p + K - p * i3;
            if (i2 < 0) continue;
            Monomial u = z_mono(p * (p - K), i2, i3);
            one.gens.push_back(
                TableGen{"v2 " + mono_str(u), u, true, mono_degree(u, p) + 2LL * p * p - 1, true, i2, i3});
        }
        if (one.gens.size() > before) one.susps.push_back(r.susp + phi_shift(p, r.j, r.i + K));
    }
    if (!one.gens.empty()) {
        sort_gens(p, one.gens);
        r.lines.push_back(std::move(one));
    }
    return r;
}

void check_row_invariants(uint32_t p, const TableRow& r) {
    // Every non-v2 generator has weight exactly p^2 m, and the v_2-multiples
    // of the row's own cokernel line match its red generators one to one.
    std::vector<Monomial> reds, unders;
    for (const auto& L : r.lines)
        for (const auto& g : L.gens) {
            if (!g.v2 && r.m > 0 && mono_weight(g.mono, p) != p * p * r.m)
                throw std::logic_error("table row " + std::to_string(r.m) + ": generator " + g.name +
                                       " has wrong weight");
            if (g.red && !g.v2) reds.push_back(g.mono);
            if (g.v2 && g.red) unders.push_back(g.mono);
        }
    auto lt = [](const Monomial& a, const Monomial& b) { return lex_less(a, b); };
    std::sort(reds.begin(), reds.end(), lt);
    std::sort(unders.begin(), unders.end(), lt);
    if (reds != unders)
        throw std::logic_error("table row " + std::to_string(r.m) +
                               ": red generators and v_2-multiples do not match");
}

}  // namespace

std::string TableLine::render() const {
    std::string s;
    if (!(susps.size() == 1 && susps[0] == 0)) {
        for (size_t k = 0; k < susps.size(); ++k)
            s += (k ? "+" : "") + std::string("S^") + std::to_string(susps[k]);
        s += " ";
    }
    s += label + ": ";
    if (tensor) {
        s += "{";
        for (size_t k = 0; k < lfac.size(); ++k) s += (k ? ", " : "") + lfac[k];
        s += "} x {";
        for (size_t k = 0; k < rfac.size(); ++k) s += (k ? ", " : "") + rfac[k];
        s += "}";
        return s;
    }
    for (size_t k = 0; k < gens.size(); ++k)
        s += (k ? ", " : "") + std::string(gens[k].red ? "*" : "") + gens[k].name;
    return s;
}

std::vector<std::string> InductiveTable::render() const {
    std::vector<std::string> out;
    for (const auto& r : rows) {
        std::string h = "== ";
        if (r.m > 0) h += "S^" + std::to_string(r.susp) + " ";
        h += "l_" + std::to_string(r.m) + " ==";
        out.push_back(std::move(h));
        for (const auto& L : r.lines) out.push_back(L.render());
    }
    return out;
}

InductiveTable build_inductive_table(uint32_t p, long long m_max) {
    if (m_max < 0) throw std::invalid_argument("build_inductive_table: m_max must be nonnegative");
    if (m_max > static_cast<long long>(p) * p)
        throw std::invalid_argument(
            "build_inductive_table: rows beyond p^2 need tensor factors that are not leaves");
    InductiveTable T;
    T.p = p;
    T.m_max = m_max;
    for (long long m = 0; m <= m_max; ++m) {
        T.rows.push_back(make_row(p, m, T.rows));
        check_row_invariants(p, T.rows.back());
    }
    return T;
}

TableDiff diff_against_golden(const std::vector<std::string>& computed, const std::string& golden) {
    TableDiff d;
    std::vector<std::string> lines;
    std::string cur;
    for (char c : golden) {
        if (c == '\n') {
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) lines.push_back(std::move(cur));

    struct Pending {
        std::string from, to, text;
    };
    std::vector<Pending> pending;
    size_t ci = 0;
    for (const auto& line : lines) {
        if (line.rfind("#flag ", 0) == 0) {
            std::string body = line.substr(6);
            if (body.rfind("note ", 0) == 0) {
                d.flagged.push_back(body);
                continue;
            }
            auto arrow = body.find(" -> ");
            if (arrow == std::string::npos) {
                d.deltas.push_back("malformed flag: " + line);
                continue;
            }
            std::string from = body.substr(0, arrow);
            std::string rest = body.substr(arrow + 4);
            auto par = rest.find(" (");
            pending.push_back({from, par == std::string::npos ? rest : rest.substr(0, par), body});
            continue;
        }
        if (!line.empty() && line[0] == '#') continue;
        if (ci >= computed.size()) {
            d.deltas.push_back("missing computed line for: " + line);
            pending.clear();
            continue;
        }
        const std::string& got = computed[ci++];
        if (line == got) {
            for (const auto& pn : pending) d.deltas.push_back("unused flag: " + pn.text);
        } else {
            std::string fixed = line;
            for (const auto& pn : pending) {
                auto at = fixed.find(pn.from);
                if (at != std::string::npos) fixed.replace(at, pn.from.size(), pn.to);
            }
            if (fixed == got)
                for (const auto& pn : pending) d.flagged.push_back(pn.text);
            else
                d.deltas.push_back("expected: " + line + " | got: " + got);
        }
        pending.clear();
    }
    for (const auto& pn : pending) d.deltas.push_back("dangling flag: " + pn.text);
    for (; ci < computed.size(); ++ci) d.deltas.push_back("extra computed line: " + computed[ci]);
    return d;
}

LengthRelation check_length_relation(uint32_t p, const Monomial& m) {
    if (mono_length(m) != 0)
        throw std::invalid_argument("check_length_relation: need a z-monomial, got " + mono_str(m));
    if (m.ze_at(1) < p * p)
        throw std::invalid_argument("check_length_relation: z1^{p^2} must divide the monomial, got " +
                                    mono_str(m));
    LengthRelation R;
    R.m = m;
    R.m1 = m;
    R.m1.ze[0] -= p * p;
    if (R.m1.ze.size() < 2) R.m1.ze.resize(2, 0);
    R.m1.ze[1] += p;
    R.m2 = m;
    R.m2.ze[0] -= p * p;
    if (R.m2.ze.size() < 3) R.m2.ze.resize(3, 0);
    R.m2.ze[2] += 1;
    R.m1.trim();
    R.m2.trim();
    R.deg = mono_degree(m, p);

    FpCtx F(p);
    long long w = mono_weight(m, p);
    auto mod = std::make_shared<Comodule>(build_bg(p, 2, w / p, BgKind::M).c);
    long long t_top = R.deg + 2LL * p * p - 1;
    KoszulExt K = koszul_ext(mod, 1, t_top);

    SparseVec sum;
    const Monomial* ms[3] = {&R.m, &R.m1, &R.m2};
    const int vi[3] = {2, 1, 0};
    std::vector<uint32_t> zero_ve(3, 0);
    for (int k = 0; k < 3; ++k) {
        int id = mod->find_mono(*ms[k]);
        if (id < 0) {
            R.detail = "monomial " + mono_str(*ms[k]) + " is not in the weight piece";
            return R;
        }
        long long t = mod->elems[static_cast<size_t>(id)].deg;
        uint32_t idx = K.slice_index(0, t, zero_ve, static_cast<uint32_t>(id));
        auto cls = K.classify(0, t, SparseVec::unit(idx));
        SparseVec cv;
        for (uint32_t g = 0; g < cls.size(); ++g)
            if (cls[g]) cv.e.emplace_back(g, cls[g]);
        sum = add(F, apply(F, v_mult(K, vi[k], 0, t), cv), sum);
    }
    R.holds = sum.zero();
    if (!R.holds)
        R.detail = "v_2 " + mono_str(R.m) + " + v_1 " + mono_str(R.m1) + " + v_0 " + mono_str(R.m2) +
                   " is nonzero in Ext^1";
    return R;
}

std::vector<LengthRelation> length_relations_for_row(uint32_t p, long long m) {
    std::vector<LengthRelation> out;
    if (m < p) return out;
    InductiveTable T = build_inductive_table(p, m);
    for (const auto& g : T.rows.back().lines[0].gens)
        if (g.mono.ze_at(1) >= p * p) out.push_back(check_length_relation(p, g.mono));
    return out;
}

std::string ext0_name_check(uint32_t p, long long m) {
    InductiveTable T = build_inductive_table(p, m);
    const TableRow& r = T.rows.back();
    std::vector<const TableGen*> gens;
    long long t_top = 0;
    for (const auto& L : r.lines)
        for (const auto& g : L.gens)
            if (!g.v2) {
                gens.push_back(&g);
                t_top = std::max(t_top, g.deg);
            }
    auto mod = std::make_shared<Comodule>(build_bg(p, 2, p * m, BgKind::M).c);
    KoszulExt K = koszul_ext(mod, 0, t_top);
    std::string errs;
    for (const TableGen* g : gens) {
        const KoszulCell* c = K.cell(0, g->deg);
        bool found = false;
        if (c)
            for (const auto& n : c->names)
                if (n == g->name) found = true;
        if (!found)
            errs += "row " + std::to_string(m) + ": " + g->name + " is not an Ext^0 name of M_2(" +
                    std::to_string(p * m) + ") at t = " + std::to_string(g->deg) + "\n";
    }
    return errs;
}

std::vector<HiddenExtension> hidden_extension_checks(uint32_t p, long long m) {
    std::vector<HiddenExtension> out;
    if (m < p) return out;
    InductiveTable T = build_inductive_table(p, m);
    const TableRow& r = T.rows.back();
    std::vector<const TableGen*> reds;
    for (const auto& g : r.lines[0].gens)
        if (g.red) reds.push_back(&g);
    if (reds.empty()) return out;

    FpCtx F(p);
    FourTermSequence ft = build_four_term(p, r.j, static_cast<int>(r.i));
    const Comodule& T1 = *ft.t1;
    const Comodule& T2 = *ft.t2;

    // E = im(f1), with its basis matched to T2 monomials.
    std::vector<SparseVec> span;
    for (uint32_t id = 0; id < T1.total_dim(); ++id) {
        long long t = T1.elems[id].deg;
        SparseVec img = ft.f1.apply_at(F, t, SparseVec::unit(T1.elems[id].pos));
        if (img.zero()) continue;
        const auto& ids = T2.ids_at(t + ft.f1.shift);
        SparseVec g;
        for (const auto& [pos, c] : img.e) g.e.emplace_back(ids[pos], c);
        std::sort(g.e.begin(), g.e.end());
        span.push_back(std::move(g));
    }
    auto E = std::make_shared<Comodule>(sub_comodule(T2, span, "im f1"));
    if (!E->monomial_basis) throw std::logic_error("hidden_extension_checks: im f1 lost its monomial basis");

    long long t_top = 0;
    for (const TableGen* g : reds)
        t_top = std::max(t_top, mono_degree(z_mono(g->i2, g->i3, 0), p) + 2LL * p * p - 1);
    KoszulExt KE = koszul_ext(E, 1, t_top);
    KoszulExt K1 = koszul_ext(ft.t1, 1, t_top);
    std::vector<uint32_t> zero_ve(3, 0);

    for (const TableGen* g : reds) {
        HiddenExtension H;
        H.m = m;
        H.K = p - g->mono.ze_at(1) / p;
        H.i3 = g->i3;
        H.source = g->name;
        H.target = "v2 " + g->name;

        Monomial x = z_mono(g->i2, g->i3, 0);
        Monomial xt2 = x;
        xt2.taus |= 1u << 2;
        int idq = T2.find_mono(xt2);
        if (idq < 0 || E->find_mono(xt2) >= 0) {
            H.detail = mono_str(xt2) + " is not a cokernel class";
            out.push_back(std::move(H));
            continue;
        }
        long long tq = T2.elems[static_cast<size_t>(idq)].deg;

        // delta([x t2]): lift to x t2 in T2, apply the Koszul differential,
        // land in C^1 of E.
        SparseVec dvec;
        bool inside = true;
        for (int i = 0; i <= 2 && inside; ++i) {
            long long qi = T2.qi_degree(i);
            SparseVec img = apply(F, T2.q_matrix(i, tq), SparseVec::unit(T2.elems[static_cast<size_t>(idq)].pos));
            const auto& ids = T2.ids_at(tq - qi);
            std::vector<uint32_t> ve = zero_ve;
            ve[static_cast<size_t>(i)] = 1;
            for (const auto& [pos, c] : img.e) {
                int eid = E->find_mono(T2.elems[ids[pos]].mono);
                if (eid < 0) {
                    H.detail = "Q_" + std::to_string(i) + "(" + mono_str(xt2) + ") leaves im f1";
                    inside = false;
                    break;
                }
                dvec = add(F, SparseVec::unit(KE.slice_index(1, tq, ve, static_cast<uint32_t>(eid)), c), dvec);
            }
        }
        if (!inside) {
            out.push_back(std::move(H));
            continue;
        }
        auto dy = KE.classify(1, tq, dvec);

        // v_2 [x] in Ext^1(ell_m), then pushed along f1.
        int idx1 = T1.find_mono(x);
        if (idx1 < 0) {
            H.detail = mono_str(x) + " is not in ell_" + std::to_string(m);
            out.push_back(std::move(H));
            continue;
        }
        long long tx = T1.elems[static_cast<size_t>(idx1)].deg;
        auto cls0 = K1.classify(0, tx, SparseVec::unit(K1.slice_index(0, tx, zero_ve, static_cast<uint32_t>(idx1))));
        SparseVec c0;
        for (uint32_t k = 0; k < cls0.size(); ++k)
            if (cls0[k]) c0.e.emplace_back(k, cls0[k]);
        SparseVec vx = apply(F, v_mult(K1, 2, 0, tx), c0);
        if (vx.zero()) {
            H.detail = "v_2 [" + mono_str(x) + "] vanishes in Ext^1(ell_" + std::to_string(m) + ")";
            out.push_back(std::move(H));
            continue;
        }
        const KoszulCell* cell1 = K1.cell(1, tq);
        SparseVec chain;
        for (const auto& [gidx, gc] : vx.e) chain = axpy(F, gc, cell1->reps[gidx], chain);
        const auto& bslice = K1.basis.at({1, tq});
        SparseVec pushed;
        for (const auto& [bidx, bc] : chain.e) {
            const KoszulBasisElem& be = bslice[bidx];
            long long dsrc = T1.elems[be.id].deg;
            SparseVec img = ft.f1.apply_at(F, dsrc, SparseVec::unit(T1.elems[be.id].pos, bc));
            const auto& ids = T2.ids_at(dsrc + ft.f1.shift);
            for (const auto& [pos, c] : img.e) {
                int eid = E->find_mono(T2.elems[ids[pos]].mono);
                if (eid < 0) throw std::logic_error("hidden_extension_checks: f1 image left im f1");
                pushed = add(F, SparseVec::unit(KE.slice_index(1, tq, be.ve, static_cast<uint32_t>(eid)), c),
                             pushed);
            }
        }
        auto re = KE.classify(1, tq, pushed);

        bool dy_zero = true, re_zero = true;
        for (uint32_t v : dy)
            if (v) dy_zero = false;
        for (uint32_t v : re)
            if (v) re_zero = false;
        if (dy_zero || re_zero) {
            H.detail = dy_zero ? "the connecting image of [" + mono_str(xt2) + "] vanishes"
                               : "the corestriction of v_2 [" + mono_str(x) + "] vanishes";
            out.push_back(std::move(H));
            continue;
        }
        uint32_t k0 = 0;
        while (dy[k0] == 0) ++k0;
        uint32_t c = F.mul(re[k0], F.inv(dy[k0]));
        bool colinear = true;
        for (uint32_t k = 0; k < dy.size(); ++k)
            if (re[k] != F.mul(c, dy[k])) colinear = false;
        if (!colinear) {
            H.detail = "corestriction and connecting image are not colinear";
            out.push_back(std::move(H));
            continue;
        }
        H.unit = c;
        H.holds = true;
        out.push_back(std::move(H));
    }
    return out;
}

}  // namespace coops
