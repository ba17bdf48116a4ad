#include "core/browngitler.h"

#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/element.h"

namespace coops {

namespace {

std::string bg_label(int i, long long j, BgKind kind, int n) {
    std::ostringstream os;
    os << (kind == BgKind::N ? 'N' : 'M') << '_' << i << '(' << j << ')';
    if (n != i) os << " over E(" << n << ")";
    return os.str();
}

Monomial strip_t2(const Monomial& m) {
    Monomial r = m;
    r.taus &= ~4u;
    return r;
}

// m-part weight: total weight minus the t2 contribution.
long long m_weight(const Monomial& m, uint32_t p) {
    return mono_weight(m, p) - ((m.taus & 4u) ? static_cast<long long>(p) * p : 0);
}

// Sign of rewriting the word m t2 in canonical ascending-index order.
int word_sign(const Monomial& m_part, int eps) {
    return (eps && (mono_length(m_part) & 1)) ? -1 : 1;
}

// A checked isomorphism sending each source basis monomial to a target
// basis monomial with coefficient 1; throws unless it is a natural
// bijection of the expected degree shift.
MappedPair mono_bijection(std::shared_ptr<Comodule> src, std::shared_ptr<Comodule> dst,
                          long long shift, const std::function<Monomial(const Monomial&)>& im,
                          const char* what) {
    MappedPair mp;
    mp.src = std::move(src);
    mp.dst = std::move(dst);
    mp.f.src = mp.src.get();
    mp.f.dst = mp.dst.get();
    mp.f.shift = shift;
    std::vector<char> hit(mp.dst->total_dim(), 0);
    for (const auto& [t, ids] : mp.src->by_deg) {
        FpMatrix A(mp.dst->dim_at(t + shift), static_cast<uint32_t>(ids.size()));
        for (uint32_t col = 0; col < ids.size(); ++col) {
            const CmElem& e = mp.src->elems[ids[col]];
            int tid = mp.dst->find_mono(im(e.mono));
            if (tid < 0 || mp.dst->elems[tid].deg != t + shift)
                throw std::logic_error(std::string(what) + ": image of '" + e.name +
                                       "' leaves the target basis");
            if (hit[tid])
                throw std::logic_error(std::string(what) + ": not injective at '" + e.name + "'");
            hit[tid] = 1;
            A.set(mp.dst->elems[tid].pos, col, 1);
        }
        mp.f.mat.emplace(t, std::move(A));
    }
    for (uint32_t x = 0; x < hit.size(); ++x)
        if (!hit[x])
            throw std::logic_error(std::string(what) + ": misses '" + mp.dst->elems[x].name + "'");
    FpCtx F(mp.src->p);
    std::string why;
    if (!check_comodule_map(F, mp.f, &why))
        throw std::logic_error(std::string(what) + ": " + why);
    return mp;
}

FpMatrix map_matrix_at(const ComoduleMap& f, long long t) {
    auto it = f.mat.find(t);
    if (it != f.mat.end()) return it->second;
    return FpMatrix(f.dst->dim_at(t + f.shift), f.src->dim_at(t));
}

std::pair<Monomial, Monomial> split_pair_name(const std::string& name) {
    auto at = name.find(" (x) ");
    if (at == std::string::npos)
        throw std::logic_error("tensor element '" + name + "' has no pair name");
    return {parse_mono(name.substr(0, at)), parse_mono(name.substr(at + 5))};
}

}  // namespace

BrownGitlerComodule build_bg(uint32_t p, int i, long long j, BgKind kind, int n_coalg) {
    if (i < 0 || j < 0) throw std::invalid_argument("build_bg: need i >= 0 and j >= 0");
    int n = n_coalg < 0 ? i : n_coalg;
    AlgebraSpec s{p, Flavor::AModEn, i, GenSystem::Conjugate, -1};
    auto monos = basis_of_weight(s, static_cast<long long>(p) * j, kind == BgKind::M);
    BrownGitlerComodule bg;
    bg.i = i;
    bg.j = j;
    bg.kind = kind;
    bg.c = comodule_from_monomials(p, i, n, std::move(monos), bg_label(i, j, kind, n), LLONG_MAX);
    return bg;
}

Comodule build_ell(uint32_t p, long long j, int n_coalg) {
    BrownGitlerComodule bg = build_bg(p, 1, j, BgKind::N, n_coalg);
    std::ostringstream os;
    os << "ell_" << j;
    if (n_coalg != 2) os << " over E(" << n_coalg << ")";
    bg.c.label = os.str();
    return std::move(bg.c);
}

Monomial shift_down(const Monomial& m) {
    if (m.sys != GenSystem::Conjugate)
        throw std::invalid_argument("shift_down: conjugate alphabet only");
    if (m.taus & 3u) throw std::invalid_argument("shift_down: t0/t1 factors have no image");
    Monomial r;
    if (m.ze.size() > 1) r.ze.assign(m.ze.begin() + 1, m.ze.end());
    r.taus = m.taus >> 1;
    r.trim();
    return r;
}

Monomial shift_up(const Monomial& m) {
    if (m.sys != GenSystem::Conjugate)
        throw std::invalid_argument("shift_up: conjugate alphabet only");
    if (m.taus >> 31) throw std::invalid_argument("shift_up: exterior index out of range");
    Monomial r;
    if (!m.ze.empty()) {
        r.ze.resize(m.ze.size() + 1, 0);
        for (size_t k = 0; k < m.ze.size(); ++k) r.ze[k + 1] = m.ze[k];
    }
    r.taus = m.taus << 1;
    r.trim();
    return r;
}

MappedPair phi_map(uint32_t p, int i, long long j) {
    if (i < 1) throw std::invalid_argument("phi_map: need i >= 1");
    auto src = std::make_shared<Comodule>(build_bg(p, i, j, BgKind::M, i).c);
    auto dst = std::make_shared<Comodule>(build_bg(p, i - 1, j / p, BgKind::N, i).c);
    long long shift = -2LL * (p - 1) * j;
    auto im = [](const Monomial& m) {
        Monomial t = m;
        if (!t.ze.empty()) t.ze[0] = 0;
        t.trim();
        return shift_down(t);
    };
    return mono_bijection(std::move(src), std::move(dst), shift, im, "phi_map");
}

MappedPair zeta1_suspension(uint32_t p, int i, long long j, int k) {
    if (i < 1 || k < 0 || k >= static_cast<int>(p))
        throw std::invalid_argument("zeta1_suspension: need i >= 1 and 0 <= k < p");
    auto src = std::make_shared<Comodule>(build_bg(p, i, p * j, BgKind::M, i).c);
    auto dst = std::make_shared<Comodule>(build_bg(p, i, p * j + k, BgKind::M, i).c);
    long long shift = 2LL * (p - 1) * k;
    auto im = [k](const Monomial& m) {
        auto prod = mul_mono(m, Monomial::zgen(1, static_cast<uint32_t>(k)));
        return prod->first;
    };
    return mono_bijection(std::move(src), std::move(dst), shift, im, "zeta1_suspension");
}

FiltrationQuotient build_q_quotient(uint32_t p, long long j) {
    if (j < 0) throw std::invalid_argument("build_q_quotient: need j >= 0");
    long long p2 = static_cast<long long>(p) * p;
    Comodule amb = build_a_mod_e(p, 1, 2, WeightBound{p * j + p2, false});
    std::vector<SparseVec> kill;
    for (uint32_t x = 0; x < amb.total_dim(); ++x)
        if (m_weight(amb.elems[x].mono, p) > p * j) kill.push_back(SparseVec::unit(x));
    FiltrationQuotient fq;
    fq.j = j;
    fq.q = std::make_shared<Comodule>(
        quotient_comodule(amb, kill, "Q^" + std::to_string(j) + " A//E(1)"));
    fq.n2j = std::make_shared<Comodule>(build_bg(p, 2, j, BgKind::N, 2).c);
    for (const CmElem& e : fq.q->elems) {
        int eps = (e.mono.taus >> 2) & 1;
        int id = fq.n2j->find_mono(strip_t2(e.mono));
        if (id < 0)
            throw std::logic_error("build_q_quotient: no m-part for '" + e.name + "'");
        fq.kappa.emplace_back(static_cast<uint32_t>(id), eps);
    }
    return fq;
}

bool check_kappa_products(const FiltrationQuotient& fq, std::string* why) {
    const Comodule& Q = *fq.q;
    FpCtx F(Q.p);
    long long w = static_cast<long long>(Q.p) * fq.j;
    auto fail = [&](const std::string& msg) {
        if (why) *why = msg;
        return false;
    };
    for (const CmElem& X : Q.elems)
        for (const CmElem& Y : Q.elems) {
            int ex = (X.mono.taus >> 2) & 1, ey = (Y.mono.taus >> 2) & 1;
            Monomial mx = strip_t2(X.mono), my = strip_t2(Y.mono);
            long long wsum = m_weight(X.mono, Q.p) + m_weight(Y.mono, Q.p);
            // product of the basis classes in Q, as (target id, coefficient)
            int did = -1;
            uint32_t dc = 0;
            auto d = mul_mono(X.mono, Y.mono);
            if (d && wsum <= w) {
                did = Q.find_mono(d->first);
                if (did < 0)
                    return fail("product " + X.name + " * " + Y.name + " escapes the quotient");
                dc = F.mul(F.norm(d->second),
                           F.mul(F.norm(word_sign(mx, ex)), F.norm(word_sign(my, ey))));
            }
            // the same product through kappa: Koszul sign past the m-part,
            // then the word sign of the result
            int kid = -1;
            uint32_t kc = 0;
            if (ex + ey <= 1) {
                auto mm = mul_mono(mx, my);
                if (mm && wsum <= w) {
                    Monomial tgt = mm->first;
                    if (ex + ey) tgt.taus |= 4u;
                    int s = mm->second * word_sign(mm->first, ex + ey);
                    if (ex && (mono_degree(my, Q.p) & 1)) s = -s;
                    kid = Q.find_mono(tgt);
                    if (kid < 0)
                        return fail("kappa image of " + X.name + " * " + Y.name + " is missing");
                    kc = F.norm(s);
                }
            }
            if (did != kid || dc != kc)
                return fail("products of " + X.name + " and " + Y.name +
                            " disagree between the quotient and kappa");
        }
    return true;
}

bool kappa_is_comodule_map(const FiltrationQuotient& fq, std::string* why) {
    uint32_t p = fq.q->p;
    FpCtx F(p);
    FiltrationQuotient e0 = build_q_quotient(p, 0);
    e0.q->label = "E(t2)";
    Comodule T = tensor_comodule(*fq.n2j, *e0.q, fq.n2j->label + " (x) E(t2)");
    std::map<std::string, uint32_t> pos;
    for (uint32_t x = 0; x < T.total_dim(); ++x) pos.emplace(T.elems[x].name, x);
    ComoduleMap k;
    k.src = fq.q.get();
    k.dst = &T;
    k.shift = 0;
    for (const auto& [t, ids] : fq.q->by_deg) {
        FpMatrix A(T.dim_at(t), static_cast<uint32_t>(ids.size()));
        for (uint32_t col = 0; col < ids.size(); ++col) {
            auto [nid, eps] = fq.kappa[ids[col]];
            std::string nm = fq.n2j->elems[nid].name + " (x) " + (eps ? "t2" : "1");
            auto it = pos.find(nm);
            if (it == pos.end())
                throw std::logic_error("kappa target '" + nm + "' missing from the tensor basis");
            const CmElem& te = T.elems[it->second];
            A.set(te.pos, col, F.norm(word_sign(fq.n2j->elems[nid].mono, eps)));
        }
        k.mat.emplace(t, std::move(A));
    }
    return check_comodule_map(F, k, why);
}

bool check_filtration_multiplicative(uint32_t p, long long w_max, std::string* why) {
    AlgebraSpec s{p, Flavor::AModEn, 1, GenSystem::Conjugate, -1};
    auto monos = basis_of_weight(s, w_max, false);
    for (const Monomial& x : monos)
        for (const Monomial& y : monos) {
            auto prod = mul_mono(x, y);
            if (!prod) continue;
            if (m_weight(prod->first, p) != m_weight(x, p) + m_weight(y, p)) {
                if (why)
                    *why = "m-part weight of " + mono_str(x) + " * " + mono_str(y) +
                           " is not additive";
                return false;
            }
        }
    return true;
}

long long phi_shift(uint32_t p, long long j, long long k) {
    return 2 * (p - 1) * (p * (j - 1) + k) + 2LL * p * p - 1;
}

FourTermSequence build_four_term(uint32_t p, long long j, int i) {
    if (j < 1 || i < 0 || i >= static_cast<int>(p))
        throw std::invalid_argument("build_four_term: need j >= 1 and 0 <= i < p");
    long long qpj = 2LL * (p - 1) * p * j;
    FourTermSequence s;
    s.p = p;
    s.j = j;
    s.i = i;
    Comodule lj = build_ell(p, j), li = build_ell(p, i);
    s.t0 = std::make_shared<Comodule>(suspend(tensor_comodule(lj, li, ""), qpj));
    s.t1 = std::make_shared<Comodule>(build_ell(p, p * j + i));
    s.t2 = build_q_quotient(p, p * j - 1).q;

    // f0: x (x) z1^c -> z1^{pj - wt(x) + c} shift_up(x)
    s.f0.src = s.t0.get();
    s.f0.dst = s.t1.get();
    s.f0.shift = qpj;
    for (const auto& [t, ids] : s.t0->by_deg) {
        FpMatrix A(s.t1->dim_at(t + qpj), static_cast<uint32_t>(ids.size()));
        for (uint32_t col = 0; col < ids.size(); ++col) {
            auto [x, y] = split_pair_name(s.t0->elems[ids[col]].name);
            if (y.taus || y.ze.size() > 1)
                throw std::logic_error("build_four_term: second factor is not a z1 power");
            long long a = p * j - mono_weight(x, p) + y.ze_at(1);
            auto tgt = mul_mono(shift_up(x), Monomial::zgen(1, static_cast<uint32_t>(a)));
            int tid = s.t1->find_mono(tgt->first);
            if (tid < 0)
                throw std::logic_error("build_four_term: f0 leaves ell_{pj+i} on '" +
                                       s.t0->elems[ids[col]].name + "'");
            A.set(s.t1->elems[tid].pos, col, 1);
        }
        s.f0.mat.emplace(t, std::move(A));
    }

    // f1: include the monomial and project to the quotient
    s.f1.src = s.t1.get();
    s.f1.dst = s.t2.get();
    s.f1.shift = 0;
    std::vector<char> hit(s.t2->total_dim(), 0);
    for (const auto& [t, ids] : s.t1->by_deg) {
        FpMatrix A(s.t2->dim_at(t), static_cast<uint32_t>(ids.size()));
        for (uint32_t col = 0; col < ids.size(); ++col) {
            int tid = s.t2->find_mono(s.t1->elems[ids[col]].mono);
            if (tid < 0) continue;
            A.set(s.t2->elems[tid].pos, col, 1);
            hit[tid] = 1;
        }
        s.f1.mat.emplace(t, std::move(A));
    }

    std::vector<SparseVec> image;
    for (uint32_t x = 0; x < hit.size(); ++x)
        if (hit[x]) image.push_back(SparseVec::unit(x));
    std::ostringstream lbl;
    lbl << "coker(ell_" << p * j + i << " -> Q^" << p * j - 1 << ")";
    s.t3 = std::make_shared<Comodule>(quotient_comodule(*s.t2, image, lbl.str()));

    // f2: quotient projection
    s.f2.src = s.t2.get();
    s.f2.dst = s.t3.get();
    s.f2.shift = 0;
    for (const auto& [t, ids] : s.t2->by_deg) {
        FpMatrix A(s.t3->dim_at(t), static_cast<uint32_t>(ids.size()));
        for (uint32_t col = 0; col < ids.size(); ++col) {
            int tid = s.t3->find_mono(s.t2->elems[ids[col]].mono);
            if (tid >= 0) A.set(s.t3->elems[tid].pos, col, 1);
        }
        s.f2.mat.emplace(t, std::move(A));
    }

    for (long long k = i + 1; k <= static_cast<long long>(p) - 1; ++k)
        s.phi.push_back(phi_shift(p, j, k));
    return s;
}

std::string verify_four_term(const FourTermSequence& s) {
    FpCtx F(s.p);
    std::ostringstream out;
    std::string why;
    if (!check_comodule_map(F, s.f0, &why)) out << "f0: " << why << '\n';
    if (!check_comodule_map(F, s.f1, &why)) out << "f1: " << why << '\n';
    if (!check_comodule_map(F, s.f2, &why)) out << "f2: " << why << '\n';
    long long off = s.f0.shift;
    std::set<long long> degs;
    for (const auto& [t, v] : s.t0->by_deg) degs.insert(t + off);
    for (const auto& [t, v] : s.t1->by_deg) degs.insert(t);
    for (const auto& [t, v] : s.t2->by_deg) degs.insert(t);
    for (const auto& [t, v] : s.t3->by_deg) degs.insert(t);
    for (long long t : degs) {
        FpMatrix a0 = map_matrix_at(s.f0, t - off);
        FpMatrix a1 = map_matrix_at(s.f1, t);
        FpMatrix a2 = map_matrix_at(s.f2, t);
        uint32_t d0 = s.t0->dim_at(t - off), d1 = s.t1->dim_at(t);
        uint32_t d2 = s.t2->dim_at(t), d3 = s.t3->dim_at(t);
        uint32_t r0 = rank(F, a0), r1 = rank(F, a1), r2 = rank(F, a2);
        if (r0 != d0) out << "degree " << t << ": f0 has a kernel\n";
        if (!is_zero(mat_mul(F, a1, a0))) out << "degree " << t << ": f1 f0 != 0\n";
        if (r0 + r1 != d1)
            out << "degree " << t << ": homology at term 1 (" << r0 << " + " << r1
                << " != " << d1 << ")\n";
        if (!is_zero(mat_mul(F, a2, a1))) out << "degree " << t << ": f2 f1 != 0\n";
        if (r1 + r2 != d2)
            out << "degree " << t << ": homology at term 2 (" << r1 << " + " << r2
                << " != " << d2 << ")\n";
        if (r2 != d3) out << "degree " << t << ": f2 misses part of the cokernel\n";
    }
    return out.str();
}

std::string verify_t3_summands(const FourTermSequence& s) {
    FpCtx F(s.p);
    std::ostringstream out;
    long long p = s.p;
    Comodule ell = build_ell(s.p, s.j - 1);
    std::map<std::pair<long long, uint32_t>, int> seen;
    for (uint32_t x = 0; x < s.t3->total_dim(); ++x) {
        const CmElem& e = s.t3->elems[x];
        if (!(e.mono.taus & 4u)) {
            out << "'" << e.name << "' has no t2 factor\n";
            continue;
        }
        Monomial m = strip_t2(e.mono);
        long long k = mono_weight(m, s.p) / p - p * (s.j - 1);
        if (k <= s.i || k >= p) {
            out << "'" << e.name << "' sits at k = " << k << '\n';
            continue;
        }
        int yid = ell.find_mono(shift_down(m));
        if (yid < 0) {
            out << "'" << e.name << "' maps outside " << ell.label << '\n';
            continue;
        }
        ++seen[{k, static_cast<uint32_t>(yid)}];
        if (e.deg != ell.elems[yid].deg + phi_shift(s.p, s.j, k))
            out << "degree mismatch on '" << e.name << "'\n";
        // coaction must equal the ell_{j-1} copy after the odd-suspension
        // twist (-1)^{|eta|} on each coefficient
        std::map<std::pair<uint32_t, uint32_t>, uint32_t> got, want;
        bool bad = false;
        for (const CoTerm& tm : s.t3->coact[x]) {
            const Monomial& tm_mono = s.t3->elems[tm.target].mono;
            int tid = (tm_mono.taus & 4u) ? ell.find_mono(shift_down(strip_t2(tm_mono))) : -1;
            if (tid < 0) {
                out << "coaction of '" << e.name << "' leaves the t2 block\n";
                bad = true;
                break;
            }
            uint32_t c = (__builtin_popcount(tm.taus) & 1) ? F.neg(tm.c) : tm.c;
            got[{tm.taus, static_cast<uint32_t>(tid)}] = c;
        }
        if (bad) continue;
        for (const CoTerm& tm : ell.coact[yid]) want[{tm.taus, tm.target}] = tm.c;
        if (got != want)
            out << "coaction of '" << e.name << "' differs from its ell_" << s.j - 1
                << " copy\n";
    }
    for (long long k = s.i + 1; k <= p - 1; ++k)
        for (uint32_t y = 0; y < ell.total_dim(); ++y) {
            auto it = seen.find({k, y});
            if (it == seen.end())
                out << "no summand element for k = " << k << ", '" << ell.elems[y].name << "'\n";
            else if (it->second != 1)
                out << "repeated summand element for k = " << k << ", '" << ell.elems[y].name
                    << "'\n";
        }
    if (s.t3->total_dim() != (p - 1 - s.i) * ell.total_dim())
        out << "cokernel dimension " << s.t3->total_dim() << " != " << (p - 1 - s.i) << " * "
            << ell.total_dim() << '\n';
    return out.str();
}

std::string verify_bg_decomposition(uint32_t p, long long t_max) {
    long long q = 2LL * (p - 1);
    AlgebraSpec a2{p, Flavor::AModEn, 2, GenSystem::Conjugate, t_max};
    AlgebraSpec a1{p, Flavor::AModEn, 1, GenSystem::Conjugate, -1};
    long long jmax = t_max / (q * p);
    std::vector<std::map<long long, long long>> cnt(jmax + 1);
    for (long long J = 0; J <= jmax; ++J)
        for (const Monomial& m : basis_of_weight(a1, p * J, false)) ++cnt[J][mono_degree(m, p)];
    std::ostringstream out;
    for (long long t = 0; t <= t_max; ++t) {
        long long lhs = static_cast<long long>(basis_of_degree(a2, t).size());
        long long rhs = 0;
        for (long long k = 0; k * q <= t && k / p <= jmax; ++k) {
            auto it = cnt[k / p].find(t - q * k);
            if (it != cnt[k / p].end()) rhs += it->second;
        }
        if (lhs != rhs)
            out << "degree " << t << ": dim A//E(2) = " << lhs << " but the summands give "
                << rhs << '\n';
    }
    return out.str();
}

}  // namespace coops
