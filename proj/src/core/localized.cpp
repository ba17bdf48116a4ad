#include "core/localized.h"

#include <map>
#include <memory>
#include <stdexcept>

#include "core/browngitler.h"
#include "core/koszul.h"
#include "core/monomial.h"

namespace coops {

namespace {

Monomial z_mono(long long i, long long k) {
    Monomial m;
    if (k)
        m.ze = {static_cast<uint32_t>(i), static_cast<uint32_t>(k)};
    else if (i)
        m.ze = {static_cast<uint32_t>(i)};
    return m;
}

std::string stem_str(long long d) { return "stem " + std::to_string(d); }

}  // namespace

long long digit_sum(long long k, uint32_t p) {
    long long s = 0;
    for (; k > 0; k /= p) s += k % p;
    return s;
}

LocalizedExt v0_inverted_ext(uint32_t p, long long j, int s_max, long long stem_max, int margin) {
    if (j < 0 || margin < 1 || s_max < margin + 1)
        throw std::invalid_argument("v0_inverted_ext: bad window");
    // the v_1-tower of the unit reaches stem d at s = d / q, so lower s_max
    // leaves the top stems structurally unable to stabilize
    if (s_max - margin < stem_max / (2 * (static_cast<long long>(p) - 1)))
        throw std::invalid_argument("v0_inverted_ext: need s_max >= stem_max / (2p-2) + margin");
    LocalizedExt L;
    L.p = p;
    L.j = j;
    L.s_max = s_max;
    L.stem_max = stem_max;
    L.margin = margin;

    const long long q = 2 * (static_cast<long long>(p) - 1);

    // expected generators z1^i z2^k, i + pk <= j, bucketed by degree
    std::map<long long, std::vector<Monomial>> expect;
    for (long long k = 0; p * k <= j; ++k)
        for (long long i = 0; i + p * k <= j; ++i) expect[q * (i + (p + 1) * k)].push_back(z_mono(i, k));
    if (!expect.empty() && expect.rbegin()->first > stem_max)
        throw std::invalid_argument("v0_inverted_ext: stem_max below the top expected generator");

    auto n2j = std::make_shared<Comodule>(build_bg(p, 2, j, BgKind::N, 1).c);
    KoszulExt K = koszul_ext(n2j, s_max, stem_max + s_max);
    FpCtx F(p);

    // stable staircase per stem
    std::map<long long, uint32_t> stable;
    for (long long d = 0; d <= stem_max; ++d) {
        uint32_t v = K.dim_at(s_max, s_max + d);
        bool ok = true;
        for (int s = s_max - margin; s < s_max; ++s)
            if (K.dim_at(s, s + d) != v) ok = false;
        if (ok)
            stable[d] = v;
        else
            L.inconclusive_stems.push_back(d);
    }
    if (!L.inconclusive_stems.empty()) {
        L.detail = stem_str(L.inconclusive_stems.front()) + " did not stabilize by s = " +
                   std::to_string(s_max);
        return L;
    }

    // first differences of the staircase count generators per degree
    std::map<long long, uint32_t> counts;
    for (long long d = 0; d <= stem_max; ++d) {
        uint32_t cur = stable.at(d);
        if (d % q) {
            if (cur) {
                L.detail = "nonzero stable dimension in " + stem_str(d) +
                           ", not a multiple of 2(p-1)";
                return L;
            }
            continue;
        }
        uint32_t prev = d >= q ? stable.at(d - q) : 0;
        if (cur < prev) {
            L.detail = "stable dimension drops at " + stem_str(d);
            return L;
        }
        if (cur > prev) counts[d] = cur - prev;
    }

    for (long long d = 0; d <= stem_max; ++d) {
        auto ci = counts.find(d);
        auto ei = expect.find(d);
        uint32_t c = ci == counts.end() ? 0 : ci->second;
        uint32_t e = ei == expect.end() ? 0 : static_cast<uint32_t>(ei->second.size());
        if (c != e) {
            L.detail = "degree " + std::to_string(d) + ": staircase count " + std::to_string(c) +
                       ", closed form " + std::to_string(e);
            return L;
        }
    }

    // each expected generator must be a v_0-free Ext^0 class
    std::vector<uint32_t> zero_ve(static_cast<size_t>(n2j->n) + 1, 0);
    for (const auto& [d, ms] : expect)
        for (const Monomial& m : ms) {
            int id = n2j->find_mono(m);
            if (id < 0) {
                L.detail = mono_str(m) + " is not in N_2(" + std::to_string(j) + ")";
                return L;
            }
            uint32_t ix = K.slice_index(0, d, zero_ve, static_cast<uint32_t>(id));
            auto coords = K.classify(0, d, SparseVec::unit(ix));
            SparseVec x;
            for (uint32_t g = 0; g < coords.size(); ++g)
                if (coords[g]) x.e.push_back({g, coords[g]});
            if (x.zero()) {
                L.detail = mono_str(m) + " vanishes in Ext^0";
                return L;
            }
            for (int s = 0; s < s_max && !x.zero(); ++s) {
                x = apply(F, v_mult(K, 0, s, d + s), x);
                if (x.zero()) {
                    L.detail = "v_0^" + std::to_string(s + 1) + " kills " + mono_str(m);
                    return L;
                }
            }
        }

    for (const auto& [d, ms] : expect)
        for (const Monomial& m : ms) L.generators.push_back({mono_str(m), d});
    L.matches_closed_form = true;
    return L;
}

AdamsCoverReport adams_cover_check(uint32_t p, long long k, int s_max, int margin) {
    if (k < 0 || margin < 1 || s_max < 0) throw std::invalid_argument("adams_cover_check: bad window");
    AdamsCoverReport R;
    R.p = p;
    R.k = k;
    R.margin = margin;
    R.cover_index = (k - digit_sum(k, p)) / (p - 1);
    const long long q = 2 * (static_cast<long long>(p) - 1);
    const long long vq = q + 1;  // |v_1|
    R.suspension = q * k;
    R.s_max = s_max;
    R.t_max = R.suspension + vq * (R.cover_index + 4);
    const long long N = R.cover_index;

    int s_top = s_max + margin + 1;
    auto m1k = std::make_shared<Comodule>(build_bg(p, 1, k, BgKind::M).c);
    KoszulExt K = koszul_ext(m1k, s_top, R.t_max + s_top);
    FpCtx F(p);

    // one v_0-tower per b, bottom (max(b-N, 0), qk + b(2p-1) - min(b, N))
    auto pattern = [&](int s, long long t) {
        uint32_t c = 0;
        for (long long b = 0;; ++b) {
            long long sb = b > N ? b - N : 0;
            long long tb = R.suspension + b * vq - (b < N ? b : N);
            if (tb > t) break;
            if (s >= sb && t - tb == s - sb) ++c;
        }
        return c;
    };

    for (int s = 0; s <= s_max; ++s)
        for (long long t = 0; t <= R.t_max; ++t) {
            uint32_t dim = K.dim_at(s, t);
            uint32_t want = pattern(s, t);
            if (!dim && !want) continue;
            int l_top = s_top - s;
            std::vector<uint32_t> rk;
            FpMatrix comp;
            for (int l = 1; l <= l_top; ++l) {
                FpMatrix step = v_mult(K, 0, s + l - 1, t + l - 1);
                comp = l == 1 ? step : mat_mul(F, step, comp);
                rk.push_back(rank(F, comp));
            }
            uint32_t got = rk.back();
            bool settled = true;
            for (int i = 1; i <= margin; ++i)
                if (rk[rk.size() - 1 - i] != got) settled = false;
            if (!settled) {
                R.inconclusive.push_back({s, t});
                continue;
            }
            if (got != want) {
                R.detail = "(s, t) = (" + std::to_string(s) + ", " + std::to_string(t) +
                           "): stable v_0-rank " + std::to_string(got) + ", cover pattern " +
                           std::to_string(want);
                return R;
            }
            if (dim > got) R.torsion.push_back({s, t, dim - got});
        }

    if (!R.inconclusive.empty()) {
        R.detail = "v_0-rank at (s, t) = (" + std::to_string(R.inconclusive.front().first) + ", " +
                   std::to_string(R.inconclusive.front().second) + ") did not stabilize";
        return R;
    }
    R.matches = true;
    return R;
}

}  // namespace coops
