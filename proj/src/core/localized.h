#pragma once

#include <cstdint>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace coops {

// v_0^{-1} Ext_{E(1)*}(N_2(j)), read off the stable range of the Koszul
// chart: in each stem the dimensions become constant once s is large, and
// the first differences of that staircase count module generators by degree.
struct LocalizedExt {
    uint32_t p = 3;
    long long j = 0;
    int s_max = 0;
    long long stem_max = 0;
    int margin = 0;
    // named generators with degrees, filled in when the closed form holds
    std::vector<std::pair<std::string, long long>> generators;
    std::vector<long long> inconclusive_stems;
    bool matches_closed_form = false;
    std::string detail;  // empty on success, else the first failure
};

// Computes v_0^{-1} Ext_{E(1)*}(N_2(j)) and compares against the free
// F_p[v_0^{+-1}, v_1]-module on {z1^i z2^k : i + pk <= j}. Each expected
// generator is also verified to be a v_0-free class in the window. Stems
// that fail to stabilize are reported, never silently dropped.
LocalizedExt v0_inverted_ext(uint32_t p, long long j, int s_max = 18, long long stem_max = 60,
                             int margin = 3);

// sum of base-p digits of k
long long digit_sum(long long k, uint32_t p);

// Ext_{E(1)*}(M_1(k)) modulo v_0-torsion against the Adams cover pattern
// with cover index N = (k - digit_sum(k)) / (p - 1): one v_0-tower per
// b >= 0 with bottom (max(b - N, 0), qk + b(2p-1) - min(b, N)).
struct AdamsCoverReport {
    uint32_t p = 3;
    long long k = 0;
    long long cover_index = 0;
    long long suspension = 0;  // qk
    int s_max = 0;             // top s compared
    long long t_max = 0;       // top t compared
    int margin = 0;
    bool matches = false;
    // (s, t, dim) of v_0-torsion discarded before comparing
    std::vector<std::tuple<int, long long, uint32_t>> torsion;
    // slots whose v_0-power rank had not stabilized by the window edge
    std::vector<std::pair<int, long long>> inconclusive;
    std::string detail;  // empty on success, else the first failure
};

// Compares dim(im v_0^L) out of each (s, t), stabilized over the last
// `margin` powers, against the cover pattern for s <= s_max.
AdamsCoverReport adams_cover_check(uint32_t p, long long k, int s_max = 8, int margin = 3);

}  // namespace coops
