#pragma once

#include <memory>
#include <string>
#include <vector>

#include "core/comodule.h"

namespace coops {

enum class BgKind : uint8_t { N, M };  // weight <= pj vs weight == pj

// A weight-filtered piece of A//E(i): N_i(j) spans the monomials of weight
// at most pj, M_i(j) those of weight exactly pj.
struct BrownGitlerComodule {
    int i = 1;
    long long j = 0;
    BgKind kind = BgKind::N;
    Comodule c;
};

// Builds N_i(j) or M_i(j) over E(n_coalg)* (default n_coalg = i). Exact-
// weight pieces are only comodules for n_coalg <= i; the builder rejects
// coactions that leave the span.
BrownGitlerComodule build_bg(uint32_t p, int i, long long j, BgKind kind, int n_coalg = -1);

// ell_j = N_1(j), by default with its E(2)*-coaction.
Comodule build_ell(uint32_t p, long long j, int n_coalg = 2);

// Index shifts on monomials: z_k -> z_{k-1} (z_1 dropped), t_k -> t_{k-1},
// and the inverse. shift_down requires no t_1 factor.
Monomial shift_down(const Monomial& m);
Monomial shift_up(const Monomial& m);

// A comodule map packaged with shared ownership of its endpoints.
struct MappedPair {
    std::shared_ptr<Comodule> src, dst;
    ComoduleMap f;
};

// The weight-division isomorphism M_i(j) -> N_{i-1}(floor(j/p)) over E(i)*:
// drops the z_1-power and shifts every index down; degree shift -q j.
MappedPair phi_map(uint32_t p, int i, long long j);

// Multiplication by z_1^k, M_i(pj) -> M_i(pj+k) over E(i)*, 0 <= k < p;
// degree shift q k. An isomorphism of comodules.
MappedPair zeta1_suspension(uint32_t p, int i, long long j, int k);

// The filtration quotient Q^j A//E(1) = A//E(1)/F^{j+1}, an E(2)*-comodule
// with basis {m t2^eps : m in A//E(2), wt(m) <= pj}, together with the
// basis correspondence kappa to N_2(j) (x) E(t2).
struct FiltrationQuotient {
    long long j = 0;
    std::shared_ptr<Comodule> q;
    std::shared_ptr<Comodule> n2j;                  // N_2(j) over E(2)*
    std::vector<std::pair<uint32_t, int>> kappa;    // q id -> (n2j id, eps)
};

FiltrationQuotient build_q_quotient(uint32_t p, long long j);

// E0 kappa is an algebra correspondence: products of basis classes agree
// (with Koszul signs) whenever their weights stay inside the quotient.
// Returns false and fills why on the first mismatch.
bool check_kappa_products(const FiltrationQuotient& fq, std::string* why);

// kappa itself, as a degree-0 map to N_2(j) (x) E(t2); for j >= p this is
// NOT a comodule map and the check reports the failing basis element.
bool kappa_is_comodule_map(const FiltrationQuotient& fq, std::string* why);

// wt_m(x) + wt_m(y) = wt_m(xy) for monomials of A//E(1) (m-part weight,
// i.e. ignoring a t2 factor); makes F^a F^b into F^{a+b}.
bool check_filtration_multiplicative(uint32_t p, long long w_max, std::string* why);

// phi(j,k) = q(p(j-1)+k) + 2p^2 - 1, the suspension of the k-th cokernel
// summand of the four-term sequence.
long long phi_shift(uint32_t p, long long j, long long k);

// The exact sequence of E(2)*-comodules
//   0 -> S^{qpj} ell_j (x) ell_i -> ell_{pj+i} -> Q^{pj-1} -> T3 -> 0,
// with T3 the honest cokernel, abstractly ⊕_{k=i+1}^{p-1} S^{phi(j,k)} ell_{j-1}.
struct FourTermSequence {
    uint32_t p = 3;
    long long j = 1;
    int i = 0;
    std::shared_ptr<Comodule> t0, t1, t2, t3;
    ComoduleMap f0, f1, f2;
    std::vector<long long> phi;  // phi(j,k) for k = i+1 .. p-1
};

FourTermSequence build_four_term(uint32_t p, long long j, int i);

// Degreewise rank exactness at all four terms plus naturality of the three
// maps. Empty string iff everything holds.
std::string verify_four_term(const FourTermSequence& s);

// Checks the cokernel against the suspended ell_{j-1} copies: basis
// bijection m t2 <-> shift_down(m), degree offsets phi(j,k), and coaction
// coefficients equal up to the (-1)^{|eta|} twist of an odd suspension.
std::string verify_t3_summands(const FourTermSequence& s);

// dim A//E(2)(t) = sum_k dim ell_{floor(k/p)}(t - qk) for t <= t_max,
// the weight decomposition of A//E(2). Empty string iff it holds.
std::string verify_bg_decomposition(uint32_t p, long long t_max);

}  // namespace coops
