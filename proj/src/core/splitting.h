#pragma once

#include <map>
#include <string>
#include <vector>

#include "core/comodule.h"

namespace coops {

// Margolis homology of A//E(n) by Koszul cancellation of the pairs
// (t_k, z_{k-i}^{p^i}): H(Q_i) = P(z_1..z_{n-i}) (x) T_i(z_{n-i+1}, ...)
// where T_i truncates exponents below p^i. Returns the dimension in
// degree t, counted by direct monomial enumeration.
uint32_t margolis_closed_form_dim(uint32_t p, int n, int i, long long t);

struct SplittingReport {
    Comodule s;  // the Q-closed span of the selected monomials
    Comodule q;  // the quotient by s
    int min_len = 0;
    // Margolis homology of s per Q_i over the safe window [0, window_hi];
    // all dimensions vanish exactly when s is free.
    long long window_hi = 0;
    std::map<int, std::vector<MargolisSlice>> s_margolis;
    bool s_margolis_trivial = true;
};

// Splits off the sub-E(n)-comodule generated by the basis elements of
// exterior length >= min_len, closed under all Q_i, together with the
// quotient, and gathers the Margolis-vanishing evidence for freeness.
SplittingReport split_off_q_closure(const Comodule& m, int min_len, const std::string& s_label,
                                    const std::string& q_label);

// The two splittings of the length filtration: the length >= 3 closure
// inside A//E(2), and the length-2 closure inside its quotient after
// corestriction to E(1)*.
SplittingReport split_s_q(const Comodule& a_mod_e2);
SplittingReport split_sprime_qbar(const Comodule& q_over_e1);

// R = P(z_2, z_3, ...) (x) E(t_3, t_4, ...), the z_1-free part of A//E(2),
// as an E(1)*-comodule, up to the given weight (exact below it).
Comodule build_r(uint32_t p, long long w_max);

// W_2(k): the weight-p^2 k piece of R, as an E(1)*-subcomodule of r.
Comodule weight_piece_w2(const Comodule& r, long long k);

}  // namespace coops
