#pragma once

#include <map>
#include <memory>
#include <string>
#include <utility>

#include "comodule.h"

namespace coops {

// Reduced cobar complex of E(n)* with coefficients in a comodule:
//   C^{s,t} = span{ [eta_1|..|eta_s] x : eta_k nonzero exterior monomials,
//                   sum deg(eta_k) + deg(x) = t },
//   d = alternating sum of the coproduct on each bar slot plus the coaction
//   on x appended in the last slot.
// An independent route to the Ext dims computed by the Koszul complex.

// Homology dims over the window s <= s_max, t <= t_max (displayed degrees).
// Verifies d . d = 0 and throws std::logic_error if it fails; throws
// std::runtime_error("cobar window too large") past the basis cap.
std::map<std::pair<int, long long>, uint32_t> cobar_ext_dims(
    std::shared_ptr<const Comodule> mod, int s_max, long long t_max,
    size_t basis_cap = 2000000);

// Certifies that the connecting map of 0 -> F_p -> E(t2) -> S^{2p^2-1} F_p -> 0
// is right multiplication by [t2] up to the positional sign: the snake-lemma
// lift of every cocycle z equals (-1)^{s+1} [z | t2] on the nose, and the
// resulting long sequence of homology groups is exact in the window.
// Returns "" on success, else a diagnostic.
std::string certify_v2_connecting(uint32_t p, int s_max, long long t_max);

}  // namespace coops
