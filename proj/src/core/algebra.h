#pragma once

#include <cstdint>
#include <vector>

#include "core/element.h"
#include "core/fp.h"
#include "core/monomial.h"

namespace coops {

// The graded algebras the engine works in, all at an odd prime p:
//   DualSteenrod  the full dual Steenrod algebra
//   DualPoly      its polynomial part
//   DualExtAll    the exterior algebra on all t_k
//   DualExtN      E(n)*: exterior on t_0..t_n, primitively generated
//   AModEn        A//E(n): polynomial on all z_k, exterior on t_{n+1}, t_{n+2}, ...
enum class Flavor : uint8_t { DualSteenrod, DualPoly, DualExtAll, DualExtN, AModEn };

struct AlgebraSpec {
    uint32_t p;
    Flavor flavor;
    int n = -1;             // required for DualExtN / AModEn
    GenSystem sys = GenSystem::Conjugate;
    long long t_max = -1;   // hard bound for basis enumeration by degree

    void validate() const;  // throws std::invalid_argument on bad combinations
};

// True iff the flavor's algebra contains the generator.
bool flavor_has_poly_gen(const AlgebraSpec& s, uint32_t k);
bool flavor_has_ext_gen(const AlgebraSpec& s, uint32_t k);

// All monomials of the given degree, sorted lexicographically.
// Requires 0 <= t <= s.t_max.
std::vector<Monomial> basis_of_degree(const AlgebraSpec& s, long long t);

// All monomials of weight exactly w (exact = true) or at most w, sorted by
// (degree, lex). Weight bounds degree, so no t_max is involved.
std::vector<Monomial> basis_of_weight(const AlgebraSpec& s, long long w, bool exact);

// Hopf-algebra coproduct of a monomial, computed multiplicatively from the
// generator formulas of the flavor. For AModEn this is the coproduct of the
// ambient dual Steenrod algebra (the result may leave the subalgebra).
TensorElement coproduct(const FpCtx& F, const AlgebraSpec& s, const Monomial& m);

// Coefficient of 1 (x) 1 ... i.e. the counit applied to both slots.
uint32_t counit(const FpCtx& F, const Element& e);

// Re-expresses a monomial in the other generator alphabet, e.g. over F_3:
// xi1 -> 2 z1, xi2 -> z1^4 + 2 z2, tau0 -> 2 t0.
Element convert_system(const FpCtx& F, const Monomial& m);
Element convert_system_el(const FpCtx& F, const Element& e);

// Antipode within the monomial's own alphabet.
Element antipode(const FpCtx& F, const Monomial& m);
Element antipode_el(const FpCtx& F, const Element& e);

// Residual of the antipode recursion sum_{i+j=n} g_j^{p^i} chi(g_i) (with the
// extra leading term on the exterior side); zero iff the tables are coherent.
Element antipode_recursion_residual(uint32_t p, GenSystem sys, bool exterior, uint32_t n);

// Raises an element to the q-th power using the Frobenius when q is a power
// of p (coefficients are fixed, exponents multiply, odd factors die).
Element el_frobenius(const FpCtx& F, const Element& e, long long q);

// E(n)*-coaction of a monomial of A//E(m): (pi_n (x) 1) applied to the ambient
// coproduct, computed multiplicatively. Left tensor slots are exterior
// monomials in t_0..t_n; right slots stay in A//E(m). Requires n >= 0 and a
// conjugate-system monomial with no exterior factor of index <= m; m = -1
// means the monomial lives in the full dual Steenrod algebra.
TensorElement en_coaction(const FpCtx& F, int m, int n, const Monomial& mono);

}  // namespace coops
