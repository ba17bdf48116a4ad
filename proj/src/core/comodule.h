#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "core/algebra.h"
#include "core/fpmatrix.h"

namespace coops {

// One coaction term eta (x) c * e_target with eta an exterior monomial in
// t_0..t_n, encoded as a bit mask.
struct CoTerm {
    uint32_t taus;
    uint32_t c;
    uint32_t target;
    bool operator==(const CoTerm& o) const = default;
};

struct CmElem {
    Monomial mono;      // meaningful iff the comodule has a monomial basis
    long long deg = 0;  // raw degree; displayed degree adds the suspension
    long long wt = -1;  // common weight of the support, or -1
    int len = -1;       // common exterior length of the support, or -1
    uint32_t pos = 0;   // position within its degree slice
    std::string name;
};

// A finite-dimensional (or degreewise finite, degree-truncated) comodule
// over E(n)* = E(t_0, ..., t_n), with cached Q_i action matrices.
// Instances are built by the functions below and not mutated afterwards.
struct Comodule {
    uint32_t p = 3;
    int n = 0;
    std::string label;
    long long suspension = 0;
    // Degrees > complete_through may be missing basis elements; everything
    // at or below is complete. LLONG_MAX means the module is exact.
    long long complete_through = LLONG_MAX;
    bool monomial_basis = true;
    int env_m = -1;  // which A//E(m) monomials live in, when monomial_basis

    std::vector<CmElem> elems;                         // sorted by (deg, lex/name)
    std::map<long long, std::vector<uint32_t>> by_deg; // raw degree -> ids, ascending
    std::vector<std::vector<CoTerm>> coact;            // sorted by (taus, target)
    std::map<std::pair<int, long long>, FpMatrix> qmat;

    long long qi_degree(int i) const;  // 2 p^i - 1
    uint32_t dim_at(long long deg) const;
    const std::vector<uint32_t>& ids_at(long long deg) const;
    int find_mono(const Monomial& m) const;  // -1 if absent
    // Q_i as a matrix from the degree-t slice to the degree t - |Q_i| slice.
    FpMatrix q_matrix(int i, long long t) const;
    uint32_t total_dim() const { return static_cast<uint32_t>(elems.size()); }

    std::map<Monomial, uint32_t, MonoLex> mono_index;  // filled for monomial bases
};

// How a basis for a piece of A//E(m) is selected.
struct DegreeBound {
    long long t_max;
};
struct WeightBound {
    long long w;
    bool exact;
};

// A//E(m) with its E(n)*-coaction, truncated by degree. Requires n <= m + 1
// coherence only in the sense that the coaction must stay inside the module;
// any n >= 0 is accepted and validated structurally.
Comodule build_a_mod_e(uint32_t p, int m, int n, DegreeBound b);

// The weight-selected subobject of A//E(m) over E(n)*: all monomials of
// weight <= w (or == w). These are exact (weight bounds degree).
Comodule build_a_mod_e(uint32_t p, int m, int n, WeightBound b, const std::string& label = "");

// Builds a comodule from an explicit monomial set in A//E(m), where m = -1
// means the full dual Steenrod algebra. Throws if the coaction leaves the span.
Comodule comodule_from_monomials(uint32_t p, int m, int n, std::vector<Monomial> monos,
                                 const std::string& label, long long complete_through);

// F_p-span of named generators in the given degrees, with trivial coaction
// alpha(x) = 1 (x) x over E(n)*.
Comodule trivial_comodule(uint32_t p, int n,
                          std::vector<std::pair<std::string, long long>> gens,
                          const std::string& label);

// Derived comodules. Sub/quotient take degree-homogeneous spanning vectors
// in global element coordinates.
Comodule tensor_comodule(const Comodule& A, const Comodule& B, const std::string& label);
Comodule sub_comodule(const Comodule& M, const std::vector<SparseVec>& span, const std::string& label);
Comodule quotient_comodule(const Comodule& M, const std::vector<SparseVec>& span, const std::string& label);
// Corestriction along E(n')* <- E(n)*, n' <= n: drop coaction terms with
// exterior factors above n'.
Comodule restrict_coalgebra(const Comodule& M, int n_new, const std::string& label = "");
// Same structure with the suspension field shifted by delta.
Comodule suspend(const Comodule& M, long long delta);

// A degree-homogeneous linear map f: A -> B of raw-degree shift `shift`
// (matrices indexed by raw source degree). Checked maps must have even
// total shift, so no Koszul sign enters naturality.
struct ComoduleMap {
    const Comodule* src = nullptr;
    const Comodule* dst = nullptr;
    long long shift = 0;
    std::map<long long, FpMatrix> mat;  // source degree t -> dim_B(t+shift) x dim_A(t)

    SparseVec apply_at(const FpCtx& F, long long t, const SparseVec& x) const;
    const FpMatrix& matrix_at(long long t) const;  // zero matrix if absent
};

// Verifies alpha_B(f(x)) == (1 (x) f)(alpha_A(x)) on every basis element up
// to min(src range, dst completeness). Returns false and fills `why` on the
// first violation.
bool check_comodule_map(const FpCtx& F, const ComoduleMap& f, std::string* why);

// Margolis homology of Q_i in one degree: dim and canonical representatives
// (kernel vectors reduced against the image, echelonized).
struct MargolisSlice {
    long long t = 0;   // raw degree
    int len = INT_MIN; // exterior length when computed by length, else INT_MIN
    uint32_t dim = 0;
    std::vector<SparseVec> reps;  // coordinates in the degree-t slice
};

// Homology slices for t in [t_lo, t_hi]; requires t_hi + |Q_i| to be within
// the module's completeness bound. Slices with dim 0 are included.
std::vector<MargolisSlice> margolis_homology(const Comodule& M, int i, long long t_lo, long long t_hi,
                                             int threads = 1);

// Same, additionally graded by exterior length (monomial-basis comodules,
// or any whose elements all know their length).
std::vector<MargolisSlice> margolis_homology_by_length(const Comodule& M, int i, long long t_lo,
                                                       long long t_hi);

}  // namespace coops
