#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace coops {

// Which generator alphabet a monomial is written in.
// Conjugate: z<k> (polynomial, even) and t<k> (exterior, odd).
// Standard:  xi<k> and tau<k>.
enum class GenSystem : uint8_t { Conjugate, Standard };

// A monomial in the dual Steenrod algebra at an odd prime:
// a polynomial part z1^e1 z2^e2 ... and a square-free exterior part.
struct Monomial {
    std::vector<uint32_t> ze;  // ze[k-1] = exponent of z_{k}; trailing zeros trimmed
    uint32_t taus = 0;         // bit k set iff t_k is a factor (k <= 31)
    GenSystem sys = GenSystem::Conjugate;

    bool operator==(const Monomial& o) const = default;

    bool is_unit() const { return ze.empty() && taus == 0; }
    uint32_t ze_at(size_t k) const { return k >= 1 && k <= ze.size() ? ze[k - 1] : 0; }
    void trim();

    // The unit monomial is alphabet-neutral; it always carries the
    // canonical (conjugate) tag so that 1 == 1 across alphabets.
    static Monomial one(GenSystem = GenSystem::Conjugate) { return Monomial{}; }
    static Monomial zgen(uint32_t k, uint32_t e = 1, GenSystem s = GenSystem::Conjugate);
    static Monomial tgen(uint32_t k, GenSystem s = GenSystem::Conjugate);
};

// |z_k| = 2(p^k - 1), |t_k| = 2 p^k - 1.
long long mono_degree(const Monomial& m, uint32_t p);

// wt(z_k) = wt(t_k) = p^k, additive over factors.
long long mono_weight(const Monomial& m, uint32_t p);

// Number of exterior factors.
int mono_length(const Monomial& m);

// Parity of the degree (0 even, 1 odd); independent of p.
inline int mono_parity(const Monomial& m) { return __builtin_popcount(m.taus) & 1; }

// p-free strict total order on (system, polynomial exponents, exterior set).
bool lex_less(const Monomial& a, const Monomial& b);

// (degree, lex) order used for printed bases.
bool graded_less(const Monomial& a, const Monomial& b, uint32_t p);

struct MonoLex {
    bool operator()(const Monomial& a, const Monomial& b) const { return lex_less(a, b); }
};

// Text form: "z1^9 z3 t2", unit prints "1". Standard system uses xi/tau.
std::string mono_str(const Monomial& m);

// Parses the text form; throws std::invalid_argument on malformed input
// or on generators from a mixed alphabet.
Monomial parse_mono(std::string_view s);

}  // namespace coops
