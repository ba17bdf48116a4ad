#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>

#include "core/fp.h"
#include "core/monomial.h"

namespace coops {

// Product of two monomials in the graded-commutative algebra: nullopt if an
// exterior factor repeats, otherwise the merged monomial and the sign picked
// up by moving odd factors past each other.
std::optional<std::pair<Monomial, int>> mul_mono(const Monomial& a, const Monomial& b);

// Finite F_p-linear combination of monomials.
struct Element {
    std::map<Monomial, uint32_t, MonoLex> terms;  // nonzero coefficients only

    bool zero() const { return terms.empty(); }
    static Element from(const Monomial& m, uint32_t c = 1);

    bool operator==(const Element& o) const { return terms == o.terms; }
};

void el_add_term(const FpCtx& F, Element& e, const Monomial& m, uint32_t c);
Element el_add(const FpCtx& F, const Element& a, const Element& b);
Element el_scale(const FpCtx& F, uint32_t c, const Element& a);
Element el_mul(const FpCtx& F, const Element& a, const Element& b);
Element el_pow(const FpCtx& F, const Element& a, uint32_t e);

// Descending (degree, lex) term order, e.g. "2 z1^3 t2 + z2"; zero prints "0".
std::string el_str(const Element& e, uint32_t p);

// Parses the el_str form. Coefficients are leading integer tokens.
Element parse_element(const FpCtx& F, std::string_view s);

// Monomial tensor monomial, with an F_p coefficient map.
struct TensorMono {
    Monomial a, b;
    bool operator==(const TensorMono& o) const = default;
};

struct TensorMonoLex {
    bool operator()(const TensorMono& x, const TensorMono& y) const {
        if (!(x.a == y.a)) return lex_less(x.a, y.a);
        return lex_less(x.b, y.b);
    }
};

struct TensorElement {
    std::map<TensorMono, uint32_t, TensorMonoLex> terms;

    bool zero() const { return terms.empty(); }
    static TensorElement from(const Monomial& a, const Monomial& b, uint32_t c = 1);

    bool operator==(const TensorElement& o) const { return terms == o.terms; }
};

void tel_add_term(const FpCtx& F, TensorElement& e, const TensorMono& m, uint32_t c);
TensorElement tel_add(const FpCtx& F, const TensorElement& a, const TensorElement& b);
TensorElement tel_scale(const FpCtx& F, uint32_t c, const TensorElement& a);

// Multiplication in the tensor-square algebra with the Koszul rule
// (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
TensorElement tel_mul(const FpCtx& F, const TensorElement& x, const TensorElement& y);
TensorElement tel_pow(const FpCtx& F, const TensorElement& x, uint32_t e);

std::string tel_str(const TensorElement& e, uint32_t p);

}  // namespace coops
