#include "core/element.h"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace coops {

std::optional<std::pair<Monomial, int>> mul_mono(const Monomial& a, const Monomial& b) {
    if (a.is_unit()) return std::make_pair(b, 1);
    if (b.is_unit()) return std::make_pair(a, 1);
    if (a.sys != b.sys) throw std::invalid_argument("multiplying monomials from different alphabets");
    if (a.taus & b.taus) return std::nullopt;  // repeated exterior factor
    Monomial m;
    m.sys = a.sys;
    m.ze.resize(std::max(a.ze.size(), b.ze.size()), 0);
    for (size_t i = 0; i < m.ze.size(); ++i) m.ze[i] = a.ze_at(i + 1) + b.ze_at(i + 1);
    m.taus = a.taus | b.taus;
    m.trim();
    // Sign: each exterior factor t_j of b moves left past the t_i of a with i > j.
    int inversions = 0;
    for (uint32_t j = 0; j <= 31; ++j) {
        if (!(b.taus & (1u << j))) continue;
        uint32_t higher = a.taus >> (j + 1);
        inversions += __builtin_popcount(higher);
    }
    return std::make_pair(m, inversions % 2 == 0 ? 1 : -1);
}

Element Element::from(const Monomial& m, uint32_t c) {
    Element e;
    if (c != 0) e.terms[m] = c;
    return e;
}

void el_add_term(const FpCtx& F, Element& e, const Monomial& m, uint32_t c) {
    if (c == 0) return;
    auto [it, inserted] = e.terms.try_emplace(m, c);
    if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second == 0) e.terms.erase(it);
    }
}

Element el_add(const FpCtx& F, const Element& a, const Element& b) {
    Element r = a;
    for (const auto& [m, c] : b.terms) el_add_term(F, r, m, c);
    return r;
}

Element el_scale(const FpCtx& F, uint32_t c, const Element& a) {
    Element r;
    if (c == 0) return r;
    for (const auto& [m, v] : a.terms) r.terms[m] = F.mul(c, v);
    return r;
}

Element el_mul(const FpCtx& F, const Element& a, const Element& b) {
    Element r;
    for (const auto& [ma, ca] : a.terms) {
        for (const auto& [mb, cb] : b.terms) {
            auto prod = mul_mono(ma, mb);
            if (!prod) continue;
            uint32_t c = F.mul(ca, cb);
            if (prod->second < 0) c = F.neg(c);
            el_add_term(F, r, prod->first, c);
        }
    }
    return r;
}

Element el_pow(const FpCtx& F, const Element& a, uint32_t e) {
    Element r = Element::from(Monomial::one(a.terms.empty() ? GenSystem::Conjugate : a.terms.begin()->first.sys));
    for (uint32_t i = 0; i < e; ++i) r = el_mul(F, r, a);
    return r;
}

std::string el_str(const Element& e, uint32_t p) {
    if (e.terms.empty()) return "0";
    std::vector<std::pair<const Monomial*, uint32_t>> ts;
    ts.reserve(e.terms.size());
    for (const auto& [m, c] : e.terms) ts.emplace_back(&m, c);
    std::stable_sort(ts.begin(), ts.end(), [p](const auto& x, const auto& y) {
        long long dx = mono_degree(*x.first, p), dy = mono_degree(*y.first, p);
        if (dx != dy) return dx > dy;
        return lex_less(*y.first, *x.first);
    });
    std::string s;
    for (const auto& [m, c] : ts) {
        if (!s.empty()) s += " + ";
        if (c != 1 || m->is_unit()) {
            s += std::to_string(c);
            if (!m->is_unit()) s += ' ';
        }
        if (!m->is_unit()) s += mono_str(*m);
    }
    return s;
}

Element parse_element(const FpCtx& F, std::string_view s) {
    Element e;
    size_t pos = 0;
    while (pos <= s.size()) {
        size_t plus = s.find('+', pos);
        std::string_view term = s.substr(pos, plus == std::string_view::npos ? std::string_view::npos : plus - pos);
        // Trim surrounding whitespace.
        size_t b = term.find_first_not_of(" \t");
        size_t f = term.find_last_not_of(" \t");
        if (b == std::string_view::npos) {
            if (!(term.empty() && pos == 0 && plus == std::string_view::npos))
                throw std::invalid_argument("empty term in element: " + std::string(s));
            break;
        }
        term = term.substr(b, f - b + 1);
        uint32_t coeff = 1;
        // A leading all-digit token is the coefficient.
        size_t sp = term.find_first_of(" \t");
        std::string_view head = term.substr(0, sp);
        bool digits = !head.empty() && head.find_first_not_of("0123456789") == std::string_view::npos;
        if (digits) {
            coeff = F.norm(std::stoll(std::string(head)));
            term = sp == std::string_view::npos ? std::string_view{} : term.substr(sp + 1);
            b = term.find_first_not_of(" \t");
            term = b == std::string_view::npos ? std::string_view{} : term.substr(b);
        }
        Monomial m = term.empty() ? Monomial::one() : parse_mono(term);
        el_add_term(F, e, m, coeff);
        if (plus == std::string_view::npos) break;
        pos = plus + 1;
    }
    return e;
}

TensorElement TensorElement::from(const Monomial& a, const Monomial& b, uint32_t c) {
    TensorElement e;
    if (c != 0) e.terms[{a, b}] = c;
    return e;
}

void tel_add_term(const FpCtx& F, TensorElement& e, const TensorMono& m, uint32_t c) {
    if (c == 0) return;
    auto [it, inserted] = e.terms.try_emplace(m, c);
    if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second == 0) e.terms.erase(it);
    }
}

TensorElement tel_add(const FpCtx& F, const TensorElement& a, const TensorElement& b) {
    TensorElement r = a;
    for (const auto& [m, c] : b.terms) tel_add_term(F, r, m, c);
    return r;
}

TensorElement tel_scale(const FpCtx& F, uint32_t c, const TensorElement& a) {
    TensorElement r;
    if (c == 0) return r;
    for (const auto& [m, v] : a.terms) r.terms[m] = F.mul(c, v);
    return r;
}

TensorElement tel_mul(const FpCtx& F, const TensorElement& x, const TensorElement& y) {
    TensorElement r;
    for (const auto& [mx, cx] : x.terms) {
        for (const auto& [my, cy] : y.terms) {
            auto left = mul_mono(mx.a, my.a);
            if (!left) continue;
            auto right = mul_mono(mx.b, my.b);
            if (!right) continue;
            int sign = left->second * right->second;
            if ((mono_parity(mx.b) & mono_parity(my.a)) != 0) sign = -sign;
            uint32_t c = F.mul(cx, cy);
            if (sign < 0) c = F.neg(c);
            tel_add_term(F, r, {left->first, right->first}, c);
        }
    }
    return r;
}

TensorElement tel_pow(const FpCtx& F, const TensorElement& x, uint32_t e) {
    GenSystem sys = x.terms.empty() ? GenSystem::Conjugate : x.terms.begin()->first.a.sys;
    TensorElement r = TensorElement::from(Monomial::one(sys), Monomial::one(sys));
    for (uint32_t i = 0; i < e; ++i) r = tel_mul(F, r, x);
    return r;
}

std::string tel_str(const TensorElement& e, uint32_t p) {
    if (e.terms.empty()) return "0";
    std::vector<std::pair<const TensorMono*, uint32_t>> ts;
    for (const auto& [m, c] : e.terms) ts.emplace_back(&m, c);
    std::stable_sort(ts.begin(), ts.end(), [p](const auto& x, const auto& y) {
        long long dx = mono_degree(x.first->a, p) + mono_degree(x.first->b, p);
        long long dy = mono_degree(y.first->a, p) + mono_degree(y.first->b, p);
        if (dx != dy) return dx > dy;
        if (!(x.first->a == y.first->a)) return lex_less(x.first->a, y.first->a);
        return lex_less(x.first->b, y.first->b);
    });
    std::string s;
    for (const auto& [m, c] : ts) {
        if (!s.empty()) s += " + ";
        if (c != 1) s += std::to_string(c) + " ";
        s += "(" + mono_str(m->a) + ")(x)(" + mono_str(m->b) + ")";
    }
    return s;
}

}  // namespace coops
