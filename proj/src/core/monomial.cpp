#include "core/monomial.h"

#include <algorithm>
#include <stdexcept>

namespace coops {

namespace {

long long ipow(uint32_t p, uint32_t k) {
    long long r = 1;
    for (uint32_t i = 0; i < k; ++i) r *= p;
    return r;
}

constexpr uint32_t kMaxTauIndex = 31;

}  // namespace

void Monomial::trim() {
    while (!ze.empty() && ze.back() == 0) ze.pop_back();
    if (is_unit()) sys = GenSystem::Conjugate;
}

Monomial Monomial::zgen(uint32_t k, uint32_t e, GenSystem s) {
    if (k == 0) throw std::invalid_argument("z_0 is not a generator");
    Monomial m;
    m.sys = s;
    if (e > 0) {
        m.ze.assign(k, 0);
        m.ze[k - 1] = e;
    }
    return m;
}

Monomial Monomial::tgen(uint32_t k, GenSystem s) {
    if (k > kMaxTauIndex) throw std::invalid_argument("exterior generator index too large");
    Monomial m;
    m.sys = s;
    m.taus = 1u << k;
    return m;
}

long long mono_degree(const Monomial& m, uint32_t p) {
    long long d = 0;
    for (size_t i = 0; i < m.ze.size(); ++i) {
        if (m.ze[i]) d += static_cast<long long>(m.ze[i]) * (2 * (ipow(p, static_cast<uint32_t>(i + 1)) - 1));
    }
    for (uint32_t k = 0; k <= kMaxTauIndex; ++k) {
        if (m.taus & (1u << k)) d += 2 * ipow(p, k) - 1;
    }
    return d;
}

long long mono_weight(const Monomial& m, uint32_t p) {
    long long w = 0;
    for (size_t i = 0; i < m.ze.size(); ++i) {
        if (m.ze[i]) w += static_cast<long long>(m.ze[i]) * ipow(p, static_cast<uint32_t>(i + 1));
    }
    for (uint32_t k = 0; k <= kMaxTauIndex; ++k) {
        if (m.taus & (1u << k)) w += ipow(p, k);
    }
    return w;
}

int mono_length(const Monomial& m) { return __builtin_popcount(m.taus); }

bool lex_less(const Monomial& a, const Monomial& b) {
    if (a.sys != b.sys) return a.sys < b.sys;
    size_t n = std::max(a.ze.size(), b.ze.size());
    for (size_t i = 0; i < n; ++i) {
        uint32_t ea = i < a.ze.size() ? a.ze[i] : 0;
        uint32_t eb = i < b.ze.size() ? b.ze[i] : 0;
        if (ea != eb) return ea < eb;
    }
    return a.taus < b.taus;
}

bool graded_less(const Monomial& a, const Monomial& b, uint32_t p) {
    long long da = mono_degree(a, p), db = mono_degree(b, p);
    if (da != db) return da < db;
    return lex_less(a, b);
}

std::string mono_str(const Monomial& m) {
    const char* zp = m.sys == GenSystem::Conjugate ? "z" : "xi";
    const char* tp = m.sys == GenSystem::Conjugate ? "t" : "tau";
    std::string s;
    for (size_t i = 0; i < m.ze.size(); ++i) {
        if (m.ze[i] == 0) continue;
        if (!s.empty()) s += ' ';
        s += zp;
        s += std::to_string(i + 1);
        if (m.ze[i] > 1) {
            s += '^';
            s += std::to_string(m.ze[i]);
        }
    }
    for (uint32_t k = 0; k <= kMaxTauIndex; ++k) {
        if (!(m.taus & (1u << k))) continue;
        if (!s.empty()) s += ' ';
        s += tp;
        s += std::to_string(k);
    }
    return s.empty() ? "1" : s;
}

Monomial parse_mono(std::string_view s) {
    Monomial m;
    bool sys_set = false;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    };
    auto read_uint = [&]() -> uint32_t {
        if (i >= s.size() || s[i] < '0' || s[i] > '9')
            throw std::invalid_argument("expected a number in monomial: " + std::string(s));
        uint64_t v = 0;
        while (i < s.size() && s[i] >= '0' && s[i] <= '9') {
            v = v * 10 + (s[i] - '0');
            if (v > 1u << 30) throw std::invalid_argument("number too large in monomial");
            ++i;
        }
        return static_cast<uint32_t>(v);
    };
    auto set_sys = [&](GenSystem g) {
        if (sys_set && m.sys != g)
            throw std::invalid_argument("mixed generator alphabets in monomial: " + std::string(s));
        m.sys = g;
        sys_set = true;
    };

    skip_ws();
    bool any = false;
    while (i < s.size()) {
        if (s[i] == '1' && (i + 1 == s.size() || s[i + 1] == ' ' || s[i + 1] == '\t')) {
            ++i;  // the unit factor
            skip_ws();
            any = true;
            continue;
        }
        bool exterior = false;
        if (s.compare(i, 3, "tau") == 0) {
            exterior = true;
            set_sys(GenSystem::Standard);
            i += 3;
        } else if (s.compare(i, 2, "xi") == 0) {
            set_sys(GenSystem::Standard);
            i += 2;
        } else if (s[i] == 't') {
            exterior = true;
            set_sys(GenSystem::Conjugate);
            i += 1;
        } else if (s[i] == 'z') {
            set_sys(GenSystem::Conjugate);
            i += 1;
        } else {
            throw std::invalid_argument("unexpected character in monomial: " + std::string(s));
        }
        uint32_t k = read_uint();
        uint32_t e = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            e = read_uint();
        }
        if (exterior) {
            if (k > kMaxTauIndex) throw std::invalid_argument("exterior index too large: " + std::string(s));
            if (e != 1) throw std::invalid_argument("exterior generators are square-free: " + std::string(s));
            if (m.taus & (1u << k)) throw std::invalid_argument("repeated exterior factor: " + std::string(s));
            m.taus |= 1u << k;
        } else {
            if (k == 0) throw std::invalid_argument("polynomial index must be >= 1: " + std::string(s));
            if (m.ze.size() < k) m.ze.resize(k, 0);
            m.ze[k - 1] += e;
        }
        any = true;
        skip_ws();
    }
    if (!any) throw std::invalid_argument("empty monomial");
    m.trim();
    return m;
}

}  // namespace coops
