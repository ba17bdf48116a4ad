#pragma once

#include <cstdint>

namespace coops {

// Returns true iff p is an odd prime.
bool is_odd_prime(uint32_t p);

// Arithmetic context for the field F_p, p an odd prime.
// All element values are kept normalized to [0, p).
struct FpCtx {
    uint32_t p;

    // Throws std::invalid_argument unless p is an odd prime (p = 2 is
    // rejected: every sign convention in the engine assumes odd p).
    explicit FpCtx(uint32_t p);

    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
    }

    // Normalizes an arbitrary signed integer into [0, p).
    uint32_t norm(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    }

    // Multiplicative inverse; throws std::invalid_argument on 0.
    uint32_t inv(uint32_t a) const;

    // a^e mod p.
    uint32_t pow(uint32_t a, uint64_t e) const;
};

}  // namespace coops
