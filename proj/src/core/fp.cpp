#include "core/fp.h"

#include <stdexcept>
#include <string>

namespace coops {

bool is_odd_prime(uint32_t p) {
    if (p < 3 || p % 2 == 0) return false;
    for (uint32_t d = 3; static_cast<uint64_t>(d) * d <= p; d += 2) {
        if (p % d == 0) return false;
    }
    return true;
}

FpCtx::FpCtx(uint32_t p_) : p(p_) {
    if (!is_odd_prime(p)) {
        throw std::invalid_argument("p must be an odd prime, got " + std::to_string(p));
    }
}

uint32_t FpCtx::pow(uint32_t a, uint64_t e) const {
    uint32_t r = 1;
    uint32_t base = a % p;
    while (e > 0) {
        if (e & 1) r = mul(r, base);
        base = mul(base, base);
        e >>= 1;
    }
    return r;
}

uint32_t FpCtx::inv(uint32_t a) const {
    if (a % p == 0) throw std::invalid_argument("inverse of 0 in F_p");
    // Fermat: a^(p-2); p is small so this is plenty fast.
    return pow(a, p - 2);
}

}  // namespace coops
