#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace buchsbaum {

struct AlgebraError : std::runtime_error {
    explicit AlgebraError(const std::string& msg) : std::runtime_error(msg) {}
};

/* Internal self-check failures.  The CLI maps these to exit code 4. */
struct InvariantError : std::runtime_error {
    explicit InvariantError(const std::string& msg) : std::runtime_error(msg) {}
};

inline bool is_prime_u32(uint32_t n) {
    if (n < 2) return false;
    for (uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/*
 * Arithmetic in the prime field F_p.  Elements are canonical residues in
 * [0, p).  All toolkit computations run over one fixed p (default 32003).
 */
struct PrimeField {
    uint32_t p = 32003;

    PrimeField() = default;
    explicit PrimeField(uint32_t prime) : p(prime) {
        if (!is_prime_u32(prime)) throw AlgebraError("field characteristic must be prime: " + std::to_string(prime));
    }

    uint32_t reduce_ll(long long v) const {
        long long r = v % static_cast<long long>(p);
        if (r < 0) r += p;
        return static_cast<uint32_t>(r);
    }
    uint32_t add(uint32_t a, uint32_t b) const {
        uint32_t s = a + b;
        return s >= p ? s - p : s;
    }
    uint32_t sub(uint32_t a, uint32_t b) const { return a >= b ? a - b : a + p - b; }
    uint32_t neg(uint32_t a) const { return a == 0 ? 0 : p - a; }
    uint32_t mul(uint32_t a, uint32_t b) const {
        return static_cast<uint32_t>((static_cast<uint64_t>(a) * b) % p);
    }
    uint32_t pow(uint32_t a, uint64_t e) const {
        uint32_t r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }
    uint32_t inv(uint32_t a) const {
        if (a == 0) throw AlgebraError("division by zero in F_p");
        return pow(a, p - 2);
    }
    uint32_t div(uint32_t a, uint32_t b) const { return mul(a, inv(b)); }

    bool operator==(const PrimeField& o) const { return p == o.p; }
    bool operator!=(const PrimeField& o) const { return p != o.p; }
};

}  // namespace buchsbaum
