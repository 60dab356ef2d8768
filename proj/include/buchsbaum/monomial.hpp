#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>

#include "field.hpp"

namespace buchsbaum {

constexpr int kMaxVars = 8;

/*
 * The ambient graded polynomial ring K[x0..xn], K = F_p, standard grading,
 * graded reverse lexicographic order.  The order is a ring-level constant:
 * nothing in the toolkit is parameterized over it.
 */
struct PolyRing {
    PrimeField field;
    int nvars = 0;  // n + 1

    PolyRing() = default;
    PolyRing(PrimeField f, int numVars) : field(f), nvars(numVars) {
        if (numVars < 1 || numVars > kMaxVars)
            throw AlgebraError("ring supports 1.." + std::to_string(kMaxVars) + " variables");
    }

    int proj_dim_n() const { return nvars - 1; }  // the n of P^n
    std::string var_name(int i) const { return "x" + std::to_string(i); }

    bool operator==(const PolyRing& o) const { return field == o.field && nvars == o.nvars; }
    bool operator!=(const PolyRing& o) const { return !(*this == o); }
};

/* Exponent vector of a monomial, with cached total degree. */
struct Exponent {
    std::array<uint8_t, kMaxVars> e{};
    uint16_t deg = 0;

    static Exponent one() { return Exponent{}; }
    static Exponent var(int i) {
        Exponent m;
        m.e[i] = 1;
        m.deg = 1;
        return m;
    }

    bool is_one() const { return deg == 0; }

    Exponent operator*(const Exponent& o) const {
        Exponent r;
        unsigned d = deg + o.deg;
        for (int i = 0; i < kMaxVars; ++i) {
            unsigned s = unsigned(e[i]) + o.e[i];
            if (s > 255) throw AlgebraError("monomial exponent overflow");
            r.e[i] = static_cast<uint8_t>(s);
        }
        r.deg = static_cast<uint16_t>(d);
        return r;
    }

    bool divides(const Exponent& o) const {
        if (deg > o.deg) return false;
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }

    /* this must divide o */
    Exponent quotient_of(const Exponent& o) const {
        Exponent r;
        for (int i = 0; i < kMaxVars; ++i) r.e[i] = static_cast<uint8_t>(o.e[i] - e[i]);
        r.deg = static_cast<uint16_t>(o.deg - deg);
        return r;
    }

    Exponent lcm(const Exponent& o) const {
        Exponent r;
        unsigned d = 0;
        for (int i = 0; i < kMaxVars; ++i) {
            r.e[i] = std::max(e[i], o.e[i]);
            d += r.e[i];
        }
        r.deg = static_cast<uint16_t>(d);
        return r;
    }

    bool coprime(const Exponent& o) const {
        for (int i = 0; i < kMaxVars; ++i)
            if (e[i] && o.e[i]) return false;
        return true;
    }

    bool operator==(const Exponent& o) const { return deg == o.deg && e == o.e; }
    bool operator!=(const Exponent& o) const { return !(*this == o); }
};

/*
 * grevlex: higher total degree wins; on ties the monomial whose last
 * nonzero entry of the exponent difference is negative is the larger.
 * Equivalently: scan from the last variable down, smaller exponent wins.
 */
inline int grevlex_cmp(const Exponent& a, const Exponent& b) {
    if (a.deg != b.deg) return a.deg < b.deg ? -1 : 1;
    for (int i = kMaxVars - 1; i >= 0; --i) {
        if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? -1 : 1;
    }
    return 0;
}

inline bool grevlex_less(const Exponent& a, const Exponent& b) { return grevlex_cmp(a, b) < 0; }

struct ExponentHash {
    size_t operator()(const Exponent& m) const {
        uint64_t h = 1469598103934665603ull;
        for (int i = 0; i < kMaxVars; ++i) {
            h ^= m.e[i];
            h *= 1099511628211ull;
        }
        return static_cast<size_t>(h);
    }
};

}  // namespace buchsbaum
