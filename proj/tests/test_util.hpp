#pragma once

#include "buchsbaum/hilbert.hpp"

namespace tu {

using namespace buchsbaum;

inline PolyRing ring(int nv, uint32_t p = 32003) { return PolyRing(PrimeField(p), nv); }

inline Polynomial X(const PolyRing& r, int i) { return Polynomial::variable(r, i); }

/* two disjoint lines in P^3: (x0, x1) meet (x2, x3) */
inline std::vector<Polynomial> skew_lines(const PolyRing& r) {
    Polynomial x0 = X(r, 0), x1 = X(r, 1), x2 = X(r, 2), x3 = X(r, 3);
    return {x0 * x2, x0 * x3, x1 * x2, x1 * x3};
}

inline std::vector<Polynomial> twisted_cubic(const PolyRing& r) {
    Polynomial x0 = X(r, 0), x1 = X(r, 1), x2 = X(r, 2), x3 = X(r, 3);
    return {x0 * x2 - x1 * x1, x1 * x3 - x2 * x2, x0 * x3 - x1 * x2};
}

/* smooth-codimension-two style complete intersection of a quadric and cubic */
inline std::vector<Polynomial> ci_2_3(const PolyRing& r) {
    Polynomial x0 = X(r, 0), x1 = X(r, 1), x2 = X(r, 2), x3 = X(r, 3);
    return {x0 * x0 + x1 * x2, x1 * x1 * x1 + x2 * x2 * x3 + x0 * x3 * x3};
}

/* rational quartic curve in P^3 */
inline std::vector<Polynomial> rational_quartic(const PolyRing& r) {
    Polynomial x0 = X(r, 0), x1 = X(r, 1), x2 = X(r, 2), x3 = X(r, 3);
    return {x0 * x3 - x1 * x2, x0 * x0 * x2 - x1 * x1 * x1, x1 * x3 * x3 - x2 * x2 * x2,
            x0 * x2 * x2 - x1 * x1 * x3};
}

}  // namespace tu
