#pragma once

#include <limits>

#include "submodule.hpp"

namespace buchsbaum {

/* Krull dimension sentinel for the zero module. */
constexpr int kDimZeroModule = std::numeric_limits<int>::min();

/* Laurent polynomial in one variable T with integer coefficients. */
struct LaurentPoly {
    std::map<int, long long> c;

    bool is_zero() const { return c.empty(); }
    long long at(int i) const {
        auto it = c.find(i);
        return it == c.end() ? 0 : it->second;
    }
    void set(int i, long long v) {
        if (v == 0) c.erase(i);
        else c[i] = v;
    }
    void add(int i, long long v) { set(i, at(i) + v); }
    bool operator==(const LaurentPoly& o) const { return c == o.c; }
    long long eval_one() const {
        long long s = 0;
        for (auto& [i, v] : c) s += v;
        return s;
    }
    LaurentPoly shifted_scaled(int a, long long s) const {
        LaurentPoly r;
        for (auto& [i, v] : c) r.set(i + a, v * s);
        return r;
    }
    LaurentPoly plus(const LaurentPoly& o) const {
        LaurentPoly r = *this;
        for (auto& [i, v] : o.c) r.add(i, v);
        return r;
    }
    /* multiply by (1 - T^d) */
    LaurentPoly times_one_minus(int d) const { return plus(shifted_scaled(d, -1)); }
    /* exact division by (1 - T); requires eval_one() == 0 */
    LaurentPoly div_one_minus() const {
        if (is_zero()) return *this;
        LaurentPoly r;
        int lo = c.begin()->first, hi = c.rbegin()->first;
        long long run = 0;
        for (int i = lo; i < hi; ++i) {
            run += at(i);
            r.set(i, run);
        }
        if (run + at(hi) != 0) throw AlgebraError("Laurent division: (1-T) is not a factor");
        return r;
    }
};

namespace detail {

inline std::vector<Exponent> minimalize_monomials(std::vector<Exponent> gens) {
    std::sort(gens.begin(), gens.end(), grevlex_less);
    std::vector<Exponent> min;
    for (const Exponent& g : gens) {
        bool redundant = false;
        for (const Exponent& m : min)
            if (m.divides(g)) {
                redundant = true;
                break;
            }
        if (!redundant) min.push_back(g);
    }
    return min;
}

/* numerator of the Hilbert series of R/J for a monomial ideal J, via the
   pivot recursion N(J) = N(J + (x_v)) + T * N(J : x_v) */
inline LaurentPoly monomial_numerator(const PolyRing& r, std::vector<Exponent> gens) {
    gens = minimalize_monomials(std::move(gens));
    LaurentPoly one;
    one.set(0, 1);
    if (gens.empty()) return one;
    if (gens.front().deg == 0) return LaurentPoly{};
    bool coprime = true;
    for (size_t i = 0; i < gens.size() && coprime; ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (!gens[i].coprime(gens[j])) {
                coprime = false;
                break;
            }
    if (coprime) {
        LaurentPoly n = one;
        for (const Exponent& g : gens) n = n.times_one_minus(int(g.deg));
        return n;
    }
    int best = -1, best_count = 0;
    for (int v = 0; v < r.nvars; ++v) {
        int cnt = 0;
        for (const Exponent& g : gens)
            if (g.e[size_t(v)] > 0) ++cnt;
        if (cnt > best_count) {
            best_count = cnt;
            best = v;
        }
    }
    std::vector<Exponent> plus = gens;
    plus.push_back(Exponent::var(best));
    std::vector<Exponent> colon;
    for (Exponent g : gens) {
        if (g.e[size_t(best)] > 0) {
            g.e[size_t(best)] -= 1;
            g.deg -= 1;
        }
        colon.push_back(g);
    }
    return monomial_numerator(r, std::move(plus))
        .plus(monomial_numerator(r, std::move(colon)).shifted_scaled(1, 1));
}

}  // namespace detail

/* Hilbert numerator of F/N: HS = numerator / (1-T)^nvars. */
inline LaurentPoly hilbert_numerator(const FreeModule& F,
                                     const std::vector<std::vector<Exponent>>& leads) {
    LaurentPoly total;
    for (size_t k = 0; k < F.rank(); ++k) {
        LaurentPoly nk = detail::monomial_numerator(F.ring, leads[k]);
        total = total.plus(nk.shifted_scaled(F.twists[k], 1));
    }
    return total;
}

struct HilbertData {
    LaurentPoly numerator;
    int dim = kDimZeroModule;       // Krull dimension of the module
    long long rank = 0;             // generic rank over R
    long long multiplicity = 0;     // numerator/(1-T)^codim evaluated at 1
};

inline HilbertData hilbert_data(const FreeModule& F,
                                const std::vector<std::vector<Exponent>>& leads) {
    HilbertData h;
    h.numerator = hilbert_numerator(F, leads);
    if (h.numerator.is_zero()) return h;
    h.rank = h.numerator.eval_one();
    LaurentPoly n = h.numerator;
    int k = 0;
    while (n.eval_one() == 0) {
        n = n.div_one_minus();
        ++k;
    }
    h.dim = F.ring.nvars - k;
    h.multiplicity = n.eval_one();
    if (k > 0) h.rank = 0;
    return h;
}

inline bool is_finite_length(const HilbertData& h) { return h.dim <= 0; }

/*
 * All nonzero graded pieces of a finite length quotient F/N, returned as
 * (degree, dimension) pairs in ascending degree.  Exact: standard monomials
 * are enumerated up to the componentwise corner bound.
 */
inline std::vector<std::pair<int, int>> finite_length_pieces(
    const FreeModule& F, const std::vector<std::vector<Exponent>>& leads) {
    HilbertData h = hilbert_data(F, leads);
    if (h.numerator.is_zero()) return {};
    if (!is_finite_length(h)) throw AlgebraError("module does not have finite length");
    int lo = *std::min_element(F.twists.begin(), F.twists.end());
    int hi = lo;
    for (size_t k = 0; k < F.rank(); ++k) {
        auto min = detail::minimalize_monomials(leads[k]);
        int corner = 0;
        for (int v = 0; v < F.ring.nvars; ++v) {
            int a = -1;
            for (const Exponent& g : min) {
                bool pure = g.e[size_t(v)] > 0 && int(g.deg) == int(g.e[size_t(v)]);
                if (pure) a = a < 0 ? int(g.e[size_t(v)]) : std::min(a, int(g.e[size_t(v)]));
            }
            if (a < 0) throw InvariantError("finite length pieces: no pure power bound");
            corner += a - 1;
        }
        hi = std::max(hi, F.twists[k] + corner);
    }
    std::vector<std::pair<int, int>> out;
    long long total = 0;
    for (int t = lo; t <= hi; ++t) {
        int d = piece_dim_quotient(F, leads, t);
        if (d > 0) out.push_back({t, d});
        total += d;
    }
    if (total != h.multiplicity) throw InvariantError("finite length pieces: length mismatch");
    return out;
}

}  // namespace buchsbaum
