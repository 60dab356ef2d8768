#pragma once

#include "groebner.hpp"

namespace buchsbaum {

/* Generators of Syz(gens) inside R^m with twists = generator degrees. */
inline std::vector<VecPoly> syzygy_gens(const FreeModule& F, const std::vector<VecPoly>& gens,
                                        const std::vector<int>* degs = nullptr) {
    GBEngine gb(F, true);
    for (size_t i = 0; i < gens.size(); ++i)
        gb.add_generator(gens[i], degs ? (*degs)[i] : vec_degree(F, gens[i]));
    return gb.syzygies();
}

/* ker(f) presented as a map K -> source(f) whose image is the kernel. */
inline GradedMap kernel_map(const GradedMap& f) {
    GBEngine gb(f.target(), true);
    for (size_t j = 0; j < f.source().rank(); ++j)
        gb.add_generator(f.col(j), f.source().twists[j]);
    std::vector<VecPoly> syz = gb.syzygies();
    std::vector<int> kdegs;
    kdegs.reserve(syz.size());
    for (const VecPoly& s : syz) kdegs.push_back(vec_degree(f.source(), s));
    FreeModule K(f.source().ring, kdegs);
    return GradedMap(K, f.source(), syz);
}

struct MinGens {
    std::vector<size_t> kept;
    std::vector<VecPoly> vectors;
};

/*
 * Greedy minimal generating set of (<gens> + <modulo>) / <modulo>, processed
 * by ascending degree.  By graded Nakayama the kept vectors are a minimal
 * generating set and form a subset of the input.
 */
inline MinGens minimal_generators(const FreeModule& F, const std::vector<VecPoly>& gens,
                                  const std::vector<VecPoly>* modulo = nullptr) {
    std::vector<size_t> order;
    for (size_t i = 0; i < gens.size(); ++i)
        if (!vec_is_zero(gens[i])) order.push_back(i);
    std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        return vec_degree(F, gens[a]) < vec_degree(F, gens[b]);
    });
    GBEngine gb(F, false);
    if (modulo) gb.add_generators(*modulo);
    MinGens out;
    for (size_t idx : order) {
        if (gb.num_generators() > 0 || modulo) {
            if (gb.contains_up_to(gens[idx])) continue;
        }
        gb.add_generator(gens[idx]);
        out.kept.push_back(idx);
    }
    std::sort(out.kept.begin(), out.kept.end());
    for (size_t idx : out.kept) out.vectors.push_back(gens[idx]);
    return out;
}

inline bool submodules_equal(const FreeModule& F, const std::vector<VecPoly>& A,
                             const std::vector<VecPoly>& B) {
    GBEngine ga(F), gbb(F);
    ga.add_generators(A);
    gbb.add_generators(B);
    for (const VecPoly& b : B)
        if (!ga.contains(b)) return false;
    for (const VecPoly& a : A)
        if (!gbb.contains(a)) return false;
    return true;
}

/*
 * (N : m) where m = (x_0..x_{n-1}) is the irrelevant ideal: the kernel of
 * F (+) R^{s*n} -> F^n, (v, a) |-> (x_i v - sum_j a_ij g_j)_i, projected to
 * the F block.  One syzygy computation.
 */
inline std::vector<VecPoly> colon_by_maximal(const FreeModule& F,
                                             const std::vector<VecPoly>& gens) {
    const PolyRing& r = F.ring;
    int nv = r.nvars;
    size_t rk = F.rank();
    std::vector<int> tot_twists;
    for (int i = 0; i < nv; ++i)
        tot_twists.insert(tot_twists.end(), F.twists.begin(), F.twists.end());
    FreeModule T(r, tot_twists);
    GBEngine gb(T, true);
    for (size_t k = 0; k < rk; ++k) {
        VecPoly col = zero_vec(T);
        for (int i = 0; i < nv; ++i) col[size_t(i) * rk + k] = Polynomial::variable(r, i);
        gb.add_generator(col, F.twists[k] + 1);
    }
    for (size_t j = 0; j < gens.size(); ++j) {
        int d = vec_degree(F, gens[j]);
        for (int i = 0; i < nv; ++i) {
            VecPoly col = zero_vec(T);
            for (size_t k = 0; k < rk; ++k) col[size_t(i) * rk + k] = gens[j][k];
            gb.add_generator(col, d);
        }
    }
    std::vector<VecPoly> out;
    for (const VecPoly& s : gb.syzygies()) {
        VecPoly v(s.begin(), s.begin() + long(rk));
        if (!vec_is_zero(v)) out.push_back(std::move(v));
    }
    return minimal_generators(F, out).vectors;
}

struct SaturationResult {
    std::vector<VecPoly> gens;
    int steps = 0;  // 0 means the input was already saturated
};

inline SaturationResult saturate_by_maximal(const FreeModule& F, std::vector<VecPoly> gens) {
    SaturationResult res;
    for (;;) {
        std::vector<VecPoly> next = colon_by_maximal(F, gens);
        if (submodules_equal(F, gens, next)) break;
        gens = std::move(next);
        ++res.steps;
    }
    res.gens = minimal_generators(F, gens).vectors;
    return res;
}

/* ----- ideal utilities (rank-one ambient) ----- */

inline FreeModule ideal_ambient(const PolyRing& r) { return FreeModule::rank_one(r); }

inline std::vector<VecPoly> wrap_ideal(const std::vector<Polynomial>& I) {
    std::vector<VecPoly> out;
    out.reserve(I.size());
    for (const Polynomial& f : I) out.push_back(VecPoly{f});
    return out;
}

inline std::vector<Polynomial> unwrap_ideal(const std::vector<VecPoly>& gens) {
    std::vector<Polynomial> out;
    out.reserve(gens.size());
    for (const VecPoly& v : gens) out.push_back(v[0]);
    return out;
}

inline std::vector<Polynomial> ideal_min_gens(const PolyRing& r, const std::vector<Polynomial>& I) {
    return unwrap_ideal(minimal_generators(ideal_ambient(r), wrap_ideal(I)).vectors);
}

inline bool ideals_equal(const PolyRing& r, const std::vector<Polynomial>& I,
                         const std::vector<Polynomial>& J) {
    return submodules_equal(ideal_ambient(r), wrap_ideal(I), wrap_ideal(J));
}

/* intersection via syzygies of the concatenated generator lists */
inline std::vector<Polynomial> ideal_intersect(const PolyRing& r, const std::vector<Polynomial>& I,
                                               const std::vector<Polynomial>& J) {
    FreeModule F = ideal_ambient(r);
    std::vector<VecPoly> cols = wrap_ideal(I);
    for (const Polynomial& g : J) cols.push_back(VecPoly{g});
    std::vector<Polynomial> out;
    for (const VecPoly& s : syzygy_gens(F, cols)) {
        Polynomial w = Polynomial::zero(r);
        for (size_t i = 0; i < I.size(); ++i) w = w + s[i] * I[i];
        if (!w.is_zero()) out.push_back(w);
    }
    return ideal_min_gens(r, out);
}

/* (N : v) = { f in R : f*v lies in N }, for v in the ambient of N */
inline std::vector<Polynomial> colon_into(const FreeModule& F, const std::vector<VecPoly>& N,
                                          const VecPoly& v, int vdeg) {
    GBEngine gb(F, true);
    gb.add_generator(v, vdeg);
    gb.add_generators(N);
    std::vector<Polynomial> out;
    for (const VecPoly& s : gb.syzygies())
        if (!s[0].is_zero()) out.push_back(s[0]);
    return ideal_min_gens(F.ring, out);
}

/* Ann(F/N) = intersection over basis vectors of (N : e_k) */
inline std::vector<Polynomial> annihilator_of_quotient(const FreeModule& F,
                                                       const std::vector<VecPoly>& N) {
    const PolyRing& r = F.ring;
    if (F.rank() == 0) return {Polynomial::constant(r, 1)};
    std::vector<Polynomial> acc;
    for (size_t k = 0; k < F.rank(); ++k) {
        std::vector<Polynomial> ck = colon_into(F, N, unit_vec(F, k), F.twists[k]);
        acc = k == 0 ? std::move(ck) : ideal_intersect(r, acc, ck);
        if (acc.empty()) return acc;  // annihilator is zero
    }
    return acc;
}

/* ----- graded pieces by standard monomial counting ----- */

inline void enumerate_monomials(const PolyRing& r, int deg, std::vector<Exponent>& out) {
    if (deg < 0) return;
    if (deg > 255) throw AlgebraError("degree too large for monomial enumeration");
    Exponent cur = Exponent::one();
    std::function<void(int, int)> rec = [&](int var, int rem) {
        if (var == r.nvars - 1) {
            cur.e[size_t(var)] = uint8_t(rem);
            cur.deg = uint16_t(deg);
            out.push_back(cur);
            cur.e[size_t(var)] = 0;
            return;
        }
        for (int a = rem; a >= 0; --a) {
            cur.e[size_t(var)] = uint8_t(a);
            rec(var + 1, rem - a);
        }
        cur.e[size_t(var)] = 0;
    };
    rec(0, deg);
}

inline std::vector<Exponent> monomials_of_degree(const PolyRing& r, int deg) {
    std::vector<Exponent> out;
    enumerate_monomials(r, deg, out);
    return out;
}

/* dim_K of (F/N)_t given the lead exponents of a Groebner basis of N */
inline int piece_dim_quotient(const FreeModule& F, const std::vector<std::vector<Exponent>>& leads,
                              int t) {
    int total = 0;
    for (size_t k = 0; k < F.rank(); ++k) {
        int d = t - F.twists[k];
        if (d < 0) continue;
        for (const Exponent& m : monomials_of_degree(F.ring, d)) {
            bool standard = true;
            for (const Exponent& l : leads[k])
                if (l.divides(m)) {
                    standard = false;
                    break;
                }
            if (standard) ++total;
        }
    }
    return total;
}

}  // namespace buchsbaum
