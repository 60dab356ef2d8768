#pragma once

#include "fpmodule.hpp"

namespace buchsbaum {

/*
 * Local cohomology with supports in the irrelevant ideal, computed through
 * graded duality: the degree t piece of H^i_m(M) is dual to the degree
 * (-t - n - 1) piece of Ext^{n+1-i}(M, R) over P^n, where n + 1 = nvars.
 */
inline int local_cohomology_dim(const FPModule& M, int i, int t) {
    int nv = M.ring().nvars;
    if (i < 0 || i > nv) return 0;
    return M.ext(nv - i).piece_dim(-t - nv);
}

inline bool local_cohomology_vanishes(const FPModule& M, int i) {
    int nv = M.ring().nvars;
    if (i < 0 || i > nv) return true;
    return M.ext(nv - i).is_zero();
}

/* (i, t) -> h^i_m(M)_t over a degree window, rows i_lo..i_hi */
inline std::map<std::pair<int, int>, int> local_cohomology_table(const FPModule& M, int i_lo,
                                                                 int i_hi, int t_lo, int t_hi) {
    std::map<std::pair<int, int>, int> out;
    for (int i = std::max(i_lo, 0); i <= std::min(i_hi, M.ring().nvars); ++i) {
        if (local_cohomology_vanishes(M, i)) continue;
        for (int t = t_lo; t <= t_hi; ++t) {
            int d = local_cohomology_dim(M, i, t);
            if (d) out[{i, t}] = d;
        }
    }
    return out;
}

/* canonical module Ext^{nvars - dim}(M, R) twisted by -nvars */
inline FPModule canonical_module(const FPModule& M) {
    if (M.is_zero()) throw AlgebraError("canonical module of the zero module");
    int nv = M.ring().nvars;
    return M.ext(nv - M.dim()).twisted(-nv);
}

/* degree bounds of a module: least and greatest minimal generator degree */
inline int least_gen_degree(const FPModule& M) {
    std::vector<int> d = M.min_gen_degrees();
    if (d.empty()) throw AlgebraError("degree bound of the zero module");
    return *std::min_element(d.begin(), d.end());
}

inline int greatest_gen_degree(const FPModule& M) {
    std::vector<int> d = M.min_gen_degrees();
    if (d.empty()) throw AlgebraError("degree bound of the zero module");
    return *std::max_element(d.begin(), d.end());
}

/* top nonvanishing degree of a finite length module */
inline int top_degree(const FPModule& M) {
    auto pieces = M.finite_pieces();
    if (pieces.empty()) throw AlgebraError("top degree of the zero module");
    return pieces.back().first;
}

/* ----- quasi-Buchsbaum certification ----- */

struct QuasiBuchsbaumResult {
    bool holds = false;
    // on failure: the cohomological index, variable, and generator witnessing
    // a nonzero product inside some intermediate cohomology module
    int witness_i = -1;
    int witness_var = -1;
    int witness_gen = -1;
    std::vector<int> nonzero_rows;  // i with H^i_m nonzero, excluding the top
};

/*
 * A module of dimension d is quasi-Buchsbaum when every local cohomology
 * module below the top is killed by the irrelevant ideal.  Checked on the
 * Ext side: m * Ext^{nvars-i}(M, R) = 0 for 0 <= i < d.
 */
inline QuasiBuchsbaumResult quasi_buchsbaum_test(const FPModule& M) {
    QuasiBuchsbaumResult res;
    res.holds = true;
    int nv = M.ring().nvars;
    int d = M.dim();
    for (int i = 0; i < d; ++i) {
        FPModule E = M.ext(nv - i);
        if (E.is_zero()) continue;
        res.nonzero_rows.push_back(i);
        const FPModule& Em = E.minimal().mod;
        for (int v = 0; v < nv && res.holds; ++v)
            for (size_t g = 0; g < Em.gens().rank(); ++g) {
                VecPoly w = zero_vec(Em.gens());
                w[g] = Polynomial::variable(M.ring(), v);
                if (!Em.element_is_zero(w)) {
                    res.holds = false;
                    res.witness_i = i;
                    res.witness_var = v;
                    res.witness_gen = int(g);
                    break;
                }
            }
        if (!res.holds) return res;
    }
    return res;
}

/* ----- syzygy depth certification ----- */

struct KSyzygyResult {
    bool holds = false;
    int failed_ext = -1;  // j with codim Ext^j too small, when failing
};

/*
 * M is a k-th syzygy module iff codim Ext^j(M, R) >= j + k for every j >= 1,
 * i.e. dim Ext^j <= nvars - j - k.
 */
inline KSyzygyResult k_syzygy_test(const FPModule& M, int k) {
    KSyzygyResult res;
    res.holds = true;
    int nv = M.ring().nvars;
    for (int j = 1; j <= nv; ++j) {
        FPModule E = M.ext(j);
        if (E.is_zero()) continue;
        if (E.dim() > nv - j - k) {
            res.holds = false;
            res.failed_ext = j;
            return res;
        }
    }
    return res;
}

/* ----- free summand detection ----- */

struct FreeSummandResult {
    bool found = false;
    int degree = 0;  // a twist d with R(-d) split off, when found
};

/*
 * Detects a free direct summand: W splits off R(-d) iff some degree zero
 * hom W -> R(-d) sends a minimal generator to a unit.
 */
inline FreeSummandResult has_free_summand(const FPModule& W) {
    const FPModule& Wm = W.minimal().mod;
    std::vector<int> degs = Wm.gens().twists;
    std::vector<int> distinct = degs;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    for (int d : distinct) {
        FPModule target = FPModule::free_module(FreeModule(W.ring(), {d}));
        for (const ModuleHom& h : hom_space(Wm, target, 0)) {
            for (size_t j = 0; j < degs.size(); ++j) {
                if (degs[j] != d) continue;
                const Polynomial& img = h.cols[j][0];
                if (!img.is_zero() && img.degree() == 0) return {true, d};
            }
        }
    }
    return {false, 0};
}

}  // namespace buchsbaum
