#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "cohomology.hpp"
#include "qpres.hpp"

namespace buchsbaum {

/* ----- twisted differential form modules ----- */

/*
 * G_i is the i-th syzygy sheaf module: the module of the i-th exterior power
 * of the tautological cotangent extension, presented by the Koszul map.  It
 * has binom(n+1, i) generators in degree i, depth i, and its only
 * intermediate local cohomology is a single K in level i, degree 0.  The
 * associated sheaf is the (i-1)-st twisted differential form bundle.
 */
struct GModule {
    int index = 0;
    FPModule mod;
};

inline const GModule& g_module(const PolyRing& r, int i) {
    if (i < 1 || i > r.nvars) throw AlgebraError("g_module: index must lie in 1..nvars");
    static std::map<std::tuple<uint32_t, int, int>, GModule> cache;
    auto key = std::make_tuple(r.field.p, r.nvars, i);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    FPModule m = (i == r.nvars) ? FPModule::free_module(FreeModule(r, {r.nvars}))
                                : FPModule(koszul_module(r, i), koszul_map(r, i + 1).cols());
    std::vector<int> degs = m.min_gen_degrees();
    if (long(degs.size()) != binom(r.nvars, i) ||
        std::any_of(degs.begin(), degs.end(), [i](int d) { return d != i; }))
        throw InvariantError("g_module: the Koszul presentation is not minimal in degree " +
                             std::to_string(i));
    return cache.emplace(key, GModule{i, std::move(m)}).first->second;
}

/*
 * Cohomology of the p-th twisted form bundle on P^n.  At most one level
 * carries cohomology: level 0 for t > p, level p for t = 0, level n for
 * t < p - n.  Returns the nonzero (level, dimension) pairs.
 */
inline std::vector<std::pair<int, long long>> bott_cohomology(int n, int p, int t) {
    if (n < 1 || p < 0 || p > n) throw AlgebraError("bott_cohomology: need 0 <= p <= n");
    std::vector<std::pair<int, long long>> out;
    if (t > p) {
        long long h = binom(t + n - p, t) * binom(t - 1, p);
        if (h) out.push_back({0, h});
    } else if (t == 0) {
        out.push_back({p, 1});
    } else if (t < p - n) {
        long long h = binom(-t + p, -t) * binom(-t - 1, n - p);
        if (h) out.push_back({n, h});
    }
    return out;
}

/* ----- saturated ideals ----- */

/* A saturated homogeneous ideal together with the modules derived from it. */
struct SaturatedIdeal {
    PolyRing r;
    std::vector<Polynomial> gens;  // minimal generators
    FPModule I;                    // the ideal as a module on those generators
    FPModule A;                    // R/I
    int n = 0;                     // ambient projective dimension
    int c = 0;                     // codimension
    int dim_x() const { return n - c; }
};

inline std::vector<Polynomial> saturate_ideal(const PolyRing& r,
                                              const std::vector<Polynomial>& I) {
    SaturationResult s = saturate_by_maximal(ideal_ambient(r), wrap_ideal(I));
    return ideal_min_gens(r, unwrap_ideal(s.gens));
}

inline SaturatedIdeal saturated_ideal(const PolyRing& r,
                                      const std::vector<Polynomial>& gens_in) {
    std::vector<Polynomial> gens = ideal_min_gens(r, gens_in);
    if (gens.empty()) throw AlgebraError("the zero ideal does not define a subscheme");
    FPModule A = FPModule::quotient_ring(r, gens);
    if (A.is_zero()) throw AlgebraError("the unit ideal does not define a subscheme");
    if (saturate_by_maximal(ideal_ambient(r), wrap_ideal(gens)).steps != 0)
        throw AlgebraError("ideal is not saturated");
    FPModule I = subquotient(ideal_ambient(r), wrap_ideal(gens), {}).mod;
    int c = r.nvars - A.dim();
    return SaturatedIdeal{r, std::move(gens), std::move(I), std::move(A), r.nvars - 1, c};
}

inline QuasiBuchsbaumResult quasi_buchsbaum_test(const SaturatedIdeal& X) {
    return quasi_buchsbaum_test(X.A);
}

/* ----- local cohomology rows ----- */

namespace detail {

/* does the irrelevant ideal kill H^i_m(A)? */
inline bool row_annihilated(const FPModule& A, int i) {
    FPModule E = A.ext(A.ring().nvars - i);
    if (E.is_zero()) return true;
    const FPModule& Em = E.minimal().mod;
    for (int v = 0; v < A.ring().nvars; ++v) {
        Polynomial xv = Polynomial::variable(A.ring(), v);
        for (size_t g = 0; g < Em.gens().rank(); ++g) {
            VecPoly w = unit_vec(Em.gens(), g);
            for (Polynomial& e : w) e = e * xv;
            if (!Em.element_is_zero(w)) return false;
        }
    }
    return true;
}

/* top degree of H^i_m(A), from the least generator degree of the dual Ext */
inline std::optional<int> top_degree_of_row(const FPModule& A, int i) {
    FPModule E = A.ext(A.ring().nvars - i);
    if (E.is_zero()) return std::nullopt;
    return -least_gen_degree(E) - A.ring().nvars;
}

}  // namespace detail

/* degree pieces of H^i_m(A) as sorted (degree, dimension) pairs */
inline std::vector<std::pair<int, int>> local_cohomology_pieces(const FPModule& A, int i) {
    int nv = A.ring().nvars;
    FPModule E = A.ext(nv - i);
    if (E.is_zero()) return {};
    if (!E.finite_length())
        throw AlgebraError("local cohomology in level " + std::to_string(i) +
                           " is not finite length");
    std::vector<std::pair<int, int>> out;
    for (auto [d, h] : E.finite_pieces()) out.push_back({-d - nv, h});
    std::sort(out.begin(), out.end());
    return out;
}

/* top degree of H^{dim A}_m(A), the index of speciality e(X) */
inline int index_of_speciality(const SaturatedIdeal& X) {
    std::optional<int> e = detail::top_degree_of_row(X.A, X.r.nvars - X.c);
    if (!e) throw InvariantError("the top local cohomology row of a proper ideal cannot vanish");
    return *e;
}

/*
 * Intermediate ideal sheaf cohomology: entries h^i(J_X(t)) for 1 <= i <= dim X.
 * Finite rows carry their full support; rows of infinite length carry no
 * entries and are recorded by index.
 */
struct CohomologyTable {
    int n = 0, c = 0;
    std::map<std::pair<int, int>, int> h;  // (level, twist) -> dimension
    std::vector<int> infinite_rows;
    std::vector<int> annihilated_rows;  // rows killed by the irrelevant ideal
    int dim_x() const { return n - c; }
};

inline CohomologyTable sheaf_cohomology_table(const SaturatedIdeal& X) {
    CohomologyTable T{X.n, X.c, {}, {}, {}};
    for (int i = 1; i <= X.dim_x(); ++i) {
        FPModule E = X.A.ext(X.r.nvars - i);
        if (E.is_zero()) {
            T.annihilated_rows.push_back(i);
            continue;
        }
        if (!E.finite_length()) {
            T.infinite_rows.push_back(i);
            continue;
        }
        for (auto [t, h] : local_cohomology_pieces(X.A, i)) T.h[{i, t}] = h;
        if (detail::row_annihilated(X.A, i)) T.annihilated_rows.push_back(i);
    }
    return T;
}

struct GapCriterionResult {
    bool holds = false;
    std::string detail;
};

/*
 * Sufficient test from the cohomology table alone: every intermediate row is
 * killed by the irrelevant ideal, and no two entries h^i(J(e)), h^j(J(f))
 * with i < j sit on adjacent diagonals (i+e) - (j+f) = 1.  When it holds the
 * subscheme is arithmetically Buchsbaum; when it fails nothing follows.
 */
inline GapCriterionResult gap_criterion_check(const CohomologyTable& T) {
    if (!T.infinite_rows.empty())
        return {false, "row " + std::to_string(T.infinite_rows.front()) + " is not finite length"};
    for (int i = 1; i <= T.dim_x(); ++i)
        if (std::find(T.annihilated_rows.begin(), T.annihilated_rows.end(), i) ==
            T.annihilated_rows.end())
            return {false, "row " + std::to_string(i) + " is not killed by the irrelevant ideal"};
    for (const auto& [ie, hi] : T.h)
        for (const auto& [jf, hj] : T.h) {
            if (ie.first >= jf.first) continue;
            if ((ie.first + ie.second) - (jf.first + jf.second) == 1) {
                std::ostringstream os;
                os << "entries h^" << ie.first << "(J(" << ie.second << ")) and h^" << jf.first
                   << "(J(" << jf.second << ")) sit on adjacent diagonals";
                return {false, os.str()};
            }
        }
    return {true, "all rows are killed by the irrelevant ideal and no adjacent diagonals meet"};
}

/* ----- the Eilenberg-MacLane sequence ----- */

/*
 * 0 -> E_s -> ... -> E_1 -> I -> 0 with E_i an Eilenberg-MacLane module of
 * depth 2i whose intermediate cohomology is H^i_m(R/I) in level 2i (for
 * i <= v = min(n-c, s)); the levels beyond n-c are free.  maps[k] is
 * E_{k+2} -> E_{k+1} and augment is E_1 -> I.
 */
struct EMSequence {
    int c = 0, s = 0, v = 0;
    std::vector<FPModule> E;
    std::vector<ModuleHom> maps;
    std::optional<ModuleHom> augment;
};

namespace detail {

/* splice the minimal free resolution of P onto the sequence through incl */
inline void append_free_resolution(EMSequence& seq, const FPModule& P, const ModuleHom& incl) {
    const MinimalPresentation& mp = P.minimal();
    FPModule F0 = FPModule::free_module(mp.mod.gens());
    ModuleHom cover{F0, P, mp.new_to_old.cols(), 0};
    seq.maps.push_back(compose_homs(incl, cover));
    seq.E.push_back(F0);
    for (const GradedMap& d : P.min_resolution()) {
        FPModule Fi = FPModule::free_module(d.source());
        seq.maps.push_back(ModuleHom{Fi, seq.E.back(), d.cols(), 0});
        seq.E.push_back(Fi);
    }
}

}  // namespace detail

/* least k >= c such that H^j_m(A) = 0 for k+1 <= j <= n-k */
inline int em_band_start(const FPModule& A, int c) {
    int n = A.ring().nvars - 1;
    for (int k = c;; ++k) {
        bool clear = true;
        for (int j = k + 1; j <= n - k; ++j)
            if (!A.ext(A.ring().nvars - j).is_zero()) {
                clear = false;
                break;
            }
        if (clear) return k;
    }
}

inline EMSequence em_sequence(const SaturatedIdeal& X) {
    if (auto cached = X.I.aux_get<EMSequence>("em_sequence")) return *cached;
    int n = X.n, c = X.c, d = X.r.nvars - c;
    if (c < 2 || c > n)
        throw AlgebraError("the Eilenberg-MacLane sequence needs codimension 2..n");
    EMSequence out;
    out.c = c;
    out.s = em_band_start(X.A, c);
    out.v = std::min(n - c, out.s);
    if (d == 1) {
        QPresentation qp = q_presentation(X.I, n - 1);
        out.E.push_back(qp.E);
        out.augment = qp.project;
        detail::append_free_resolution(out, qp.P, qp.inject);
    } else {
        QPresentation qp = q_presentation(X.I, n - 2);
        out.E.push_back(qp.E);
        out.augment = qp.project;
        FPModule P = qp.P;
        ModuleHom incl = qp.inject;
        int last = (d >= c) ? out.s : d;
        for (int k = 3; k <= last; ++k) {
            QPresentation step = q_presentation(P, n + 2 - 2 * k);
            out.maps.push_back(detail::compose_homs(incl, step.project));
            out.E.push_back(step.E);
            P = step.P;
            incl = step.inject;
        }
        if (d >= c) {
            out.maps.push_back(incl);
            out.E.push_back(P);
        } else {
            detail::append_free_resolution(out, P, incl);
        }
    }
    if (int(out.E.size()) != out.s)
        throw InvariantError("Eilenberg-MacLane sequence has unexpected length");
    X.I.aux_put("em_sequence", std::make_shared<EMSequence>(out));
    return out;
}

/* ----- decompositions into form modules ----- */

/* a block (Omega^p twisted by -e)^s in a decomposed level */
struct OmegaSummand {
    int p = 0;
    int e = 0;
    int s = 1;
    bool operator==(const OmegaSummand& o) const { return p == o.p && e == o.e && s == o.s; }
    bool operator<(const OmegaSummand& o) const {
        return std::tie(p, e, s) < std::tie(o.p, o.e, o.s);
    }
};

namespace detail {

inline ModuleHom to_minimal(const FPModule& M) {
    return ModuleHom{M, M.minimal().mod, M.minimal().old_to_new.cols(), 0};
}

inline ModuleHom from_minimal(const FPModule& M) {
    return ModuleHom{M.minimal().mod, M, M.minimal().new_to_old.cols(), 0};
}

/* solve post . X = target for X in Hom_0(src(target), src(post)) */
inline std::optional<ModuleHom> lift_through(const ModuleHom& post, const ModuleHom& target) {
    const FPModule& S = target.src;
    const FPModule& T = post.src;
    const FPModule& U = post.tgt;
    std::vector<ModuleHom> basis = hom_space(S, T, 0);
    const PrimeField& F = S.ring().field;
    DenseMatrix sys(F, 0, basis.size());
    std::vector<uint32_t> rhs;
    for (size_t j = 0; j < S.gens().rank(); ++j) {
        int dj = S.gens().twists[j];
        auto ub = U.std_basis(dj);
        std::vector<std::vector<uint32_t>> lhs;
        for (const ModuleHom& B : basis)
            lhs.push_back(U.coordinates(post.apply(B.cols[j]), dj, ub));
        std::vector<uint32_t> tj = U.coordinates(target.cols[j], dj, ub);
        for (size_t i = 0; i < ub.size(); ++i) {
            std::vector<uint32_t> row(basis.size());
            for (size_t k = 0; k < basis.size(); ++k) row[k] = lhs[k][i];
            sys.append_row(row);
            rhs.push_back(tj[i]);
        }
    }
    std::vector<uint32_t> x;
    if (!sys.solve(rhs, x)) return std::nullopt;
    ModuleHom X{S, T, std::vector<VecPoly>(S.gens().rank(), zero_vec(T.gens())), 0};
    for (size_t k = 0; k < basis.size(); ++k) {
        if (!x[k]) continue;
        for (size_t j = 0; j < X.cols.size(); ++j)
            for (size_t i = 0; i < X.cols[j].size(); ++i)
                X.cols[j][i] = X.cols[j][i] + basis[k].cols[j][i].scaled(x[k]);
    }
    return X;
}

/* solve X . pre = target for X in Hom_0(tgt(pre), tgt(target)) */
inline std::optional<ModuleHom> factor_through(const ModuleHom& pre, const ModuleHom& target) {
    const FPModule& S = pre.tgt;
    const FPModule& U = target.tgt;
    std::vector<ModuleHom> basis = hom_space(S, U, 0);
    const PrimeField& F = S.ring().field;
    DenseMatrix sys(F, 0, basis.size());
    std::vector<uint32_t> rhs;
    for (size_t j = 0; j < pre.src.gens().rank(); ++j) {
        int dj = pre.src.gens().twists[j];
        auto ub = U.std_basis(dj);
        std::vector<std::vector<uint32_t>> lhs;
        for (const ModuleHom& B : basis)
            lhs.push_back(U.coordinates(B.apply(pre.cols[j]), dj, ub));
        std::vector<uint32_t> tj = U.coordinates(target.cols[j], dj, ub);
        for (size_t i = 0; i < ub.size(); ++i) {
            std::vector<uint32_t> row(basis.size());
            for (size_t k = 0; k < basis.size(); ++k) row[k] = lhs[k][i];
            sys.append_row(row);
            rhs.push_back(tj[i]);
        }
    }
    std::vector<uint32_t> x;
    if (!sys.solve(rhs, x)) return std::nullopt;
    ModuleHom X{S, U, std::vector<VecPoly>(S.gens().rank(), zero_vec(U.gens())), 0};
    for (size_t k = 0; k < basis.size(); ++k) {
        if (!x[k]) continue;
        for (size_t j = 0; j < X.cols.size(); ++j)
            for (size_t i = 0; i < X.cols[j].size(); ++i)
                X.cols[j][i] = X.cols[j][i] + basis[k].cols[j][i].scaled(x[k]);
    }
    return X;
}

inline ModuleHom identity_hom(const FPModule& M) {
    ModuleHom h{M, M, {}, 0};
    for (size_t j = 0; j < M.gens().rank(); ++j) h.cols.push_back(unit_vec(M.gens(), j));
    return h;
}

struct IsoSearch {
    IsoResult::Verdict verdict;
    std::string reason;
    int trials_used = 0;
    std::optional<ModuleHom> fwd, bwd;  // exact inverses between the minimal presentations
};

/* random_iso_test, keeping a certified pair of exact inverse homs */
inline IsoSearch find_iso(const FPModule& A, const FPModule& B, int trials,
                          std::mt19937_64& rng) {
    const FPModule& M = A.minimal().mod;
    const FPModule& N = B.minimal().mod;
    std::vector<int> mt = M.gens().twists, nt = N.gens().twists;
    std::sort(mt.begin(), mt.end());
    std::sort(nt.begin(), nt.end());
    if (mt != nt)
        return {IsoResult::kNotIsomorphic, "minimal generator degrees differ", 0, {}, {}};
    if (!(A.hilbert().numerator.c == B.hilbert().numerator.c))
        return {IsoResult::kNotIsomorphic, "Hilbert series differ", 0, {}, {}};
    if (M.is_zero() && N.is_zero())
        return {IsoResult::kIsomorphic, "both are zero", 0, ModuleHom{M, N, {}, 0},
                ModuleHom{N, M, {}, 0}};
    std::vector<ModuleHom> fwd = hom_space(M, N, 0);
    std::vector<ModuleHom> bwd = hom_space(N, M, 0);
    if (fwd.empty() || bwd.empty())
        return {IsoResult::kNotIsomorphic, "no nonzero degree zero homomorphisms", 0, {}, {}};
    for (int t = 1; t <= trials; ++t) {
        ModuleHom f = random_combination(fwd, rng);
        ModuleHom g = random_combination(bwd, rng);
        if (!constant_part(compose_homs(g, f)).is_invertible() ||
            !constant_part(compose_homs(f, g)).is_invertible())
            continue;
        // f is an isomorphism; replace the witness g by the exact inverse
        std::optional<ModuleHom> inv = factor_through(f, identity_hom(M));
        if (!inv) throw InvariantError("certified isomorphism has no left inverse");
        return {IsoResult::kIsomorphic, "explicit inverse pair found", t, std::move(f),
                std::move(*inv)};
    }
    return {IsoResult::kInconclusive, "no isomorphism found in the trial budget", trials, {}, {}};
}

/*
 * Free twists forced on E once the listed form blocks are split off: the
 * multiset of minimal generator degrees of E minus the block generator
 * degrees.  nullopt when the block degrees are not a submultiset.
 */
inline std::optional<std::vector<int>> forced_free_twists(const FPModule& E, const PolyRing& r,
                                                          const std::vector<OmegaSummand>& blocks) {
    std::vector<int> mg = E.min_gen_degrees();
    std::multiset<int> degs(mg.begin(), mg.end());
    for (const OmegaSummand& b : blocks) {
        long long cnt = binom(r.nvars, b.p + 1) * b.s;
        for (long long k = 0; k < cnt; ++k) {
            auto it = degs.find(b.p + 1 + b.e);
            if (it == degs.end()) return std::nullopt;
            degs.erase(it);
        }
    }
    return std::vector<int>(degs.begin(), degs.end());
}

/* free part (+) form blocks, generators in that order */
inline FPModule build_candidate(const PolyRing& r, const std::vector<int>& free_twists,
                                const std::vector<OmegaSummand>& blocks) {
    FPModule out = FPModule::free_module(FreeModule(r, free_twists));
    for (const OmegaSummand& b : blocks)
        for (int k = 0; k < b.s; ++k)
            out = direct_sum(out, g_module(r, b.p + 1).mod.twisted(-b.e));
    return out;
}

}  // namespace detail

/* ----- the Buchsbaum test and resolutions by form modules ----- */

/*
 * Level data of a resolution of the ideal by a free tail and one level of
 * form blocks:
 *   0 -> F_c -> ... -> F_2 -> F_1 (+) sum_j Omega^{p_j}(-e_j)^{s_j} -> I -> 0.
 * free_twists[i-1] lists the twists of F_i.  When built from an ideal the
 * module level witness maps are attached.
 */
struct OmegaResolution {
    int n = 0, c = 0;
    std::vector<std::vector<int>> free_twists;
    std::vector<OmegaSummand> summands;
    bool minimal = true;
    bool has_maps = false;
    std::optional<FPModule> level1;    // F_1 (+) blocks, generators in that order
    std::optional<ModuleHom> phi2;     // free level 2 -> level1
    std::vector<GradedMap> tail;       // differentials F_3 -> F_2, ..., F_c -> F_{c-1}
    std::optional<ModuleHom> augment;  // level1 -> I
};

struct ArithBuchsbaumResult {
    enum Verdict { kBuchsbaum, kNotBuchsbaumCertified, kNotBuchsbaumProbable } verdict;
    std::string reason;
    int trials_used = 0;
    std::optional<OmegaResolution> resolution;
};

/*
 * Decides the arithmetically Buchsbaum property.  The level one module of
 * the minimal (c-1)-presentation of I must decompose as a free module plus
 * the form blocks forced by the intermediate cohomology of I; the
 * decomposition is checked by a randomized isomorphism certificate, so a
 * positive answer and degree-based negatives are certified while an
 * exhausted trial budget is reported as probabilistic.
 */
inline ArithBuchsbaumResult arith_buchsbaum_test(const SaturatedIdeal& X, int trials = 20,
                                                 uint64_t seed = 12347) {
    int n = X.n, c = X.c;
    if (c < 2 || c > n) throw AlgebraError("the Buchsbaum test needs codimension 2..n");
    std::vector<OmegaSummand> blocks;
    for (int i = 1; i <= n - c; ++i) {
        FPModule E = X.A.ext(X.r.nvars - i);
        if (E.is_zero()) continue;
        if (!E.finite_length())
            return {ArithBuchsbaumResult::kNotBuchsbaumCertified,
                    "intermediate cohomology in level " + std::to_string(i) +
                        " is not finite length",
                    0, std::nullopt};
        for (auto [t, h] : local_cohomology_pieces(X.A, i))
            blocks.push_back(OmegaSummand{i, t, h});
    }
    std::sort(blocks.begin(), blocks.end());
    QPresentation qp = q_presentation(X.I, c - 1);
    std::optional<std::vector<int>> ft = detail::forced_free_twists(qp.E, X.r, blocks);
    if (!ft)
        return {ArithBuchsbaumResult::kNotBuchsbaumCertified,
                "generator degrees of the level one module do not absorb the forced form blocks",
                0, std::nullopt};
    FPModule cand = detail::build_candidate(X.r, *ft, blocks);
    std::mt19937_64 rng(seed);
    detail::IsoSearch iso = detail::find_iso(qp.E, cand, trials, rng);
    if (iso.verdict == IsoResult::kNotIsomorphic)
        return {ArithBuchsbaumResult::kNotBuchsbaumCertified,
                "level one module does not split into the forced decomposition: " + iso.reason,
                iso.trials_used, std::nullopt};
    if (iso.verdict == IsoResult::kInconclusive)
        return {ArithBuchsbaumResult::kNotBuchsbaumProbable,
                "no isomorphism with the forced decomposition found in " +
                    std::to_string(trials) + " trials",
                trials, std::nullopt};
    OmegaResolution res;
    res.n = n;
    res.c = c;
    res.minimal = true;
    res.has_maps = true;
    res.summands = blocks;
    res.free_twists.push_back(*ft);
    const MinimalPresentation& pm = qp.P.minimal();
    res.free_twists.push_back(pm.mod.gens().twists);
    for (const GradedMap& d : qp.P.min_resolution()) {
        res.free_twists.push_back(d.source().twists);
        res.tail.push_back(d);
    }
    if (int(res.free_twists.size()) != c)
        throw InvariantError("the free tail does not stop at the codimension");
    res.level1 = cand;
    ModuleHom cover{FPModule::free_module(pm.mod.gens()), qp.P, pm.new_to_old.cols(), 0};
    ModuleHom phi = detail::compose_homs(detail::to_minimal(qp.E),
                                         detail::compose_homs(qp.inject, cover));
    res.phi2 = detail::compose_homs(detail::from_minimal(cand),
                                    detail::compose_homs(*iso.fwd, phi));
    res.augment = detail::compose_homs(
        qp.project, detail::compose_homs(detail::from_minimal(qp.E),
                                         detail::compose_homs(*iso.bwd, detail::to_minimal(cand))));
    return {ArithBuchsbaumResult::kBuchsbaum, "level one module decomposes as forced",
            iso.trials_used, std::move(res)};
}

inline OmegaResolution omega_resolution(const SaturatedIdeal& X, int trials = 20,
                                        uint64_t seed = 12347) {
    ArithBuchsbaumResult res = arith_buchsbaum_test(X, trials, seed);
    if (res.verdict != ArithBuchsbaumResult::kBuchsbaum)
        throw AlgebraError("not arithmetically Buchsbaum: " + res.reason);
    return *res.resolution;
}

/*
 * The relaxation that only needs the irrelevant ideal to kill the
 * cohomology rows 1..v: every level of the Eilenberg-MacLane sequence then
 * splits as F_i (+) blocks of Omega^{2i-1}, with multiplicities read off the
 * cohomology of A, and the levels beyond v are free.
 */
struct WeakLevel {
    std::vector<int> free_twists;
    std::vector<OmegaSummand> summands;  // form index 2i-1 at level i
};

struct WeakOmegaResolution {
    int n = 0, c = 0, s = 0, v = 0;
    std::vector<WeakLevel> levels;
    bool minimal = true;
    bool has_maps = false;
    std::vector<FPModule> mods;        // decomposed module per level
    std::vector<ModuleHom> maps;       // maps[k]: mods[k+1] -> mods[k]
    std::optional<ModuleHom> augment;  // mods[0] -> I
};

inline WeakOmegaResolution weak_omega_resolution(const SaturatedIdeal& X, int trials = 20,
                                                 uint64_t seed = 12347) {
    EMSequence em = em_sequence(X);
    for (int i = 1; i <= em.v; ++i)
        if (!detail::row_annihilated(X.A, i))
            throw AlgebraError("not quasi-Buchsbaum at level " + std::to_string(i));
    WeakOmegaResolution out;
    out.n = X.n;
    out.c = X.c;
    out.s = em.s;
    out.v = em.v;
    out.minimal = true;
    std::mt19937_64 rng(seed);
    std::vector<ModuleHom> isoF, isoB;
    for (int i = 1; i <= em.s; ++i) {
        const FPModule& Ei = em.E[size_t(i) - 1];
        std::vector<OmegaSummand> blocks;
        if (i <= em.v)
            for (auto [t, h] : local_cohomology_pieces(X.A, i))
                blocks.push_back(OmegaSummand{2 * i - 1, t, h});
        std::optional<std::vector<int>> ft = detail::forced_free_twists(Ei, X.r, blocks);
        if (!ft)
            throw InvariantError("level " + std::to_string(i) +
                                 " does not absorb the forced form blocks");
        FPModule cand = detail::build_candidate(X.r, *ft, blocks);
        detail::IsoSearch iso = detail::find_iso(Ei, cand, trials, rng);
        if (iso.verdict != IsoResult::kIsomorphic)
            throw InvariantError("level " + std::to_string(i) +
                                 " failed the decomposition certificate: " + iso.reason);
        out.levels.push_back(WeakLevel{*ft, blocks});
        out.mods.push_back(cand);
        isoF.push_back(detail::compose_homs(
            detail::from_minimal(cand),
            detail::compose_homs(*iso.fwd, detail::to_minimal(Ei))));
        isoB.push_back(detail::compose_homs(
            detail::from_minimal(Ei),
            detail::compose_homs(*iso.bwd, detail::to_minimal(cand))));
    }
    for (size_t k = 0; k + 1 < out.mods.size(); ++k) {
        ModuleHom target = detail::compose_homs(isoF[k], em.maps[k]);
        std::optional<ModuleHom> m = detail::factor_through(isoF[k + 1], target);
        if (!m) throw InvariantError("transport of the chain maps failed at level " +
                                     std::to_string(k + 2));
        out.maps.push_back(*m);
    }
    out.augment = detail::compose_homs(*em.augment, isoB[0]);
    out.has_maps = true;
    return out;
}

/* ----- mapping cone expansion ----- */

/*
 * The free resolution of I obtained by resolving every form block by its
 * Koszul complex: level l is F_{l+1} plus the l-th Koszul level of each
 * block.  Raw and unit-pruned Betti numbers are reported as
 * (level, twist) -> count, level 0 being the generators of I.
 */
struct MappingCone {
    std::vector<FreeModule> levels;
    std::vector<GradedMap> maps;  // maps[k]: levels[k+1] -> levels[k]
    std::map<std::pair<int, int>, int> raw_betti;
    std::map<std::pair<int, int>, int> min_betti;
};

namespace detail {

/* Gaussian pruning of unit entries in a complex of free modules */
inline void prune_complex(std::vector<std::vector<int>>& tw,
                          std::vector<std::vector<std::vector<Polynomial>>>& dc,
                          const PolyRing& r) {
    for (;;) {
        int fk = -1;
        size_t fi = 0, fj = 0;
        for (size_t k = 0; k < dc.size() && fk < 0; ++k)
            for (size_t j = 0; j < dc[k].size() && fk < 0; ++j)
                for (size_t i = 0; i < dc[k][j].size(); ++i) {
                    const Polynomial& e = dc[k][j][i];
                    if (!e.is_zero() && e.degree() == 0) {
                        fk = int(k);
                        fi = i;
                        fj = j;
                        break;
                    }
                }
        if (fk < 0) return;
        size_t k = size_t(fk);
        uint32_t uinv = r.field.inv(dc[k][fj][fi].lead().coeff);
        for (size_t j = 0; j < dc[k].size(); ++j) {
            if (j == fj || dc[k][j][fi].is_zero()) continue;
            Polynomial f = dc[k][j][fi].scaled(uinv);
            for (size_t i = 0; i < dc[k][j].size(); ++i)
                dc[k][j][i] = dc[k][j][i] - dc[k][fj][i] * f;
        }
        dc[k].erase(dc[k].begin() + long(fj));
        for (auto& col : dc[k]) col.erase(col.begin() + long(fi));
        if (k > 0) dc[k - 1].erase(dc[k - 1].begin() + long(fi));
        if (k + 1 < dc.size())
            for (auto& col : dc[k + 1]) col.erase(col.begin() + long(fj));
        tw[k].erase(tw[k].begin() + long(fi));
        tw[k + 1].erase(tw[k + 1].begin() + long(fj));
    }
}

}  // namespace detail

inline MappingCone mapping_cone_expand(const OmegaResolution& orr) {
    if (!orr.has_maps || !orr.phi2 || !orr.level1)
        throw AlgebraError("mapping cone expansion needs the module level maps");
    const PolyRing& r = orr.level1->ring();
    int nv = r.nvars;
    struct Block {
        int p, e;
    };
    std::vector<Block> blocks;
    for (const OmegaSummand& b : orr.summands)
        for (int k = 0; k < b.s; ++k) blocks.push_back({b.p, b.e});
    int top = orr.c - 1;
    for (const Block& b : blocks) top = std::max(top, nv - b.p - 1);
    auto free_twists_at = [&](int l) -> std::vector<int> {
        return l < int(orr.free_twists.size()) ? orr.free_twists[size_t(l)] : std::vector<int>{};
    };
    auto block_rank = [&](const Block& b, int l) -> size_t {
        int i = b.p + 1 + l;
        return i <= nv ? size_t(binom(nv, i)) : 0;
    };
    // level l: the free part F_{l+1}, then the l-th Koszul level of each block
    std::vector<FreeModule> lv;
    for (int l = 0; l <= top; ++l) {
        FreeModule F(r, free_twists_at(l));
        for (const Block& b : blocks)
            if (block_rank(b, l)) F = F.concat(koszul_module(r, b.p + 1 + l).twisted(-b.e));
        lv.push_back(F);
    }
    std::vector<GradedMap> mp;
    // block rows of the columns of the previous free part (the correction maps)
    std::vector<VecPoly> prev_gamma;
    for (const VecPoly& c : orr.phi2->cols)
        prev_gamma.push_back(VecPoly(c.begin() + long(orr.free_twists[0].size()), c.end()));
    for (int l = 1; l <= top; ++l) {
        size_t nfree_prev = free_twists_at(l - 1).size();
        std::vector<VecPoly> cols;
        std::vector<VecPoly> next_gamma;
        if (l == 1) {
            for (const VecPoly& c : orr.phi2->cols) cols.push_back(c);
        } else if (!free_twists_at(l).empty()) {
            const GradedMap& a = orr.tail[size_t(l) - 2];
            for (size_t j = 0; j < a.ncols(); ++j) {
                const VecPoly& acol = a.col(j);
                VecPoly col = zero_vec(lv[size_t(l) - 1]);
                for (size_t i = 0; i < acol.size(); ++i) col[i] = acol[i];
                // the correction: lift -(previous gamma) . a through the Koszul maps
                size_t gdim = prev_gamma.empty() ? 0 : prev_gamma[0].size();
                VecPoly rhs(gdim, Polynomial::zero(r));
                for (size_t m = 0; m < acol.size(); ++m) {
                    if (acol[m].is_zero()) continue;
                    for (size_t i = 0; i < gdim; ++i)
                        rhs[i] = rhs[i] - prev_gamma[m][i] * acol[m];
                }
                VecPoly gcol;
                size_t off = 0;
                for (const Block& b : blocks) {
                    size_t lower_rank = block_rank(b, l - 2);
                    if (!lower_rank) continue;
                    VecPoly slice(rhs.begin() + long(off), rhs.begin() + long(off + lower_rank));
                    off += lower_rank;
                    if (!block_rank(b, l - 1)) {
                        for (const Polynomial& s : slice)
                            if (!s.is_zero())
                                throw InvariantError("mapping cone: correction past the Koszul top");
                        continue;
                    }
                    GradedMap d = koszul_map(r, b.p + l).twisted(-b.e);
                    GBEngine gb(d.target(), true);
                    for (size_t t = 0; t < d.ncols(); ++t) gb.add_generator(d.col(t));
                    std::optional<VecPoly> lift = gb.lift(slice);
                    if (!lift) throw InvariantError("mapping cone: correction is not a boundary");
                    for (Polynomial& q : *lift) gcol.push_back(std::move(q));
                }
                for (size_t i = 0; i < gcol.size(); ++i) col[nfree_prev + i] = gcol[i];
                cols.push_back(std::move(col));
            }
        }
        for (const VecPoly& c : cols)
            next_gamma.push_back(VecPoly(c.begin() + long(nfree_prev), c.end()));
        // the Koszul differentials, block diagonal
        size_t row_off = nfree_prev;
        size_t col_off = free_twists_at(l).size();
        for (const Block& b : blocks) {
            size_t rk = block_rank(b, l);
            size_t rk_prev = block_rank(b, l - 1);
            if (rk) {
                GradedMap d = koszul_map(r, b.p + 1 + l).twisted(-b.e);
                for (size_t j = 0; j < d.ncols(); ++j) {
                    VecPoly col = zero_vec(lv[size_t(l) - 1]);
                    for (size_t i = 0; i < rk_prev; ++i) col[row_off + i] = d.entry(i, j);
                    cols.push_back(std::move(col));
                }
            }
            row_off += rk_prev;
            col_off += rk;
        }
        if (cols.size() != lv[size_t(l)].rank())
            throw InvariantError("mapping cone: level width mismatch");
        mp.push_back(GradedMap(lv[size_t(l)], lv[size_t(l) - 1], cols));
        prev_gamma = std::move(next_gamma);
    }
    // the cone must be a complex
    for (size_t k = 0; k + 1 < mp.size(); ++k)
        for (size_t j = 0; j < mp[k + 1].ncols(); ++j)
            if (!vec_is_zero(mp[k].apply(mp[k + 1].col(j))))
                throw InvariantError("mapping cone: composite differential is nonzero");
    MappingCone out;
    out.levels = lv;
    out.maps = mp;
    for (size_t l = 0; l < lv.size(); ++l)
        for (int t : lv[l].twists) out.raw_betti[{int(l), t}] += 1;
    std::vector<std::vector<int>> tw;
    for (const FreeModule& F : lv) tw.push_back(F.twists);
    std::vector<std::vector<std::vector<Polynomial>>> dc;
    for (const GradedMap& m : mp) dc.push_back(m.cols());
    detail::prune_complex(tw, dc, r);
    for (size_t l = 0; l < tw.size(); ++l)
        for (int t : tw[l]) out.min_betti[{int(l), t}] += 1;
    return out;
}

/* ----- numerical consequences of a resolution by form modules ----- */

/*
 * Betti numbers of R/I beyond the codimension are forced by the form
 * blocks: each (p, e, s) contributes s * binom(n+1, p+i) generators in
 * degree e+p+i at homological level i for i > c.  Returns the predicted
 * (level, degree) -> count table, indexed against the Betti table of R/I.
 */
inline std::map<std::pair<int, int>, int> tor_tail_predict(const OmegaResolution& orr) {
    std::map<std::pair<int, int>, int> out;
    int nv = orr.n + 1;
    for (const OmegaSummand& b : orr.summands)
        for (int i = orr.c + 1; i <= nv; ++i) {
            long long cnt = (long long)b.s * binom(nv, b.p + i);
            if (cnt) out[{i, b.e + b.p + i}] += int(cnt);
        }
    return out;
}

/*
 * Resolution of the ideal of a general hyperplane section, written over the
 * smaller ring.  Restricting a form block splits one step down and twists;
 * blocks at the top intermediate index p = n-c lose their cohomology and
 * contribute free pieces through every level instead.  The output is
 * usually not minimal.
 */
inline OmegaResolution hyperplane_transform(const OmegaResolution& orr) {
    if (!orr.minimal) throw AlgebraError("hyperplane transform expects a minimal resolution");
    if (orr.n < 2) throw AlgebraError("no hyperplane to cut with");
    OmegaResolution out;
    out.n = orr.n - 1;
    out.c = orr.c;
    out.minimal = false;
    out.has_maps = false;
    out.free_twists = orr.free_twists;
    int pmax = orr.n - orr.c;
    std::map<std::pair<int, int>, int> merged;
    for (const OmegaSummand& b : orr.summands) {
        if (b.p < 1 || b.p > pmax)
            throw AlgebraError("form index out of the intermediate range");
        // the restriction splits off a step-down part with an extra twist
        if (b.p >= 2)
            merged[{b.p - 1, b.e + 1}] += b.s;
        else
            for (int k = 0; k < b.s; ++k) out.free_twists[0].push_back(b.e + 1);
        if (b.p <= pmax - 1) {
            merged[{b.p, b.e}] += b.s;
        } else {
            // the section kills the top cohomology row; frees appear instead
            for (int i = 1; i <= orr.c; ++i) {
                long long cnt = (long long)b.s * binom(orr.n, orr.c - i);
                for (long long k = 0; k < cnt; ++k)
                    out.free_twists[size_t(i) - 1].push_back(b.e + orr.n + i - orr.c);
            }
        }
    }
    for (const auto& [pe, s] : merged) out.summands.push_back({pe.first, pe.second, s});
    for (std::vector<int>& f : out.free_twists) std::sort(f.begin(), f.end());
    return out;
}

/* one inequality lo <= value <= hi with a label for reporting */
struct BoundCheck {
    std::string label;
    long long lo = 0, value = 0, hi = 0;
    bool ok = true;
};

struct ShiftBoundsReport {
    int e_x = 0;
    bool informational = false;  // no form blocks: the shift bound is empty
    std::vector<BoundCheck> checks;
    bool all_ok = true;
};

/*
 * Bounds forced by the index of speciality e(X): every block shift p+e
 * lies in [1, e+n+2-c], and every free twist satisfies
 * min(level one shifts) - 1 <= d - i <= e+n+1-c.
 */
inline ShiftBoundsReport shift_bounds_check(const OmegaResolution& orr, int e_x) {
    ShiftBoundsReport rep;
    rep.e_x = e_x;
    rep.informational = orr.summands.empty();
    long long hi_shift = (long long)e_x + orr.n + 2 - orr.c;
    for (const OmegaSummand& b : orr.summands) {
        std::ostringstream os;
        os << "shift p+e of the block (p=" << b.p << ", e=" << b.e << ")";
        BoundCheck ck{os.str(), 1, (long long)b.p + b.e, hi_shift, true};
        ck.ok = ck.lo <= ck.value && ck.value <= ck.hi;
        rep.all_ok = rep.all_ok && ck.ok;
        rep.checks.push_back(std::move(ck));
    }
    std::optional<long long> anchor;
    for (int d : orr.free_twists[0])
        anchor = anchor ? std::min(*anchor, (long long)d) : (long long)d;
    for (const OmegaSummand& b : orr.summands) {
        long long v = (long long)b.p + b.e;
        anchor = anchor ? std::min(*anchor, v) : v;
    }
    if (anchor) {
        long long hi_twist = (long long)e_x + orr.n + 1 - orr.c;
        for (int i = 1; i <= orr.c; ++i)
            for (int d : orr.free_twists[size_t(i) - 1]) {
                std::ostringstream os;
                os << "normalized twist d-i of the level " << i << " generator in degree " << d;
                BoundCheck ck{os.str(), *anchor - 1, (long long)d - i, hi_twist, true};
                ck.ok = ck.lo <= ck.value && ck.value <= ck.hi;
                rep.all_ok = rep.all_ok && ck.ok;
                rep.checks.push_back(std::move(ck));
            }
    }
    return rep;
}

struct RegularityReport {
    int reg = 0;  // Castelnuovo-Mumford regularity of the saturated ideal
    int e_x = 0;
    int lo = 0, hi = 0;
    bool ok = true;
    bool informational = false;  // arithmetically Cohen-Macaulay input
};

/*
 * Computes the regularity twice, from the Betti table of I and from the
 * cohomology rows i + e(H^i) + 1, checks the two routes agree, and places
 * the value against the window [e+n+2-c, e+n+3-c] forced by a resolution
 * with form blocks.
 */
inline RegularityReport regularity_bounds_check(const SaturatedIdeal& X) {
    RegularityReport rep;
    rep.e_x = index_of_speciality(X);
    int reg_betti = X.I.regularity();
    int d = X.r.nvars - X.c;
    int reg_sheaf = 0;
    bool seen = false;
    for (int i = 1; i <= d; ++i) {
        std::optional<int> e = detail::top_degree_of_row(X.A, i);
        if (!e) continue;
        reg_sheaf = seen ? std::max(reg_sheaf, i + 1 + *e) : i + 1 + *e;
        seen = true;
    }
    if (!seen) throw InvariantError("regularity: every cohomology row vanished");
    if (reg_betti != reg_sheaf)
        throw InvariantError("regularity: the Betti route gives " + std::to_string(reg_betti) +
                             " but the cohomology route gives " + std::to_string(reg_sheaf));
    rep.reg = reg_betti;
    rep.lo = rep.e_x + X.n + 2 - X.c;
    rep.hi = rep.e_x + X.n + 3 - X.c;
    rep.ok = rep.lo <= rep.reg && rep.reg <= rep.hi;
    rep.informational = X.A.depth() == X.A.dim();
    return rep;
}

}  // namespace buchsbaum
