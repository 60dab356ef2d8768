#pragma once

#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "omega.hpp"

namespace buchsbaum {

/* the associated sheaf is locally free away from the irrelevant point,
 * i.e. every Ext^j(M, R) with j >= 1 has finite length */
inline bool sheaf_locally_free(const FPModule& M) {
    for (int j = 1; j <= M.ring().nvars; ++j) {
        FPModule E = M.ext(j);
        if (!E.is_zero() && E.dim() > 0) return false;
    }
    return true;
}

/*
 * The two step sequence 0 -> E_2 -> E_1 -> I -> 0 of a codimension two
 * subscheme X of P^4, together with the local structure of X read off the
 * two modules.  E_1 carries H^1 of R/I as its H^2, E_2 carries H^2 of R/I
 * as its H^4; both are finite length exactly when X is locally a complete
 * intersection off finitely many points in each dimension.
 */
struct SurfacePresentation {
    EMSequence em;
    bool e1_torsion_free = false;  // E_1 is a first syzygy
    bool e2_reflexive = false;     // E_2 is a second syzygy
    bool e1_bundle = false;
    bool e2_bundle = false;
    bool equidimensional = false;      // no lower dimensional components
    bool equidimensional_cm = false;   // equidimensional and locally Cohen-Macaulay

    const FPModule& E1() const { return em.E[0]; }
    const FPModule& E2() const { return em.E[1]; }
};

inline SurfacePresentation surface_presentation(const SaturatedIdeal& X) {
    if (X.r.nvars != 5 || X.c != 2)
        throw AlgebraError("surface presentation needs a codimension two subscheme of P^4");
    SurfacePresentation out{em_sequence(X)};
    out.e1_torsion_free = k_syzygy_test(out.E1(), 1).holds;
    out.e2_reflexive = k_syzygy_test(out.E2(), 2).holds;
    out.e1_bundle = sheaf_locally_free(out.E1());
    out.e2_bundle = sheaf_locally_free(out.E2());
    FPModule obs = out.E2().ext(1);
    out.equidimensional = out.e1_bundle && (obs.is_zero() || obs.dim() <= 1);
    out.equidimensional_cm = out.e1_bundle && out.e2_bundle;
    return out;
}

struct LiftingTest {
    bool lifts = false;
    std::string obstruction;         // empty when the lift exists
    std::optional<ModuleHom> lift;   // alpha with cover . alpha = level map
};

/*
 * A subscheme with a weak decomposition is arithmetically Buchsbaum exactly
 * when the level map C_2 -> C_1 lifts through the free cover of C_1.  On
 * failure the report names a blocking pair whenever an entire Hom group
 * from a level two block into a cover summand vanishes in degree zero.
 */
inline LiftingTest lifting_test(const WeakOmegaResolution& wor) {
    if (wor.n != 4 || wor.c != 2)
        throw AlgebraError("lifting test is implemented for surfaces in P^4");
    if (wor.mods.size() < 2 || !wor.has_maps)
        throw AlgebraError("lifting test needs two decomposed levels with maps");
    const FPModule& C1 = wor.mods[0];
    const PolyRing& r = C1.ring();
    FPModule P0 = FPModule::free_module(C1.gens());
    ModuleHom cover{P0, C1, {}, 0};
    for (size_t j = 0; j < C1.gens().rank(); ++j) cover.cols.push_back(unit_vec(C1.gens(), j));
    std::optional<ModuleHom> alpha = detail::lift_through(cover, wor.maps[0]);
    if (alpha) return {true, "", std::move(alpha)};
    LiftingTest out{false, "no lift through the free cover of the first level", {}};
    std::set<int> degs(C1.gens().twists.begin(), C1.gens().twists.end());
    for (const OmegaSummand& b : wor.levels[1].summands)
        for (int d : degs) {
            FPModule blk = g_module(r, b.p + 1).mod.twisted(-b.e);
            FPModule line = FPModule::free_module(FreeModule(r, {d}));
            if (hom_space(blk, line, 0).empty()) {
                std::ostringstream os;
                os << "Hom(Omega^" << b.p << "(" << -b.e << "), O(" << -d << ")) = 0";
                out.obstruction = os.str();
                return out;
            }
        }
    return out;
}

/* a weak shape: level i carries blocks of form index 2i-1 */
struct SurfaceShape {
    WeakLevel level1, level2;
};

struct ConstructedIdeal {
    SaturatedIdeal X;
    int twist = 0;  // the sampled cokernel is I_X(twist)
    uint64_t seed_used = 0;
};

/*
 * Samples a degree zero map between the two decomposed levels of the shape,
 * embeds the rank one cokernel as a saturated ideal, and keeps the sample
 * only when the subscheme carries exactly the cohomology written into the
 * blocks.  Degenerate samples retry nearby seeds.
 */
inline ConstructedIdeal construct_from_shape(const PolyRing& r, const SurfaceShape& shape,
                                             uint64_t seed = 12347) {
    FPModule C1 = detail::build_candidate(r, shape.level1.free_twists, shape.level1.summands);
    FPModule C2 = detail::build_candidate(r, shape.level2.free_twists, shape.level2.summands);
    std::vector<ModuleHom> basis = hom_space(C2, C1, 0);
    if (basis.empty()) throw AlgebraError("construct: no degree zero maps between the levels");
    std::string last = "no admissible sample";
    for (uint64_t s = seed; s < seed + 16; ++s) {
        std::mt19937_64 rng(s);
        ModuleHom phi = detail::random_combination(basis, rng);
        try {
            if (!hom_kernel(phi).mod.is_zero()) {
                last = "sampled level map has a kernel";
                continue;
            }
            FPModule M = hom_cokernel(phi);
            RankOneEmbed emb = rank_one_embed(M);
            SaturatedIdeal X = saturated_ideal(r, emb.ideal);
            if (X.c != 2) {
                last = "cokernel ideal has the wrong codimension";
                continue;
            }
            std::map<std::pair<int, int>, int> want;
            for (const OmegaSummand& b : shape.level1.summands)
                want[{(b.p + 1) / 2, b.e + emb.twist}] += b.s;
            for (const OmegaSummand& b : shape.level2.summands)
                want[{(b.p + 1) / 2, b.e + emb.twist}] += b.s;
            CohomologyTable T = sheaf_cohomology_table(X);
            if (!T.infinite_rows.empty() || T.h != want) {
                last = "cohomology of the sample does not match the shape";
                continue;
            }
            return {std::move(X), emb.twist, s};
        } catch (const AlgebraError& e) {
            last = e.what();
            continue;
        }
    }
    throw AlgebraError("construct: no subscheme with the requested shape found: " + last);
}

}  // namespace buchsbaum
