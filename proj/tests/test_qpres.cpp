#include <catch2/catch_amalgamated.hpp>

#include "buchsbaum/qpres.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace buchsbaum;
using tu::X;

namespace {

FPModule ideal_module(const PolyRing& r, const std::vector<Polynomial>& I) {
    return subquotient(FreeModule::rank_one(r), wrap_ideal(I), {}).mod;
}

FPModule koszul_syzygy_module(const PolyRing& r, int i) {
    GradedMap d = koszul_map(r, i + 1);
    std::vector<VecPoly> rels;
    for (size_t j = 0; j < d.ncols(); ++j) rels.push_back(d.col(j));
    return FPModule(d.target(), rels);
}

}  // namespace

TEST_CASE("1-presentation of the skew lines ideal") {
    PolyRing r = tu::ring(4);
    FPModule I = ideal_module(r, tu::skew_lines(r));
    QPresentation qp = q_presentation(I, 1);

    // kernel side: free of rank mu(Ext^1(I,R)) = 2, generated in degree 2
    REQUIRE(qp.P.rels().empty());
    std::vector<int> ptw = {2, 2};
    REQUIRE(qp.P.gens().twists == ptw);

    // middle: six generators in degree two, isomorphic to the second
    // syzygy module of the residue field
    std::vector<int> etw(6, 2);
    REQUIRE(qp.E.min_gen_degrees() == etw);
    std::mt19937_64 rng(2026);
    REQUIRE(random_iso_test(qp.E, koszul_syzygy_module(r, 2), 20, rng).verdict ==
            IsoResult::kIsomorphic);

    QPresCheck chk = check_q_presentation(qp, -6, 6);
    REQUIRE(chk.well_defined);
    REQUIRE(chk.injective);
    REQUIRE(chk.surjective);
    REQUIRE(chk.composite_zero);
    REQUIRE(chk.additive);
    REQUIRE(chk.pd_ok);
    REQUIRE(chk.band_vanishing);
    REQUIRE(chk.distributes_E);
    REQUIRE(chk.distributes_P);

    REQUIRE(q_presentation_minimality(qp).verdict == QPresMinimality::certified_minimal);
}

TEST_CASE("1-presentation of a complete intersection ideal") {
    PolyRing r = tu::ring(4);
    FPModule I = ideal_module(r, tu::ci_2_3(r));
    QPresentation qp = q_presentation(I, 1);

    std::vector<int> ptw = {5};
    REQUIRE(qp.P.gens().twists == ptw);
    REQUIRE(qp.P.rels().empty());
    std::vector<int> etw = {2, 3};
    REQUIRE(qp.E.min_gen_degrees() == etw);
    REQUIRE(qp.E.proj_dim() == 0);

    REQUIRE(check_q_presentation(qp, -6, 6).all());
    REQUIRE(q_presentation_minimality(qp).verdict == QPresMinimality::certified_minimal);
}

TEST_CASE("2-presentation of the skew lines ideal collapses to the free presentation") {
    PolyRing r = tu::ring(4);
    FPModule I = ideal_module(r, tu::skew_lines(r));
    QPresentation qp = q_presentation(I, 2);

    // by uniqueness the minimal 2-presentation is 0 -> L -> R(-2)^4 -> I -> 0
    REQUIRE(qp.E.proj_dim() == 0);
    std::vector<int> etw(4, 2);
    REQUIRE(qp.E.min_gen_degrees() == etw);

    std::map<std::pair<int, int>, int> syz_betti = {{{0, 3}, 4}, {{1, 4}, 1}};
    REQUIRE(qp.P.betti_table() == syz_betti);

    // the first syzygy module of I, constructed independently
    std::vector<VecPoly> syz = syzygy_gens(FreeModule::rank_one(r), wrap_ideal(tu::skew_lines(r)));
    FPModule L = subquotient(FreeModule(r, {2, 2, 2, 2}), syz, {}).mod;
    std::mt19937_64 rng(99);
    REQUIRE(random_iso_test(qp.P, L, 20, rng).verdict == IsoResult::kIsomorphic);

    REQUIRE(check_q_presentation(qp, -6, 6).all());
    REQUIRE(q_presentation_minimality(qp).verdict == QPresMinimality::constructed_minimal);
}

TEST_CASE("q-presentations of cyclic quotients") {
    PolyRing r = tu::ring(4);
    FPModule A = FPModule::quotient_ring(r, tu::skew_lines(r));

    // q = 1 is below the codimension, so the presentation is trivial
    QPresentation triv = q_presentation(A, 1);
    REQUIRE(triv.P.is_zero());
    REQUIRE(check_q_presentation(triv, -4, 4).all());

    // q = 2 moves the second cohomology row onto P
    QPresentation qp = q_presentation(A, 2);
    REQUIRE_FALSE(qp.P.is_zero());
    REQUIRE(qp.P.proj_dim() == 1);
    REQUIRE(check_q_presentation(qp, -6, 6).all());
    for (int t = -6; t <= 2; ++t) {
        REQUIRE(local_cohomology_dim(qp.P, 3, t) == 2 * std::max(-t - 1, 0));
        REQUIRE(local_cohomology_dim(qp.E, 1, t) == (t == 0 ? 1 : 0));
    }

    FPModule T = FPModule::quotient_ring(r, tu::twisted_cubic(r));
    QPresentation tc = q_presentation(T, 1);
    REQUIRE(tc.P.is_zero());
    REQUIRE(check_q_presentation(tc, -4, 4).all());
}

TEST_CASE("q-presentations of a syzygy module") {
    PolyRing r = tu::ring(4);
    FPModule G2 = koszul_syzygy_module(r, 2);

    // already a 2-syzygy: Ext^1 vanishes and q = 1 is trivial
    QPresentation one = q_presentation(G2, 1);
    REQUIRE(one.P.is_zero());
    REQUIRE(check_q_presentation(one, -4, 4).all());

    // q = 2 strips the intermediate cohomology in the band
    QPresentation two = q_presentation(G2, 2);
    REQUIRE(check_q_presentation(two, -5, 5).all());
    REQUIRE_FALSE(two.P.is_zero());
}

TEST_CASE("q-presentation edge cases") {
    PolyRing r = tu::ring(4);
    FPModule I = ideal_module(r, tu::skew_lines(r));
    REQUIRE_THROWS_AS(q_presentation(I, 0), AlgebraError);
    REQUIRE_THROWS_AS(q_presentation(I, 5), AlgebraError);

    FPModule Fr = FPModule::free_module(FreeModule(r, {1, 3}));
    for (int q : {1, 2, 4}) {
        QPresentation qp = q_presentation(Fr, q);
        REQUIRE(qp.P.is_zero());
        REQUIRE(qp.E.same_presentation(qp.M.minimal().mod));
        REQUIRE(check_q_presentation(qp, -3, 3).all());
    }
}
