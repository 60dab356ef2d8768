#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <vector>

#include "buchsbaum/omega.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace buchsbaum;

namespace {

/* x2, and the products cutting V(x0,x1,x2) union V(x2,x3,x4) */
std::vector<Polynomial> two_lines_p4(const PolyRing& r) {
    Polynomial x0 = tu::X(r, 0), x1 = tu::X(r, 1), x2 = tu::X(r, 2), x3 = tu::X(r, 3),
               x4 = tu::X(r, 4);
    return {x2, x0 * x3, x0 * x4, x1 * x3, x1 * x4};
}

/* a plane union a disjoint line in P^4: not equidimensional */
std::vector<Polynomial> plane_line_union(const PolyRing& r) {
    std::vector<Polynomial> out;
    for (int i : {0, 1})
        for (int j : {2, 3, 4}) out.push_back(tu::X(r, i) * tu::X(r, j));
    return out;
}

std::map<std::pair<int, int>, int> betti_tail(const FPModule& A, int from_level) {
    std::map<std::pair<int, int>, int> out;
    for (auto [ij, b] : A.betti_table())
        if (ij.first >= from_level) out[ij] = b;
    return out;
}

/*
 * T and O describe the free parts of two resolutions of the same module, T
 * possibly padded by trivial complexes id: R(-d) -> R(-d) between adjacent
 * levels.  Peel the padding greedily and demand nothing is left over.
 */
bool reconcile_free_tails(const std::vector<std::vector<int>>& T,
                          const std::vector<std::vector<int>>& O) {
    if (T.size() != O.size()) return false;
    std::multiset<int> carry;
    for (size_t i = 0; i < T.size(); ++i) {
        std::multiset<int> t(T[i].begin(), T[i].end());
        for (int d : O[i]) {
            auto it = t.find(d);
            if (it == t.end()) return false;
            t.erase(it);
        }
        for (int d : carry) {
            auto it = t.find(d);
            if (it == t.end()) return false;
            t.erase(it);
        }
        carry = std::multiset<int>(t.begin(), t.end());
    }
    return carry.empty();
}

void require_zero_into(const FPModule& target, const ModuleHom& comp) {
    for (const VecPoly& c : comp.cols) REQUIRE(target.element_is_zero(c));
}

}  // namespace

TEST_CASE("form modules and the cohomology of twisted form bundles") {
    PolyRing r = tu::ring(4);
    int n = 3;
    std::vector<size_t> counts = {4, 6, 4, 1};
    for (int i = 1; i <= 4; ++i) {
        const GModule& G = g_module(r, i);
        std::vector<int> degs = G.mod.min_gen_degrees();
        REQUIRE(degs.size() == counts[size_t(i) - 1]);
        for (int d : degs) REQUIRE(d == i);
        REQUIRE(G.mod.depth() == i);
    }
    REQUIRE(g_module(r, 4).mod.proj_dim() == 0);
    REQUIRE_THROWS_AS(g_module(r, 0), AlgebraError);
    REQUIRE_THROWS_AS(g_module(r, 5), AlgebraError);

    // the closed cohomology formula against the module routes: global
    // sections from graded pieces, higher levels from local cohomology
    FPModule O = FPModule::free_module(FreeModule::rank_one(r));
    for (int p = 0; p <= n; ++p) {
        const FPModule& G = g_module(r, p + 1).mod;
        for (int t = -6; t <= 6; ++t) {
            std::map<int, long long> expect;
            for (auto [q, h] : bott_cohomology(n, p, t)) expect[q] = h;
            for (int q = 0; q <= n; ++q) {
                long long want = expect.count(q) ? expect[q] : 0;
                long long got = (q == 0) ? (p == 0 ? O.piece_dim(t) : G.piece_dim(t))
                                         : local_cohomology_dim(G, q + 1, t);
                INFO("p=" << p << " t=" << t << " q=" << q);
                REQUIRE(got == want);
            }
        }
    }

    PolyRing r5 = tu::ring(5);
    std::vector<std::pair<int, long long>> h10 = {{0, 10}};
    REQUIRE(bott_cohomology(4, 1, 2) == h10);
    REQUIRE(bott_cohomology(4, 1, 1).empty());
    const FPModule& G2 = g_module(r5, 2).mod;
    REQUIRE(G2.piece_dim(2) == 10);
    for (int q = 1; q <= 4; ++q) REQUIRE(local_cohomology_dim(G2, q + 1, 1) == 0);
}

TEST_CASE("saturated ideal constructors, speciality, and the gap criterion") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    REQUIRE(sk.n == 3);
    REQUIRE(sk.c == 2);
    REQUIRE(sk.dim_x() == 1);
    REQUIRE(sk.gens.size() == 4);

    // a thickening by the irrelevant ideal saturates back
    std::vector<Polynomial> fat;
    for (const Polynomial& g : tu::skew_lines(r))
        for (int v = 0; v < 4; ++v) fat.push_back(g * tu::X(r, v));
    REQUIRE_THROWS_AS(saturated_ideal(r, fat), AlgebraError);
    REQUIRE(ideals_equal(r, saturate_ideal(r, fat), tu::skew_lines(r)));

    REQUIRE(index_of_speciality(sk) == -2);
    CohomologyTable T = sheaf_cohomology_table(sk);
    std::map<std::pair<int, int>, int> want = {{{1, 0}, 1}};
    REQUIRE(T.h == want);
    REQUIRE(T.infinite_rows.empty());
    REQUIRE(T.annihilated_rows == std::vector<int>{1});
    REQUIRE(gap_criterion_check(T).holds);

    SaturatedIdeal ci = saturated_ideal(r, tu::ci_2_3(r));
    REQUIRE(index_of_speciality(ci) == 1);
    CohomologyTable Tc = sheaf_cohomology_table(ci);
    REQUIRE(Tc.h.empty());
    REQUIRE(gap_criterion_check(Tc).holds);

    // two entries on adjacent diagonals defeat the sufficient criterion
    CohomologyTable bad{4, 2, {{{1, 3}, 2}, {{2, 1}, 2}}, {}, {1, 2}};
    GapCriterionResult g2 = gap_criterion_check(bad);
    REQUIRE_FALSE(g2.holds);
    REQUIRE(g2.detail.find("adjacent diagonals") != std::string::npos);
}

TEST_CASE("Eilenberg-MacLane sequences of curves in P^3") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    EMSequence em = em_sequence(sk);
    REQUIRE(em.c == 2);
    REQUIRE(em.s == 2);
    REQUIRE(em.v == 1);
    REQUIRE(em.E.size() == 2);
    REQUIRE(em.maps.size() == 1);
    std::vector<int> e1(6, 2);
    REQUIRE(em.E[0].min_gen_degrees() == e1);
    REQUIRE(em.E[0].depth() == 2);
    std::vector<int> e2 = {2, 2};
    REQUIRE(em.E[1].proj_dim() == 0);
    REQUIRE(em.E[1].min_gen_degrees() == e2);

    // E_1 carries H^1 of the coordinate ring, one level up
    REQUIRE(local_cohomology_dim(em.E[0], 2, 0) == 1);
    for (int t : {-3, -2, -1, 1, 2, 3}) REQUIRE(local_cohomology_dim(em.E[0], 2, t) == 0);

    // complex, injective on the left, exact in the middle, onto I
    require_zero_into(sk.I, detail::compose_homs(*em.augment, em.maps[0]));
    REQUIRE(hom_kernel(em.maps[0]).mod.is_zero());
    REQUIRE(hom_cokernel(*em.augment).is_zero());
    REQUIRE(hom_image(em.maps[0]).mod.hilbert().numerator.c ==
            hom_kernel(*em.augment).mod.hilbert().numerator.c);

    SaturatedIdeal ci = saturated_ideal(r, tu::ci_2_3(r));
    EMSequence ec = em_sequence(ci);
    REQUIRE(ec.s == 2);
    std::vector<int> c1 = {2, 3}, c2 = {5};
    REQUIRE(ec.E[0].proj_dim() == 0);
    REQUIRE(ec.E[0].min_gen_degrees() == c1);
    REQUIRE(ec.E[1].proj_dim() == 0);
    REQUIRE(ec.E[1].min_gen_degrees() == c2);
}

TEST_CASE("the Buchsbaum decision for curves in P^3") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    ArithBuchsbaumResult res = arith_buchsbaum_test(sk);
    REQUIRE(res.verdict == ArithBuchsbaumResult::kBuchsbaum);
    REQUIRE(res.resolution.has_value());
    const OmegaResolution& orr = *res.resolution;
    REQUIRE(orr.n == 3);
    REQUIRE(orr.c == 2);
    std::vector<OmegaSummand> sums = {{1, 0, 1}};
    REQUIRE(orr.summands == sums);
    std::vector<std::vector<int>> ft = {{}, {2, 2}};
    REQUIRE(orr.free_twists == ft);
    REQUIRE(orr.minimal);
    REQUIRE(orr.has_maps);
    require_zero_into(sk.I, detail::compose_homs(*orr.augment, *orr.phi2));
    REQUIRE(hom_cokernel(*orr.augment).is_zero());
    REQUIRE(quasi_buchsbaum_test(sk).holds);

    SaturatedIdeal ci = saturated_ideal(r, tu::ci_2_3(r));
    ArithBuchsbaumResult rc = arith_buchsbaum_test(ci);
    REQUIRE(rc.verdict == ArithBuchsbaumResult::kBuchsbaum);
    REQUIRE(rc.resolution->summands.empty());
    std::vector<std::vector<int>> ftc = {{2, 3}, {5}};
    REQUIRE(rc.resolution->free_twists == ftc);

    SaturatedIdeal qc = saturated_ideal(r, tu::rational_quartic(r));
    ArithBuchsbaumResult rq = arith_buchsbaum_test(qc);
    REQUIRE(rq.verdict == ArithBuchsbaumResult::kBuchsbaum);
    std::vector<OmegaSummand> qsums = {{1, 1, 1}};
    REQUIRE(rq.resolution->summands == qsums);
    REQUIRE(quasi_buchsbaum_test(qc).holds);
}

TEST_CASE("a certified negative from infinite intermediate cohomology") {
    PolyRing r = tu::ring(5);
    SaturatedIdeal un = saturated_ideal(r, plane_line_union(r));
    REQUIRE(un.c == 2);
    REQUIRE(un.dim_x() == 2);
    ArithBuchsbaumResult res = arith_buchsbaum_test(un);
    REQUIRE(res.verdict == ArithBuchsbaumResult::kNotBuchsbaumCertified);
    REQUIRE(res.reason.find("not finite length") != std::string::npos);
    REQUIRE_THROWS_WITH(omega_resolution(un),
                        Catch::Matchers::ContainsSubstring("not arithmetically Buchsbaum"));
    REQUIRE_THROWS_WITH(weak_omega_resolution(un),
                        Catch::Matchers::ContainsSubstring("not quasi-Buchsbaum at level 2"));
    CohomologyTable T = sheaf_cohomology_table(un);
    REQUIRE(T.infinite_rows == std::vector<int>{2});
    REQUIRE_FALSE(gap_criterion_check(T).holds);
}

TEST_CASE("mapping cone expansion of a block resolution") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    MappingCone mc = mapping_cone_expand(omega_resolution(sk));
    REQUIRE(mc.levels.size() == 3);
    REQUIRE(mc.maps.size() == 2);
    std::map<std::pair<int, int>, int> raw = {{{0, 2}, 6}, {{1, 2}, 2}, {{1, 3}, 4}, {{2, 4}, 1}};
    REQUIRE(mc.raw_betti == raw);
    std::map<std::pair<int, int>, int> minb = {{{0, 2}, 4}, {{1, 3}, 4}, {{2, 4}, 1}};
    REQUIRE(mc.min_betti == minb);
    REQUIRE(mc.min_betti == sk.I.betti_table());

    SaturatedIdeal ci = saturated_ideal(r, tu::ci_2_3(r));
    MappingCone cc = mapping_cone_expand(omega_resolution(ci));
    REQUIRE(cc.raw_betti == cc.min_betti);
    REQUIRE(cc.min_betti == ci.I.betti_table());

    SaturatedIdeal qc = saturated_ideal(r, tu::rational_quartic(r));
    MappingCone qcone = mapping_cone_expand(omega_resolution(qc));
    REQUIRE(qcone.min_betti == qc.I.betti_table());
}

TEST_CASE("the Betti tail forced by the blocks") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    OmegaResolution orr = omega_resolution(sk);
    std::map<std::pair<int, int>, int> want = {{{3, 4}, 1}};
    REQUIRE(tor_tail_predict(orr) == want);
    REQUIRE(tor_tail_predict(orr) == betti_tail(sk.A, 3));

    SaturatedIdeal qc = saturated_ideal(r, tu::rational_quartic(r));
    REQUIRE(tor_tail_predict(omega_resolution(qc)) == betti_tail(qc.A, 3));

    SaturatedIdeal ci = saturated_ideal(r, tu::ci_2_3(r));
    REQUIRE(tor_tail_predict(omega_resolution(ci)).empty());
    REQUIRE(betti_tail(ci.A, 3).empty());
}

TEST_CASE("the weak decomposition along the Eilenberg-MacLane levels") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    WeakOmegaResolution wor = weak_omega_resolution(sk);
    REQUIRE(wor.n == 3);
    REQUIRE(wor.c == 2);
    REQUIRE(wor.s == 2);
    REQUIRE(wor.v == 1);
    REQUIRE(wor.levels.size() == 2);
    REQUIRE(wor.levels[0].free_twists.empty());
    std::vector<OmegaSummand> sums = {{1, 0, 1}};
    REQUIRE(wor.levels[0].summands == sums);
    std::vector<int> l2 = {2, 2};
    REQUIRE(wor.levels[1].free_twists == l2);
    REQUIRE(wor.levels[1].summands.empty());
    REQUIRE(wor.has_maps);
    REQUIRE(wor.maps.size() == 1);
    require_zero_into(sk.I, detail::compose_homs(*wor.augment, wor.maps[0]));
    REQUIRE(hom_kernel(wor.maps[0]).mod.is_zero());
    REQUIRE(hom_cokernel(*wor.augment).is_zero());

    // for a curve with one cohomology level the weak and strong data agree
    OmegaResolution orr = omega_resolution(sk);
    REQUIRE(wor.levels[0].free_twists == orr.free_twists[0]);
    REQUIRE(wor.levels[0].summands == orr.summands);
    REQUIRE(wor.levels[1].free_twists == orr.free_twists[1]);
}

TEST_CASE("hyperplane transform of a block resolution") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    OmegaResolution orr = omega_resolution(sk);
    OmegaResolution sec = hyperplane_transform(orr);
    REQUIRE(sec.n == 2);
    REQUIRE(sec.c == 2);
    REQUIRE_FALSE(sec.minimal);
    REQUIRE(sec.summands.empty());
    std::vector<std::vector<int>> want = {{1, 2, 2, 2}, {2, 2, 3}};
    REQUIRE(sec.free_twists == want);

    // the direct route: substitute a random hyperplane, saturate, resolve
    PolyRing r3 = tu::ring(3);
    std::vector<Polynomial> cut = hyperplane_section_ideal(r, tu::skew_lines(r), 7);
    SaturatedIdeal pts = saturated_ideal(r3, saturate_ideal(r3, cut));
    REQUIRE(pts.c == 2);
    OmegaResolution direct = omega_resolution(pts);
    REQUIRE(direct.summands.empty());
    std::vector<std::vector<int>> ci12 = {{1, 2}, {3}};
    REQUIRE(direct.free_twists == ci12);
    REQUIRE(reconcile_free_tails(sec.free_twists, direct.free_twists));
}

TEST_CASE("two disjoint lines in P^4") {
    PolyRing r = tu::ring(5);
    SaturatedIdeal tl = saturated_ideal(r, two_lines_p4(r));
    REQUIRE(tl.c == 3);
    REQUIRE(tl.dim_x() == 1);

    // codimension exceeds the dimension of the coordinate ring minus one,
    // so the sequence ends by splicing a free resolution
    EMSequence em = em_sequence(tl);
    REQUIRE(em.s == 3);
    REQUIRE(em.v == 1);
    REQUIRE(em.E.size() == 3);
    REQUIRE(em.maps.size() == 2);
    REQUIRE(em.E[1].proj_dim() == 0);
    REQUIRE(em.E[2].proj_dim() == 0);
    require_zero_into(tl.I, detail::compose_homs(*em.augment, em.maps[0]));
    require_zero_into(em.E[0], detail::compose_homs(em.maps[0], em.maps[1]));

    ArithBuchsbaumResult res = arith_buchsbaum_test(tl);
    REQUIRE(res.verdict == ArithBuchsbaumResult::kBuchsbaum);
    const OmegaResolution& orr = *res.resolution;
    std::vector<OmegaSummand> sums = {{1, 0, 1}};
    REQUIRE(orr.summands == sums);
    REQUIRE(orr.free_twists.size() == 3);

    MappingCone mc = mapping_cone_expand(orr);
    REQUIRE(mc.min_betti == tl.I.betti_table());

    std::map<std::pair<int, int>, int> tail = {{{4, 5}, 1}};
    REQUIRE(tor_tail_predict(orr) == tail);
    REQUIRE(betti_tail(tl.A, 4) == tail);

    WeakOmegaResolution wor = weak_omega_resolution(tl);
    REQUIRE(wor.s == 3);
    REQUIRE(wor.v == 1);
    REQUIRE(wor.levels[0].summands == sums);
    REQUIRE(wor.levels[1].summands.empty());
    REQUIRE(wor.levels[2].summands.empty());
    require_zero_into(tl.I, detail::compose_homs(*wor.augment, wor.maps[0]));
    require_zero_into(wor.mods[0], detail::compose_homs(wor.maps[0], wor.maps[1]));

    // section: two points on a line in P^3, reached both ways
    OmegaResolution sec = hyperplane_transform(orr);
    PolyRing r4 = tu::ring(4);
    std::vector<Polynomial> cut = hyperplane_section_ideal(r, two_lines_p4(r), 11);
    SaturatedIdeal pts = saturated_ideal(r4, saturate_ideal(r4, cut));
    OmegaResolution direct = omega_resolution(pts);
    REQUIRE(direct.summands.empty());
    REQUIRE(sec.summands.empty());
    REQUIRE(reconcile_free_tails(sec.free_twists, direct.free_twists));
}

TEST_CASE("shift bounds and regularity bounds") {
    PolyRing r = tu::ring(4);
    SaturatedIdeal sk = saturated_ideal(r, tu::skew_lines(r));
    OmegaResolution orr = omega_resolution(sk);
    int e = index_of_speciality(sk);
    REQUIRE(e == -2);
    ShiftBoundsReport rep = shift_bounds_check(orr, e);
    REQUIRE_FALSE(rep.informational);
    REQUIRE(rep.all_ok);
    REQUIRE(rep.checks.size() == 3);
    for (const BoundCheck& ck : rep.checks) {
        REQUIRE(ck.ok);
        REQUIRE(ck.lo == ck.value);
        REQUIRE(ck.value == ck.hi);
    }

    RegularityReport reg = regularity_bounds_check(sk);
    REQUIRE(reg.reg == 2);
    REQUIRE(reg.lo == 1);
    REQUIRE(reg.hi == 2);
    REQUIRE(reg.ok);
    REQUIRE_FALSE(reg.informational);

    SaturatedIdeal ci = saturated_ideal(r, tu::ci_2_3(r));
    OmegaResolution oc = omega_resolution(ci);
    int ec = index_of_speciality(ci);
    REQUIRE(ec == 1);
    ShiftBoundsReport rc = shift_bounds_check(oc, ec);
    REQUIRE(rc.informational);
    REQUIRE(rc.all_ok);
    bool top_tight = false;
    for (const BoundCheck& ck : rc.checks) top_tight = top_tight || ck.value == ck.hi;
    REQUIRE(top_tight);

    RegularityReport rr = regularity_bounds_check(ci);
    REQUIRE(rr.reg == 4);
    REQUIRE(rr.lo == 4);
    REQUIRE(rr.hi == 5);
    REQUIRE(rr.ok);
    REQUIRE(rr.informational);
}
