#pragma once

#include <memory>
#include <random>

#include "hilbert.hpp"
#include "linalg.hpp"

namespace buchsbaum {

class FPModule;

/* minimal presentation of a module together with the change of generators */
struct MinimalPresentation;

struct FPImpl;

/*
 * Finitely presented graded module: the cokernel of a map into a graded free
 * module, stored as the ambient free module and a list of relation vectors.
 * Value type with shared immutable state; expensive invariants (relation
 * Groebner basis, Hilbert data, minimal presentation) are computed once and
 * cached.
 */
class FPModule {
  public:
    FPModule(FreeModule F0, std::vector<VecPoly> rels);

    static FPModule quotient_ring(const PolyRing& r, const std::vector<Polynomial>& I) {
        return FPModule(FreeModule::rank_one(r), wrap_ideal(I));
    }
    static FPModule free_module(const FreeModule& F) { return FPModule(F, {}); }

    const FreeModule& gens() const;
    const std::vector<VecPoly>& rels() const;
    const PolyRing& ring() const;

    GBEngine& rel_gb() const;

    VecPoly nf(const VecPoly& v) const;
    bool element_is_zero(const VecPoly& v) const;
    bool is_zero() const;

    const HilbertData& hilbert() const;
    int dim() const { return hilbert().dim; }
    long long multiplicity() const { return hilbert().multiplicity; }
    long long rank() const { return hilbert().rank; }
    bool finite_length() const { return hilbert().numerator.is_zero() || hilbert().dim <= 0; }
    int piece_dim(int t) const;
    std::vector<std::pair<int, int>> finite_pieces() const;

    const MinimalPresentation& minimal() const;
    std::vector<int> min_gen_degrees() const;
    size_t min_gen_count() const { return min_gen_degrees().size(); }

    /*
     * Minimal free resolution ... -> F_2 -> F_1 -> F_0 -> M -> 0 over the
     * minimal presentation; entry i is the differential F_{i+1} -> F_i.
     * The resolved ambient F_0 is minimal().mod.gens().
     */
    const std::vector<GradedMap>& min_resolution() const;
    int proj_dim() const { return int(min_resolution().size()); }
    int depth() const;
    /* graded betti numbers as (homological index, internal degree) -> count */
    std::map<std::pair<int, int>, int> betti_table() const;
    int regularity() const;

    /* Ext^i(M, R), presented as a subquotient of the dualized resolution */
    FPModule ext(int i) const;

    /* standard monomial basis of the degree-t piece: (component, monomial) */
    std::vector<std::pair<size_t, Exponent>> std_basis(int t) const;
    std::vector<uint32_t> coordinates(const VecPoly& v, int t,
                                      const std::vector<std::pair<size_t, Exponent>>& basis) const;

    FPModule twisted(int a) const;

    bool same_presentation(const FPModule& o) const;

    /* typed access to the per-module cache used by the higher layers */
    template <typename T>
    std::shared_ptr<T> aux_get(const std::string& key) const;
    template <typename T>
    void aux_put(const std::string& key, std::shared_ptr<T> value) const;

  private:
    std::shared_ptr<FPImpl> impl_;
    friend struct FPImpl;
};

struct MinimalPresentation {
    FPModule mod;          // presentation with minimal generators and relations
    GradedMap new_to_old;  // generators of mod expressed in the original ambient
    GradedMap old_to_new;  // original generators expressed in the minimal ones
};

struct FPImpl {
    FreeModule F0;
    std::vector<VecPoly> rels;
    mutable std::unique_ptr<GBEngine> gb;
    mutable std::optional<HilbertData> hd;
    mutable std::shared_ptr<MinimalPresentation> min;
    mutable std::optional<std::vector<GradedMap>> minres;                 // managed by resolution code
    mutable std::map<int, std::shared_ptr<FPModule>> ext_cache;           // managed by cohomology code
    mutable std::map<std::string, std::shared_ptr<void>> aux_cache;       // managed by later layers

    FPImpl(FreeModule f, std::vector<VecPoly> r) : F0(std::move(f)), rels(std::move(r)) {}
};

inline FPModule::FPModule(FreeModule F0, std::vector<VecPoly> rels) {
    std::vector<VecPoly> kept;
    for (VecPoly& v : rels) {
        if (v.size() != F0.rank()) throw AlgebraError("relation does not match the ambient rank");
        if (vec_is_zero(v)) continue;
        vec_degree(F0, v);  // homogeneity check
        kept.push_back(std::move(v));
    }
    impl_ = std::make_shared<FPImpl>(std::move(F0), std::move(kept));
}

template <typename T>
std::shared_ptr<T> FPModule::aux_get(const std::string& key) const {
    auto it = impl_->aux_cache.find(key);
    if (it == impl_->aux_cache.end()) return nullptr;
    return std::static_pointer_cast<T>(it->second);
}

template <typename T>
void FPModule::aux_put(const std::string& key, std::shared_ptr<T> value) const {
    impl_->aux_cache[key] = std::static_pointer_cast<void>(std::move(value));
}

inline const FreeModule& FPModule::gens() const { return impl_->F0; }
inline const std::vector<VecPoly>& FPModule::rels() const { return impl_->rels; }
inline const PolyRing& FPModule::ring() const { return impl_->F0.ring; }

inline GBEngine& FPModule::rel_gb() const {
    if (!impl_->gb) {
        impl_->gb = std::make_unique<GBEngine>(impl_->F0);
        impl_->gb->add_generators(impl_->rels);
        impl_->gb->complete();
    }
    return *impl_->gb;
}

inline VecPoly FPModule::nf(const VecPoly& v) const { return rel_gb().normal_form(v); }
inline bool FPModule::element_is_zero(const VecPoly& v) const { return rel_gb().contains(v); }

inline bool FPModule::is_zero() const {
    if (impl_->F0.rank() == 0) return true;
    for (size_t k = 0; k < impl_->F0.rank(); ++k)
        if (!element_is_zero(unit_vec(impl_->F0, k))) return false;
    return true;
}

inline const HilbertData& FPModule::hilbert() const {
    if (!impl_->hd) impl_->hd = hilbert_data(impl_->F0, rel_gb().lead_ideals());
    return *impl_->hd;
}

inline int FPModule::piece_dim(int t) const {
    return piece_dim_quotient(impl_->F0, rel_gb().lead_ideals(), t);
}

inline std::vector<std::pair<int, int>> FPModule::finite_pieces() const {
    return finite_length_pieces(impl_->F0, rel_gb().lead_ideals());
}

inline std::vector<std::pair<size_t, Exponent>> FPModule::std_basis(int t) const {
    auto leads = rel_gb().lead_ideals();
    std::vector<std::pair<size_t, Exponent>> basis;
    for (size_t k = 0; k < impl_->F0.rank(); ++k) {
        int d = t - impl_->F0.twists[k];
        if (d < 0) continue;
        for (const Exponent& m : monomials_of_degree(ring(), d)) {
            bool standard = true;
            for (const Exponent& l : leads[k])
                if (l.divides(m)) {
                    standard = false;
                    break;
                }
            if (standard) basis.push_back({k, m});
        }
    }
    return basis;
}

inline std::vector<uint32_t> FPModule::coordinates(
    const VecPoly& v, int t, const std::vector<std::pair<size_t, Exponent>>& basis) const {
    VecPoly r = nf(v);
    std::vector<uint32_t> out(basis.size(), 0);
    for (size_t b = 0; b < basis.size(); ++b) out[b] = r[basis[b].first].coeff_of(basis[b].second);
    (void)t;
    return out;
}

inline FPModule FPModule::twisted(int a) const {
    return FPModule(impl_->F0.twisted(a), impl_->rels);
}

inline bool FPModule::same_presentation(const FPModule& o) const {
    if (!(impl_->F0 == o.impl_->F0)) return false;
    return submodules_equal(impl_->F0, impl_->rels, o.impl_->rels);
}

/* ----- minimal presentation ----- */

inline const MinimalPresentation& FPModule::minimal() const {
    if (impl_->min) return *impl_->min;
    FreeModule F = impl_->F0;
    std::vector<VecPoly> rels = minimal_generators(F, impl_->rels).vectors;
    const PolyRing& r = ring();
    GradedMap to_old = GradedMap::identity(F);
    GradedMap from_old = GradedMap::identity(F);
    for (;;) {
        // find a relation with a constant coefficient on some generator
        size_t ri = rels.size(), row = 0;
        for (size_t j = 0; j < rels.size() && ri == rels.size(); ++j)
            for (size_t i = 0; i < F.rank(); ++i) {
                const Polynomial& e = rels[j][i];
                if (!e.is_zero() && e.degree() == 0) {
                    ri = j;
                    row = i;
                    break;
                }
            }
        if (ri == rels.size()) break;
        uint32_t c = rels[ri][row].lead().coeff;
        uint32_t cinv = r.field.inv(c);
        // expression of the redundant generator in the remaining ones
        FreeModule small(r, [&] {
            std::vector<int> tw = F.twists;
            tw.erase(tw.begin() + long(row));
            return tw;
        }());
        std::vector<VecPoly> pcols;
        for (size_t i = 0; i < F.rank(); ++i) {
            if (i != row) {
                VecPoly u = zero_vec(small);
                size_t i2 = i < row ? i : i - 1;
                u[i2] = Polynomial::constant(r, 1);
                pcols.push_back(std::move(u));
                continue;
            }
            VecPoly x = zero_vec(small);
            for (size_t k = 0; k < F.rank(); ++k) {
                if (k == row) continue;
                size_t k2 = k < row ? k : k - 1;
                x[k2] = rels[ri][k].scaled(r.field.neg(cinv));
            }
            pcols.push_back(std::move(x));
        }
        GradedMap proj(F, small, pcols);
        // update relations, drop the used one, and compose the transitions
        std::vector<VecPoly> next;
        for (size_t j = 0; j < rels.size(); ++j) {
            if (j == ri) continue;
            VecPoly w = proj.apply(rels[j]);
            if (!vec_is_zero(w)) next.push_back(std::move(w));
        }
        rels = std::move(next);
        from_old = proj.compose(from_old);
        // to_old keeps only the surviving generator columns
        std::vector<VecPoly> kept_cols;
        for (size_t i = 0; i < F.rank(); ++i)
            if (i != row) kept_cols.push_back(to_old.col(i));
        to_old = GradedMap(small, to_old.target(), kept_cols);
        F = small;
    }
    rels = minimal_generators(F, rels).vectors;
    impl_->min = std::make_shared<MinimalPresentation>(
        MinimalPresentation{FPModule(F, rels), to_old, from_old});
    return *impl_->min;
}

inline std::vector<int> FPModule::min_gen_degrees() const {
    return minimal().mod.gens().twists;
}

/* ----- minimal free resolution and graded betti numbers ----- */

inline const std::vector<GradedMap>& FPModule::min_resolution() const {
    if (impl_->minres) return *impl_->minres;
    const MinimalPresentation& mp = minimal();
    std::vector<GradedMap> maps;
    FreeModule cur = mp.mod.gens();
    std::vector<VecPoly> cols = mp.mod.rels();
    while (!cols.empty()) {
        if (int(maps.size()) >= ring().nvars)
            throw InvariantError("free resolution exceeds the global dimension");
        std::vector<int> degs;
        for (const VecPoly& c : cols) degs.push_back(vec_degree(cur, c));
        FreeModule next(ring(), degs);
        maps.emplace_back(next, cur, cols);
        std::vector<VecPoly> syz = syzygy_gens(cur, cols, &degs);
        cols = minimal_generators(next, syz).vectors;
        cur = next;
    }
    impl_->minres = std::move(maps);
    return *impl_->minres;
}

inline int FPModule::depth() const {
    if (is_zero()) return std::numeric_limits<int>::max();
    return ring().nvars - proj_dim();
}

inline std::map<std::pair<int, int>, int> FPModule::betti_table() const {
    std::map<std::pair<int, int>, int> b;
    for (int j : minimal().mod.gens().twists) b[{0, j}] += 1;
    const std::vector<GradedMap>& res = min_resolution();
    for (size_t i = 0; i < res.size(); ++i)
        for (int j : res[i].source().twists) b[{int(i) + 1, j}] += 1;
    return b;
}

inline int FPModule::regularity() const {
    int reg = std::numeric_limits<int>::min();
    for (const auto& [ij, count] : betti_table()) reg = std::max(reg, ij.second - ij.first);
    return reg;
}

/* ----- subquotients ----- */

struct Subquotient {
    FPModule mod;
    FreeModule ambient;
    std::vector<VecPoly> gens_in_ambient;  // generator images, parallel to mod.gens()
};

/*
 * (<gens> + <den>)/<den> presented on the given generators: relations are
 * the gens-block of the syzygies of the concatenated list.
 */
inline Subquotient subquotient(const FreeModule& F, const std::vector<VecPoly>& gens,
                               const std::vector<VecPoly>& den,
                               const std::vector<int>* gen_degs = nullptr) {
    std::vector<int> degs;
    for (size_t i = 0; i < gens.size(); ++i)
        degs.push_back(gen_degs ? (*gen_degs)[i] : vec_degree(F, gens[i]));
    GBEngine gb(F, true);
    for (size_t i = 0; i < gens.size(); ++i) gb.add_generator(gens[i], degs[i]);
    gb.add_generators(den);
    FreeModule G(F.ring, degs);
    std::vector<VecPoly> rels;
    for (const VecPoly& s : gb.syzygies()) {
        VecPoly head(s.begin(), s.begin() + long(gens.size()));
        if (!vec_is_zero(head)) rels.push_back(std::move(head));
    }
    return Subquotient{FPModule(G, rels), F, gens};
}

inline FPModule FPModule::ext(int i) const {
    if (i < 0) throw AlgebraError("ext: negative index");
    auto it = impl_->ext_cache.find(i);
    if (it != impl_->ext_cache.end()) return *it->second;
    const std::vector<GradedMap>& res = min_resolution();
    int pd = int(res.size());
    FPModule result = [&]() -> FPModule {
        if (i > pd) return FPModule(FreeModule(ring(), {}), {});
        FreeModule Fi = (i == 0 ? minimal().mod.gens() : res[size_t(i) - 1].source()).dual();
        // kernel of the next dualized differential
        std::vector<VecPoly> kappa;
        if (i == pd) {
            for (size_t k = 0; k < Fi.rank(); ++k) kappa.push_back(unit_vec(Fi, k));
        } else {
            GradedMap ker = kernel_map(res[size_t(i)].dual());
            for (size_t j = 0; j < ker.ncols(); ++j) kappa.push_back(ker.col(j));
        }
        // image of the previous dualized differential
        std::vector<VecPoly> image;
        if (i > 0) {
            GradedMap prev = res[size_t(i) - 1].dual();
            for (size_t j = 0; j < prev.ncols(); ++j) image.push_back(prev.col(j));
        }
        std::vector<VecPoly> pruned =
            image.empty() ? minimal_generators(Fi, kappa).vectors
                          : minimal_generators(Fi, kappa, &image).vectors;
        if (pruned.empty()) return FPModule(FreeModule(ring(), {}), {});
        return subquotient(Fi, pruned, image).mod;
    }();
    impl_->ext_cache[i] = std::make_shared<FPModule>(result);
    return result;
}

/* M^* = Hom(M, R) presented on the kernel generators of the dualized
   presentation map; functionals are elements of the dual ambient. */
struct DualModule {
    FPModule mod;
    FreeModule dual_ambient;                // gens(M)^*
    std::vector<VecPoly> functionals;       // parallel to mod.gens()
};

inline DualModule dual_module(const FPModule& M) {
    const FreeModule& F0 = M.gens();
    std::vector<int> rel_degs;
    for (const VecPoly& v : M.rels()) rel_degs.push_back(vec_degree(F0, v));
    FreeModule F1(M.ring(), rel_degs);
    GradedMap presd = GradedMap(F1, F0, M.rels()).dual();
    GradedMap ker = kernel_map(presd);
    std::vector<VecPoly> kappa;
    for (size_t j = 0; j < ker.ncols(); ++j) kappa.push_back(ker.col(j));
    MinGens mg = minimal_generators(F0.dual(), kappa);
    Subquotient sq = subquotient(F0.dual(), mg.vectors, {});
    return DualModule{sq.mod, F0.dual(), mg.vectors};
}

/* ----- module homomorphisms ----- */

struct ModuleHom {
    FPModule src;
    FPModule tgt;
    std::vector<VecPoly> cols;  // image of each source generator in gens(tgt)
    int twist = 0;              // hom of degree `twist`: deg(phi(v)) = deg(v) + twist

    VecPoly apply(const VecPoly& v) const {
        VecPoly out = zero_vec(tgt.gens());
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t k = 0; k < out.size(); ++k) out[k] = out[k] + cols[j][k] * v[j];
        return out;
    }
};

inline bool hom_well_defined(const ModuleHom& h) {
    for (const VecPoly& r : h.src.rels())
        if (!h.tgt.element_is_zero(h.apply(r))) return false;
    return true;
}

inline FPModule hom_cokernel(const ModuleHom& h) {
    std::vector<VecPoly> rels = h.tgt.rels();
    for (const VecPoly& c : h.cols)
        if (!vec_is_zero(c)) rels.push_back(c);
    return FPModule(h.tgt.gens(), rels);
}

inline Subquotient hom_image(const ModuleHom& h) {
    std::vector<int> degs;
    for (size_t j = 0; j < h.cols.size(); ++j) degs.push_back(h.src.gens().twists[j] + h.twist);
    return subquotient(h.tgt.gens(), h.cols, h.tgt.rels(), &degs);
}

/* kernel of h as a subquotient of the source ambient */
inline Subquotient hom_kernel(const ModuleHom& h) {
    const FreeModule& T = h.tgt.gens();
    GBEngine gb(T, true);
    for (size_t j = 0; j < h.cols.size(); ++j)
        gb.add_generator(h.cols[j], h.src.gens().twists[j] + h.twist);
    gb.add_generators(h.tgt.rels());
    std::vector<VecPoly> pre;
    for (const VecPoly& s : gb.syzygies()) {
        VecPoly head(s.begin(), s.begin() + long(h.cols.size()));
        if (!vec_is_zero(head)) pre.push_back(std::move(head));
    }
    // heads live in the source ambient up to the hom twist
    MinGens mg = minimal_generators(h.src.gens(), pre);
    return subquotient(h.src.gens(), mg.vectors, h.src.rels());
}

/*
 * K-basis of Hom(M, N)_d: unknowns are coordinates of generator images in
 * the standard bases of N, constraints say every relation of M maps to zero
 * in N.  Returns one ModuleHom per basis vector.
 */
inline std::vector<ModuleHom> hom_space(const FPModule& M, const FPModule& N, int d) {
    const FreeModule& FM = M.gens();
    const PrimeField& F = M.ring().field;
    struct GenBlock {
        std::vector<std::pair<size_t, Exponent>> basis;
        size_t offset = 0;
    };
    std::vector<GenBlock> blocks(FM.rank());
    size_t nunk = 0;
    for (size_t j = 0; j < FM.rank(); ++j) {
        blocks[j].basis = N.std_basis(FM.twists[j] + d);
        blocks[j].offset = nunk;
        nunk += blocks[j].basis.size();
    }
    if (nunk == 0) return {};
    // constraint rows
    DenseMatrix A(F, 0, nunk);
    for (const VecPoly& rel : M.rels()) {
        int rd = vec_degree(FM, rel) + d;
        auto rbasis = N.std_basis(rd);
        if (rbasis.empty()) continue;
        DenseMatrix rows(F, rbasis.size(), nunk);
        for (size_t j = 0; j < FM.rank(); ++j) {
            if (rel[j].is_zero()) continue;
            for (size_t b = 0; b < blocks[j].basis.size(); ++b) {
                auto [comp, mono] = blocks[j].basis[b];
                VecPoly w = zero_vec(N.gens());
                w[comp] = rel[j].term_multiple(mono, 1);
                std::vector<uint32_t> coords = N.coordinates(w, rd, rbasis);
                for (size_t rr = 0; rr < rbasis.size(); ++rr) {
                    size_t cidx = blocks[j].offset + b;
                    rows.at(rr, cidx) = F.add(rows.at(rr, cidx), coords[rr]);
                }
            }
        }
        for (size_t rr = 0; rr < rbasis.size(); ++rr) {
            std::vector<uint32_t> row(nunk);
            for (size_t cc = 0; cc < nunk; ++cc) row[cc] = rows.at(rr, cc);
            A.append_row(row);
        }
    }
    std::vector<std::vector<uint32_t>> null = A.nullspace();
    std::vector<ModuleHom> out;
    for (const auto& v : null) {
        ModuleHom h{M, N, {}, d};
        for (size_t j = 0; j < FM.rank(); ++j) {
            VecPoly col = zero_vec(N.gens());
            for (size_t b = 0; b < blocks[j].basis.size(); ++b) {
                uint32_t c = v[blocks[j].offset + b];
                if (!c) continue;
                auto [comp, mono] = blocks[j].basis[b];
                col[comp] = col[comp] + Polynomial::monomial(M.ring(), mono, c);
            }
            h.cols.push_back(std::move(col));
        }
        out.push_back(std::move(h));
    }
    return out;
}

/* ----- probabilistic isomorphism testing ----- */

struct IsoResult {
    enum Verdict { kIsomorphic, kNotIsomorphic, kInconclusive } verdict;
    std::string reason;
    int trials_used = 0;
};

namespace detail {

/* constant part of an endomorphism on a minimal presentation */
inline DenseMatrix constant_part(const ModuleHom& h) {
    const PrimeField& F = h.src.ring().field;
    size_t n = h.src.gens().rank();
    DenseMatrix A(F, n, n);
    for (size_t j = 0; j < n; ++j)
        for (size_t i = 0; i < n; ++i) {
            const Polynomial& e = h.cols[j][i];
            if (!e.is_zero() && e.degree() == 0) A.at(i, j) = e.lead().coeff;
        }
    return A;
}

inline ModuleHom random_combination(const std::vector<ModuleHom>& basis, std::mt19937_64& rng) {
    const FPModule& M = basis.front().src;
    const FPModule& N = basis.front().tgt;
    const PrimeField& F = M.ring().field;
    std::uniform_int_distribution<uint32_t> dist(0, F.p - 1);
    ModuleHom h{M, N, std::vector<VecPoly>(M.gens().rank(), zero_vec(N.gens())), basis.front().twist};
    for (const ModuleHom& b : basis) {
        uint32_t c = dist(rng);
        if (!c) continue;
        for (size_t j = 0; j < h.cols.size(); ++j)
            for (size_t k = 0; k < h.cols[j].size(); ++k)
                h.cols[j][k] = h.cols[j][k] + b.cols[j][k].scaled(c);
    }
    return h;
}

inline ModuleHom compose_homs(const ModuleHom& outer, const ModuleHom& inner) {
    ModuleHom h{inner.src, outer.tgt, {}, inner.twist + outer.twist};
    for (const VecPoly& c : inner.cols) h.cols.push_back(outer.apply(c));
    return h;
}

}  // namespace detail

/*
 * Decides graded isomorphism, randomized.  Mismatched Hilbert numerators or
 * minimal generator degrees certify a negative.  A sampled pair of degree
 * zero homs whose composites are invertible on generators certifies a
 * positive.  Exhausting the trial budget is reported as inconclusive with
 * failure probability roughly p^-trials.
 */
inline IsoResult random_iso_test(const FPModule& A, const FPModule& B, int trials,
                                 std::mt19937_64& rng) {
    const FPModule& M = A.minimal().mod;
    const FPModule& N = B.minimal().mod;
    std::vector<int> mt = M.gens().twists, nt = N.gens().twists;
    std::sort(mt.begin(), mt.end());
    std::sort(nt.begin(), nt.end());
    if (mt != nt) return {IsoResult::kNotIsomorphic, "minimal generator degrees differ", 0};
    if (!(A.hilbert().numerator.c == B.hilbert().numerator.c))
        return {IsoResult::kNotIsomorphic, "Hilbert series differ", 0};
    if (M.is_zero() && N.is_zero()) return {IsoResult::kIsomorphic, "both are zero", 0};
    std::vector<ModuleHom> fwd = hom_space(M, N, 0);
    std::vector<ModuleHom> bwd = hom_space(N, M, 0);
    if (fwd.empty() || bwd.empty())
        return {IsoResult::kNotIsomorphic, "no nonzero degree zero homomorphisms", 0};
    for (int t = 1; t <= trials; ++t) {
        ModuleHom f = detail::random_combination(fwd, rng);
        ModuleHom g = detail::random_combination(bwd, rng);
        ModuleHom gf = detail::compose_homs(g, f);
        ModuleHom fg = detail::compose_homs(f, g);
        if (detail::constant_part(gf).is_invertible() &&
            detail::constant_part(fg).is_invertible())
            return {IsoResult::kIsomorphic, "explicit inverse pair found", t};
    }
    return {IsoResult::kInconclusive, "no isomorphism found in the trial budget", trials};
}

/* ----- rank one torsion free modules as twisted ideals ----- */

struct RankOneEmbed {
    std::vector<Polynomial> ideal;  // image ideal
    int twist = 0;                  // C is isomorphic to ideal(twist)
    VecPoly functional;             // the embedding functional in gens(C)^*
};

/*
 * Embeds a torsion free rank one module C into the ring: C^* must be free
 * of rank one, its generator is (up to scalar) the unique embedding, and
 * the image is an ideal I with C isomorphic to I(t).
 */
inline RankOneEmbed rank_one_embed(const FPModule& C) {
    DualModule D = dual_module(C);
    if (D.mod.min_gen_count() != 1)
        throw AlgebraError("embedding: dual is not generated by one element (wrong codimension or rank)");
    const MinimalPresentation& mp = D.mod.minimal();
    if (!mp.mod.rels().empty()) throw AlgebraError("embedding: dual is not free");
    // realize the minimal generator of the dual as an honest functional
    const VecPoly& combo = mp.new_to_old.col(0);
    VecPoly psi = zero_vec(D.dual_ambient);
    for (size_t j = 0; j < combo.size(); ++j)
        for (size_t k = 0; k < psi.size(); ++k) psi[k] = psi[k] + D.functionals[j][k] * combo[j];
    int t = vec_degree(D.dual_ambient, psi);
    std::vector<Polynomial> ideal;
    for (size_t k = 0; k < C.gens().rank(); ++k)
        if (!psi[k].is_zero()) ideal.push_back(psi[k]);
    for (const VecPoly& r : C.rels()) {
        Polynomial acc = Polynomial::zero(C.ring());
        for (size_t k = 0; k < psi.size(); ++k) acc = acc + psi[k] * r[k];
        if (!acc.is_zero()) throw InvariantError("embedding: functional does not kill relations");
    }
    // certify injectivity: 0 -> ker -> C -> image -> 0 is graded exact, so
    // the kernel vanishes exactly when the image carries the whole series
    std::vector<Polynomial> mingens = ideal_min_gens(C.ring(), ideal);
    FPModule img = subquotient(ideal_ambient(C.ring()), wrap_ideal(mingens), {}).mod;
    if (!(img.hilbert().numerator == C.hilbert().numerator.shifted_scaled(t, 1)))
        throw AlgebraError("embedding: module is not torsion free of rank one");
    return RankOneEmbed{std::move(mingens), t, psi};
}

/* ----- direct sums and hyperplane sections ----- */

inline FPModule direct_sum(const FPModule& A, const FPModule& B) {
    FreeModule F = A.gens().concat(B.gens());
    std::vector<VecPoly> rels;
    for (const VecPoly& r : A.rels()) {
        VecPoly v = r;
        for (size_t k = 0; k < B.gens().rank(); ++k) v.push_back(Polynomial::zero(F.ring));
        rels.push_back(std::move(v));
    }
    for (const VecPoly& r : B.rels()) {
        VecPoly v = zero_vec(A.gens());
        v.insert(v.end(), r.begin(), r.end());
        rels.push_back(std::move(v));
    }
    return FPModule(F, std::move(rels));
}

/*
 * M/(l M) over the smaller ring, for a seeded random linear form l.  The
 * pivot variable (the last one with nonzero coefficient) is eliminated and
 * the remaining variables renumbered.  Genericity is up to the caller:
 * rerun with fresh seeds and check depth or dimension afterwards.
 */
inline FPModule hyperplane_section(const FPModule& M, uint64_t seed) {
    const PolyRing& r = M.ring();
    if (r.nvars < 2) throw AlgebraError("hyperplane section needs at least two variables");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<uint32_t> dist(0, r.field.p - 1);
    std::vector<uint32_t> coef(size_t(r.nvars), 0);
    int pivot = -1;
    while (pivot < 0) {
        for (auto& c : coef) c = dist(rng);
        for (int v = r.nvars - 1; v >= 0; --v)
            if (coef[size_t(v)]) { pivot = v; break; }
    }
    // normalize so the pivot coefficient is 1, then x_pivot = -sum(rest)
    uint32_t inv = r.field.inv(coef[size_t(pivot)]);
    Polynomial repl = Polynomial::zero(r);
    for (int v = 0; v < r.nvars; ++v) {
        if (v == pivot || !coef[size_t(v)]) continue;
        uint32_t c = r.field.neg(r.field.mul(coef[size_t(v)], inv));
        repl = repl + Polynomial::variable(r, v).scaled(c);
    }
    PolyRing small(r.field, r.nvars - 1);
    std::vector<int> var_map(size_t(r.nvars), -1);
    for (int v = 0, w = 0; v < r.nvars; ++v)
        if (v != pivot) var_map[size_t(v)] = w++;
    FreeModule F(small, M.gens().twists);
    std::vector<VecPoly> rels;
    for (const VecPoly& rel : M.rels()) {
        VecPoly v;
        v.reserve(rel.size());
        for (const Polynomial& e : rel) v.push_back(e.substitute(pivot, repl).into_ring(small, var_map));
        rels.push_back(std::move(v));
    }
    return FPModule(F, std::move(rels));
}

/* the substituted generators of an ideal; not saturated */
inline std::vector<Polynomial> hyperplane_section_ideal(const PolyRing& r,
                                                        const std::vector<Polynomial>& I,
                                                        uint64_t seed) {
    FPModule sec = hyperplane_section(FPModule(FreeModule::rank_one(r), wrap_ideal(I)), seed);
    std::vector<Polynomial> out;
    for (const VecPoly& v : sec.rels())
        if (!v[0].is_zero()) out.push_back(v[0]);
    return out;
}

}  // namespace buchsbaum
