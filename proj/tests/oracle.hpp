#pragma once

/*
 * Reference computations used only by the tests.  Everything here works on
 * dense coordinate matrices over the ground field, degree by degree, and
 * never touches the Groebner machinery, so agreement between the two is
 * meaningful evidence.
 */

#include <map>

#include "buchsbaum/hilbert.hpp"
#include "buchsbaum/linalg.hpp"

namespace oracle {

using namespace buchsbaum;

/* coordinates of the degree-t piece of F: pairs (component, monomial) */
inline std::vector<std::pair<size_t, Exponent>> piece_basis(const FreeModule& F, int t) {
    std::vector<std::pair<size_t, Exponent>> basis;
    for (size_t k = 0; k < F.rank(); ++k)
        for (const Exponent& m : monomials_of_degree(F.ring, t - F.twists[k]))
            basis.push_back({k, m});
    return basis;
}

inline std::vector<uint32_t> coords_of(const FreeModule& F, const VecPoly& v,
                                       const std::vector<std::pair<size_t, Exponent>>& basis) {
    std::vector<uint32_t> out(basis.size(), 0);
    for (size_t b = 0; b < basis.size(); ++b) out[b] = v[basis[b].first].coeff_of(basis[b].second);
    return out;
}

/* rows span the degree-t piece of the submodule generated by gens */
inline DenseMatrix span_matrix(const FreeModule& F, const std::vector<VecPoly>& gens, int t) {
    auto basis = piece_basis(F, t);
    DenseMatrix A(F.ring.field, 0, basis.size());
    for (const VecPoly& g : gens) {
        int d = vec_degree(F, g);
        if (d > t) continue;
        for (const Exponent& m : monomials_of_degree(F.ring, t - d)) {
            VecPoly mg = g;
            for (Polynomial& f : mg) f = f.term_multiple(m, 1);
            A.append_row(coords_of(F, mg, basis));
        }
    }
    return A;
}

inline int submodule_piece_dim(const FreeModule& F, const std::vector<VecPoly>& gens, int t) {
    return int(span_matrix(F, gens, t).rank());
}

inline int quotient_piece_dim(const FreeModule& F, const std::vector<VecPoly>& rels, int t) {
    return int(piece_basis(F, t).size()) - submodule_piece_dim(F, rels, t);
}

inline int ideal_quotient_piece_dim(const PolyRing& r, const std::vector<Polynomial>& I, int t) {
    return quotient_piece_dim(FreeModule::rank_one(r), wrap_ideal(I), t);
}

/*
 * Graded Betti numbers of M = F0/rels over the polynomial ring, computed as
 * the homology of M tensored with the exterior algebra complex in each
 * bidegree.  beta[{i, j}] with homological index i and internal degree j.
 *
 * The degree-t piece of M is represented on the monomial coordinates of F0
 * reduced modulo the row space of the relation span; multiplication by a
 * variable acts on full coordinates and is then reduced.
 */
class TorBetti {
  public:
    TorBetti(FreeModule F0, std::vector<VecPoly> rels, int max_i, int max_j)
        : F0_(std::move(F0)), rels_(std::move(rels)) {
        compute(max_i, max_j);
    }

    int beta(int i, int j) const {
        auto it = b_.find({i, j});
        return it == b_.end() ? 0 : it->second;
    }
    const std::map<std::pair<int, int>, int>& table() const { return b_; }

  private:
    FreeModule F0_;
    std::vector<VecPoly> rels_;
    std::map<std::pair<int, int>, int> b_;

    struct Piece {
        std::vector<std::pair<size_t, Exponent>> basis;  // of F0 in this degree
        DenseMatrix reducer;       // rref'd relation span
        std::vector<size_t> piv;   // pivot columns of the reducer
        std::vector<size_t> free_cols;
        size_t dim = 0;
    };

    Piece make_piece(int t) const {
        Piece P;
        P.basis = piece_basis(F0_, t);
        P.reducer = span_matrix(F0_, rels_, t);
        P.piv = P.reducer.rref();
        std::vector<bool> isp(P.basis.size(), false);
        for (size_t c : P.piv) isp[c] = true;
        for (size_t c = 0; c < P.basis.size(); ++c)
            if (!isp[c]) P.free_cols.push_back(c);
        P.dim = P.free_cols.size();
        return P;
    }

    /* reduce full coordinates to quotient coordinates */
    std::vector<uint32_t> reduce(const Piece& P, std::vector<uint32_t> v) const {
        const PrimeField& F = F0_.ring.field;
        for (size_t r = 0; r < P.piv.size(); ++r) {
            uint32_t c = v[P.piv[r]];
            if (!c) continue;
            for (size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(c, P.reducer.at(r, j)));
        }
        std::vector<uint32_t> out(P.dim);
        for (size_t i = 0; i < P.dim; ++i) out[i] = v[P.free_cols[i]];
        return out;
    }

    /* matrix of multiplication by x_v : M_t -> M_{t+1} in quotient coordinates */
    DenseMatrix mult_by(int var, const Piece& from, const Piece& to) const {
        const PrimeField& F = F0_.ring.field;
        DenseMatrix A(F, to.dim, from.dim);
        for (size_t c = 0; c < from.dim; ++c) {
            auto [comp, mono] = from.basis[from.free_cols[c]];
            std::vector<uint32_t> full(to.basis.size(), 0);
            Exponent xm = mono * Exponent::var(var);
            for (size_t b = 0; b < to.basis.size(); ++b)
                if (to.basis[b].first == comp && to.basis[b].second == xm) full[b] = 1;
            std::vector<uint32_t> q = reduce(to, std::move(full));
            for (size_t rr = 0; rr < to.dim; ++rr) A.at(rr, c) = q[rr];
        }
        return A;
    }

    void compute(int max_i, int max_j) {
        const PolyRing& r = F0_.ring;
        const PrimeField& F = r.field;
        int nv = r.nvars;
        int min_tw = *std::min_element(F0_.twists.begin(), F0_.twists.end());
        std::map<int, Piece> pieces;
        auto piece = [&](int t) -> const Piece& {
            auto it = pieces.find(t);
            if (it == pieces.end()) it = pieces.emplace(t, make_piece(t)).first;
            return it->second;
        };
        // Koszul complex piece in bidegree (i, j): sum over i-subsets S of
        // the variables of M_{j - i}; differential sends (m, S) to
        // sum_k sign * x_{S_k} m over S minus its k-th element.
        for (int j = min_tw; j <= max_j; ++j) {
            std::vector<std::vector<std::vector<int>>> subs(size_t(max_i) + 2);
            for (int i = 0; i <= max_i + 1 && i <= nv; ++i) subs[size_t(i)] = subsets_of_size(nv, i);
            auto kdim = [&](int i) -> size_t {
                if (i < 0 || i > nv) return 0;
                return subs[size_t(i)].size() * size_t(piece(j - i).dim);
            };
            auto kdiff = [&](int i) -> DenseMatrix {
                // d_i : K_i -> K_{i-1} in internal degree j
                DenseMatrix D(F, kdim(i - 1), kdim(i));
                if (i < 1 || i > nv) return D;
                const Piece& src = piece(j - i);
                const Piece& tgt = piece(j - i + 1);
                std::vector<DenseMatrix> mults;
                for (int v = 0; v < nv; ++v) mults.push_back(mult_by(v, src, tgt));
                std::map<std::vector<int>, size_t> tgt_index;
                for (size_t s = 0; s < subs[size_t(i - 1)].size(); ++s)
                    tgt_index[subs[size_t(i - 1)][s]] = s;
                for (size_t s = 0; s < subs[size_t(i)].size(); ++s) {
                    const std::vector<int>& S = subs[size_t(i)][s];
                    for (size_t k = 0; k < S.size(); ++k) {
                        std::vector<int> T = S;
                        T.erase(T.begin() + long(k));
                        size_t tcol = tgt_index.at(T);
                        const DenseMatrix& mul = mults[size_t(S[k])];
                        uint32_t sign = (k % 2 == 0) ? 1 : F.p - 1;
                        for (size_t rr = 0; rr < tgt.dim; ++rr)
                            for (size_t cc = 0; cc < src.dim; ++cc) {
                                uint32_t v = F.mul(mul.at(rr, cc), sign);
                                D.at(tcol * tgt.dim + rr, s * src.dim + cc) =
                                    F.add(D.at(tcol * tgt.dim + rr, s * src.dim + cc), v);
                            }
                    }
                }
                return D;
            };
            for (int i = 0; i <= max_i && i <= nv; ++i) {
                size_t dim_i = kdim(i);
                if (dim_i == 0) continue;
                size_t rank_in = kdiff(i + 1).rank();
                size_t rank_out = kdiff(i).rank();
                int h = int(dim_i - rank_out - rank_in);
                if (h < 0) throw AlgebraError("oracle: negative homology dimension");
                if (h > 0) b_[{i, j}] = h;
            }
        }
    }
};

}  // namespace oracle
