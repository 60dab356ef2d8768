#pragma once

#include <numeric>
#include <vector>

#include "polynomial.hpp"

namespace buchsbaum {

/* F = (+)_k R(-twists[k]); generator k is homogeneous of degree twists[k]. */
struct FreeModule {
    PolyRing ring;
    std::vector<int> twists;

    FreeModule() = default;
    FreeModule(PolyRing r, std::vector<int> tw) : ring(r), twists(std::move(tw)) {}
    static FreeModule rank_one(PolyRing r, int twist = 0) { return FreeModule(r, {twist}); }

    size_t rank() const { return twists.size(); }

    FreeModule twisted(int a) const {  // F(a): generator degrees drop by a
        FreeModule out = *this;
        for (int& d : out.twists) d -= a;
        return out;
    }
    FreeModule dual() const {  // Hom(F, R)
        FreeModule out = *this;
        for (int& d : out.twists) d = -d;
        return out;
    }
    FreeModule concat(const FreeModule& o) const {
        FreeModule out = *this;
        out.twists.insert(out.twists.end(), o.twists.begin(), o.twists.end());
        return out;
    }

    bool operator==(const FreeModule& o) const { return ring == o.ring && twists == o.twists; }
};

/* Element of a free module: one polynomial per component. */
using VecPoly = std::vector<Polynomial>;

inline VecPoly zero_vec(const FreeModule& F) {
    return VecPoly(F.rank(), Polynomial::zero(F.ring));
}

inline VecPoly unit_vec(const FreeModule& F, size_t k) {
    VecPoly v = zero_vec(F);
    v[k] = Polynomial::constant(F.ring, 1);
    return v;
}

inline bool vec_is_zero(const VecPoly& v) {
    for (const Polynomial& f : v)
        if (!f.is_zero()) return false;
    return true;
}

/* twisted degree of a homogeneous vector; -1 for zero, throws if mixed */
inline int vec_degree(const FreeModule& F, const VecPoly& v) {
    int deg = -1;
    for (size_t k = 0; k < v.size(); ++k) {
        if (v[k].is_zero()) continue;
        int d;
        if (!v[k].is_homogeneous(&d)) throw AlgebraError("vector component not homogeneous");
        int total = d + F.twists[k];
        if (deg != -1 && total != deg) throw AlgebraError("vector not homogeneous across components");
        deg = total;
    }
    return deg;
}

inline VecPoly vec_add(const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline VecPoly vec_sub(const VecPoly& a, const VecPoly& b) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline VecPoly vec_scale(const VecPoly& a, const Polynomial& f) {
    VecPoly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] * f;
    return r;
}

/*
 * Degree-zero graded map between free modules, stored on generators: column j
 * is the image of source generator j.  The constructor enforces the twist
 * bookkeeping: entry (i,j) must be homogeneous of degree
 * source.twists[j] - target.twists[i] or zero.
 */
class GradedMap {
  public:
    GradedMap() = default;
    GradedMap(FreeModule src, FreeModule tgt, std::vector<VecPoly> cols)
        : src_(std::move(src)), tgt_(std::move(tgt)), cols_(std::move(cols)) {
        validate();
    }

    static GradedMap zero(FreeModule src, FreeModule tgt) {
        std::vector<VecPoly> cols(src.rank(), zero_vec(tgt));
        return GradedMap(std::move(src), std::move(tgt), std::move(cols));
    }

    static GradedMap identity(const FreeModule& F) {
        std::vector<VecPoly> cols;
        cols.reserve(F.rank());
        for (size_t k = 0; k < F.rank(); ++k) cols.push_back(unit_vec(F, k));
        return GradedMap(F, F, std::move(cols));
    }

    const FreeModule& source() const { return src_; }
    const FreeModule& target() const { return tgt_; }
    size_t ncols() const { return cols_.size(); }
    size_t nrows() const { return tgt_.rank(); }
    const VecPoly& col(size_t j) const { return cols_[j]; }
    const std::vector<VecPoly>& cols() const { return cols_; }
    const Polynomial& entry(size_t i, size_t j) const { return cols_[j][i]; }

    bool is_zero() const {
        for (const VecPoly& c : cols_)
            if (!vec_is_zero(c)) return false;
        return true;
    }

    VecPoly apply(const VecPoly& v) const {
        VecPoly out = zero_vec(tgt_);
        for (size_t j = 0; j < cols_.size(); ++j) {
            if (v[j].is_zero()) continue;
            for (size_t i = 0; i < tgt_.rank(); ++i)
                if (!cols_[j][i].is_zero()) out[i] = out[i] + cols_[j][i] * v[j];
        }
        return out;
    }

    GradedMap compose(const GradedMap& inner) const {  // this o inner
        if (!(inner.tgt_ == src_)) throw AlgebraError("compose: shape mismatch");
        std::vector<VecPoly> cols;
        cols.reserve(inner.ncols());
        for (size_t j = 0; j < inner.ncols(); ++j) cols.push_back(apply(inner.col(j)));
        return GradedMap(inner.src_, tgt_, std::move(cols));
    }

    /* Hom(-, R): transpose with negated twists. */
    GradedMap dual() const {
        FreeModule dsrc = tgt_.dual(), dtgt = src_.dual();
        std::vector<VecPoly> cols(dsrc.rank(), zero_vec(dtgt));
        for (size_t i = 0; i < tgt_.rank(); ++i)
            for (size_t j = 0; j < src_.rank(); ++j) cols[i][j] = cols_[j][i];
        return GradedMap(std::move(dsrc), std::move(dtgt), std::move(cols));
    }

    GradedMap twisted(int a) const {
        std::vector<VecPoly> cols = cols_;
        return GradedMap(src_.twisted(a), tgt_.twisted(a), std::move(cols));
    }

    static GradedMap direct_sum(const GradedMap& a, const GradedMap& b) {
        FreeModule src = a.src_.concat(b.src_), tgt = a.tgt_.concat(b.tgt_);
        std::vector<VecPoly> cols;
        cols.reserve(src.rank());
        for (size_t j = 0; j < a.ncols(); ++j) {
            VecPoly c = a.col(j);
            VecPoly pad = zero_vec(b.tgt_);
            c.insert(c.end(), pad.begin(), pad.end());
            cols.push_back(std::move(c));
        }
        for (size_t j = 0; j < b.ncols(); ++j) {
            VecPoly c = zero_vec(a.tgt_);
            const VecPoly& bc = b.col(j);
            c.insert(c.end(), bc.begin(), bc.end());
            cols.push_back(std::move(c));
        }
        return GradedMap(std::move(src), std::move(tgt), std::move(cols));
    }

    bool operator==(const GradedMap& o) const {
        return src_ == o.src_ && tgt_ == o.tgt_ && cols_ == o.cols_;
    }

  private:
    FreeModule src_, tgt_;
    std::vector<VecPoly> cols_;

    void validate() const {
        if (cols_.size() != src_.rank()) throw AlgebraError("graded map: column count mismatch");
        for (size_t j = 0; j < cols_.size(); ++j) {
            if (cols_[j].size() != tgt_.rank()) throw AlgebraError("graded map: row count mismatch");
            for (size_t i = 0; i < tgt_.rank(); ++i) {
                const Polynomial& f = cols_[j][i];
                if (f.is_zero()) continue;
                int d;
                if (!f.is_homogeneous(&d) || d != src_.twists[j] - tgt_.twists[i])
                    throw AlgebraError("graded map: entry degree violates twist bookkeeping");
            }
        }
    }
};

/*
 * Koszul complex on x0..xn: K_i = R(-i)^C(n+1,i) with basis indexed by
 * i-subsets of the variables in lexicographic order; d(e_S) = sum over k in S
 * of (-1)^pos x_k e_{S \ k}.
 */
inline long long binom(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

inline std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < n; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

inline FreeModule koszul_module(PolyRing r, int i) {
    return FreeModule(r, std::vector<int>(size_t(binom(r.nvars, i)), i));
}

inline GradedMap koszul_map(PolyRing r, int i) {  // K_i -> K_{i-1}
    if (i < 1 || i > r.nvars) throw AlgebraError("koszul_map: index out of range");
    std::vector<std::vector<int>> src_sets = subsets_of_size(r.nvars, i);
    std::vector<std::vector<int>> tgt_sets = subsets_of_size(r.nvars, i - 1);
    auto index_of = [&](const std::vector<int>& s) {
        for (size_t k = 0; k < tgt_sets.size(); ++k)
            if (tgt_sets[k] == s) return k;
        throw InvariantError("koszul_map: subset lookup failed");
    };
    FreeModule src = koszul_module(r, i), tgt = koszul_module(r, i - 1);
    std::vector<VecPoly> cols(src.rank(), zero_vec(tgt));
    for (size_t j = 0; j < src_sets.size(); ++j) {
        for (size_t pos = 0; pos < src_sets[j].size(); ++pos) {
            std::vector<int> rest = src_sets[j];
            int v = rest[pos];
            rest.erase(rest.begin() + pos);
            uint32_t sign = (pos % 2 == 0) ? 1 : r.field.p - 1;
            cols[j][index_of(rest)] = Polynomial::monomial(r, Exponent::var(v), sign);
        }
    }
    return GradedMap(std::move(src), std::move(tgt), std::move(cols));
}

}  // namespace buchsbaum
