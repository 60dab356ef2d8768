#pragma once

#include <map>
#include <optional>
#include <set>

#include "free_module.hpp"

namespace buchsbaum {

/* Monomial of a free module: basis component plus ring monomial. */
struct MMono {
    int comp = 0;
    Exponent exp;
    bool operator==(const MMono& o) const { return comp == o.comp && exp == o.exp; }
};

struct MTerm {
    int comp = 0;
    Exponent exp;
    uint32_t coeff = 0;
};

/* Sparse module element, terms sorted descending in the active order. */
using SparseVec = std::vector<MTerm>;

/*
 * Module monomial orders.  The working order is the position-over-term
 * extension of grevlex (lower component index dominates).  Schreyer orders,
 * induced by the lead monomials of a basis, support the syzygy pass: under
 * such an order the syzygy of the k-th basis element against monomial m has
 * lead exactly m*eps_k.
 */
class ModuleOrder {
  public:
    static ModuleOrder pot() { return ModuleOrder(); }
    static ModuleOrder schreyer(std::vector<MMono> basis_leads) {
        ModuleOrder o;
        o.leads_ = std::move(basis_leads);
        return o;
    }

    bool is_schreyer() const { return !leads_.empty(); }

    int cmp(const MMono& a, const MMono& b) const {
        if (leads_.empty()) return pot_cmp(a, b);
        MMono ia{leads_[a.comp].comp, leads_[a.comp].exp * a.exp};
        MMono ib{leads_[b.comp].comp, leads_[b.comp].exp * b.exp};
        int c = pot_cmp(ia, ib);
        if (c != 0) return c;
        if (a.comp != b.comp) return a.comp > b.comp ? 1 : -1;
        return 0;
    }
    bool less(const MMono& a, const MMono& b) const { return cmp(a, b) < 0; }

  private:
    std::vector<MMono> leads_;

    static int pot_cmp(const MMono& a, const MMono& b) {
        if (a.comp != b.comp) return a.comp < b.comp ? 1 : -1;
        return grevlex_cmp(a.exp, b.exp);
    }
};

namespace detail {

inline void sv_normalize(SparseVec& v, const ModuleOrder& ord, const PrimeField& F) {
    std::sort(v.begin(), v.end(), [&](const MTerm& a, const MTerm& b) {
        return ord.cmp({a.comp, a.exp}, {b.comp, b.exp}) > 0;
    });
    SparseVec out;
    out.reserve(v.size());
    for (const MTerm& t : v) {
        uint32_t c = t.coeff % F.p;
        if (!out.empty() && out.back().comp == t.comp && out.back().exp == t.exp) {
            out.back().coeff = F.add(out.back().coeff, c);
            if (out.back().coeff == 0) out.pop_back();
        } else if (c) {
            out.push_back({t.comp, t.exp, c});
        }
    }
    v = std::move(out);
}

/* a -= c * x^m * b; both inputs sorted, result sorted. */
inline SparseVec sv_submul(const SparseVec& a, uint32_t c, const Exponent& m, const SparseVec& b,
                           const ModuleOrder& ord, const PrimeField& F) {
    SparseVec r;
    r.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        int cmp;
        MTerm bt;
        if (j < b.size()) bt = {b[j].comp, b[j].exp * m, F.mul(b[j].coeff, c)};
        if (i == a.size()) cmp = -1;
        else if (j == b.size()) cmp = 1;
        else cmp = ord.cmp({a[i].comp, a[i].exp}, {bt.comp, bt.exp});
        if (cmp > 0) {
            r.push_back(a[i++]);
        } else if (cmp < 0) {
            bt.coeff = F.neg(bt.coeff);
            if (bt.coeff) r.push_back(bt);
            ++j;
        } else {
            uint32_t cc = F.sub(a[i].coeff, bt.coeff);
            if (cc) r.push_back({a[i].comp, a[i].exp, cc});
            ++i;
            ++j;
        }
    }
    return r;
}

inline SparseVec sv_scale(SparseVec v, uint32_t c, const PrimeField& F) {
    for (MTerm& t : v) t.coeff = F.mul(t.coeff, c);
    return v;
}

}  // namespace detail

inline SparseVec to_sparse(const VecPoly& v, const ModuleOrder& ord, const PrimeField& F) {
    SparseVec out;
    for (size_t k = 0; k < v.size(); ++k)
        for (const Term& t : v[k].terms()) out.push_back({int(k), t.mono, t.coeff});
    detail::sv_normalize(out, ord, F);
    return out;
}

inline VecPoly to_vec(const SparseVec& v, const FreeModule& F) {
    std::vector<std::vector<Term>> comps(F.rank());
    for (const MTerm& t : v) comps[size_t(t.comp)].push_back({t.exp, t.coeff});
    VecPoly out;
    out.reserve(F.rank());
    for (auto& c : comps) out.emplace_back(F.ring, std::move(c));
    return out;
}

/*
 * Buchberger engine for submodules of a graded free module.  Incremental:
 * generators may be added after completion and the basis is re-completed.
 * Normal selection strategy (pairs by ascending twisted degree), the lcm
 * criterion on component-pure pairs, and the chain criterion.  With
 * track = true every basis element carries its expression in the original
 * generators, enabling lifts and the Schreyer syzygy pass.
 */
class GBEngine {
  public:
    GBEngine(FreeModule ambient, bool track = false, ModuleOrder ord = ModuleOrder::pot())
        : amb_(std::move(ambient)), ord_(ord), F_(amb_.ring.field), track_(track) {}

    const FreeModule& ambient() const { return amb_; }
    size_t num_generators() const { return gen_degs_.size(); }

    void add_generator(const VecPoly& g) { add_generator(g, vec_degree(amb_, g)); }

    /* deg overrides the computed degree; required for zero generators whose
       twist is dictated by the source of a map. */
    void add_generator(const VecPoly& g, int deg) {
        if (!vec_is_zero(g) && vec_degree(amb_, g) != deg)
            throw AlgebraError("generator degree mismatch");
        gen_degs_.push_back(deg);
        gens_.push_back(to_sparse(g, ord_, F_));
        dirty_ = true;
    }

    void add_generators(const std::vector<VecPoly>& gs) {
        for (const VecPoly& g : gs) add_generator(g);
    }

    const std::vector<int>& generator_degrees() const { return gen_degs_; }

    void complete() {
        if (!dirty_) return;
        for (size_t i = next_gen_; i < gens_.size(); ++i) insert_element(gens_[i], track_unit(i));
        next_gen_ = gens_.size();
        process_pairs();
        build_reduced();
        dirty_ = false;
    }

    VecPoly normal_form(const VecPoly& v) {
        complete();
        SparseVec r = reduce_full(to_sparse(v, ord_, F_), red_, nullptr);
        return to_vec(r, amb_);
    }

    bool contains(const VecPoly& v) {
        complete();
        return reduce_full(to_sparse(v, ord_, F_), red_, nullptr).empty();
    }

    /*
     * Membership for a homogeneous v after processing only the S-pairs of
     * twisted degree <= deg(v): the partial basis already generates every
     * lead term in those degrees, so the answer is exact while pairs above
     * deg(v) stay queued for a later complete().
     */
    bool contains_up_to(const VecPoly& v) {
        if (vec_is_zero(v)) return true;
        int d = vec_degree(amb_, v);
        for (size_t i = next_gen_; i < gens_.size(); ++i) insert_element(gens_[i], track_unit(i));
        next_gen_ = gens_.size();
        while (!pair_queue_.empty() && (*pair_queue_.begin())[0] <= d) process_one_pair();
        return reduce_full(to_sparse(v, ord_, F_), basis_, nullptr).empty();
    }

    bool is_zero_module() {
        complete();
        return red_.empty();
    }

    /* v = sum coeff_i * gens[i]; nullopt when v is not in the submodule. */
    std::optional<VecPoly> lift(const VecPoly& v) {
        require_track();
        complete();
        SparseVec tr;
        SparseVec r = reduce_full(to_sparse(v, ord_, F_), red_, &tr);
        if (!r.empty()) return std::nullopt;
        FreeModule hF(amb_.ring, red_degs());
        return track_combination(to_vec(tr, hF));
    }

    /* Generators of Syz(gens) in R^m with twists = generator degrees. */
    std::vector<VecPoly> syzygies() {
        require_track();
        complete();
        FreeModule genF(amb_.ring, gen_degs_);
        std::vector<VecPoly> out;
        // unit syzygies for zero generators (they never enter the basis)
        for (size_t i = 0; i < gens_.size(); ++i)
            if (gens_[i].empty()) out.push_back(unit_vec(genF, i));

        // Schreyer pass over the reduced basis: for each j, reduce m*h_j to
        // zero for every minimal m in (lt(h_0..h_{j-1}) : lt(h_j)).
        std::vector<MMono> hleads;
        for (const Elem& e : red_) hleads.push_back({e.v.front().comp, e.v.front().exp});
        ModuleOrder schreyer = ModuleOrder::schreyer(hleads);
        FreeModule hF(amb_.ring, red_degs());
        for (size_t j = 1; j < red_.size(); ++j) {
            std::vector<Exponent> quots;
            for (size_t i = 0; i < j; ++i) {
                if (red_[i].v.front().comp != red_[j].v.front().comp) continue;
                Exponent l = red_[i].v.front().exp.lcm(red_[j].v.front().exp);
                quots.push_back(red_[j].v.front().exp.quotient_of(l));
            }
            // minimalize the quotient monomial set
            std::vector<Exponent> min;
            std::sort(quots.begin(), quots.end(),
                      [](const Exponent& a, const Exponent& b) { return grevlex_less(a, b); });
            for (const Exponent& q : quots) {
                bool redundant = false;
                for (const Exponent& m : min)
                    if (m.divides(q)) {
                        redundant = true;
                        break;
                    }
                if (!redundant && !(min.size() && min.back() == q)) min.push_back(q);
            }
            for (const Exponent& m : min) {
                SparseVec w;
                for (const MTerm& t : red_[j].v) w.push_back({t.comp, t.exp * m, t.coeff});
                SparseVec sig;  // quotient record over red_ indices
                // the top term must be cancelled by an earlier basis element,
                // otherwise the syzygy lead is not m*eps_j
                bool topped = false;
                for (size_t i = 0; i < j && !topped; ++i) {
                    const MTerm& lt = red_[i].v.front();
                    if (lt.comp != w.front().comp || !lt.exp.divides(w.front().exp)) continue;
                    Exponent q = lt.exp.quotient_of(w.front().exp);
                    uint32_t c = w.front().coeff;
                    w = detail::sv_submul(w, c, q, red_[i].v, ord_, F_);
                    sig.push_back({int(i), q, c});
                    topped = true;
                }
                if (!topped) throw InvariantError("syzygy pass: no earlier reducer for colon monomial");
                SparseVec rem = reduce_full(w, red_, &sig);
                if (!rem.empty()) throw InvariantError("syzygy pass: S-vector did not reduce to zero");
                for (MTerm& t : sig) t.coeff = F_.neg(t.coeff);
                sig.push_back({int(j), m, 1});
                detail::sv_normalize(sig, ModuleOrder::pot(), F_);
                // under the Schreyer order the lead must be m*eps_j
                SparseVec chk = sig;
                detail::sv_normalize(chk, schreyer, F_);
                if (!(chk.front().comp == int(j) && chk.front().exp == m))
                    throw InvariantError("syzygy pass: Schreyer lead mismatch");
                // convert to a syzygy of the original generators via tracks
                VecPoly sy = track_combination(to_vec(sig, hF));
                if (!vec_is_zero(sy)) out.push_back(std::move(sy));
            }
        }
        // discrepancy rows: g_i - sum S_ik h_k = 0 pulled back through tracks
        for (size_t i = 0; i < gens_.size(); ++i) {
            if (gens_[i].empty()) continue;
            SparseVec sig;
            SparseVec rem = reduce_full(gens_[i], red_, &sig);
            if (!rem.empty()) throw InvariantError("generator does not reduce to zero over its own basis");
            for (MTerm& t : sig) t.coeff = F_.neg(t.coeff);
            VecPoly row = track_combination(to_vec(sig, hF));
            row[i] = row[i] + Polynomial::constant(amb_.ring, 1);
            if (!vec_is_zero(row)) out.push_back(std::move(row));
        }
        return out;
    }

    std::vector<MMono> reduced_leads() {
        complete();
        std::vector<MMono> out;
        for (const Elem& e : red_) out.push_back({e.v.front().comp, e.v.front().exp});
        return out;
    }

    std::vector<VecPoly> reduced_basis() {
        complete();
        std::vector<VecPoly> out;
        for (const Elem& e : red_) out.push_back(to_vec(e.v, amb_));
        return out;
    }

    /* lead exponents grouped by component, minimalized */
    std::vector<std::vector<Exponent>> lead_ideals() {
        complete();
        std::vector<std::vector<Exponent>> J(amb_.rank());
        for (const Elem& e : red_) J[size_t(e.v.front().comp)].push_back(e.v.front().exp);
        return J;
    }

  private:
    struct Elem {
        SparseVec v;      // monic
        SparseVec track;  // expression over original generators (if tracking)
        int deg = 0;
    };

    FreeModule amb_;
    ModuleOrder ord_;
    PrimeField F_;
    bool track_;
    std::vector<SparseVec> gens_;
    std::vector<int> gen_degs_;
    size_t next_gen_ = 0;
    std::vector<Elem> basis_;
    std::vector<Elem> red_;
    std::set<std::array<int, 3>> pair_queue_;  // (deg, i, j)
    std::set<std::pair<int, int>> pairs_done_;
    bool dirty_ = true;

    void require_track() const {
        if (!track_) throw AlgebraError("operation requires a tracking Groebner basis");
    }

    std::vector<int> red_degs() const {
        std::vector<int> d;
        for (const Elem& e : red_) d.push_back(e.deg);
        return d;
    }

    SparseVec track_unit(size_t i) {
        SparseVec t;
        if (track_) t.push_back({int(i), Exponent::one(), 1});
        return t;
    }

    int twisted_deg(const MMono& m) const { return int(m.exp.deg) + amb_.twists[size_t(m.comp)]; }

    bool component_pure(const SparseVec& v) const {
        for (const MTerm& t : v)
            if (t.comp != v.front().comp) return false;
        return true;
    }

    void insert_element(const SparseVec& v, SparseVec track) {
        if (v.empty()) return;
        uint32_t lc = v.front().coeff;
        Elem e;
        e.v = lc == 1 ? v : detail::sv_scale(v, F_.inv(lc), F_);
        e.track = lc == 1 ? std::move(track) : detail::sv_scale(std::move(track), F_.inv(lc), F_);
        e.deg = twisted_deg({e.v.front().comp, e.v.front().exp});
        size_t idx = basis_.size();
        basis_.push_back(std::move(e));
        for (size_t i = 0; i < idx; ++i) {
            const Elem& a = basis_[i];
            const Elem& b = basis_[idx];
            if (a.v.front().comp != b.v.front().comp) continue;
            Exponent l = a.v.front().exp.lcm(b.v.front().exp);
            int deg = int(l.deg) + amb_.twists[size_t(a.v.front().comp)];
            pair_queue_.insert({deg, int(i), int(idx)});
        }
    }

    void process_pairs() {
        while (!pair_queue_.empty()) process_one_pair();
    }

    void process_one_pair() {
        auto it = pair_queue_.begin();
        auto [deg, i, j] = *it;
        pair_queue_.erase(it);
        pairs_done_.insert({i, j});
        const Elem& a = basis_[size_t(i)];
        const Elem& b = basis_[size_t(j)];
        Exponent la = a.v.front().exp, lb = b.v.front().exp;
        // lcm criterion, valid for component-pure elements
        if (la.coprime(lb) && component_pure(a.v) && component_pure(b.v)) return;
        if (chain_criterion(i, j, la.lcm(lb))) return;
        Exponent l = la.lcm(lb);
        Exponent ua = la.quotient_of(l), ub = lb.quotient_of(l);
        SparseVec s = detail::sv_submul(mul_mono(a.v, ua), 1, ub, b.v, ord_, F_);
        SparseVec st;
        if (track_) st = detail::sv_submul(mul_mono(a.track, ua), 1, ub, b.track, pot_, F_);
        SparseVec str;
        SparseVec r = reduce_full(s, basis_, track_ ? &str : nullptr);
        if (track_) {
            for (const MTerm& q : str) {
                st = detail::sv_submul(st, q.coeff, q.exp,
                                       basis_[size_t(q.comp)].track, pot_, F_);
            }
        }
        if (!r.empty()) insert_element(r, std::move(st));
    }

    bool chain_criterion(int i, int j, const Exponent& lcm_ij) const {
        int comp = basis_[size_t(i)].v.front().comp;
        for (size_t k = 0; k < basis_.size(); ++k) {
            if (int(k) == i || int(k) == j) continue;
            if (basis_[k].v.front().comp != comp) continue;
            if (!basis_[k].v.front().exp.divides(lcm_ij)) continue;
            Exponent lik = basis_[size_t(i)].v.front().exp.lcm(basis_[k].v.front().exp);
            Exponent lkj = basis_[k].v.front().exp.lcm(basis_[size_t(j)].v.front().exp);
            if (lik == lcm_ij || lkj == lcm_ij) continue;
            auto done = [&](int a, int b) {
                if (a > b) std::swap(a, b);
                return pairs_done_.count({a, b}) > 0;
            };
            if (done(i, int(k)) && done(int(k), j)) return true;
        }
        return false;
    }

    SparseVec mul_mono(const SparseVec& v, const Exponent& m) const {
        SparseVec r = v;
        for (MTerm& t : r) t.exp = t.exp * m;
        return r;
    }

    /*
     * Full normal form of w against basis B.  With quotient_out, records
     * terms (k, exp, coeff) meaning coeff * x^exp * B[k] was subtracted.
     */
    SparseVec reduce_full(SparseVec w, const std::vector<Elem>& B, SparseVec* quotient_out) const {
        SparseVec rem;
        while (!w.empty()) {
            const MTerm& t = w.front();
            bool hit = false;
            for (size_t k = 0; k < B.size(); ++k) {
                const MTerm& lt = B[k].v.front();
                if (lt.comp != t.comp || !lt.exp.divides(t.exp)) continue;
                Exponent q = lt.exp.quotient_of(t.exp);
                uint32_t c = t.coeff;  // basis is monic
                w = detail::sv_submul(w, c, q, B[k].v, ord_, F_);
                if (quotient_out) quotient_out->push_back({int(k), q, c});
                hit = true;
                break;
            }
            if (!hit) {
                rem.push_back(t);
                w.erase(w.begin());
            }
        }
        if (quotient_out) detail::sv_normalize(*quotient_out, pot_, F_);
        return rem;
    }

    void build_reduced() {
        // prune lead-redundant elements, then tail-reduce survivors
        std::vector<size_t> order(basis_.size());
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) {
            if (basis_[a].deg != basis_[b].deg) return basis_[a].deg < basis_[b].deg;
            return a < b;
        });
        std::vector<size_t> kept;
        for (size_t idx : order) {
            const MMono lt{basis_[idx].v.front().comp, basis_[idx].v.front().exp};
            bool redundant = false;
            for (size_t other : kept) {
                const MTerm& ol = basis_[other].v.front();
                if (ol.comp == lt.comp && ol.exp.divides(lt.exp)) {
                    redundant = true;
                    break;
                }
            }
            if (!redundant) kept.push_back(idx);
        }
        red_.clear();
        for (size_t idx : kept) red_.push_back(basis_[idx]);
        for (size_t k = 0; k < red_.size(); ++k) {
            std::vector<Elem> others;
            for (size_t o = 0; o < red_.size(); ++o)
                if (o != k) others.push_back(red_[o]);
            SparseVec quot;
            SparseVec tail = reduce_full(red_[k].v, others, track_ ? &quot : nullptr);
            if (track_) {
                SparseVec tr = red_[k].track;
                for (const MTerm& q : quot) {
                    size_t oidx = size_t(q.comp) < k ? size_t(q.comp) : size_t(q.comp) + 1;
                    tr = detail::sv_submul(tr, q.coeff, q.exp, red_[oidx].track, pot_, F_);
                }
                red_[k].track = std::move(tr);
            }
            red_[k].v = std::move(tail);
        }
    }

    /* sum_k sig_k * track(red_[k]) as a vector over the original generators */
    VecPoly track_combination(const VecPoly& sig) {
        FreeModule genF(amb_.ring, gen_degs_);
        VecPoly out = zero_vec(genF);
        for (size_t k = 0; k < red_.size(); ++k) {
            if (sig[k].is_zero()) continue;
            VecPoly tk = to_vec(red_[k].track, genF);
            for (size_t i = 0; i < out.size(); ++i) out[i] = out[i] + tk[i] * sig[k];
        }
        return out;
    }

    ModuleOrder pot_ = ModuleOrder::pot();
};

}  // namespace buchsbaum
