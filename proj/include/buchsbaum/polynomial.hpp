#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "monomial.hpp"

namespace buchsbaum {

struct Term {
    Exponent mono;
    uint32_t coeff = 0;
};

/*
 * Sparse distributed polynomial: terms sorted descending in grevlex, no zero
 * coefficients, leading term first.  The ring travels with the value.
 */
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(PolyRing r) : ring_(r) {}
    Polynomial(PolyRing r, std::vector<Term> terms) : ring_(r), terms_(std::move(terms)) {
        normalize();
    }

    static Polynomial zero(PolyRing r) { return Polynomial(r); }
    static Polynomial constant(PolyRing r, uint32_t c) {
        Polynomial f(r);
        if (c % r.field.p != 0) f.terms_.push_back({Exponent::one(), c % r.field.p});
        return f;
    }
    static Polynomial monomial(PolyRing r, Exponent m, uint32_t c = 1) {
        Polynomial f(r);
        c %= r.field.p;
        if (c) f.terms_.push_back({m, c});
        return f;
    }
    static Polynomial variable(PolyRing r, int i) { return monomial(r, Exponent::var(i)); }

    const PolyRing& ring() const { return ring_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }

    const Term& lead() const {
        if (terms_.empty()) throw AlgebraError("lead term of zero polynomial");
        return terms_.front();
    }

    int degree() const { return terms_.empty() ? -1 : int(terms_.front().mono.deg); }

    bool is_homogeneous(int* deg_out = nullptr) const {
        if (terms_.empty()) {
            if (deg_out) *deg_out = -1;
            return true;
        }
        uint16_t d = terms_.front().mono.deg;
        for (const Term& t : terms_)
            if (t.mono.deg != d) return false;
        if (deg_out) *deg_out = d;
        return true;
    }

    Polynomial operator+(const Polynomial& o) const { return combined(o, false); }
    Polynomial operator-(const Polynomial& o) const { return combined(o, true); }

    Polynomial operator*(const Polynomial& o) const {
        Polynomial r(ring_);
        if (is_zero() || o.is_zero()) return r;
        std::vector<Term> acc;
        acc.reserve(terms_.size() * o.terms_.size());
        for (const Term& a : terms_)
            for (const Term& b : o.terms_)
                acc.push_back({a.mono * b.mono, ring_.field.mul(a.coeff, b.coeff)});
        r.terms_ = std::move(acc);
        r.normalize();
        return r;
    }

    Polynomial scaled(uint32_t c) const {
        Polynomial r(ring_);
        c %= ring_.field.p;
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.mono, ring_.field.mul(t.coeff, c)});
        return r;
    }

    Polynomial term_multiple(const Exponent& m, uint32_t c) const {
        Polynomial r(ring_);
        c %= ring_.field.p;
        if (c == 0) return r;
        r.terms_.reserve(terms_.size());
        for (const Term& t : terms_) r.terms_.push_back({t.mono * m, ring_.field.mul(t.coeff, c)});
        return r;
    }

    Polynomial negated() const { return scaled(ring_.field.p - 1); }

    /* coefficient of a monomial (0 if absent) */
    uint32_t coeff_of(const Exponent& m) const {
        for (const Term& t : terms_) {
            int c = grevlex_cmp(m, t.mono);
            if (c == 0) return t.coeff;
            if (c > 0) return 0;  // terms descend; m larger than remaining
        }
        return 0;
    }

    /* Substitute polynomial g for variable i. */
    Polynomial substitute(int var, const Polynomial& g) const {
        Polynomial out(ring_);
        for (const Term& t : terms_) {
            Exponent rest = t.mono;
            int e = rest.e[var];
            rest.deg = static_cast<uint16_t>(rest.deg - e);
            rest.e[var] = 0;
            Polynomial piece = Polynomial::monomial(ring_, rest, t.coeff);
            for (int k = 0; k < e; ++k) piece = piece * g;
            out = out + piece;
        }
        return out;
    }

    /* Reinterpret over another ring with the same characteristic; exponents
       must already avoid the dropped variables. */
    Polynomial into_ring(PolyRing r, const std::vector<int>& var_map) const {
        Polynomial out(r);
        std::vector<Term> acc;
        acc.reserve(terms_.size());
        for (const Term& t : terms_) {
            Exponent m;
            unsigned d = 0;
            for (int i = 0; i < kMaxVars; ++i) {
                if (t.mono.e[i] == 0) continue;
                if (i >= int(var_map.size()) || var_map[i] < 0)
                    throw AlgebraError("into_ring: variable not in target ring");
                m.e[var_map[i]] = t.mono.e[i];
                d += t.mono.e[i];
            }
            m.deg = static_cast<uint16_t>(d);
            acc.push_back({m, t.coeff});
        }
        out.terms_ = std::move(acc);
        out.normalize();
        return out;
    }

    bool operator==(const Polynomial& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].coeff != o.terms_[i].coeff || terms_[i].mono != o.terms_[i].mono)
                return false;
        return true;
    }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const Term& t : terms_) {
            if (!first) os << " + ";
            first = false;
            bool printed = false;
            if (t.coeff != 1 || t.mono.is_one()) {
                os << t.coeff;
                printed = true;
            }
            for (int i = 0; i < kMaxVars; ++i) {
                if (!t.mono.e[i]) continue;
                if (printed) os << "*";
                os << "x" << i;
                if (t.mono.e[i] > 1) os << "^" << int(t.mono.e[i]);
                printed = true;
            }
        }
        return os.str();
    }

  private:
    PolyRing ring_;
    std::vector<Term> terms_;

    Polynomial combined(const Polynomial& o, bool subtract) const {
        Polynomial r(ring_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        const PrimeField& F = ring_.field;
        while (i < terms_.size() || j < o.terms_.size()) {
            int cmp;
            if (i == terms_.size()) cmp = -1;
            else if (j == o.terms_.size()) cmp = 1;
            else cmp = grevlex_cmp(terms_[i].mono, o.terms_[j].mono);
            if (cmp > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (cmp < 0) {
                Term t = o.terms_[j++];
                if (subtract) t.coeff = F.neg(t.coeff);
                r.terms_.push_back(t);
            } else {
                uint32_t c = subtract ? F.sub(terms_[i].coeff, o.terms_[j].coeff)
                                      : F.add(terms_[i].coeff, o.terms_[j].coeff);
                if (c) r.terms_.push_back({terms_[i].mono, c});
                ++i;
                ++j;
            }
        }
        return r;
    }

    void normalize() {
        std::sort(terms_.begin(), terms_.end(),
                  [](const Term& a, const Term& b) { return grevlex_cmp(a.mono, b.mono) > 0; });
        std::vector<Term> out;
        out.reserve(terms_.size());
        const PrimeField& F = ring_.field;
        for (const Term& t : terms_) {
            uint32_t c = t.coeff % F.p;
            if (!out.empty() && out.back().mono == t.mono) {
                out.back().coeff = F.add(out.back().coeff, c);
                if (out.back().coeff == 0) out.pop_back();
            } else if (c) {
                out.push_back({t.mono, c});
            }
        }
        terms_ = std::move(out);
    }
};

}  // namespace buchsbaum
