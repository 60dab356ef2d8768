#pragma once

#include <vector>

#include "field.hpp"

namespace buchsbaum {

/*
 * Dense matrices over F_p.  Row-major.  Used for degree-piece linear algebra:
 * Hom spaces, nullspaces of constraint systems, rank counts.
 */
class DenseMatrix {
  public:
    DenseMatrix() = default;
    DenseMatrix(PrimeField f, size_t rows, size_t cols)
        : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const PrimeField& field() const { return field_; }

    uint32_t& at(size_t r, size_t c) { return a_[r * cols_ + c]; }
    uint32_t at(size_t r, size_t c) const { return a_[r * cols_ + c]; }

    void append_row(const std::vector<uint32_t>& row) {
        if (row.size() != cols_) throw AlgebraError("append_row: width mismatch");
        a_.insert(a_.end(), row.begin(), row.end());
        ++rows_;
    }

    /* In-place row echelon; returns pivot column per reduced row. */
    std::vector<size_t> rref() {
        std::vector<size_t> pivots;
        size_t r = 0;
        for (size_t c = 0; c < cols_ && r < rows_; ++c) {
            size_t sel = r;
            while (sel < rows_ && at(sel, c) == 0) ++sel;
            if (sel == rows_) continue;
            if (sel != r)
                for (size_t k = c; k < cols_; ++k) std::swap(at(sel, k), at(r, k));
            uint32_t iv = field_.inv(at(r, c));
            for (size_t k = c; k < cols_; ++k) at(r, k) = field_.mul(at(r, k), iv);
            for (size_t i = 0; i < rows_; ++i) {
                if (i == r || at(i, c) == 0) continue;
                uint32_t f = at(i, c);
                for (size_t k = c; k < cols_; ++k)
                    at(i, k) = field_.sub(at(i, k), field_.mul(f, at(r, k)));
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    size_t rank() const {
        DenseMatrix m = *this;
        return m.rref().size();
    }

    /* Basis of the right nullspace, one vector per non-pivot column. */
    std::vector<std::vector<uint32_t>> nullspace() const {
        DenseMatrix m = *this;
        std::vector<size_t> piv = m.rref();
        std::vector<bool> is_piv(cols_, false);
        for (size_t c : piv) is_piv[c] = true;
        std::vector<std::vector<uint32_t>> basis;
        for (size_t c = 0; c < cols_; ++c) {
            if (is_piv[c]) continue;
            std::vector<uint32_t> v(cols_, 0);
            v[c] = 1;
            for (size_t r = 0; r < piv.size(); ++r)
                v[piv[r]] = field_.neg(m.at(r, c));
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /* One solution of A x = b, if consistent. */
    bool solve(const std::vector<uint32_t>& b, std::vector<uint32_t>& x) const {
        DenseMatrix aug(field_, rows_, cols_ + 1);
        for (size_t r = 0; r < rows_; ++r) {
            for (size_t c = 0; c < cols_; ++c) aug.at(r, c) = at(r, c);
            aug.at(r, cols_) = b[r];
        }
        std::vector<size_t> piv = aug.rref();
        for (size_t r = 0; r < piv.size(); ++r)
            if (piv[r] == cols_) return false;
        x.assign(cols_, 0);
        for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug.at(r, cols_);
        return true;
    }

    bool is_invertible() const { return rows_ == cols_ && rank() == rows_; }

  private:
    PrimeField field_;
    size_t rows_ = 0, cols_ = 0;
    std::vector<uint32_t> a_;
};

}  // namespace buchsbaum
