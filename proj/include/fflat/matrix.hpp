// Rectangular matrices over F_q((pi)) with per-entry precision tracking.
#pragma once

#include "fflat/laurent.hpp"

namespace fflat {

/// Exact division of Laurent polynomials; throws unless the quotient is again
/// a Laurent polynomial. Used where divisibility is guaranteed (fraction-free
/// elimination, coordinates of lattice vectors).
inline Laurent exact_div(const Laurent& a, const Laurent& b) {
    if (b.is_exact_zero()) throw Error("exact_div: division by zero");
    if (a.is_exact_zero()) return a;
    const TRat r = a.to_trat() / b.to_trat();
    const TPoly& den = r.den();
    const int k = den.deg();
    for (int j = 0; j < k; ++j)
        if (den.coeff(j) != 0) throw Error("exact_div: inexact division");
    return Laurent::from_tpoly(r.num()).shifted(k);  // num / T^k, pi = 1/T
}

class KMatrix {
  public:
    KMatrix(const Gf& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, Laurent::zero(f)) {
        if (rows < 0 || cols < 0) throw Error("KMatrix: negative shape");
    }

    static KMatrix identity(const Gf& f, int n) {
        KMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Laurent::one(f);
        return m;
    }

    static KMatrix diag_pi_powers(const Gf& f, const std::vector<int>& exponents) {
        KMatrix m(f, static_cast<int>(exponents.size()), static_cast<int>(exponents.size()));
        for (std::size_t i = 0; i < exponents.size(); ++i)
            m.at(static_cast<int>(i), static_cast<int>(i)) = Laurent::pi_pow(f, exponents[i]);
        return m;
    }

    const Gf& field() const { return field_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Laurent& at(int r, int c) { return a_[index(r, c)]; }
    const Laurent& at(int r, int c) const { return a_[index(r, c)]; }

    bool is_exact() const {
        for (const auto& x : a_)
            if (!x.is_exact()) return false;
        return true;
    }
    /// Smallest per-entry precision, or nullopt when every entry is exact.
    std::optional<int> precision() const {
        std::optional<int> p;
        for (const auto& x : a_)
            if (auto k = x.precision()) p = p ? std::min(*p, *k) : *k;
        return p;
    }

    friend KMatrix operator+(const KMatrix& a, const KMatrix& b) {
        a.require_shape(b.rows_, b.cols_);
        KMatrix out(a.field_, a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] + b.a_[i];
        return out;
    }
    friend KMatrix operator-(const KMatrix& a, const KMatrix& b) {
        a.require_shape(b.rows_, b.cols_);
        KMatrix out(a.field_, a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.a_.size(); ++i) out.a_[i] = a.a_[i] - b.a_[i];
        return out;
    }
    friend KMatrix operator*(const KMatrix& a, const KMatrix& b) {
        if (a.cols_ != b.rows_) throw Error("KMatrix: shape mismatch in product");
        KMatrix out(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                const Laurent& aik = a.at(i, k);
                if (aik.is_exact_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) out.at(i, j) = out.at(i, j) + aik * b.at(k, j);
            }
        return out;
    }

    KMatrix transpose() const {
        KMatrix out(field_, cols_, rows_);
        for (int r = 0; r < rows_; ++r)
            for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
        return out;
    }

    KMatrix scaled(const Laurent& s) const {
        KMatrix out(field_, rows_, cols_);
        for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
        return out;
    }

    std::vector<Laurent> column(int c) const {
        std::vector<Laurent> v;
        v.reserve(rows_);
        for (int r = 0; r < rows_; ++r) v.push_back(at(r, c));
        return v;
    }

    KMatrix submatrix(const std::vector<int>& row_idx, const std::vector<int>& col_idx) const {
        KMatrix out(field_, static_cast<int>(row_idx.size()), static_cast<int>(col_idx.size()));
        for (std::size_t r = 0; r < row_idx.size(); ++r)
            for (std::size_t c = 0; c < col_idx.size(); ++c) out.at(int(r), int(c)) = at(row_idx[r], col_idx[c]);
        return out;
    }

    void set_block(int r0, int c0, const KMatrix& b) {
        for (int r = 0; r < b.rows_; ++r)
            for (int c = 0; c < b.cols_; ++c) at(r0 + r, c0 + c) = b.at(r, c);
    }

    /// Determinant. Cofactor expansion for small sizes; fraction-free
    /// (Bareiss) elimination for larger exact matrices, which keeps every
    /// intermediate value a minor of the input and so avoids precision loss.
    Laurent det() const {
        if (rows_ != cols_) throw Error("KMatrix: determinant of non-square matrix");
        if (rows_ == 0) return Laurent::one(field_);
        if (rows_ <= 4 || !is_exact()) return det_cofactor(*this);
        return det_bareiss(*this);
    }

    /// Inverse via adjugate / det; requires |det| = 1 up to a unit (any
    /// nonzero determinant with exact monomial-free inverse handled through
    /// series inversion at the entries' working precision).
    KMatrix inverse(int target_prec = kDefaultPrec) const {
        if (rows_ != cols_) throw Error("KMatrix: inverse of non-square matrix");
        const Laurent d = det();
        if (d.is_zero()) throw Error("KMatrix: inverse of (possibly) singular matrix");
        const Laurent dinv = d.inverse(target_prec);
        KMatrix adj = adjugate();
        return adj.scaled(dinv);
    }

    KMatrix adjugate() const {
        if (rows_ != cols_) throw Error("KMatrix: adjugate of non-square matrix");
        const int n = rows_;
        KMatrix out(field_, n, n);
        if (n == 1) {
            out.at(0, 0) = Laurent::one(field_);
            return out;
        }
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) {
                std::vector<int> ri, ci;
                for (int k = 0; k < n; ++k) {
                    if (k != r) ri.push_back(k);
                }
                for (int k = 0; k < n; ++k) {
                    if (k != c) ci.push_back(k);
                }
                Laurent m = submatrix(ri, ci).det();
                out.at(c, r) = m.scaled(field_.sign(r + c));  // transposed cofactor
            }
        return out;
    }

    std::string to_string() const {
        std::ostringstream os;
        for (int r = 0; r < rows_; ++r) {
            for (int c = 0; c < cols_; ++c) {
                if (c) os << ", ";
                os << at(r, c).to_string();
            }
            os << '\n';
        }
        return os.str();
    }

  private:
    Gf field_;
    int rows_, cols_;
    std::vector<Laurent> a_;

    std::size_t index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw Error("KMatrix: index out of range");
        return static_cast<std::size_t>(r) * cols_ + c;
    }
    void require_shape(int r, int c) const {
        if (rows_ != r || cols_ != c) throw Error("KMatrix: shape mismatch");
    }

    static Laurent det_cofactor(const KMatrix& m) {
        const int n = m.rows_;
        if (n == 1) return m.at(0, 0);
        if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
        Laurent acc = Laurent::zero(m.field_);
        std::vector<int> rows_rest;
        for (int r = 1; r < n; ++r) rows_rest.push_back(r);
        for (int c = 0; c < n; ++c) {
            if (m.at(0, c).is_exact_zero()) continue;
            std::vector<int> cols_rest;
            for (int k = 0; k < n; ++k)
                if (k != c) cols_rest.push_back(k);
            Laurent minor = det_cofactor(m.submatrix(rows_rest, cols_rest));
            acc = acc + (m.at(0, c) * minor).scaled(m.field_.sign(c));
        }
        return acc;
    }

    static Laurent det_bareiss(const KMatrix& m) {
        const int n = m.rows_;
        KMatrix w = m;
        Laurent prev = Laurent::one(m.field_);
        std::uint8_t sign = 1;
        for (int k = 0; k < n - 1; ++k) {
            if (w.at(k, k).is_exact_zero()) {
                int p = -1;
                for (int r = k + 1; r < n; ++r)
                    if (!w.at(r, k).is_exact_zero()) {
                        p = r;
                        break;
                    }
                if (p < 0) return Laurent::zero(m.field_);
                for (int c = 0; c < n; ++c) std::swap(w.at(k, c), w.at(p, c));
                sign = m.field_.mul(sign, m.field_.minus_one());
            }
            for (int i = k + 1; i < n; ++i)
                for (int j = k + 1; j < n; ++j) {
                    Laurent num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                    w.at(i, j) = exact_div(num, prev);
                }
            prev = w.at(k, k);
        }
        return w.at(n - 1, n - 1).scaled(sign);
    }
};

}  // namespace fflat
