// Polynomials in T over F_q, rational functions, and the bits of polynomial
// linear algebra (Smith form, kernels) needed for saturation of sublattices.
#pragma once

#include "fflat/gf.hpp"

#include <optional>
#include <sstream>

namespace fflat {

/// Dense polynomial over F_q in the variable T, coefficients ascending.
/// Normalized: no trailing zero coefficients; deg(0) = -1.
class TPoly {
  public:
    TPoly() = default;
    explicit TPoly(Gf f) : field_(std::move(f)) {}
    TPoly(Gf f, std::vector<std::uint8_t> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

    static TPoly zero(const Gf& f) { return TPoly(f); }
    static TPoly one(const Gf& f) { return TPoly(f, {1}); }
    static TPoly constant(const Gf& f, std::uint8_t c) { return TPoly(f, {c}); }
    static TPoly t_pow(const Gf& f, int k, std::uint8_t lead = 1) {
        std::vector<std::uint8_t> c(k + 1, 0);
        c[k] = lead;
        return TPoly(f, std::move(c));
    }

    const Gf& field() const { return require_field(); }
    bool is_zero() const { return c_.empty(); }
    int deg() const { return static_cast<int>(c_.size()) - 1; }
    std::uint8_t coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : std::uint8_t(0);
    }
    std::uint8_t lead() const { return c_.empty() ? std::uint8_t(0) : c_.back(); }
    const std::vector<std::uint8_t>& coeffs() const { return c_; }

    friend TPoly operator+(const TPoly& a, const TPoly& b) {
        const Gf& f = a.match(b);
        std::vector<std::uint8_t> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.add(a.coeff(int(i)), b.coeff(int(i)));
        return TPoly(f, std::move(c));
    }
    friend TPoly operator-(const TPoly& a, const TPoly& b) {
        const Gf& f = a.match(b);
        std::vector<std::uint8_t> c(std::max(a.c_.size(), b.c_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = f.sub(a.coeff(int(i)), b.coeff(int(i)));
        return TPoly(f, std::move(c));
    }
    friend TPoly operator*(const TPoly& a, const TPoly& b) {
        const Gf& f = a.match(b);
        if (a.is_zero() || b.is_zero()) return TPoly(f);
        std::vector<std::uint8_t> c(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                c[i + j] = f.add(c[i + j], f.mul(a.c_[i], b.c_[j]));
        }
        return TPoly(f, std::move(c));
    }
    TPoly operator-() const {
        const Gf& f = require_field();
        std::vector<std::uint8_t> c(c_);
        for (auto& x : c) x = f.neg(x);
        return TPoly(f, std::move(c));
    }
    TPoly scaled(std::uint8_t s) const {
        const Gf& f = require_field();
        std::vector<std::uint8_t> c(c_);
        for (auto& x : c) x = f.mul(x, s);
        return TPoly(f, std::move(c));
    }
    friend bool operator==(const TPoly& a, const TPoly& b) {
        if (a.c_.empty() || b.c_.empty()) return a.c_.empty() && b.c_.empty();
        a.match(b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const TPoly& a, const TPoly& b) { return !(a == b); }

    /// Euclidean division: *this = q*div + r with deg r < deg div.
    std::pair<TPoly, TPoly> divmod(const TPoly& div) const {
        const Gf& f = match(div);
        if (div.is_zero()) throw Error("TPoly: division by zero");
        TPoly q(f), r = *this;
        std::vector<std::uint8_t> qc(std::max(0, deg() - div.deg() + 1), 0);
        const std::uint8_t li = f.inv(div.lead());
        while (!r.is_zero() && r.deg() >= div.deg()) {
            const int shift = r.deg() - div.deg();
            const std::uint8_t c = f.mul(r.lead(), li);
            qc[shift] = c;
            std::vector<std::uint8_t> rc(r.c_);
            for (int j = 0; j <= div.deg(); ++j)
                rc[shift + j] = f.sub(rc[shift + j], f.mul(c, div.c_[j]));
            r = TPoly(f, std::move(rc));
        }
        return {TPoly(f, std::move(qc)), r};
    }

    TPoly monic() const {
        if (is_zero()) return *this;
        return scaled(require_field().inv(lead()));
    }

    static TPoly gcd(TPoly a, TPoly b) {
        while (!b.is_zero()) {
            TPoly r = a.divmod(b).second;
            a = std::move(b);
            b = std::move(r);
        }
        return a.monic();
    }

    /// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
    static std::tuple<TPoly, TPoly, TPoly> xgcd(const TPoly& a, const TPoly& b) {
        const Gf& f = a.match(b);
        TPoly r0 = a, r1 = b;
        TPoly u0 = TPoly::one(f), u1 = TPoly::zero(f);
        TPoly v0 = TPoly::zero(f), v1 = TPoly::one(f);
        while (!r1.is_zero()) {
            auto [q, r2] = r0.divmod(r1);
            TPoly u2 = u0 - q * u1, v2 = v0 - q * v1;
            r0 = std::move(r1); r1 = std::move(r2);
            u0 = std::move(u1); u1 = std::move(u2);
            v0 = std::move(v1); v1 = std::move(v2);
        }
        if (r0.is_zero()) return {r0, u0, v0};
        const std::uint8_t li = f.inv(r0.lead());
        return {r0.scaled(li), u0.scaled(li), v0.scaled(li)};
    }

    std::string to_string() const {
        if (is_zero()) return "0";
        const Gf& f = require_field();
        std::ostringstream os;
        bool first = true;
        for (int k = deg(); k >= 0; --k) {
            if (c_[k] == 0) continue;
            if (!first) os << " + ";
            first = false;
            const bool unit_coeff = (c_[k] == 1);
            if (k == 0 || !unit_coeff) os << f.to_string(c_[k]);
            if (k > 0) {
                if (!unit_coeff) os << '*';
                os << 'T';
                if (k > 1) os << '^' << k;
            }
        }
        return os.str();
    }

  private:
    std::optional<Gf> field_;
    std::vector<std::uint8_t> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    const Gf& require_field() const {
        if (!field_) throw Error("TPoly: uninitialized (no field)");
        return *field_;
    }
    const Gf& match(const TPoly& other) const {
        const Gf& f = require_field();
        f.require_same(other.require_field());
        return f;
    }
};

/// Rational function p/q over F_q(T), kept normalized: q monic, gcd(p, q) = 1.
class TRat {
  public:
    TRat() = default;
    explicit TRat(TPoly num) : num_(std::move(num)), den_(TPoly::one(num_.field())) {}
    TRat(TPoly num, TPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static TRat zero(const Gf& f) { return TRat(TPoly::zero(f)); }
    static TRat one(const Gf& f) { return TRat(TPoly::one(f)); }

    const TPoly& num() const { return num_; }
    const TPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    friend TRat operator+(const TRat& a, const TRat& b) {
        return TRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend TRat operator-(const TRat& a, const TRat& b) {
        return TRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend TRat operator*(const TRat& a, const TRat& b) { return TRat(a.num_ * b.num_, a.den_ * b.den_); }
    friend TRat operator/(const TRat& a, const TRat& b) {
        if (b.is_zero()) throw Error("TRat: division by zero");
        return TRat(a.num_ * b.den_, a.den_ * b.num_);
    }
    TRat operator-() const { return TRat(-num_, den_); }
    friend bool operator==(const TRat& a, const TRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator!=(const TRat& a, const TRat& b) { return !(a == b); }

  private:
    TPoly num_, den_;

    void normalize() {
        if (den_.is_zero()) throw Error("TRat: zero denominator");
        const Gf& f = num_.field();
        if (num_.is_zero()) {
            den_ = TPoly::one(f);
            return;
        }
        TPoly g = TPoly::gcd(num_, den_);
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
        const std::uint8_t li = f.inv(den_.lead());
        num_ = num_.scaled(li);
        den_ = den_.scaled(li);
    }
};

/// Dense matrix over F_q[T]. Only what saturation needs: elementary row/column
/// operations, Smith normal form with the left transform, and rank.
class TPolyMatrix {
  public:
    TPolyMatrix(const Gf& f, int rows, int cols)
        : field_(f), rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, TPoly::zero(f)) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    TPoly& at(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const TPoly& at(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
    const Gf& field() const { return field_; }

    static TPolyMatrix identity(const Gf& f, int n) {
        TPolyMatrix m(f, n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = TPoly::one(f);
        return m;
    }

    friend TPolyMatrix operator*(const TPolyMatrix& a, const TPolyMatrix& b) {
        if (a.cols_ != b.rows_) throw Error("TPolyMatrix: shape mismatch in product");
        TPolyMatrix out(a.field_, a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i)
            for (int k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).is_zero()) continue;
                for (int j = 0; j < b.cols_; ++j) out.at(i, j) = out.at(i, j) + a.at(i, k) * b.at(k, j);
            }
        return out;
    }

    /// Diagonalization over F_q[T]: returns U unimodular with
    /// this = U * D * V for a diagonal D = diag(s_1..s_r, 0..) and some
    /// unimodular V (not returned). The first r columns of U are a basis of
    /// the saturation of the column span of *this inside F_q[T]^rows.
    struct DiagResult {
        TPolyMatrix left;             // U
        std::vector<TPoly> divisors;  // s_1..s_r, nonzero
    };

    DiagResult diagonalize_left() const {
        const Gf& f = field_;
        TPolyMatrix s = *this;
        TPolyMatrix u = identity(f, rows_);  // maintains: original = u * s_current (u unimodular)
        std::vector<TPoly> divisors;
        int pr = 0, pc = 0;
        while (pr < rows_ && pc < cols_) {
            // move a nonzero pivot of minimal degree to (pr, pc)
            int best_r = -1, best_c = -1, best_deg = INT32_MAX;
            for (int r = pr; r < rows_; ++r)
                for (int c = pc; c < cols_; ++c)
                    if (!s.at(r, c).is_zero() && s.at(r, c).deg() < best_deg) {
                        best_deg = s.at(r, c).deg();
                        best_r = r;
                        best_c = c;
                    }
            if (best_r < 0) break;
            s.swap_rows(pr, best_r, &u);
            s.swap_cols(pc, best_c);
            // Clear the whole pivot row and column. A nonzero remainder
            // becomes the new (smaller-degree) pivot, so this terminates.
            bool clean = false;
            while (!clean) {
                clean = true;
                for (int r = 0; r < rows_; ++r) {
                    if (r == pr || s.at(r, pc).is_zero()) continue;
                    auto [q, rem] = s.at(r, pc).divmod(s.at(pr, pc));
                    s.row_axpy(r, pr, -q, &u);
                    if (!rem.is_zero()) {
                        s.swap_rows(pr, r, &u);
                        clean = false;
                    }
                }
                for (int c = 0; c < cols_; ++c) {
                    if (c == pc || s.at(pr, c).is_zero()) continue;
                    auto [q, rem] = s.at(pr, c).divmod(s.at(pr, pc));
                    s.col_axpy(c, pc, -q);
                    if (!rem.is_zero()) {
                        s.swap_cols(pc, c);
                        clean = false;
                    }
                }
            }
            divisors.push_back(s.at(pr, pc).monic());
            ++pr;
            ++pc;
        }
        return {std::move(u), std::move(divisors)};
    }

    int rank() const { return static_cast<int>(diagonalize_left().divisors.size()); }

  private:
    Gf field_;
    int rows_, cols_;
    std::vector<TPoly> a_;

    // row ops keep the factorization original = u * s: an operation s <- E s
    // is compensated by u <- u * E^{-1}.
    void swap_rows(int i, int j, TPolyMatrix* u) {
        if (i == j) return;
        for (int c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
        if (u)
            for (int r = 0; r < u->rows_; ++r) std::swap(u->at(r, i), u->at(r, j));
    }
    /// row_i += coeff * row_j on s; u <- u * E^{-1} means col_j -= coeff * col_i on u.
    void row_axpy(int i, int j, const TPoly& coeff, TPolyMatrix* u) {
        for (int c = 0; c < cols_; ++c) at(i, c) = at(i, c) + coeff * at(j, c);
        if (u)
            for (int r = 0; r < u->rows_; ++r) u->at(r, j) = u->at(r, j) - coeff * u->at(r, i);
    }
    void swap_cols(int i, int j) {
        if (i == j) return;
        for (int r = 0; r < rows_; ++r) std::swap(at(r, i), at(r, j));
    }
    void col_axpy(int i, int j, const TPoly& coeff) {
        for (int r = 0; r < rows_; ++r) at(r, i) = at(r, i) + coeff * at(r, j);
    }
};

/// Basis of the right kernel of a matrix over F_q(T), by Gaussian elimination.
/// Each basis vector is returned with polynomial entries (denominators cleared).
inline std::vector<std::vector<TPoly>> trat_kernel(const std::vector<std::vector<TRat>>& m, const Gf& f) {
    if (m.empty()) return {};
    const int rows = static_cast<int>(m.size());
    const int cols = static_cast<int>(m[0].size());
    std::vector<std::vector<TRat>> a = m;
    std::vector<int> pivot_col_of_row(rows, -1);
    std::vector<bool> col_is_pivot(cols, false);
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int pr = -1;
        for (int i = r; i < rows; ++i)
            if (!a[i][c].is_zero()) {
                pr = i;
                break;
            }
        if (pr < 0) continue;
        std::swap(a[r], a[pr]);
        const TRat inv_pivot = TRat::one(f) / a[r][c];
        for (int j = c; j < cols; ++j) a[r][j] = a[r][j] * inv_pivot;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c].is_zero()) continue;
            const TRat factor = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] = a[i][j] - factor * a[r][j];
        }
        pivot_col_of_row[r] = c;
        col_is_pivot[c] = true;
        ++r;
    }
    std::vector<std::vector<TPoly>> basis;
    for (int c = 0; c < cols; ++c) {
        if (col_is_pivot[c]) continue;
        std::vector<TRat> v(cols, TRat::zero(f));
        v[c] = TRat::one(f);
        for (int i = 0; i < r; ++i) {
            const int pc = pivot_col_of_row[i];
            v[pc] = -a[i][c];
        }
        // clear denominators
        TPoly lcm = TPoly::one(f);
        for (const auto& x : v)
            if (!x.is_zero()) lcm = lcm.divmod(TPoly::gcd(lcm, x.den())).first * x.den();
        std::vector<TPoly> pv(cols, TPoly::zero(f));
        for (int j = 0; j < cols; ++j)
            if (!v[j].is_zero()) pv[j] = v[j].num() * lcm.divmod(v[j].den()).first;
        basis.push_back(std::move(pv));
    }
    return basis;
}

}  // namespace fflat
