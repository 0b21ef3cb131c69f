// Exterior powers of K^d with the sup norm, the Hodge dual, minors, and the
// block factorization of near-identity elements of SL_d(O).
#pragma once

#include "fflat/matrix.hpp"

#include <map>

namespace fflat {

/// Strictly increasing index set I in {1..d}.
struct SubsetIndex {
    std::vector<int> idx;  // 1-based, strictly increasing

    SubsetIndex() = default;
    SubsetIndex(std::initializer_list<int> v) : idx(v) { validate(); }
    explicit SubsetIndex(std::vector<int> v) : idx(std::move(v)) { validate(); }

    int size() const { return static_cast<int>(idx.size()); }

    void validate() const {
        for (std::size_t k = 0; k + 1 < idx.size(); ++k)
            if (idx[k] >= idx[k + 1]) throw Error("SubsetIndex: indices must be strictly increasing");
        if (!idx.empty() && idx.front() < 1) throw Error("SubsetIndex: indices are 1-based");
    }

    SubsetIndex complement(int d) const {
        std::vector<int> out;
        std::size_t k = 0;
        for (int j = 1; j <= d; ++j) {
            if (k < idx.size() && idx[k] == j) {
                ++k;
            } else {
                out.push_back(j);
            }
        }
        return SubsetIndex(std::move(out));
    }

    long long index_sum() const {
        long long s = 0;
        for (int j : idx) s += j;
        return s;
    }

    friend bool operator==(const SubsetIndex& a, const SubsetIndex& b) { return a.idx == b.idx; }
    friend bool operator<(const SubsetIndex& a, const SubsetIndex& b) { return a.idx < b.idx; }

    std::string to_string() const {
        std::string s = "{";
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (k) s += ',';
            s += std::to_string(idx[k]);
        }
        return s + "}";
    }
};

/// All i-element subsets of {1..d} in lexicographic order. This order is the
/// canonical coordinate order of wedge vectors throughout.
inline std::vector<SubsetIndex> subsets(int d, int i) {
    if (i < 0 || i > d) throw Error("subsets: need 0 <= i <= d");
    std::vector<SubsetIndex> out;
    std::vector<int> cur(i);
    for (int k = 0; k < i; ++k) cur[k] = k + 1;
    while (true) {
        out.push_back(SubsetIndex(std::vector<int>(cur)));
        int pos = i - 1;
        while (pos >= 0 && cur[pos] == d - (i - 1 - pos)) --pos;
        if (pos < 0) break;
        ++cur[pos];
        for (int k = pos + 1; k < i; ++k) cur[k] = cur[k - 1] + 1;
    }
    return out;
}

/// Minor det(g_{J,I}) on the selected rows J and columns I.
inline Laurent minor(const KMatrix& g, const SubsetIndex& rows_j, const SubsetIndex& cols_i) {
    if (rows_j.size() != cols_i.size()) throw Error("minor: row and column sets differ in size");
    std::vector<int> r, c;
    for (int j : rows_j.idx) r.push_back(j - 1);
    for (int j : cols_i.idx) c.push_back(j - 1);
    return g.submatrix(r, c).det();
}

/// Element of the i-th exterior power of K^d, as coordinates over the
/// standard basis e_I indexed by the lexicographic subsets(d, i).
class WedgeVector {
  public:
    WedgeVector(const Gf& f, int d, int i)
        : field_(f), d_(d), i_(i), basis_(subsets(d, i)), coords_(basis_.size(), Laurent::zero(f)) {
        if (i < 0 || i > d) throw Error("WedgeVector: degree out of range");
    }

    static WedgeVector basis_vector(const Gf& f, int d, const SubsetIndex& I) {
        WedgeVector v(f, d, I.size());
        v.coord(I) = Laurent::one(f);
        return v;
    }

    const Gf& field() const { return field_; }
    int dim() const { return d_; }
    int degree() const { return i_; }
    const std::vector<SubsetIndex>& basis() const { return basis_; }
    std::size_t coord_count() const { return coords_.size(); }

    Laurent& coord_at(std::size_t k) { return coords_[k]; }
    const Laurent& coord_at(std::size_t k) const { return coords_[k]; }

    Laurent& coord(const SubsetIndex& I) { return coords_[rank_of(I)]; }
    const Laurent& coord(const SubsetIndex& I) const { return coords_[rank_of(I)]; }

    friend WedgeVector operator+(const WedgeVector& a, const WedgeVector& b) {
        a.require_like(b);
        WedgeVector out(a.field_, a.d_, a.i_);
        for (std::size_t k = 0; k < a.coords_.size(); ++k) out.coords_[k] = a.coords_[k] + b.coords_[k];
        return out;
    }
    friend WedgeVector operator-(const WedgeVector& a, const WedgeVector& b) {
        a.require_like(b);
        WedgeVector out(a.field_, a.d_, a.i_);
        for (std::size_t k = 0; k < a.coords_.size(); ++k) out.coords_[k] = a.coords_[k] - b.coords_[k];
        return out;
    }
    WedgeVector scaled(const Laurent& c) const {
        WedgeVector out(field_, d_, i_);
        for (std::size_t k = 0; k < coords_.size(); ++k) out.coords_[k] = coords_[k] * c;
        return out;
    }
    friend bool operator==(const WedgeVector& a, const WedgeVector& b) {
        return a.d_ == b.d_ && a.i_ == b.i_ && a.coords_ == b.coords_;
    }

    /// Sup norm over coordinates. Strict mode refuses indeterminate
    /// coordinates; otherwise the result is an upper bound.
    Mag sup_norm(bool strict = true) const {
        Mag m = Mag::of_zero();
        for (const auto& c : coords_) m = max(m, c.abs(strict));
        return m;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t k = 0; k < coords_.size(); ++k) {
            if (coords_[k].is_exact_zero()) continue;
            if (!first) os << " + ";
            first = false;
            os << '(' << coords_[k].to_string() << ")*e" << basis_[k].to_string();
        }
        if (first) os << '0';
        return os.str();
    }

  private:
    Gf field_;
    int d_, i_;
    std::vector<SubsetIndex> basis_;
    std::vector<Laurent> coords_;

    std::size_t rank_of(const SubsetIndex& I) const {
        auto it = std::lower_bound(basis_.begin(), basis_.end(), I);
        if (it == basis_.end() || !(*it == I)) throw Error("WedgeVector: bad index set " + I.to_string());
        return static_cast<std::size_t>(it - basis_.begin());
    }
    void require_like(const WedgeVector& o) const {
        if (d_ != o.d_ || i_ != o.i_) throw Error("WedgeVector: mixing different exterior powers");
        field_.require_same(o.field_);
    }
};

/// Wedge of the columns of a d x i matrix: coordinate at I is the i x i minor
/// on rows I.
inline WedgeVector wedge_columns(const KMatrix& cols) {
    const int d = cols.rows(), i = cols.cols();
    if (i > d) throw Error("wedge_columns: more vectors than the ambient dimension");
    WedgeVector v(cols.field(), d, i);
    SubsetIndex all_cols;
    for (int c = 1; c <= i; ++c) all_cols.idx.push_back(c);
    for (const auto& I : v.basis()) v.coord(I) = minor(cols, I, all_cols);
    return v;
}

inline WedgeVector wedge(const std::vector<std::vector<Laurent>>& vectors, const Gf& f) {
    if (vectors.empty()) throw Error("wedge: no vectors");
    const int d = static_cast<int>(vectors[0].size());
    KMatrix m(f, d, static_cast<int>(vectors.size()));
    for (std::size_t c = 0; c < vectors.size(); ++c) {
        if (static_cast<int>(vectors[c].size()) != d) throw Error("wedge: vectors of mixed dimension");
        for (int r = 0; r < d; ++r) m.at(r, static_cast<int>(c)) = vectors[c][r];
    }
    return wedge_columns(m);
}

/// Action of g on the i-th exterior power: (g.v)_J = sum_I det(g_{J,I}) v_I.
inline WedgeVector exterior_action(const KMatrix& g, const WedgeVector& v) {
    if (g.rows() != g.cols() || g.rows() != v.dim()) throw Error("exterior_action: size mismatch");
    WedgeVector out(v.field(), v.dim(), v.degree());
    const auto& basis = v.basis();
    for (const auto& J : basis) {
        Laurent acc = Laurent::zero(v.field());
        for (const auto& I : basis) {
            const Laurent& vi = v.coord(I);
            if (vi.is_exact_zero()) continue;
            acc = acc + minor(g, J, I) * vi;
        }
        out.coord(J) = acc;
    }
    return out;
}

/// Sign sigma_I = (-1)^{i(i+1)/2 + sum(I)}, reduced into the prime field;
/// in characteristic 2 every sigma_I is 1.
inline std::uint8_t hodge_sign(const Gf& f, const SubsetIndex& I) {
    const long long i = I.size();
    return f.sign(i * (i + 1) / 2 + I.index_sum());
}

/// Hodge dual *: degree i -> degree d-i, e_I -> sigma_I e_{I^c}.
inline WedgeVector hodge_dual(const WedgeVector& v) {
    const int d = v.dim();
    WedgeVector out(v.field(), d, d - v.degree());
    for (const auto& I : v.basis()) {
        const Laurent& c = v.coord(I);
        if (c.is_exact_zero()) continue;
        out.coord(I.complement(d)) = c.scaled(hodge_sign(v.field(), I));
    }
    return out;
}

/// Factor x in V = (I_d + pi M_{d,d}(O)) cap SL_d(O) as x = p u with p lower
/// block triangular and u unipotent upper block triangular:
///   p = [[A, 0], [C, D - C A^{-1} B]],  u = [[I_m, A^{-1} B], [0, I_n]]
/// where x = [[A, B], [C, D]] in (m, n) blocks. The top-left block A is a
/// unit perturbation of I_m, so A^{-1} has entries in O.
inline std::pair<KMatrix, KMatrix> pu_factor(const KMatrix& x, int m, int n) {
    const Gf& f = x.field();
    const int d = m + n;
    if (x.rows() != d || x.cols() != d) throw Error("pu_factor: shape mismatch");
    // membership in V: x - I has positive valuation entrywise
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            Laurent e = x.at(r, c) - (r == c ? Laurent::one(f) : Laurent::zero(f));
            Valuation val = e.valuation();
            if (val.is_finite() && val.v < 1)
                throw Error("pu_factor: input is not in I + pi M(O)");
        }
    const Laurent dx = x.det();
    if (!(dx - Laurent::one(f)).is_zero()) throw Error("pu_factor: determinant is not 1");

    std::vector<int> ri, ci, rj, cj;
    for (int k = 0; k < m; ++k) ri.push_back(k), ci.push_back(k);
    for (int k = m; k < d; ++k) rj.push_back(k), cj.push_back(k);
    KMatrix a = x.submatrix(ri, ci), b = x.submatrix(ri, cj);
    KMatrix c = x.submatrix(rj, ci), dd = x.submatrix(rj, cj);

    const Laurent det_a = a.det();
    Valuation va = det_a.valuation();
    if (!va.is_finite() || va.v != 0) throw Error("pu_factor: top-left block is not invertible over O");
    const int prec_budget = x.precision().value_or(kDefaultPrec + 1);
    KMatrix a_inv = a.adjugate().scaled(det_a.inverse(prec_budget));
    KMatrix ab = a_inv * b;

    KMatrix u = KMatrix::identity(f, d);
    u.set_block(0, m, ab);
    KMatrix p(f, d, d);
    p.set_block(0, 0, a);
    p.set_block(m, 0, c);
    p.set_block(m, m, dd - c * ab);
    return {p, u};
}

}  // namespace fflat
