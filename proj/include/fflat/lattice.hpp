// F_q[T]-lattices in K^d: exact reduction, successive minima, covolume,
// rational subspaces with saturation, and the height functions alpha_i.
#pragma once

#include "fflat/exterior.hpp"

#include <numeric>

namespace fflat {

namespace detail {

/// One nonzero kernel vector of the d x d matrix over F_q whose columns are
/// the leading-coefficient vectors, or nullopt if the columns are independent.
inline std::optional<std::vector<std::uint8_t>> gf_kernel_vector(const Gf& f, std::vector<std::uint8_t> m, int d) {
    // m is row-major d x d; eliminate columns, tracking pivot rows.
    std::vector<int> pivot_row_of_col(d, -1);
    int rank = 0;
    std::vector<bool> row_used(d, false);
    for (int c = 0; c < d; ++c) {
        int pr = -1;
        for (int r = 0; r < d; ++r)
            if (!row_used[r] && m[r * d + c] != 0) {
                pr = r;
                break;
            }
        if (pr < 0) {
            // free column: back-substitute a kernel vector with v[c] = 1
            std::vector<std::uint8_t> v(d, 0);
            v[c] = 1;
            for (int c2 = c - 1; c2 >= 0; --c2) {
                const int r2 = pivot_row_of_col[c2];
                if (r2 < 0) continue;
                // accumulated value at pivot row r2 must vanish
                std::uint8_t acc = 0;
                for (int j = c2 + 1; j <= c; ++j) acc = f.add(acc, f.mul(m[r2 * d + j], v[j]));
                v[c2] = f.neg(f.mul(acc, f.inv(m[r2 * d + c2])));
            }
            return v;
        }
        row_used[pr] = true;
        pivot_row_of_col[c] = pr;
        const std::uint8_t inv_p = f.inv(m[pr * d + c]);
        for (int r = 0; r < d; ++r) {
            if (r == pr || m[r * d + c] == 0) continue;
            const std::uint8_t factor = f.mul(m[r * d + c], inv_p);
            for (int j = c; j < d; ++j) m[r * d + j] = f.sub(m[r * d + j], f.mul(factor, m[pr * d + j]));
        }
        ++rank;
    }
    return std::nullopt;
}

}  // namespace detail

/// Saturated rational subspace of a lattice, stored by an exact d x i basis
/// of L cap x (columns). dim() == 0 encodes the zero subspace.
struct RationalSubspace {
    KMatrix gens;

    explicit RationalSubspace(KMatrix g) : gens(std::move(g)) {}
    int dim() const { return gens.cols(); }
    int ambient() const { return gens.rows(); }
};

/// Lattice given by an exact basis matrix (columns). Reduction runs at
/// construction; the reduced basis and sorted norms are immutable afterwards.
class PolyLattice {
  public:
    explicit PolyLattice(KMatrix basis)
        : basis_(std::move(basis)), reduced_(basis_) {
        const int d = basis_.rows();
        if (basis_.cols() != d) throw Error("PolyLattice: basis must be square");
        if (!basis_.is_exact()) throw Error("PolyLattice: basis entries must be exact");
        const Laurent det = basis_.det();
        if (det.is_exact_zero()) throw Error("PolyLattice: singular basis");
        det_exp_ = -det.valuation().v;  // |det| = q^{det_exp_}
        reduce();
    }

    static PolyLattice standard(const Gf& f, int d) { return PolyLattice(KMatrix::identity(f, d)); }

    int dim() const { return basis_.rows(); }
    const Gf& field() const { return basis_.field(); }
    const KMatrix& basis() const { return basis_; }
    const KMatrix& reduced_basis() const { return reduced_; }

    Mag det_abs() const { return Mag::q_pow(det_exp_); }
    bool unimodular() const { return det_exp_ == 0; }

    /// cov(lattice) = |det| * cov(R^d) = |det| * q^{-d} (genus zero).
    Mag covolume() const { return Mag::q_pow(det_exp_ - dim()); }

    /// lambda_1 <= ... <= lambda_d, with prod lambda_j = |det|.
    std::vector<Mag> successive_minima() const {
        std::vector<Mag> out;
        out.reserve(norm_exps_.size());
        for (long long e : norm_exps_) out.push_back(Mag::q_pow(e));
        return out;
    }

    /// alpha_i = 1 / (lambda_1 ... lambda_i); alpha_0 = 1.
    Mag alpha(int i) const {
        if (i < 0 || i > dim()) throw Error("PolyLattice: alpha index out of range");
        long long s = 0;
        for (int j = 0; j < i; ++j) s += norm_exps_[j];
        return Mag::q_pow(-s);
    }

    /// Lattice g * x (g must have exact entries; truncate first otherwise).
    PolyLattice transformed(const KMatrix& g) const { return PolyLattice(g * basis_); }

  private:
    KMatrix basis_;
    KMatrix reduced_;
    std::vector<long long> norm_exps_;  // sorted ascending, lambda_j = q^{e_j}
    long long det_exp_ = 0;

    static long long column_norm_exp(const KMatrix& m, int c) {
        long long e = INT64_MIN;
        for (int r = 0; r < m.rows(); ++r) {
            const Laurent& x = m.at(r, c);
            if (!x.is_exact_zero()) e = std::max<long long>(e, -x.valuation().v);
        }
        if (e == INT64_MIN) throw Error("PolyLattice: zero basis column");
        return e;
    }

    /// Mahler reduction: make the leading-coefficient vectors of the columns
    /// linearly independent over F_q. While a dependency sum c_j l_j = 0
    /// exists, the participating column of largest norm absorbs
    /// sum c_j T^{e_j0 - e_j} b_j, which strictly lowers its norm. The
    /// product of column norms is bounded below by |det|, so this stops.
    void reduce() {
        const Gf& f = basis_.field();
        const int d = basis_.rows();
        std::vector<long long> e(d);
        for (int c = 0; c < d; ++c) e[c] = column_norm_exp(reduced_, c);
        while (true) {
            std::vector<std::uint8_t> lead(static_cast<std::size_t>(d) * d, 0);
            for (int c = 0; c < d; ++c)
                for (int r = 0; r < d; ++r)
                    lead[static_cast<std::size_t>(r) * d + c] = reduced_.at(r, c).coeff(static_cast<int>(-e[c]));
            auto ker = detail::gf_kernel_vector(f, lead, d);
            if (!ker) break;
            const auto& c_vec = *ker;
            int j0 = -1;
            for (int j = 0; j < d; ++j)
                if (c_vec[j] != 0 && (j0 < 0 || e[j] >= e[j0])) j0 = j;
            const std::uint8_t scale = f.inv(c_vec[j0]);
            for (int j = 0; j < d; ++j) {
                if (j == j0 || c_vec[j] == 0) continue;
                const std::uint8_t coeff = f.mul(c_vec[j], scale);
                const Laurent mult = Laurent::pi_pow(f, static_cast<int>(-(e[j0] - e[j])), coeff);
                for (int r = 0; r < d; ++r)
                    reduced_.at(r, j0) = reduced_.at(r, j0) + mult * reduced_.at(r, j);
            }
            const long long new_e = column_norm_exp(reduced_, j0);
            if (new_e >= e[j0]) throw Error("PolyLattice: reduction failed to decrease a norm");
            e[j0] = new_e;
        }
        norm_exps_ = e;
        std::sort(norm_exps_.begin(), norm_exps_.end());
        const long long sum = std::accumulate(norm_exps_.begin(), norm_exps_.end(), 0LL);
        if (sum != det_exp_) throw Error("PolyLattice: reduced norms violate prod lambda_j = |det|");
    }
};

inline PolyLattice reduce_basis(const PolyLattice& x) { return PolyLattice(x.reduced_basis()); }

inline std::vector<Mag> successive_minima(const PolyLattice& x) { return x.successive_minima(); }

inline Mag covolume(const PolyLattice& x) { return x.covolume(); }

inline Mag alpha(const PolyLattice& x, int i) { return x.alpha(i); }

/// Exhaustive minimum of || sum p_j b_j || over nonzero polynomial coefficient
/// vectors with deg p_j <= degree_bound. Independent of the reduction path.
struct ShortestVector {
    std::vector<Laurent> vec;
    Mag norm;
};

inline ShortestVector shortest_vector_oracle(const PolyLattice& x, int degree_bound,
                                             long long cap = (1LL << 24)) {
    const Gf& f = x.field();
    const int d = x.dim();
    const int digits_per_poly = degree_bound + 1;
    const int digits = d * digits_per_poly;
    double states = std::pow(double(f.q()), double(digits));
    if (states > double(cap))
        throw Infeasible("shortest_vector_oracle: q^(d*(degree_bound+1)) exceeds cap");
    std::vector<std::uint8_t> digit(digits, 0);
    ShortestVector best{{}, Mag::of_zero()};
    bool have = false;
    while (true) {
        // advance odometer
        int pos = 0;
        while (pos < digits) {
            if (++digit[pos] < f.q()) break;
            digit[pos] = 0;
            ++pos;
        }
        if (pos == digits) break;
        // v = sum_j p_j(T) b_j
        std::vector<Laurent> v(d, Laurent::zero(f));
        for (int j = 0; j < d; ++j) {
            for (int k = 0; k < digits_per_poly; ++k) {
                const std::uint8_t c = digit[j * digits_per_poly + k];
                if (c == 0) continue;
                const Laurent t_k = Laurent::pi_pow(f, -k, c);
                for (int r = 0; r < d; ++r) v[r] = v[r] + t_k * x.basis().at(r, j);
            }
        }
        Mag norm = Mag::of_zero();
        for (const auto& c : v) norm = max(norm, c.abs());
        if (!have || norm < best.norm) {
            best = {v, norm};
            have = true;
        }
    }
    if (!have) throw Error("shortest_vector_oracle: empty search space");
    return best;
}

// ---------------------------------------------------------------------------
// Rational subspaces.

namespace detail {

/// Coordinates of ambient vectors (columns of g) in the lattice basis; the
/// result has entries in F_q[T] exactly when the vectors lie in the lattice.
inline TPolyMatrix lattice_coords(const PolyLattice& x, const KMatrix& g) {
    const Gf& f = x.field();
    const KMatrix num = x.basis().adjugate() * g;
    const Laurent det = x.basis().det();
    TPolyMatrix out(f, g.rows(), g.cols());
    for (int r = 0; r < g.rows(); ++r)
        for (int c = 0; c < g.cols(); ++c) {
            Laurent q = exact_div(num.at(r, c), det);
            out.at(r, c) = q.to_tpoly();  // throws if not a vector of the lattice
        }
    return out;
}

inline KMatrix coords_to_ambient(const PolyLattice& x, const TPolyMatrix& coords, int take_cols) {
    const Gf& f = x.field();
    KMatrix cm(f, coords.rows(), take_cols);
    for (int r = 0; r < coords.rows(); ++r)
        for (int c = 0; c < take_cols; ++c) cm.at(r, c) = Laurent::from_tpoly(coords.at(r, c));
    return x.basis() * cm;
}

}  // namespace detail

/// Saturation of the span of the given ambient vectors inside the lattice:
/// basis of { v in x : v in span_K(vectors) }. With allow_dependent the input
/// may be rank deficient; otherwise dependence is an error.
inline RationalSubspace saturate(const PolyLattice& x, const KMatrix& vectors, bool allow_dependent = false) {
    if (vectors.rows() != x.dim()) throw Error("saturate: ambient dimension mismatch");
    const Gf& f = x.field();
    const KMatrix num = x.basis().adjugate() * vectors;
    const TRat det_inv = TRat::one(f) / x.basis().det().to_trat();
    // Rational coordinates, then each column scaled by its denominator lcm:
    // scaling a column does not change the span, hence not the saturation.
    TPolyMatrix coords(f, vectors.rows(), vectors.cols());
    for (int c = 0; c < vectors.cols(); ++c) {
        std::vector<TRat> col(vectors.rows());
        TPoly lcm = TPoly::one(f);
        for (int r = 0; r < vectors.rows(); ++r) {
            col[r] = num.at(r, c).to_trat() * det_inv;
            if (!col[r].is_zero()) lcm = lcm.divmod(TPoly::gcd(lcm, col[r].den())).first * col[r].den();
        }
        for (int r = 0; r < vectors.rows(); ++r)
            if (!col[r].is_zero()) coords.at(r, c) = col[r].num() * lcm.divmod(col[r].den()).first;
    }
    auto diag = coords.diagonalize_left();
    const int r = static_cast<int>(diag.divisors.size());
    if (!allow_dependent && r < vectors.cols())
        throw Error("saturate: input vectors are dependent over K");
    return RationalSubspace(detail::coords_to_ambient(x, diag.left, r));
}

/// ||L|| = sup norm of the wedge of a basis of L cap x. The zero subspace has
/// norm 1 (empty wedge).
inline Mag subspace_norm(const PolyLattice& x, const RationalSubspace& L, bool auto_saturate = false) {
    if (L.dim() == 0) return Mag::one();
    TPolyMatrix coords = detail::lattice_coords(x, L.gens);  // throws if not lattice vectors
    auto diag = coords.diagonalize_left();
    bool saturated = static_cast<int>(diag.divisors.size()) == L.dim();
    if (saturated)
        for (const auto& s : diag.divisors)
            if (s.deg() != 0) saturated = false;
    if (!saturated) {
        if (!auto_saturate) throw Error("subspace_norm: generators are not a saturated basis");
        return subspace_norm(x, saturate(x, L.gens), false);
    }
    return wedge_columns(L.gens).sup_norm();
}

inline RationalSubspace subspace_sum(const PolyLattice& x, const RationalSubspace& a, const RationalSubspace& b) {
    KMatrix cat(x.field(), x.dim(), a.dim() + b.dim());
    cat.set_block(0, 0, a.gens);
    cat.set_block(0, a.dim(), b.gens);
    return saturate(x, cat, /*allow_dependent=*/true);
}

inline RationalSubspace subspace_intersect(const PolyLattice& x, const RationalSubspace& a,
                                           const RationalSubspace& b) {
    const Gf& f = x.field();
    if (a.dim() == 0 || b.dim() == 0) return RationalSubspace(KMatrix(f, x.dim(), 0));
    TPolyMatrix ca = detail::lattice_coords(x, a.gens);
    TPolyMatrix cb = detail::lattice_coords(x, b.gens);
    // kernel of [ca | -cb]: pairs (u, v) with ca*u = cb*v
    std::vector<std::vector<TRat>> m(x.dim(), std::vector<TRat>(a.dim() + b.dim(), TRat::zero(f)));
    for (int r = 0; r < x.dim(); ++r) {
        for (int c = 0; c < a.dim(); ++c) m[r][c] = TRat(ca.at(r, c));
        for (int c = 0; c < b.dim(); ++c) m[r][a.dim() + c] = TRat(-cb.at(r, c));
    }
    auto kernel = trat_kernel(m, f);
    if (kernel.empty()) return RationalSubspace(KMatrix(f, x.dim(), 0));
    // intersection vectors in lattice coordinates: ca * u
    TPolyMatrix cols(f, x.dim(), static_cast<int>(kernel.size()));
    for (std::size_t k = 0; k < kernel.size(); ++k)
        for (int r = 0; r < x.dim(); ++r) {
            TPoly acc = TPoly::zero(f);
            for (int c = 0; c < a.dim(); ++c) acc = acc + ca.at(r, c) * kernel[k][c];
            cols.at(r, static_cast<int>(k)) = acc;
        }
    auto diag = cols.diagonalize_left();
    return RationalSubspace(detail::coords_to_ambient(x, diag.left, static_cast<int>(diag.divisors.size())));
}

}  // namespace fflat
