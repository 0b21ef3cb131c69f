// Elements of F_q((pi)) with pi = 1/T: exact Laurent polynomials and
// precision-tracked series. "Zero to precision k" is a first-class state and
// is never promoted to exact zero.
#pragma once

#include "fflat/tpoly.hpp"

#include <sstream>

namespace fflat {

/// Default number of known coefficients for series produced by inversion,
/// rational lifts and sampling.
inline constexpr int kDefaultPrec = 64;

namespace detail {
constexpr int kValInf = INT32_MAX / 2;  // sentinel for "+infinity" in valuation math
}

/// Valuation of an element: a finite integer, +infinity (exact zero), or a
/// lower bound ">= k" (zero to precision k).
struct Valuation {
    enum class Kind { Finite, Infinite, AtLeast };
    Kind kind = Kind::Infinite;
    int v = 0;

    static Valuation finite(int v) { return {Kind::Finite, v}; }
    static Valuation infinite() { return {Kind::Infinite, 0}; }
    static Valuation at_least(int k) { return {Kind::AtLeast, k}; }

    bool is_finite() const { return kind == Kind::Finite; }
    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.kind == b.kind && (a.kind == Kind::Infinite || a.v == b.v);
    }
    std::string to_string() const {
        switch (kind) {
            case Kind::Finite: return std::to_string(v);
            case Kind::Infinite: return "+inf";
            default: return ">=" + std::to_string(v);
        }
    }
};

/// Laurent series element. Stored coefficients run over exponents
/// v0 .. v0+len-1 of pi; an exact element has all omitted coefficients zero,
/// a PRECISION(k) element is known only modulo pi^k.
class Laurent {
  public:
    explicit Laurent(Gf f) : field_(std::move(f)) {}  // exact zero

    static Laurent zero(const Gf& f) { return Laurent(f); }
    static Laurent zero_mod(const Gf& f, int k) {
        Laurent x(f);
        x.exact_ = false;
        x.prec_ = k;
        return x;
    }
    static Laurent one(const Gf& f) { return pi_pow(f, 0); }
    static Laurent pi_pow(const Gf& f, int j, std::uint8_t c = 1) {
        Laurent x(f);
        if (c != 0) {
            x.v0_ = j;
            x.c_ = {c};
        }
        return x;
    }
    static Laurent constant(const Gf& f, std::uint8_t c) { return pi_pow(f, 0, c); }

    /// Exact element from explicit coefficients for exponents v0, v0+1, ...
    static Laurent from_coeffs(const Gf& f, int v0, std::vector<std::uint8_t> coeffs) {
        Laurent x(f);
        x.v0_ = v0;
        x.c_ = std::move(coeffs);
        x.normalize();
        return x;
    }

    /// Series known modulo pi^prec from coefficients for exponents v0..prec-1.
    static Laurent from_coeffs_mod(const Gf& f, int v0, std::vector<std::uint8_t> coeffs, int prec) {
        Laurent x(f);
        x.v0_ = v0;
        x.c_ = std::move(coeffs);
        x.exact_ = false;
        x.prec_ = prec;
        x.normalize();
        return x;
    }

    /// A polynomial in T embeds with exponents -deg..0.
    static Laurent from_tpoly(const TPoly& p) {
        Laurent x(p.field());
        if (p.is_zero()) return x;
        const int d = p.deg();
        std::vector<std::uint8_t> c(d + 1);
        for (int k = 0; k <= d; ++k) c[d - k] = p.coeff(k);  // exponent -k stored at slot d-k
        x.v0_ = -d;
        x.c_ = std::move(c);
        x.normalize();
        return x;
    }

    const Gf& field() const { return field_; }
    bool is_exact() const { return exact_; }
    /// Known precision: nullopt for exact elements.
    std::optional<int> precision() const { return exact_ ? std::nullopt : std::make_optional(prec_); }
    bool is_zero() const { return c_.empty(); }          // exact zero or zero to precision
    bool is_exact_zero() const { return exact_ && c_.empty(); }

    Valuation valuation() const {
        if (!c_.empty()) return Valuation::finite(v0_);
        return exact_ ? Valuation::infinite() : Valuation::at_least(prec_);
    }

    /// |x| = q^{-v(x)}. For an inexact zero the value is indeterminate:
    /// strict mode refuses, upper-bound mode returns q^{-k}.
    Mag abs(bool strict = true) const {
        if (!c_.empty()) return Mag::q_pow(-v0_);
        if (exact_) return Mag::of_zero();
        if (strict) throw Error("Laurent: absolute value indeterminate (zero to precision " +
                                std::to_string(prec_) + ")");
        return Mag::q_pow(-prec_);
    }

    std::uint8_t coeff(int exponent) const {
        if (exponent < v0_ || exponent >= v0_ + static_cast<int>(c_.size())) return 0;
        return c_[exponent - v0_];
    }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        const Gf& f = a.match(b);
        const int prec = std::min(a.prec_or_inf(), b.prec_or_inf());
        if (a.c_.empty() && b.c_.empty()) return with_prec(f, prec);
        int lo = std::min(a.low(), b.low());
        int hi = std::min(std::max(a.high(), b.high()), prec);
        if (lo >= hi) return with_prec(f, prec);
        std::vector<std::uint8_t> c(hi - lo, 0);
        for (int j = lo; j < hi; ++j) c[j - lo] = f.add(a.coeff(j), b.coeff(j));
        Laurent out(f);
        out.v0_ = lo;
        out.c_ = std::move(c);
        out.set_prec(prec);
        out.normalize();
        return out;
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }
    Laurent operator-() const {
        Laurent out = *this;
        for (auto& c : out.c_) c = field_.neg(c);
        return out;
    }

    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        const Gf& f = a.match(b);
        if (a.is_exact_zero() || b.is_exact_zero()) return zero(f);
        // result known below min(v(a) + prec(b), v(b) + prec(a))
        const long long prec =
            std::min<long long>(static_cast<long long>(a.low_bound()) + b.prec_or_inf(),
                                static_cast<long long>(b.low_bound()) + a.prec_or_inf());
        const int p = prec >= detail::kValInf ? detail::kValInf : static_cast<int>(prec);
        if (a.c_.empty() || b.c_.empty()) return with_prec(f, p);
        const int lo = a.v0_ + b.v0_;
        const int hi = std::min(a.high() + b.high() - 1, p);
        if (lo >= hi) return with_prec(f, p);
        std::vector<std::uint8_t> c(hi - lo, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            const int base = a.v0_ + static_cast<int>(i) + b.v0_ - lo;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                const std::size_t k = base + j;
                if (k >= c.size()) break;
                c[k] = f.add(c[k], f.mul(a.c_[i], b.c_[j]));
            }
        }
        Laurent out(f);
        out.v0_ = lo;
        out.c_ = std::move(c);
        out.set_prec(p);
        out.normalize();
        return out;
    }

    Laurent scaled(std::uint8_t s) const {
        if (s == 0) return exact_ ? zero(field_) : zero_mod(field_, prec_);
        Laurent out = *this;
        for (auto& c : out.c_) c = field_.mul(c, s);
        out.normalize();
        return out;
    }

    /// Multiply by pi^j (shifts both exponents and precision).
    Laurent shifted(int j) const {
        Laurent out = *this;
        out.v0_ += j;
        if (!out.exact_) out.prec_ += j;
        return out;
    }

    /// Multiplicative inverse as a series. For an exact monomial the result is
    /// exact; otherwise it is known to precision min(target, k - 2 v(x)) where
    /// k is the precision of x (k = target + 2 v(x) for exact x).
    Laurent inverse(int target_prec = kDefaultPrec) const {
        if (c_.empty()) throw Error("Laurent: inversion of " + std::string(exact_ ? "zero" : "possible zero"));
        const Gf& f = field_;
        const int v = v0_;
        if (exact_ && c_.size() == 1) return pi_pow(f, -v, f.inv(c_[0]));
        const int out_prec = exact_ ? target_prec : std::min(target_prec, prec_ - 2 * v);
        if (out_prec <= -v) return zero_mod(f, out_prec);
        // long division: y has exponents -v .. out_prec-1
        const int len = out_prec + v;  // number of output coefficients
        std::vector<std::uint8_t> y(len, 0);
        const std::uint8_t lead_inv = f.inv(c_[0]);
        for (int s = 0; s < len; ++s) {
            // coefficient of pi^{s} in x*y (relative to pi^{v-v}=pi^0) must be [s==0]
            std::uint8_t acc = (s == 0) ? 1 : 0;
            for (int r = 0; r < s; ++r) {
                const int xi = s - r;  // index into c_ (exponent v+xi)
                if (xi < static_cast<int>(c_.size())) acc = f.sub(acc, f.mul(y[r], c_[xi]));
            }
            y[s] = f.mul(acc, lead_inv);
        }
        Laurent out(f);
        out.v0_ = -v;
        out.c_ = std::move(y);
        out.exact_ = false;
        out.prec_ = out_prec;
        out.normalize();
        return out;
    }

    friend Laurent operator/(const Laurent& a, const Laurent& b) { return a * b.inverse(); }

    /// Forget everything from exponent k on: result is known mod pi^k.
    Laurent truncated(int k) const {
        Laurent out(field_);
        out.exact_ = false;
        out.prec_ = exact_ ? k : std::min(k, prec_);
        if (!c_.empty() && v0_ < out.prec_) {
            const int hi = std::min(high(), out.prec_);
            out.v0_ = v0_;
            out.c_.assign(c_.begin(), c_.begin() + (hi - v0_));
        }
        out.normalize();
        return out;
    }

    /// The exact Laurent polynomial carrying all known coefficients. Used to
    /// build lattices from truncated flow data; the caller is responsible for
    /// the precision guard.
    Laurent known_part() const {
        Laurent out(field_);
        out.v0_ = v0_;
        out.c_ = c_;
        out.normalize();
        return out;
    }

    /// Split at exponent 0: part with exponents <= 0 is the F_q[T]-polynomial
    /// part, the rest has absolute value < 1.
    Laurent polynomial_part() const {
        if (!exact_ && prec_ < 1)
            throw Error("Laurent: polynomial part indeterminate at precision " + std::to_string(prec_));
        Laurent out(field_);
        if (!c_.empty() && v0_ <= 0) {
            const int hi = std::min(high(), 1);
            out.v0_ = v0_;
            out.c_.assign(c_.begin(), c_.begin() + (hi - v0_));
        }
        out.normalize();
        return out;
    }
    Laurent fractional_part() const { return *this - polynomial_part(); }

    /// Exact elements with only nonpositive exponents are polynomials in T.
    TPoly to_tpoly() const {
        if (!exact_) throw Error("Laurent: inexact element is not a polynomial in T");
        if (c_.empty()) return TPoly::zero(field_);
        if (high() > 1) throw Error("Laurent: positive pi-exponents; not a polynomial in T");
        const int d = -v0_;
        std::vector<std::uint8_t> c(d + 1, 0);
        for (int j = v0_; j < high(); ++j) c[-j] = coeff(j);
        return TPoly(field_, std::move(c));
    }

    /// Exact elements are rational functions of T: x = num / T^k.
    TRat to_trat() const {
        if (!exact_) throw Error("Laurent: inexact element is not a rational function");
        if (c_.empty()) return TRat::zero(field_);
        const int v1 = high() - 1;  // largest pi-exponent
        std::vector<std::uint8_t> num(c_.rbegin(), c_.rend());
        TPoly n(field_, std::move(num));
        if (v1 > 0) return TRat(n, TPoly::t_pow(field_, v1));
        if (v1 < 0) return TRat(n * TPoly::t_pow(field_, -v1));
        return TRat(n);
    }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        if (!a.field_.same(b.field_)) return false;
        if (a.exact_ != b.exact_) return false;
        if (!a.exact_ && a.prec_ != b.prec_) return false;
        return a.c_ == b.c_ && (a.c_.empty() || a.v0_ == b.v0_);
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    /// a == b modulo pi^k; both sides must be known to precision >= k.
    static bool congruent(const Laurent& a, const Laurent& b, int k) {
        const Laurent d = a - b;
        if (d.prec_or_inf() < k)
            throw Error("Laurent: congruence mod pi^" + std::to_string(k) + " undecidable at precision " +
                        std::to_string(d.prec_or_inf()));
        return d.c_.empty() || d.v0_ >= k;
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            const int j = v0_ + static_cast<int>(i);
            if (!first) os << " + ";
            first = false;
            const bool unit = (c_[i] == 1);
            if (j == 0 || !unit) os << field_.to_string(c_[i]);
            if (j != 0) {
                if (!unit) os << '*';
                os << "pi";
                if (j != 1) os << '^' << j;
            }
        }
        if (!exact_) {
            if (!first) os << " + ";
            os << "O(pi^" << prec_ << ")";
            first = false;
        }
        if (first) os << '0';
        return os.str();
    }

    /// Parse the grammar emitted by to_string(); also accepts T^j for pi^-j.
    static Laurent parse(const Gf& f, const std::string& text);

  private:
    Gf field_;
    int v0_ = 0;
    std::vector<std::uint8_t> c_;
    bool exact_ = true;
    int prec_ = 0;

    int low() const { return v0_; }
    int high() const { return v0_ + static_cast<int>(c_.size()); }  // one past last stored
    /// Lower bound for the valuation (the precision for an inexact zero).
    int low_bound() const { return c_.empty() ? prec_or_inf() : v0_; }
    int prec_or_inf() const { return exact_ ? detail::kValInf : prec_; }
    void set_prec(int p) {
        if (p >= detail::kValInf) {
            exact_ = true;
        } else {
            exact_ = false;
            prec_ = p;
        }
    }
    static Laurent with_prec(const Gf& f, int p) {
        return p >= detail::kValInf ? zero(f) : zero_mod(f, p);
    }

    const Gf& match(const Laurent& o) const {
        field_.require_same(o.field_);
        return field_;
    }

    void normalize() {
        if (!exact_) {
            // drop unknown-range coefficients
            const int hi = high();
            if (hi > prec_) {
                const int keep = std::max(0, prec_ - v0_);
                c_.resize(keep);
            }
        }
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0) ++lead;
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + lead);
            v0_ += static_cast<int>(lead);
        }
        while (exact_ && !c_.empty() && c_.back() == 0) c_.pop_back();
        if (c_.empty()) v0_ = 0;
    }
};

// --- free functions -------------------------------------------------------

inline Valuation valuation(const Laurent& x) { return x.valuation(); }

inline Mag abs_value(const Laurent& x, bool strict = true) { return x.abs(strict); }

/// Series expansion of num/den at the place at infinity (in powers of
/// pi = 1/T), correct to precision k. Exact when den divides num.
inline Laurent lift_rational(const TPoly& num, const TPoly& den, int k = kDefaultPrec) {
    if (den.is_zero()) throw Error("lift_rational: zero denominator");
    const Gf& f = num.field();
    auto [quot, rem] = num.divmod(den);
    if (rem.is_zero()) return Laurent::from_tpoly(quot);
    const Laurent n = Laurent::from_tpoly(num);
    const Laurent d = Laurent::from_tpoly(den);
    // inverse precise enough that the product is known mod pi^k
    const Laurent di = d.inverse(k + std::max(0, num.deg()) + 1);
    return (n * di).truncated(k);
}

inline Laurent Laurent::parse(const Gf& f, const std::string& text) {
    // normalize separators: '-' becomes "+-" except inside tuples/exponents
    std::string s;
    s.reserve(text.size());
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == ' ') continue;
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == '-' && depth == 0 && i > 0 && text[i - 1] != '^' && s.back() != '+') {
            s += "+-";
        } else {
            s += ch;
        }
    }
    Laurent acc = Laurent::zero(f);
    std::optional<int> o_prec;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t end = pos;
        int d2 = 0;
        while (end < s.size() && (s[end] != '+' || d2 > 0)) {
            if (s[end] == '(') ++d2;
            if (s[end] == ')') --d2;
            ++end;
        }
        std::string term = s.substr(pos, end - pos);
        pos = end + 1;
        if (term.empty()) continue;
        bool negate = false;
        if (term[0] == '-') {
            negate = true;
            term = term.substr(1);
        }
        if (term.rfind("O(", 0) == 0) {
            // O(pi^k)
            std::string inner = term.substr(2, term.size() - 3);
            int k = 1;
            if (inner == "pi") {
                k = 1;
            } else if (inner.rfind("pi^", 0) == 0) {
                k = std::stoi(inner.substr(3));
            } else {
                throw Error("Laurent: cannot parse precision term '" + term + "'");
            }
            o_prec = o_prec ? std::min(*o_prec, k) : k;
            continue;
        }
        // [coeff*]var[^exp] | coeff | var[^exp]
        std::uint8_t coeff = 1;
        int expo = 0;
        std::size_t star = term.find('*');
        std::string var = term;
        if (star != std::string::npos) {
            coeff = f.parse(term.substr(0, star));
            var = term.substr(star + 1);
        }
        if (var.rfind("pi", 0) == 0) {
            expo = (var.size() > 2 && var[2] == '^') ? std::stoi(var.substr(3)) : 1;
        } else if (var.rfind("T", 0) == 0 && star != std::string::npos) {
            expo = (var.size() > 1 && var[1] == '^') ? -std::stoi(var.substr(2)) : -1;
        } else if (var == "T") {
            expo = -1;
        } else if (var.rfind("T^", 0) == 0) {
            expo = -std::stoi(var.substr(2));
        } else {
            coeff = f.parse(var);
            expo = 0;
        }
        if (negate) coeff = f.neg(coeff);
        acc = acc + Laurent::pi_pow(f, expo, coeff);
    }
    if (o_prec) acc = acc.truncated(*o_prec);
    return acc;
}

}  // namespace fflat
