// Arithmetic in the finite field F_q, q = p^e, via full lookup tables.
// Intended for small q (the experiments use q in {2,3,4}); construction is
// capped at q <= 256 so element digits fit in a byte.
#pragma once

#include "fflat/common.hpp"

#include <algorithm>
#include <memory>
#include <sstream>

namespace fflat {

namespace detail {

/// Immutable arithmetic tables for one field instance.
struct GfTables {
    int p = 2;
    int e = 1;
    int q = 2;
    std::vector<std::uint8_t> modulus;  // monic, coeffs c_0..c_e over F_p (empty when e == 1)
    std::vector<std::uint8_t> add;      // q*q
    std::vector<std::uint8_t> mul;      // q*q
    std::vector<std::uint8_t> neg;      // q
    std::vector<std::uint8_t> inv;      // q, inv[0] unused
};

inline bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace detail

/// Handle to a finite field F_q. Cheap to copy; all state is shared and
/// immutable, so concurrent use needs no synchronization.
///
/// Elements are digit-encoded indices in [0, q): the element sum c_j x^j
/// (c_j in F_p, x the residue of the modulus variable) has index sum c_j p^j.
/// For prime fields the index is just the residue.
class Gf {
  public:
    /// Prime field F_p.
    static Gf prime(int p) { return Gf(p, 1, {}); }

    /// F_{p^e} with an explicit monic irreducible modulus (coefficients
    /// c_0..c_e over F_p, ascending). For e == 1 the modulus is ignored.
    Gf(int p, int e, std::vector<int> modulus_coeffs) {
        if (!detail::is_prime(p)) throw Error("Gf: characteristic " + std::to_string(p) + " is not prime");
        if (e < 1) throw Error("Gf: extension degree must be >= 1");
        long long q = 1;
        for (int j = 0; j < e; ++j) {
            q *= p;
            if (q > 256) throw Error("Gf: field size exceeds 256");
        }
        auto t = std::make_shared<detail::GfTables>();
        t->p = p;
        t->e = e;
        t->q = static_cast<int>(q);
        if (e > 1) {
            if (static_cast<int>(modulus_coeffs.size()) != e + 1)
                throw Error("Gf: modulus must have degree e (e+1 coefficients)");
            t->modulus.resize(e + 1);
            for (int j = 0; j <= e; ++j) {
                int c = ((modulus_coeffs[j] % p) + p) % p;
                t->modulus[j] = static_cast<std::uint8_t>(c);
            }
            if (t->modulus[e] != 1) throw Error("Gf: modulus must be monic");
            check_irreducible(*t);
        }
        build_tables(*t);
        tab_ = std::move(t);
    }

    int p() const { return tab_->p; }
    int e() const { return tab_->e; }
    int q() const { return tab_->q; }

    bool same(const Gf& other) const {
        return tab_ == other.tab_ ||
               (tab_->p == other.tab_->p && tab_->e == other.tab_->e && tab_->modulus == other.tab_->modulus);
    }
    void require_same(const Gf& other) const {
        if (!same(other)) throw Error("Gf: elements from different fields");
    }

    std::uint8_t add(std::uint8_t a, std::uint8_t b) const { return tab_->add[a * tab_->q + b]; }
    std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return add(a, neg(b)); }
    std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return tab_->mul[a * tab_->q + b]; }
    std::uint8_t neg(std::uint8_t a) const { return tab_->neg[a]; }
    std::uint8_t inv(std::uint8_t a) const {
        if (a == 0) throw Error("Gf: inverse of zero");
        return tab_->inv[a];
    }
    std::uint8_t pow(std::uint8_t a, long long k) const {
        if (k < 0) return pow(inv(a), -k);
        std::uint8_t r = 1, base = a;
        while (k > 0) {
            if (k & 1) r = mul(r, base);
            base = mul(base, base);
            k >>= 1;
        }
        return r;
    }
    std::uint8_t one() const { return 1; }
    std::uint8_t minus_one() const { return neg(1); }
    /// (-1)^k as a field element; in characteristic 2 this is always 1.
    std::uint8_t sign(long long k) const { return (k % 2 == 0) ? std::uint8_t(1) : minus_one(); }

    /// Reduce an integer into the prime subfield.
    std::uint8_t from_int(long long v) const {
        long long r = v % tab_->p;
        if (r < 0) r += tab_->p;
        return static_cast<std::uint8_t>(r);
    }

    /// All q elements in a fixed order (index order).
    std::vector<std::uint8_t> enumerate(int cap = 16) const {
        if (tab_->q > cap)
            throw Infeasible("Gf: enumeration cap " + std::to_string(cap) + " exceeded by q = " +
                             std::to_string(tab_->q));
        std::vector<std::uint8_t> all(tab_->q);
        for (int i = 0; i < tab_->q; ++i) all[i] = static_cast<std::uint8_t>(i);
        return all;
    }

    std::uint8_t uniform(SplitMix64& rng) const { return static_cast<std::uint8_t>(rng.below(tab_->q)); }
    std::uint8_t uniform_nonzero(SplitMix64& rng) const {
        return static_cast<std::uint8_t>(1 + rng.below(tab_->q - 1));
    }

    /// Canonical text: the residue for prime fields, the coefficient tuple
    /// "(c0,...,c_{e-1})" for extensions.
    std::string to_string(std::uint8_t a) const {
        if (tab_->e == 1) return std::to_string(int(a));
        std::ostringstream os;
        os << '(';
        int v = a;
        for (int j = 0; j < tab_->e; ++j) {
            if (j) os << ',';
            os << v % tab_->p;
            v /= tab_->p;
        }
        os << ')';
        return os.str();
    }

    std::uint8_t parse(const std::string& text) const {
        if (tab_->e == 1) {
            return from_int(std::stoll(text));
        }
        std::string s = text;
        s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return c == '(' || c == ')' || c == ' '; }), s.end());
        std::istringstream is(s);
        std::string item;
        int value = 0, base = 1, count = 0;
        while (std::getline(is, item, ',')) {
            if (count++ >= tab_->e) throw Error("Gf: too many coefficients in element literal");
            value += int(from_int(std::stoll(item))) * base;
            base *= tab_->p;
        }
        return static_cast<std::uint8_t>(value);
    }

  private:
    std::shared_ptr<const detail::GfTables> tab_;

    // --- construction helpers (all mod-p polynomial arithmetic on digit vectors)

    static std::vector<std::uint8_t> poly_of_index(int idx, int p, int e) {
        std::vector<std::uint8_t> c(e, 0);
        for (int j = 0; j < e && idx; ++j) {
            c[j] = static_cast<std::uint8_t>(idx % p);
            idx /= p;
        }
        return c;
    }

    static int index_of_poly(const std::vector<std::uint8_t>& c, int p) {
        int idx = 0, base = 1;
        for (std::uint8_t d : c) {
            idx += int(d) * base;
            base *= p;
        }
        return idx;
    }

    static std::vector<std::uint8_t> poly_mul_mod(const std::vector<std::uint8_t>& a,
                                                  const std::vector<std::uint8_t>& b,
                                                  const std::vector<std::uint8_t>& modulus, int p) {
        std::vector<int> prod(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) prod[i + j] = (prod[i + j] + int(a[i]) * int(b[j])) % p;
        // reduce by the monic modulus
        const int e = static_cast<int>(modulus.size()) - 1;
        for (int d = static_cast<int>(prod.size()) - 1; d >= e; --d) {
            int c = prod[d];
            if (c == 0) continue;
            for (int j = 0; j <= e; ++j) {
                int& slot = prod[d - e + j];
                slot = ((slot - c * int(modulus[j])) % p + p) % p;
            }
        }
        std::vector<std::uint8_t> out(e);
        for (int j = 0; j < e; ++j) out[j] = static_cast<std::uint8_t>(prod[j]);
        return out;
    }

    /// Trial division by every monic polynomial of degree <= e/2.
    static void check_irreducible(const detail::GfTables& t) {
        const int p = t.p, e = t.e;
        for (int deg = 1; deg <= e / 2; ++deg) {
            long long count = 1;
            for (int j = 0; j < deg; ++j) count *= p;
            for (long long idx = 0; idx < count; ++idx) {
                // divisor = x^deg + lower coefficients encoded by idx
                std::vector<std::uint8_t> div(deg + 1, 0);
                long long v = idx;
                for (int j = 0; j < deg; ++j) {
                    div[j] = static_cast<std::uint8_t>(v % p);
                    v /= p;
                }
                div[deg] = 1;
                if (poly_divides(div, t.modulus, p)) {
                    throw Error("Gf: modulus is reducible (divisible by a degree-" + std::to_string(deg) +
                                " factor)");
                }
            }
        }
    }

    static bool poly_divides(const std::vector<std::uint8_t>& d, const std::vector<std::uint8_t>& n, int p) {
        std::vector<int> rem(n.begin(), n.end());
        const int dd = static_cast<int>(d.size()) - 1;
        for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
            int c = rem[k] % p;
            if (c == 0) continue;
            for (int j = 0; j <= dd; ++j) {
                int& slot = rem[k - dd + j];
                slot = ((slot - c * int(d[j])) % p + p) % p;
            }
        }
        for (int j = 0; j < dd; ++j)
            if (rem[j] % p != 0) return false;
        return true;
    }

    static void build_tables(detail::GfTables& t) {
        const int q = t.q, p = t.p, e = t.e;
        t.add.assign(q * q, 0);
        t.mul.assign(q * q, 0);
        t.neg.assign(q, 0);
        t.inv.assign(q, 0);
        for (int a = 0; a < q; ++a) {
            auto pa = poly_of_index(a, p, e);
            for (int b = 0; b < q; ++b) {
                auto pb = poly_of_index(b, p, e);
                std::vector<std::uint8_t> sum(e);
                for (int j = 0; j < e; ++j) sum[j] = static_cast<std::uint8_t>((pa[j] + pb[j]) % p);
                t.add[a * q + b] = static_cast<std::uint8_t>(index_of_poly(sum, p));
                if (e == 1) {
                    t.mul[a * q + b] = static_cast<std::uint8_t>((a * b) % p);
                } else {
                    t.mul[a * q + b] = static_cast<std::uint8_t>(index_of_poly(poly_mul_mod(pa, pb, t.modulus, p), p));
                }
            }
            std::vector<std::uint8_t> na(e);
            for (int j = 0; j < e; ++j) na[j] = static_cast<std::uint8_t>((p - pa[j]) % p);
            t.neg[a] = static_cast<std::uint8_t>(index_of_poly(na, p));
        }
        for (int a = 1; a < q; ++a) {
            for (int b = 1; b < q; ++b) {
                if (t.mul[a * q + b] == 1) {
                    t.inv[a] = static_cast<std::uint8_t>(b);
                    break;
                }
            }
            if (t.inv[a] == 0) throw Error("Gf: element without inverse; modulus not irreducible?");
        }
    }
};

/// A field element bundled with its field, for checked public-facing
/// arithmetic. Internal hot paths operate on raw digits through Gf instead.
struct GfElem {
    std::uint8_t v = 0;
    Gf field;

    GfElem(std::uint8_t value, Gf f) : v(value), field(std::move(f)) {}

    friend GfElem operator+(const GfElem& a, const GfElem& b) {
        a.field.require_same(b.field);
        return {a.field.add(a.v, b.v), a.field};
    }
    friend GfElem operator-(const GfElem& a, const GfElem& b) {
        a.field.require_same(b.field);
        return {a.field.sub(a.v, b.v), a.field};
    }
    friend GfElem operator*(const GfElem& a, const GfElem& b) {
        a.field.require_same(b.field);
        return {a.field.mul(a.v, b.v), a.field};
    }
    GfElem operator-() const { return {field.neg(v), field}; }
    GfElem inverse() const { return {field.inv(v), field}; }
    GfElem pow(long long k) const { return {field.pow(v, k), field}; }
    friend bool operator==(const GfElem& a, const GfElem& b) { return a.field.same(b.field) && a.v == b.v; }
    friend bool operator!=(const GfElem& a, const GfElem& b) { return !(a == b); }
};

}  // namespace fflat
