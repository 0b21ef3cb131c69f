// Shared basics: exact rationals, q-power magnitudes, errors, RNG seeding,
// and a small worker-pool helper used by the enumeration and Monte Carlo engines.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fflat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Generic failure of a mathematical precondition (bad input, mixed fields, ...).
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A computation was declined rather than done approximately: enumeration cap
/// exceeded, or working precision too small for a certified answer.
class Infeasible : public Error {
  public:
    explicit Infeasible(const std::string& what) : Error(what) {}
};

/// Exact magnitude |x| of a non-Archimedean quantity: either 0 or q^e.
/// The exponent is kept symbolically so comparisons and products are exact;
/// q enters only on conversion to double/Rational.
struct Mag {
    bool zero = true;
    long long e = 0;

    static Mag of_zero() { return Mag{}; }
    static Mag q_pow(long long exp) { return Mag{false, exp}; }
    static Mag one() { return Mag{false, 0}; }

    bool is_one() const { return !zero && e == 0; }

    friend Mag operator*(Mag a, Mag b) {
        if (a.zero || b.zero) return of_zero();
        return q_pow(a.e + b.e);
    }
    friend Mag operator/(Mag a, Mag b) {
        if (b.zero) throw Error("Mag: division by zero magnitude");
        if (a.zero) return of_zero();
        return q_pow(a.e - b.e);
    }
    Mag pow(long long k) const {
        if (zero) {
            if (k <= 0) throw Error("Mag: 0 to a nonpositive power");
            return of_zero();
        }
        return q_pow(e * k);
    }
    friend bool operator==(Mag a, Mag b) {
        return a.zero == b.zero && (a.zero || a.e == b.e);
    }
    friend bool operator!=(Mag a, Mag b) { return !(a == b); }
    friend bool operator<(Mag a, Mag b) {
        if (a.zero) return !b.zero;
        if (b.zero) return false;
        return a.e < b.e;
    }
    friend bool operator<=(Mag a, Mag b) { return a < b || a == b; }
    friend bool operator>(Mag a, Mag b) { return b < a; }
    friend bool operator>=(Mag a, Mag b) { return b <= a; }

    friend Mag max(Mag a, Mag b) { return a < b ? b : a; }
    friend Mag min(Mag a, Mag b) { return a < b ? a : b; }

    double to_double(int q) const {
        return zero ? 0.0 : std::pow(static_cast<double>(q), static_cast<double>(e));
    }
    Rational to_rational(int q) const {
        if (zero) return Rational(0);
        BigInt p = 1;
        for (long long k = 0; k < (e >= 0 ? e : -e); ++k) p *= q;
        return e >= 0 ? Rational(p) : Rational(1, p);
    }
};

/// q^e as an exact rational, for integer e of either sign.
inline Rational q_power(int q, long long e) { return Mag::q_pow(e).to_rational(q); }

inline double log_q(double value, int q) { return std::log(value) / std::log(double(q)); }

// ---------------------------------------------------------------------------
// Deterministic randomness.
//
// All randomness in the library flows from a single 64-bit root seed. Each
// trial i draws from an independent stream seeded with split_seed(root, i),
// so results do not depend on how trials are scheduled across workers.

struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, n), n >= 1, by rejection.
    std::uint32_t below(std::uint32_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return static_cast<std::uint32_t>(v % n);
    }

    double unit() { return (next() >> 11) * 0x1.0p-53; }
};

/// Per-trial seed derivation: seed_i = mix(root ^ (i+1) * golden-ratio odd constant).
inline std::uint64_t split_seed(std::uint64_t root, std::uint64_t index) {
    SplitMix64 s(root ^ ((index + 1) * 0x9E3779B97F4A7C15ULL));
    return s.next();
}

// ---------------------------------------------------------------------------
// Work distribution. Results must be accumulated per index (not per worker)
// by the caller when order matters; integer counts may be summed freely.

inline void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t, std::size_t)>& body) {
    if (workers <= 1 || n < 2) {
        body(0, n);
        return;
    }
    const std::size_t w = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
    std::vector<std::thread> pool;
    pool.reserve(w);
    const std::size_t chunk = (n + w - 1) / w;
    for (std::size_t k = 0; k < w; ++k) {
        const std::size_t lo = k * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& th : pool) th.join();
}

inline long long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    long long r = 1;
    for (int j = 1; j <= k; ++j) r = r * (n - k + j) / j;
    return r;
}

}  // namespace fflat
