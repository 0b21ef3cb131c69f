#include "fflat/laurent.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace fflat;

namespace {
const Gf F2 = Gf::prime(2);
const Gf F3 = Gf::prime(3);

Laurent random_exact(const Gf& f, SplitMix64& rng, int span = 8) {
    const int v0 = static_cast<int>(rng.below(2 * span + 1)) - span;
    const int len = 1 + static_cast<int>(rng.below(span));
    std::vector<std::uint8_t> c(len);
    for (auto& x : c) x = f.uniform(rng);
    return Laurent::from_coeffs(f, v0, std::move(c));
}
}  // namespace

TEST_CASE("valuation") {
    Laurent x = Laurent::pi_pow(F2, 2) + Laurent::pi_pow(F2, 3);
    CHECK(x.valuation() == Valuation::finite(2));
    CHECK(Laurent::zero(F2).valuation() == Valuation::infinite());
    CHECK(Laurent::zero_mod(F2, 5).valuation() == Valuation::at_least(5));
}

TEST_CASE("absolute value") {
    Laurent x = Laurent::pi_pow(F2, 2) + Laurent::pi_pow(F2, 3);
    CHECK(x.abs() == Mag::q_pow(-2));
    CHECK(x.abs().to_rational(2) == Rational(1, 4));
    Laurent t = Laurent::pi_pow(F2, -1);  // T
    CHECK(t.abs().to_rational(2) == Rational(2));
    CHECK(Laurent::zero(F2).abs() == Mag::of_zero());
    CHECK_THROWS_AS(Laurent::zero_mod(F2, 3).abs(), Error);
    CHECK(Laurent::zero_mod(F2, 3).abs(false) == Mag::q_pow(-3));
}

TEST_CASE("frobenius square in characteristic 2") {
    Laurent x = Laurent::one(F2) + Laurent::pi_pow(F2, 1);
    Laurent sq = x * x;
    CHECK(sq == Laurent::one(F2) + Laurent::pi_pow(F2, 2));
    CHECK(sq.is_exact());
}

TEST_CASE("precision propagation in products") {
    // (1 + O(pi^3)) * (1 + pi + O(pi^3)) = 1 + pi + O(pi^3)
    Laurent a = Laurent::one(F2).truncated(3);
    Laurent b = (Laurent::one(F2) + Laurent::pi_pow(F2, 1)).truncated(3);
    Laurent p = a * b;
    REQUIRE(p.precision().has_value());
    CHECK(*p.precision() == 3);
    CHECK(p == b);
}

TEST_CASE("inverse multiplies back to 1") {
    Laurent x = Laurent::one(F2) + Laurent::pi_pow(F2, 1);
    Laurent y = x.inverse(32);
    CHECK(Laurent::congruent(x * y, Laurent::one(F2), 32));
    // 1/(1+pi) = 1 + pi + pi^2 + ... over F_2
    for (int j = 0; j < 8; ++j) CHECK(y.coeff(j) == 1);
    CHECK_THROWS_AS(Laurent::zero(F2).inverse(), Error);
    CHECK_THROWS_AS(Laurent::zero_mod(F2, 4).inverse(), Error);
}

TEST_CASE("inverse precision rule k - 2 v(x)") {
    // x = pi^2 * unit known mod pi^10: 1/x should be known mod pi^{10-4}
    Laurent x = (Laurent::pi_pow(F3, 2) + Laurent::pi_pow(F3, 3)).truncated(10);
    Laurent y = x.inverse(100);
    REQUIRE(y.precision().has_value());
    CHECK(*y.precision() == 10 - 2 * 2);
}

TEST_CASE("lift of rational functions") {
    // T/(T+1) over F_2 to precision 4: 1 + pi + pi^2 + pi^3 + O(pi^4)
    TPoly num = TPoly::t_pow(F2, 1);
    TPoly den = TPoly(F2, {1, 1});
    Laurent s = lift_rational(num, den, 4);
    REQUIRE(s.precision().has_value());
    CHECK(*s.precision() == 4);
    for (int j = 0; j < 4; ++j) CHECK(s.coeff(j) == 1);
    // multiply-back oracle: s*(T+1) - T vanishes to the attained precision
    Laurent back = s * Laurent::from_tpoly(den) - Laurent::from_tpoly(num);
    CHECK(back.is_zero());

    // 1/T is exactly pi
    Laurent p = lift_rational(TPoly::one(F2), TPoly::t_pow(F2, 1), 10);
    CHECK(p == Laurent::pi_pow(F2, 1));
    CHECK(p.is_exact());

    // T^2 is exact with absolute value q^2
    Laurent t2 = lift_rational(TPoly::t_pow(F2, 2), TPoly::one(F2), 10);
    CHECK(t2 == Laurent::pi_pow(F2, -2));
    CHECK(t2.abs() == Mag::q_pow(2));

    CHECK_THROWS_AS(lift_rational(num, TPoly::zero(F2), 4), Error);

    // valuation of the lift is deg(den) - deg(num)
    TPoly num3 = TPoly(F3, {1, 2, 1});           // 1 + 2T + T^2
    TPoly den3 = TPoly(F3, {2, 0, 0, 1});        // 2 + T^3
    Laurent l3 = lift_rational(num3, den3, 12);
    CHECK(l3.valuation() == Valuation::finite(3 - 2));
}

TEST_CASE("ultrametric inequality and multiplicativity, randomized") {
    SplitMix64 rng(7);
    for (const Gf& f : {F2, F3}) {
        for (int trial = 0; trial < 5000; ++trial) {
            Laurent a = random_exact(f, rng), b = random_exact(f, rng);
            const Mag ab = (a + b).abs();
            CHECK(ab <= max(a.abs(), b.abs()));
            if (a.abs() != b.abs()) CHECK(ab == max(a.abs(), b.abs()));
            // v(xy) = v(x) + v(y) for exact elements
            if (!a.is_exact_zero() && !b.is_exact_zero()) {
                CHECK((a * b).valuation().v == a.valuation().v + b.valuation().v);
            }
        }
    }
}

TEST_CASE("precision soundness: recompute higher, truncate, compare") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 2000; ++trial) {
        Laurent a = random_exact(F2, rng), b = random_exact(F2, rng);
        const int k = 4 + static_cast<int>(rng.below(8));
        Laurent low = a.truncated(k) * b.truncated(k) + a.truncated(k);
        Laurent high = a.truncated(k + 5) * b.truncated(k + 5) + a.truncated(k + 5);
        REQUIRE(low.precision().has_value());
        CHECK(Laurent::congruent(low, high.truncated(*low.precision()), *low.precision()));
    }
}

TEST_CASE("text round trip") {
    Laurent x = Laurent::pi_pow(F2, -2) + Laurent::one(F2) + Laurent::pi_pow(F2, 3);
    CHECK(x.to_string() == "pi^-2 + 1 + pi^3");
    CHECK(Laurent::parse(F2, x.to_string()) == x);
    CHECK(Laurent::parse(F2, "T^2 + 1") == Laurent::pi_pow(F2, -2) + Laurent::one(F2));
    Laurent y = (Laurent::one(F3) + Laurent::pi_pow(F3, 1, 2)).truncated(4);
    CHECK(Laurent::parse(F3, y.to_string()) == y);
    CHECK(Laurent::parse(F3, "1 - pi") == Laurent::one(F3) + Laurent::pi_pow(F3, 1, 2));
    CHECK(Laurent::parse(F2, "0") == Laurent::zero(F2));
    CHECK(Laurent::parse(F2, "O(pi^5)") == Laurent::zero_mod(F2, 5));
    // extension-field coefficients as tuples
    Gf f4(2, 2, {1, 1, 1});
    Laurent z = Laurent::pi_pow(f4, 2, 3) + Laurent::pi_pow(f4, 5, 2);
    CHECK(Laurent::parse(f4, z.to_string()) == z);
}

TEST_CASE("polynomial and fractional parts") {
    Laurent x = Laurent::pi_pow(F2, -2) + Laurent::one(F2) + Laurent::pi_pow(F2, 1) + Laurent::pi_pow(F2, 4);
    Laurent p = x.polynomial_part(), fr = x.fractional_part();
    CHECK(p == Laurent::pi_pow(F2, -2) + Laurent::one(F2));
    CHECK(fr == Laurent::pi_pow(F2, 1) + Laurent::pi_pow(F2, 4));
    CHECK(fr.abs() < Mag::one());
    CHECK(p + fr == x);
}

TEST_CASE("mixed-field arithmetic rejected") {
    CHECK_THROWS_AS(Laurent::one(F2) + Laurent::one(F3), Error);
}

TEST_CASE("tpoly division, gcd, rational functions") {
    TPoly a(F2, {1, 0, 1});      // 1 + T^2 = (1+T)^2
    TPoly b(F2, {1, 1});         // 1 + T
    auto [q, r] = a.divmod(b);
    CHECK(r.is_zero());
    CHECK(q == b);
    CHECK(TPoly::gcd(a, b) == b);
    auto [g, u, v] = TPoly::xgcd(TPoly(F3, {1, 0, 1}), TPoly(F3, {2, 1}));
    CHECK(u * TPoly(F3, {1, 0, 1}) + v * TPoly(F3, {2, 1}) == g);

    TRat x(TPoly::one(F2), TPoly(F2, {1, 1}));
    TRat y(TPoly(F2, {0, 1}), TPoly(F2, {1, 1}));
    CHECK(x + y == TRat(TPoly::one(F2)));  // (1+T)/(1+T) = 1
}

TEST_CASE("tpoly matrix diagonalization and saturation data") {
    // columns (T, 0) and (T^2, T): saturation of the span is full rank
    TPolyMatrix m(F2, 2, 2);
    m.at(0, 0) = TPoly::t_pow(F2, 1);
    m.at(0, 1) = TPoly::t_pow(F2, 2);
    m.at(1, 1) = TPoly::t_pow(F2, 1);
    auto diag = m.diagonalize_left();
    CHECK(diag.divisors.size() == 2);
    // reconstruct: each original column lies in the span of U * diag
    CHECK(m.rank() == 2);

    TPolyMatrix r1(F2, 2, 1);
    r1.at(0, 0) = TPoly::t_pow(F2, 3);
    r1.at(1, 0) = TPoly::t_pow(F2, 1);
    CHECK(r1.rank() == 1);
}
