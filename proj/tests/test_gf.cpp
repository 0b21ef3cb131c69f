#include "fflat/gf.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <set>

using namespace fflat;

TEST_CASE("prime field basics") {
    Gf f2 = Gf::prime(2);
    CHECK(f2.add(1, 1) == 0);  // characteristic 2
    CHECK(f2.mul(1, 1) == 1);
    CHECK(f2.minus_one() == 1);

    Gf f3 = Gf::prime(3);
    // independent oracle: full multiplication table over F_3
    for (int a = 1; a < 3; ++a)
        for (int b = 1; b < 3; ++b)
            if (f3.mul(a, b) == 1) CHECK(int(f3.inv(a)) == b);
    CHECK(f3.inv(2) == 2);
    CHECK(f3.add(2, 2) == 1);
    CHECK_THROWS_AS(f3.inv(0), Error);
}

TEST_CASE("F4 with modulus x^2+x+1") {
    Gf f4(2, 2, {1, 1, 1});
    CHECK(f4.q() == 4);
    // x has index 2 (coefficients (0,1)); x*x reduces to x+1, index 3
    CHECK(f4.mul(2, 2) == 3);
    CHECK(f4.to_string(3) == "(1,1)");
    CHECK(f4.parse("(1,1)") == 3);

    // every nonzero element has an inverse in the enumeration
    auto all = f4.enumerate();
    REQUIRE(all.size() == 4);
    for (auto a : all) {
        if (a == 0) continue;
        bool found = false;
        for (auto b : all)
            if (f4.mul(a, b) == 1) found = true;
        CHECK(found);
    }
}

TEST_CASE("invalid field specs rejected") {
    CHECK_THROWS_AS(Gf::prime(4), Error);                  // not prime
    CHECK_THROWS_AS(Gf(2, 2, {1, 0, 1}), Error);           // x^2+1 = (x+1)^2 over F_2
    CHECK_THROWS_AS(Gf(2, 2, {1, 1, 2}), Error);           // not monic after reduction
    CHECK_NOTHROW(Gf(3, 2, {1, 0, 1}));                    // x^2+1 irreducible over F_3
}

TEST_CASE("enumeration is exactly q distinct elements, cap respected") {
    for (int q : {2, 3}) {
        Gf f = Gf::prime(q);
        auto all = f.enumerate();
        std::set<int> seen(all.begin(), all.end());
        CHECK(static_cast<int>(seen.size()) == q);
    }
    Gf f13 = Gf::prime(13);
    CHECK_THROWS_AS(f13.enumerate(8), Infeasible);
    CHECK_NOTHROW(f13.enumerate(16));
}

TEST_CASE("little Fermat a^(q-1) = 1 for q <= 16") {
    std::vector<Gf> fields = {Gf::prime(2), Gf::prime(3), Gf::prime(5), Gf(2, 2, {1, 1, 1}),
                              Gf(2, 3, {1, 1, 0, 1}), Gf(3, 2, {1, 0, 1}), Gf(2, 4, {1, 1, 0, 0, 1})};
    for (const auto& f : fields) {
        for (auto a : f.enumerate()) {
            if (a == 0) continue;
            CHECK(f.pow(a, f.q() - 1) == 1);
        }
    }
}

TEST_CASE("field axioms on random triples") {
    std::vector<Gf> fields = {Gf::prime(2), Gf::prime(3), Gf(2, 2, {1, 1, 1}), Gf::prime(7)};
    SplitMix64 rng(42);
    for (const auto& f : fields) {
        for (int trial = 0; trial < 3000; ++trial) {
            const std::uint8_t a = f.uniform(rng), b = f.uniform(rng), c = f.uniform(rng);
            CHECK(f.add(a, b) == f.add(b, a));
            CHECK(f.mul(a, b) == f.mul(b, a));
            CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
            CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
            CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
            if (a != 0) CHECK(f.mul(f.inv(a), a) == 1);
        }
    }
}

TEST_CASE("checked element wrapper rejects mixed fields") {
    Gf f2 = Gf::prime(2), f3 = Gf::prime(3);
    GfElem a(1, f2), b(1, f3);
    CHECK_THROWS_AS(a + b, Error);
    GfElem c(1, Gf::prime(2));
    CHECK(a + c == GfElem(0, f2));
}
