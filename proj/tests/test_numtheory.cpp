#include <doctest.h>

#include "diffset/errors.hpp"
#include "diffset/numbers.hpp"

#include <numeric>

using namespace diffset;

TEST_SUITE_BEGIN("numtheory");

TEST_CASE("isqrt and perfect squares") {
    for (long n = 0; n <= 2000; ++n) {
        Int r = isqrt(Int(n));
        CHECK(r * r <= n);
        CHECK((r + 1) * (r + 1) > n);
    }
    Int big("123456789123456789123456789");
    CHECK(isqrt(big * big) == big);
    CHECK(is_perfect_square(big * big));
    CHECK_FALSE(is_perfect_square(big * big + 1));
    CHECK(is_perfect_square(Int(0)));
    CHECK_FALSE(is_perfect_square(Int(-4)));
}

TEST_CASE("legendre symbol against squares mod p") {
    for (long p : {3L, 5L, 7L, 11L, 13L, 101L}) {
        std::set<long> squares;
        for (long x = 1; x < p; ++x) squares.insert(x * x % p);
        for (long a = 0; a < p; ++a) {
            int expect = a == 0 ? 0 : (squares.count(a) ? 1 : -1);
            CHECK(legendre(Int(a), Int(p)) == expect);
        }
    }
}

TEST_CASE("ord_p") {
    CHECK(ord_p(Int(666792), Int(7)) == 3);
    CHECK(ord_p(Int(666792), Int(2)) == 3);
    CHECK(ord_p(Int(666792), Int(3)) == 5);
    CHECK(ord_p(Int(666792), Int(5)) == 0);
    CHECK(ord_p(Int(-8), Int(2)) == 3);
}

TEST_CASE("factorize reconstructs and yields primes") {
    auto roundtrip = [](const Int& n) {
        auto f = factorize(n);
        Int prod(1);
        for (const auto& [p, e] : f) {
            CHECK(is_probable_prime(p));
            CHECK(e >= 1);
            prod *= pow_int(p, e);
        }
        CHECK(prod == abs(n));
    };
    for (long n = 1; n <= 3000; ++n) roundtrip(Int(n));
    roundtrip(Int(-360));

    // semiprime beyond the trial-division bound, needs rho
    Int p("1000003"), q("1000033");
    auto f = factorize(p * q);
    REQUIRE(f.size() == 2);
    CHECK(f.at(p) == 1);
    CHECK(f.at(q) == 1);

    auto g = factorize(p * p * q);
    CHECK(g.at(p) == 2);
    CHECK(g.at(q) == 1);

    CHECK(prime_set(Int(666792)) == std::set<Int>{Int(2), Int(3), Int(7)});
    CHECK_THROWS_AS(factorize(Int(0)), malformed_error);
}

TEST_CASE("totient and units_mod agree") {
    for (long m = 1; m <= 200; ++m) {
        auto u = units_mod(m);
        CHECK(static_cast<long>(u.size()) == totient(m));
        CHECK(std::is_sorted(u.begin(), u.end()));
        for (long t : u) {
            CHECK(t >= 0);
            CHECK(t < m);
            CHECK(gcd_long(t, m) == 1);
        }
    }
    CHECK(units_mod(1) == std::vector<long>{0});
    CHECK(units_mod(8) == std::vector<long>{1, 3, 5, 7});
}

TEST_CASE("gcd lcm pow") {
    CHECK(gcd_long(0, 0) == 0);
    CHECK(gcd_long(-12, 18) == 6);
    CHECK(lcm_long(4, 6) == 12);
    CHECK(pow_long(2, 12) == 4096);
    CHECK(pow_long(3, 0) == 1);
    CHECK_THROWS_AS(pow_long(10, 30), malformed_error);
    CHECK(pow_int(Int(10), 30) == Int("1000000000000000000000000000000"));
    CHECK(divides(Int(7), Int(49)));
    CHECK_FALSE(divides(Int(7), Int(50)));
    CHECK(divides(Int(-3), Int(9)));
}

TEST_SUITE_END();
