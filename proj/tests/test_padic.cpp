#include <doctest.h>

#include <random>

#include "padicq/padic.hpp"

using namespace padicq;

namespace {

// independent series oracle for log(1+u) with v_p(u) >= 1, as a residue mod p^K
// (the u128/u64 arithmetic here shares nothing with the PadicScalar series code)
u64 series_log_residue(i64 p, i64 u, int K) {
    // work mod p^(K+12) so dividing out p^{v(n)} never drops digits below p^K
    const int G = K + 12;
    u64 big = u64(ipow(p, G)), mod = u64(ipow(p, K));
    u64 acc = 0;
    for (int n = 1; n <= 4 * K; ++n) {
        i64 nn = n, v = 0;
        while (nn % p == 0) {
            nn /= p;
            ++v;
        }
        u64 upow = powmod(u64(u), u64(n), big);
        for (i64 k = 0; k < v; ++k) upow /= u64(p);  // exact: p^n | u^n
        u64 term = mulmod(upow, invmod_pp(u64(nn % i64(big)), p, G), big) % mod;
        acc = (n % 2 == 1) ? (acc + term) % mod : (acc + mod - term) % mod;
    }
    return acc;
}

u64 series_exp_residue(i64 p, i64 u, int K) {
    const int G = K + 12;
    u64 big = u64(ipow(p, G)), mod = u64(ipow(p, K));
    u64 acc = 1 % mod;
    u64 fact_unit = 1;
    i64 fact_val = 0;
    for (int n = 1; n <= 6 * K; ++n) {
        i64 nn = n;
        while (nn % p == 0) {
            nn /= p;
            ++fact_val;
        }
        fact_unit = mulmod(fact_unit, u64(nn), big);
        u64 upow = powmod(u64(u), u64(n), big);
        for (i64 k = 0; k < fact_val; ++k) upow /= u64(p);
        acc = (acc + mulmod(upow, invmod_pp(fact_unit, p, G), big)) % mod;
    }
    return acc;
}

u64 residue_of(const PadicScalar& s, int K) {
    // value mod p^K for a p-adic integer
    REQUIRE(s.abs_precision() >= K);
    if (s.is_zero()) return 0;
    REQUIRE(s.valuation() >= 0);
    u64 mod = u64(ipow(s.prime(), K));
    return mulmod(u64(ipow(s.prime(), int(s.valuation()))) % mod, s.unit() % mod, mod);
}

PadicScalar random_scalar(std::mt19937_64& rng, i64 p, int prec) {
    std::uniform_int_distribution<i64> val(1, 1'000'000'000);
    std::uniform_int_distribution<int> shift(0, 3);
    PadicScalar s = PadicScalar::from_integer(p, val(rng), prec);
    return s * PadicScalar::from_integer(p, ipow(p, shift(rng)), prec);
}

}  // namespace

TEST_CASE("modular helpers") {
    CHECK(is_prime(2));
    CHECK(is_prime(7));
    CHECK(!is_prime(1));
    CHECK(!is_prime(15));
    CHECK(ipow(5, 4) == 625);
    CHECK(invmod_pp(2, 5, 4) == 313);
    CHECK(mulmod(2, 313, 625) == 1);
}

TEST_CASE("rational scalar: 1/2 in Q_5") {
    PadicScalar half = PadicScalar::from_rational(5, 1, 2, 4);
    CHECK(half.valuation() == 0);
    CHECK(half.unit() % 625 == 313);
    PadicScalar two = PadicScalar::from_integer(5, 2, 4);
    CHECK((half * two).equals(PadicScalar::from_integer(5, 1, 4)));
}

TEST_CASE("digit round-trip") {
    PadicScalar s = PadicScalar::from_integer(5, 1234, 10);
    auto d = s.digits(6);
    i64 rebuilt = 0, mult = 1;
    for (int dig : d) {
        rebuilt += dig * mult;
        mult *= 5;
    }
    rebuilt *= ipow(5, int(s.valuation()));
    CHECK((rebuilt - 1234) % ipow(5, 6) == 0);
}

TEST_CASE("norm multiplicativity and ultrametric inequality") {
    std::mt19937_64 rng(42);
    for (int i = 0; i < 200; ++i) {
        PadicScalar a = random_scalar(rng, 5, 20);
        PadicScalar b = random_scalar(rng, 5, 20);
        CHECK((a * b).norm() == PNorm(5, 1, a.norm().exponent() + b.norm().exponent()));
        CHECK((a + b).norm() <= max(a.norm(), b.norm()));
    }
}

TEST_CASE("add and mul are order-independent at min precision") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 100; ++i) {
        PadicScalar a = random_scalar(rng, 7, 18);
        PadicScalar b = random_scalar(rng, 7, 18);
        PadicScalar c = random_scalar(rng, 7, 18);
        CHECK(((a + b) + c).equals(a + (b + c)));
        CHECK((a + b).equals(b + a));
        CHECK(((a * b) * c).equals(a * (b * c)));
        CHECK((a * b).equals(b * a));
    }
}

TEST_CASE("exact zero is a distinguished state") {
    PadicScalar a = PadicScalar::from_integer(5, 77, 10);
    PadicScalar z = a - a;
    CHECK(z.is_zero());
    CHECK(z.norm().is_zero());
    // a value that merely has high valuation is not the exact zero
    PadicScalar tiny = PadicScalar::from_integer(5, ipow(5, 6), 10);
    CHECK(!tiny.is_zero());
    CHECK(tiny.norm() == PNorm::p_pow(5, -6));
}

TEST_CASE("PNorm comparison is exact") {
    CHECK(PNorm(5, 3, 9) < PNorm(5, 1, 8));
    CHECK(PNorm(5, 1, 2) == PNorm(5, 1, 2));
    CHECK(PNorm(5, 6, 3) > PNorm(5, 1, 3));
    CHECK(PNorm::zero(5) < PNorm::p_pow(5, -40));
    CHECK(PNorm(5, 25, 3) == PNorm(5, 1, 1));  // mantissa normalization
}

TEST_CASE("plog(6) in Q_5 matches the series oracle mod 5^6") {
    PadicScalar q = PadicScalar::from_integer(5, 6, 12);
    PadicScalar lg = plog(q);
    CHECK(residue_of(lg, 6) == series_log_residue(5, 5, 6));
}

TEST_CASE("pexp(5) in Q_5 matches the series oracle mod 5^6") {
    PadicScalar five = PadicScalar::from_integer(5, 5, 12);
    PadicScalar ex = pexp(five);
    CHECK(residue_of(ex, 6) == series_exp_residue(5, 5, 6));
}

TEST_CASE("plog is a homomorphism and pexp its inverse") {
    PadicScalar q = PadicScalar::from_integer(5, 6, 14);
    CHECK(plog(q * q).equals(plog(q) + plog(q)));
    CHECK(pexp(plog(q)).equals(q));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        std::uniform_int_distribution<i64> d(1, 100000);
        PadicScalar a = PadicScalar::from_integer(7, 1 + 7 * d(rng), 14);
        CHECK(pexp(plog(a)).equals(a));
        PadicScalar u = PadicScalar::from_integer(7, 7 * d(rng), 14);
        CHECK(plog(pexp(u)).equals(u));
    }
}

TEST_CASE("plog/pexp domain checks") {
    CHECK_THROWS_AS(plog(PadicScalar::from_integer(5, 2, 10)), domain_error);
    CHECK_THROWS_AS(pexp(PadicScalar::from_integer(5, 3, 10)), domain_error);
}

TEST_CASE("division and negative powers") {
    PadicScalar a = PadicScalar::from_integer(5, 10, 12);
    PadicScalar b = PadicScalar::from_integer(5, 4, 12);
    CHECK(((a / b) * b).equals(a));
    CHECK(a.pow(-2).equals((a * a).inv()));
    CHECK_THROWS_AS(a / (b - b), domain_error);
}
