#include <doctest.h>

#include <random>

#include "padicq/qcalc.hpp"

using namespace padicq;

namespace {

QContext ctx56() { return QContext::make(5, 6, 1, 12); }

// q-Pascal recurrence oracle: binom(n,k)_q = binom(n-1,k-1)_q + q^k binom(n-1,k)_q
PadicScalar qbinom_pascal(const QContext& ctx, int n, int k) {
    std::vector<std::vector<PadicScalar>> t(std::size_t(n) + 1);
    for (int i = 0; i <= n; ++i) {
        t[std::size_t(i)].assign(std::size_t(k) + 1, PadicScalar::zero(ctx.p(), ctx.rel_cap()));
        t[std::size_t(i)][0] = ctx.one();
        for (int j = 1; j <= std::min(i, k); ++j) {
            PadicScalar up = (j <= i - 1) ? t[std::size_t(i - 1)][std::size_t(j)]
                                          : PadicScalar::zero(ctx.p(), ctx.rel_cap());
            t[std::size_t(i)][std::size_t(j)] =
                t[std::size_t(i - 1)][std::size_t(j - 1)] + qpow_int(ctx, j) * up;
        }
    }
    return t[std::size_t(n)][std::size_t(k)];
}

}  // namespace

TEST_CASE("context validation") {
    CHECK_THROWS_AS(QContext::make(4, 5, 1, 12), domain_error);
    CHECK_THROWS_AS(QContext::make(5, 7, 1, 12), domain_error);  // q != 1 mod 5
    CHECK_THROWS_AS(QContext::make(5, 6, 1, 2), domain_error);   // precision too low
    CHECK_THROWS_AS(QContext::make(2, 3, 1, 12), domain_error);  // p=2 needs q = 1 mod 4
    CHECK(QContext::make(2, 5, 1, 12).q().unit() == 5);
    CHECK(QContext::make(5, 1, 1, 12).q_is_one());
    CHECK(QContext::make(5, 11, 6, 12).q().valuation() == 0);  // rational q = 11/6
}

TEST_CASE("[5]_6 = 1555") {
    QContext ctx = ctx56();
    CHECK(qint_int(ctx, 5).equals(ctx.scalar(1555)));  // 1+6+36+216+1296
}

TEST_CASE("q^x by exp/log matches the integer lift") {
    QContext ctx = ctx56();
    // x = -1 as the Z_5 limit of 4, 24, 124, ...: q^x must equal q^{-1}
    PadicScalar minus_one = ctx.scalar(-1);
    CHECK(qpow(ctx, minus_one).equals(ctx.q().inv()));
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<i64> d(-2000, 2000);
    for (int i = 0; i < 40; ++i) {
        i64 e = d(rng);
        CHECK(qpow(ctx, ctx.scalar(e)).equals(qpow_int(ctx, e)));
    }
}

TEST_CASE("cocycle identity [x+y]_q = [x]_q + q^x [y]_q") {
    QContext ctx = ctx56();
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<i64> d(-500, 500);
    for (int i = 0; i < 60; ++i) {
        i64 x = d(rng), y = d(rng);
        PadicScalar lhs = qint_int(ctx, x + y);
        PadicScalar rhs = qint_int(ctx, x) + qpow_int(ctx, x) * qint_int(ctx, y);
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("q^x = 1 + (q-1)[x]_q") {
    QContext ctx = ctx56();
    for (i64 x : {-7, -1, 0, 1, 2, 13, 625}) {
        PadicScalar lhs = qpow_int(ctx, x);
        PadicScalar rhs = ctx.one() + ctx.q_minus_one() * qint_int(ctx, x);
        CHECK(lhs.equals(rhs));
    }
}

TEST_CASE("v_p([m]_q) = v_p(m) for q in 1+pZ_p") {
    QContext ctx = ctx56();
    for (i64 m : {1, 2, 5, 10, 25, 125, 375}) {
        i64 v = 0, mm = m;
        while (mm % 5 == 0) {
            mm /= 5;
            ++v;
        }
        CHECK(qint_int(ctx, m).valuation() == v);
    }
}

TEST_CASE("gaussian binomials against the q-Pascal recurrence") {
    QContext ctx = ctx56();
    CHECK(qbinom_int(ctx, 5, 2).equals(qbinom_pascal(ctx, 5, 2)));
    CHECK(qbinom_int(ctx, 7, 3).equals(qbinom_pascal(ctx, 7, 3)));
    CHECK(qbinom_int(ctx, 9, 4).equals(qbinom_pascal(ctx, 9, 4)));
}

TEST_CASE("binomial degenerate values") {
    QContext ctx = ctx56();
    for (int n = 1; n <= 4; ++n) {
        for (i64 i = 0; i < n; ++i) CHECK(qbinom_int(ctx, i, n).is_zero());
        CHECK(qbinom_int(ctx, n, n).equals(ctx.one()));
    }
    CHECK(qbinom(ctx, ctx.scalar(5), 2).equals(qbinom_int(ctx, 5, 2)));
}

TEST_CASE("bracket of p^N and derived contexts") {
    QContext ctx = ctx56();
    CHECK(bracket_pN(ctx, 1).equals(ctx.scalar(1555)));
    CHECK(bracket_pN(ctx, 2).valuation() == 2);
    QContext c2 = ctx.with_q_power(25);
    CHECK(c2.q().equals(ctx.q().pow(25)));
    CHECK(c2.log_q().equals(ctx.log_q() * ctx.scalar(25)));
    // classical context behaves like q = 1
    QContext cl = QContext::classical(5, 12);
    CHECK(qint_int(cl, 7).equals(cl.scalar(7)));
    CHECK(bracket_pN(cl, 2).equals(cl.scalar(25)));
}

TEST_CASE("budget accounting is cumulative") {
    QContext ctx = QContext::make(5, 6, 1, 12, 100);
    ctx.charge(60);
    CHECK(ctx.spent() == 60);
    CHECK_THROWS_AS(ctx.charge(60), budget_error);
}
