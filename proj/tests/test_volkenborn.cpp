#include <doctest.h>

#include "padicq/volkenborn.hpp"

using namespace padicq;

namespace {

QContext ctx56() { return QContext::make(5, 6, 1, 14); }

}  // namespace

TEST_CASE("mass: the integral of 1 is exactly 1 at every level") {
    QContext ctx = ctx56();
    for (int N = 1; N <= 6; ++N) {
        PadicScalar s = riemann_sum(ctx, fn_const(1), N);
        CHECK((s - ctx.one()).is_zero());
    }
}

TEST_CASE("geometric identity: level sum of q^-x") {
    QContext ctx = ctx56();
    for (int N = 1; N <= 4; ++N) {
        PadicScalar got = riemann_sum(ctx, CFunction(fn_qpower(-1)), N);
        // sum_{x<p^N} q^{-x} q^x = p^N, so the sum is p^N (1-q)/(1-q^{p^N})
        PadicScalar want = ctx.scalar(ipow(5, N)) / bracket_pN(ctx, N);
        CHECK(got.equals(want));
        CHECK(qbernoulli_integral(ctx, 0, N).equals(want));
    }
}

TEST_CASE("beta_0 closed form and convergence of the integral") {
    QContext ctx = ctx56();
    PadicScalar b0 = qbernoulli_closed(ctx, 0);
    CHECK(b0.equals(ctx.q_minus_one() / ctx.log_q()));
    for (int N = 3; N <= 6; ++N) {
        CHECK((qbernoulli_integral(ctx, 0, N) - b0).norm() <= PNorm::p_pow(5, -(N - 2)));
    }
}

TEST_CASE("beta_1 closed form") {
    QContext ctx = ctx56();
    // from the i=1 moment: beta_1 = ((q-1)/log q - 1) / (1-q)
    PadicScalar want = (ctx.q_minus_one() / ctx.log_q() - ctx.one()) * ctx.inv_one_minus_q();
    CHECK(qbernoulli_closed(ctx, 1).equals(want));
}

TEST_CASE("closed vs integral q-Bernoulli numbers, m <= 6") {
    QContext ctx = ctx56();
    for (int m = 0; m <= 6; ++m) {
        PNorm defect = (qbernoulli_closed(ctx, m) - qbernoulli_integral(ctx, m, 6)).norm();
        CHECK(defect <= PNorm::p_pow(5, -3));
    }
}

TEST_CASE("classical Bernoulli oracle") {
    auto eq = [](Rational r, i64 n, i64 d) { return r.num == n && r.den == d; };
    CHECK(eq(bernoulli_rational(0), 1, 1));
    CHECK(eq(bernoulli_rational(1), -1, 2));
    CHECK(eq(bernoulli_rational(2), 1, 6));
    CHECK(eq(bernoulli_rational(3), 0, 1));
    CHECK(eq(bernoulli_rational(4), -1, 30));
    CHECK(eq(bernoulli_rational(6), 1, 42));
}

TEST_CASE("classical limit routing") {
    QContext cl = QContext::classical(5, 12);
    CHECK(qbernoulli_closed(cl, 0).equals(cl.one()));
    CHECK(qbernoulli_closed(cl, 2).equals(cl.scalar(1, 6)));
    // Volkenborn sum of x at level N is (p^N - 1)/2 -> -1/2
    PadicScalar s = qbernoulli_integral(cl, 1, 6);
    CHECK((s - cl.scalar(-1, 2)).norm() <= PNorm::p_pow(5, -6));
}

TEST_CASE("integrate reports decaying defects for smooth integrands") {
    QContext ctx = ctx56();
    IntegralResult r = integrate(ctx, parse_function("[x]^2"), 2, 6);
    CHECK(r.converged);
    REQUIRE(r.defects.size() == 4);
    for (std::size_t i = 1; i < r.defects.size(); ++i) {
        CHECK(r.defects[i] <= r.defects[i - 1]);
    }
    CHECK(r.value.equals(riemann_sum(ctx, parse_function("[x]^2"), 6)));
}

TEST_CASE("a discontinuous table stub does not converge") {
    QContext ctx = ctx56();
    auto erratic = [&](i64 x) {
        // value depends on the top digit of x, so refinement keeps oscillating
        i64 top = x;
        while (top >= 5) top /= 5;
        return ctx.scalar(top * top + 1);
    };
    IntegralResult r = integrate_fn(ctx, erratic, 2, 6);
    CHECK(!r.converged);
}

TEST_CASE("q-Bernoulli polynomial vs the shifted integral") {
    QContext ctx = ctx56();
    for (i64 x : {0, 1, 3}) {
        for (int n = 1; n <= 3; ++n) {
            PadicScalar sym = qbernoulli_poly(ctx, n, ctx.scalar(x));
            PadicScalar num = riemann_sum_fn(
                ctx,
                [&](i64 y) {
                    return qpow_int(ctx, -y) * qint_int(ctx, x + y).pow(n);
                },
                5);
            CHECK((sym - num).norm() <= PNorm::p_pow(5, -3));
        }
    }
}
