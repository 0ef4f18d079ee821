#include <doctest.h>

#include "padicq/funcexpr.hpp"

using namespace padicq;

namespace {

QContext ctx56() { return QContext::make(5, 6, 1, 14); }

}  // namespace

TEST_CASE("evaluation: [x]^2 at x=3, q=6") {
    QContext ctx = ctx56();
    CFunction f = parse_function("[x]^2");
    // [3]_6 = 1+6+36 = 43
    CHECK(eval_function_at(ctx, f, 3).equals(ctx.scalar(1849)));
    CHECK(eval_function(ctx, f, ctx.scalar(3)).equals(ctx.scalar(1849)));
}

TEST_CASE("parse -> print -> parse fixed point") {
    for (const char* src : {
             "[x]",
             "1",
             "-3/4",
             "[x]^2",
             "q^(2*x)",
             "q^(-1*x)",
             "qbinom(x,3)",
             "[x] + 2*q^(1*x)",
             "2 - [x]",
             "([x] + 1)*([x] - 1)",
             "q^(2*x) + 3*[x]",
             "3/2*[x]^3 - qbinom(x,2)",
         }) {
        CFunction f = parse_function(src);
        std::string printed = to_string(f);
        CFunction g = parse_function(printed);
        CHECK(to_string(g) == printed);
        // and the reparse evaluates identically
        QContext ctx = ctx56();
        for (i64 x : {0, 1, 7}) {
            CHECK(eval_function_at(ctx, f, x).equals(eval_function_at(ctx, g, x)));
        }
    }
}

TEST_CASE("parse errors carry a column") {
    for (const char* bad : {"", "[y]", "1 + ", "q^(x)", "qbinom(x)", "[x]^", "(1"}) {
        try {
            parse_function(bad);
            FAIL_CHECK("no parse error for: " << bad);
        } catch (const parse_error& e) {
            CHECK(e.column >= 1);
        }
    }
}

TEST_CASE("builders match parsed forms") {
    QContext ctx = ctx56();
    CFunction built = fn_sum({fn_pow(fn_bracket(), 2), fn_scale(3, 1, fn_qpower(-1))});
    CFunction parsed = parse_function("[x]^2 + 3*q^(-1*x)");
    for (i64 x : {0, 2, 5, 11}) {
        CHECK(eval_function_at(ctx, built, x).equals(eval_function_at(ctx, parsed, x)));
    }
}

TEST_CASE("formal derivative of q^x is the constant q-1") {
    QContext ctx = ctx56();
    CFunction d = formal_qderiv(ctx, CFunction(fn_qpower(1)), 1);
    for (i64 x : {0, 1, 9}) {
        CHECK(eval_function_at(ctx, d, x).equals(ctx.q_minus_one()));
    }
}

TEST_CASE("formal derivative as limit of quotients in [x]_q") {
    QContext ctx = ctx56();
    // (P(x+m) - P(x)) / ([x+m]_q - [x]_q) -> P'([x]_q) as m = p^k -> 0
    CFunction P = parse_function("[x]^2 + 3*[x]");
    CFunction dP = formal_qderiv(ctx, P, 1);
    for (i64 x : {0, 1, 3}) {
        PNorm prev = PNorm::p_pow(5, 10);
        for (int k = 1; k <= 5; ++k) {
            i64 m = ipow(5, k);
            PadicScalar quot =
                (eval_function_at(ctx, P, x + m) - eval_function_at(ctx, P, x)) /
                (qint_int(ctx, x + m) - qint_int(ctx, x));
            PNorm err = (quot - eval_function_at(ctx, dP, x)).norm();
            CHECK(err <= prev);
            prev = err;
        }
    }
}

TEST_CASE("delta1 on [x]_q equals q^x [m]_q / m") {
    QContext ctx = ctx56();
    CFunction f = fn_bracket();
    for (i64 x : {0, 2, 7}) {
        for (i64 m : {1, 3, 5, 25}) {
            PadicScalar got = delta1(ctx, f, ctx.scalar(m), ctx.scalar(x));
            PadicScalar want = qpow_int(ctx, x) * qint_int(ctx, m) / ctx.scalar(m);
            CHECK(got.equals(want));
        }
    }
}

TEST_CASE("sampled continuity") {
    QContext ctx = ctx56();
    CFunction f = parse_function("q^(2*x) + [x]^2");
    C1Norm norms = c1_norm_estimate(ctx, f, 3);
    for (i64 x : {0, 4, 13}) {
        for (int k = 1; k <= 3; ++k) {
            i64 y = x + ipow(5, k);
            PNorm gap = (eval_function_at(ctx, f, x) - eval_function_at(ctx, f, y)).norm();
            CHECK(gap <= norms.delta.scaled_p(-k));
        }
    }
}

TEST_CASE("c1 norm of [x]_q") {
    QContext ctx = ctx56();
    C1Norm norms = c1_norm_estimate(ctx, fn_bracket(), 3);
    CHECK(norms.sup == PNorm(5, 1, 0));
    CHECK(norms.delta == PNorm(5, 1, 0));
}

TEST_CASE("qpoly view and formal differentiation reject non-polynomials") {
    QContext ctx = ctx56();
    CHECK_THROWS_AS(to_qpoly(ctx, CFunction(fn_qbinom(2))), domain_error);
    CHECK_THROWS_AS(to_qpoly(ctx, CFunction(fn_qpower(-1))), domain_error);
    auto c = to_qpoly(ctx, parse_function("q^(1*x)"));
    REQUIRE(c.size() == 2);
    CHECK(c[0].equals(ctx.one()));
    CHECK(c[1].equals(ctx.q_minus_one()));
}

TEST_CASE("laurent view matches structural evaluation") {
    QContext ctx = ctx56();
    for (const char* src :
         {"[x]^3", "q^(-2*x) + [x]", "qbinom(x,2)", "([x]+1)^2 - q^(1*x)"}) {
        CFunction f = parse_function(src);
        auto poly = to_qtpoly(ctx, f);
        REQUIRE(poly.has_value());
        for (i64 x : {0, 1, 2, 8}) {
            PadicScalar z = qpow_int(ctx, x);
            CHECK(eval_qtpoly(ctx, *poly, z, z.inv()).equals(eval_function_at(ctx, f, x)));
        }
    }
    // no laurent form in the classical limit
    QContext cl = QContext::classical(5, 12);
    CHECK(!to_qtpoly(cl, parse_function("[x]")).has_value());
}
