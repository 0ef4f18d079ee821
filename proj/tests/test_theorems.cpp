#include <doctest.h>

#include "padicq/theorems.hpp"

using namespace padicq;

namespace {

QContext ctx56() { return QContext::make(5, 6, 1, 14); }

}  // namespace

TEST_CASE("congruence with P = 1 collapses to the i = 0 term") {
    QContext ctx = ctx56();
    int M = 5;
    CongruenceResult r = check_congruence12(ctx, fn_const(1), 0, 2, 1, M);
    // lhs = [p^2]_q mu_{1,q}(0 + p^2 Z_p), rhs = beta_{0,q^{p^2}}
    QContext c2 = ctx.with_q_power(25);
    CHECK(r.rhs.equals(qbernoulli_closed(c2, 0)));
    CHECK(r.residual <= PNorm::p_pow(5, -(M - 2)));
}

TEST_CASE("congruence with P = [x], full series") {
    QContext ctx = ctx56();
    int M = 6;
    for (i64 a : {0, 1}) {
        CongruenceResult r = check_congruence12(ctx, fn_bracket(), a, 2, 2, M);
        CHECK(r.residual <= PNorm::p_pow(5, -(M - 2)));
    }
}

TEST_CASE("two-term congruence for P = [x]^2 holds mod [p^n]_q") {
    QContext ctx = ctx56();
    for (i64 a : {0, 1}) {
        for (int n = 1; n <= 3; ++n) {
            CongruenceResult r = check_congruence12(ctx, parse_function("[x]^2"), a, n, 2, 5);
            CHECK(r.residual <= PNorm::p_pow(5, -n));
            // the alternate-sign variant is measured, not asserted; it must at
            // least be a finite norm
            CHECK(r.alt_residual_mu <= PNorm::p_pow(5, 20));
        }
    }
}

TEST_CASE("density identity routes to q-Bernoulli numbers") {
    QContext ctx = ctx56();
    int N = 4, M = 4;
    SUBCASE("g=1, P=1: both sides near beta_0") {
        DensityResult r = check_density_theorem3(ctx, fn_const(1), fn_const(1), N, M);
        CHECK(r.defect <= PNorm::p_pow(5, -2));
        CHECK((r.rhs - qbernoulli_closed(ctx, 0)).norm() <= PNorm::p_pow(5, -2));
    }
    SUBCASE("g=1, P=[x]^2: both sides near beta_2") {
        DensityResult r =
            check_density_theorem3(ctx, parse_function("[x]^2"), fn_const(1), N, M);
        CHECK(r.defect <= PNorm::p_pow(5, -2));
        CHECK((r.rhs - qbernoulli_closed(ctx, 2)).norm() <= PNorm::p_pow(5, -2));
    }
    SUBCASE("g=[x], P=[x]^2: both sides near beta_3") {
        DensityResult r =
            check_density_theorem3(ctx, parse_function("[x]^2"), fn_bracket(), N, M);
        CHECK(r.defect <= PNorm::p_pow(5, -2));
        CHECK((r.rhs - qbernoulli_closed(ctx, 3)).norm() <= PNorm::p_pow(5, -2));
    }
}

TEST_CASE("RN recovery of polynomials and of q^(2x)+3[x]") {
    QContext ctx = ctx56();
    SUBCASE("polynomial at integer points") {
        CFunction P = parse_function("[x]^2");
        for (i64 a : {0, 1, 2}) {
            auto rows = check_rn_recovery(ctx, P, a, 4, 5);
            for (const auto& row : rows) {
                CHECK(row.diff <= PNorm::p_pow(5, -(row.n - 1)));
            }
        }
    }
    SUBCASE("general C1 expression") {
        CFunction f = parse_function("q^(2*x) + 3*[x]");
        auto rows = check_rn_recovery(ctx, f, 2, 4, 5);
        for (const auto& row : rows) {
            CHECK(row.diff <= PNorm::p_pow(5, -(row.n - 1)));
        }
    }
}

TEST_CASE("decomposition of mu_{P,q} leaves a negligible singular part") {
    QContext ctx = ctx56();
    int M = 5;
    CylinderDistribution mu = distribution_from_function(ctx, parse_function("[x]^2"), 3, M);
    DecompositionResult r = decompose_theorem4(ctx, mu, M, 6, PNorm::p_pow(5, -2));
    CHECK(r.exact_sum);
    CHECK(r.bound <= PNorm::p_pow(5, -(M - 2)));
}

TEST_CASE("decomposition of the base distribution") {
    QContext ctx = ctx56();
    CylinderDistribution mu = base_distribution(ctx, 3);
    DecompositionResult r = decompose_theorem4(ctx, mu, 5, 10, PNorm::p_pow(5, -4));
    CHECK(r.exact_sum);
    // the RN derivative of mu_q is q^x; mu_{q^x,q} = mu_q exactly, so the
    // singular part is only the fit truncation tail
    CHECK(r.bound <= PNorm::p_pow(5, -5));
    CHECK(r.fit_residual <= PNorm::p_pow(5, -8));
}

TEST_CASE("decompose refuses non-strong input") {
    QContext ctx = ctx56();
    CylinderDistribution mu = base_distribution(ctx, 3);
    mu.levels[3][1] = mu.levels[3][1] + ctx.scalar(1, 625);  // wreck the invariance
    CHECK_THROWS_AS(decompose_theorem4(ctx, mu, 4, 4, PNorm::p_pow(5, -2)), domain_error);
}
