#include "padicq/theorems.hpp"

namespace padicq {

CongruenceResult check_congruence12(const QContext& ctx, const CFunction& P, i64 a, int n,
                                    int terms, int M) {
    if (n < 1 || terms < 1) throw domain_error("check_congruence12: need n >= 1, terms >= 1");
    std::vector<PadicScalar> coeffs = to_qpoly(ctx, P);  // throws on non-polynomial P
    int degree = int(coeffs.size()) - 1;
    if (terms > degree + 1) terms = degree + 1;

    PadicScalar bracket = bracket_pN(ctx, n);
    PadicScalar mu_val = mu_f_cylinder(ctx, P, a, n, M);
    PadicScalar lhs = bracket * mu_val;

    QContext ctx_n = ctx.with_q_power(ipow(ctx.p(), n));
    PadicScalar ya = qint_int(ctx, a);
    PadicScalar qa = qpow_int(ctx, a);

    // P^(i)(a)/i! = sum_k C(k,i) c_k y^{k-i}; binomial form avoids dividing by i!
    auto taylor_coeff = [&](int i) {
        PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
        for (int k = i; k <= degree; ++k) {
            i64 binom = 1;
            for (int j = 0; j < i; ++j) binom = binom * (k - j) / (j + 1);
            PadicScalar term = ctx.scalar(binom) * coeffs[std::size_t(k)];
            if (k - i > 0) term = term * ya.pow(k - i);
            acc = acc + term;
        }
        return acc;
    };

    PadicScalar rhs = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    for (int i = 0; i < terms; ++i) {
        PadicScalar term = taylor_coeff(i) * qbernoulli_closed(ctx_n, i);
        if (i > 0) term = term * bracket.pow(i) * qa.pow(i);
        rhs = rhs + term;
    }

    CongruenceResult r{lhs, rhs, (lhs - rhs).norm(), (lhs - rhs).norm().scaled_p(n),
                       PNorm::zero(ctx.p())};

    // the Eq. 18-style variant: mu ~ P(a)/[p^n] beta_0' - beta_1' P'(a)
    PadicScalar alt = taylor_coeff(0) * qbernoulli_closed(ctx_n, 0) / bracket -
                      qbernoulli_closed(ctx_n, 1) * taylor_coeff(1);
    r.alt_residual_mu = (mu_val - alt).norm();
    return r;
}

DensityResult check_density_theorem3(const QContext& ctx, const CFunction& P, const CFunction& g,
                                     int N, int M) {
    if (N < 1 || M < 1) throw domain_error("check_density: need N, M >= 1");
    i64 outer = ipow(ctx.p(), N);
    ctx.charge(outer * ipow(ctx.p(), M));
    PadicScalar lhs = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    auto poly = to_qtpoly(ctx, P);
    PadicScalar inv_bracket = bracket_pN(ctx, N + M).inv();
    for (i64 i = 0; i < outer; ++i) {
        PadicScalar mu_val = [&] {
            if (poly) {
                // inline single-cylinder sum to avoid re-deriving the poly
                PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
                PadicScalar z = qpow_int(ctx, i), zi = z.inv();
                PadicScalar qpn = qpow_int(ctx, outer), qpn_inv = qpn.inv();
                for (i64 x = 0, cnt = ipow(ctx.p(), M); x < cnt; ++x) {
                    acc = acc + eval_qtpoly(ctx, *poly, z, zi);
                    z = z * qpn;
                    zi = zi * qpn_inv;
                }
                return acc * inv_bracket;
            }
            return mu_f_cylinder(ctx, P, i, N, M);
        }();
        lhs = lhs + eval_function_at(ctx, g, i) * mu_val;
    }
    CFunction integrand = fn_product({g, P, fn_qpower(-1)});
    PadicScalar rhs = riemann_sum(ctx, integrand, N + M);
    return DensityResult{lhs, rhs, (lhs - rhs).norm()};
}

std::vector<RecoveryRow> check_rn_recovery(const QContext& ctx, const CFunction& f, i64 a,
                                           int n_max, int M) {
    if (n_max < 1) throw domain_error("check_rn_recovery: n_max must be >= 1");
    std::vector<RecoveryRow> rows;
    PadicScalar fa = eval_function_at(ctx, f, a);
    for (int n = 1; n <= n_max; ++n) {
        i64 res = a % ipow(ctx.p(), n);
        PadicScalar approx = bracket_pN(ctx, n) * mu_f_cylinder(ctx, f, res, n, M);
        rows.push_back({n, (fa - approx).norm()});
    }
    return rows;
}

namespace {

// helpers for dense polynomials in y = [x]_q, low degree first
std::vector<PadicScalar> poly_make(const QContext& ctx, int deg) {
    return std::vector<PadicScalar>(std::size_t(deg) + 1,
                                    PadicScalar::zero(ctx.p(), ctx.rel_cap()));
}

void poly_axpy(std::vector<PadicScalar>& acc, const PadicScalar& c,
               const std::vector<PadicScalar>& p) {
    for (std::size_t i = 0; i < p.size(); ++i) acc[i] = acc[i] + c * p[i];
}

PadicScalar poly_eval(const QContext& ctx, const std::vector<PadicScalar>& p,
                      const PadicScalar& y) {
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    for (std::size_t i = p.size(); i > 0; --i) acc = acc * y + p[i - 1];
    return acc;
}

}  // namespace

DecompositionResult decompose_theorem4(const QContext& ctx, const CylinderDistribution& mu, int M,
                                       int fit_degree, const PNorm& residual_threshold) {
    if (fit_degree < 0) throw domain_error("decompose: fit degree must be >= 0");
    InvarianceReport rep = invariance_report(mu);
    if (rep.classification != Invariance::strong)
        throw domain_error("decompose: distribution is not strongly q-invariant");
    int L = mu.depth;
    i64 pl = ipow(ctx.p(), L);
    const int d = fit_degree, holdout = 3;
    if (d + holdout >= pl) throw domain_error("decompose: fit degree too large for table depth");

    // deepest RN approximants at integer points
    PadicScalar bracket = bracket_pN(ctx, L);
    std::vector<PadicScalar> samples;
    for (i64 x = 0; x <= d + holdout; ++x) samples.push_back(bracket * mu.value(x, L));

    // The approximants of a density P decompose over the beta moments of
    // q^{p^L}: [p^L]_q mu_{P,q}(x + p^L Z_p) = sum_i P^(i)(x)/i! beta_i'
    // [p^L]^i q^{xi}, and the identity is exact when beta_i' is taken as the
    // same inner-level-M sum that built the table. Solving that triangular
    // system for P removes the order-[p^L] bias a direct fit would keep.
    QContext ctx_L = ctx.q_is_one() ? ctx : ctx.with_q_power(pl);
    std::vector<PadicScalar> beta;
    for (int i = 0; i <= d; ++i) beta.push_back(qbernoulli_integral(ctx_L, i, M));

    // samples as a polynomial in y: q-binomial fit, then basis change via
    // binom(x,n)_q = q^{-n(n-1)/2}/[n]_q! prod_{j<n}(y - [j]_q)
    MahlerExpansion fit =
        expand_from_values(ctx, {samples.begin(), samples.begin() + d + 1});
    std::vector<PadicScalar> S = poly_make(ctx, d);
    std::vector<PadicScalar> prod = poly_make(ctx, d);
    prod[0] = ctx.one();
    for (int n = 0; n <= d; ++n) {
        if (n > 0) {
            PadicScalar root = qint_int(ctx, n - 1);
            for (int i = n; i > 0; --i) prod[std::size_t(i)] = prod[std::size_t(i - 1)] - root * prod[std::size_t(i)];
            prod[0] = -root * prod[0];
        }
        PadicScalar scale = fit.coeffs[std::size_t(n)] * qpow_int(ctx, -(i64(n) * (n - 1) / 2)) /
                            qfactorial(ctx, n);
        poly_axpy(S, scale, prod);
    }

    // response of the monomial y^k through the congruence
    std::vector<std::vector<PadicScalar>> rho;
    for (int k = 0; k <= d; ++k) {
        std::vector<PadicScalar> r = poly_make(ctx, d);
        std::vector<PadicScalar> qxi = poly_make(ctx, d);  // (1 + (q-1)y)^i
        qxi[0] = ctx.one();
        i64 binom = 1;
        PadicScalar bpow = ctx.one();
        for (int i = 0; i <= k; ++i) {
            if (i > 0) {
                binom = binom * (k - i + 1) / i;
                bpow = bpow * bracket;
                for (int j = i; j > 0; --j)
                    qxi[std::size_t(j)] = qxi[std::size_t(j)] + ctx.q_minus_one() * qxi[std::size_t(j - 1)];
            }
            // term: C(k,i) beta_i [p^L]^i y^{k-i} (1+(q-1)y)^i
            PadicScalar c = ctx.scalar(binom) * beta[std::size_t(i)] * bpow;
            for (int j = 0; j <= i; ++j)
                r[std::size_t(k - i + j)] = r[std::size_t(k - i + j)] + c * qxi[std::size_t(j)];
        }
        rho.push_back(std::move(r));
    }

    // back substitution (rho_k has an invertible leading coefficient)
    std::vector<PadicScalar> coef = poly_make(ctx, d);
    std::vector<PadicScalar> rem = S;
    for (int k = d; k >= 0; --k) {
        PadicScalar c = rem[std::size_t(k)] / rho[std::size_t(k)][std::size_t(k)];
        coef[std::size_t(k)] = c;
        for (int j = 0; j <= k; ++j)
            rem[std::size_t(j)] = rem[std::size_t(j)] - c * rho[std::size_t(k)][std::size_t(j)];
    }
    std::vector<CFunction> parts;
    for (int k = 0; k <= d; ++k)
        parts.push_back(fn_scale(coef[std::size_t(k)],
                                 k == 0 ? fn_const(1) : fn_pow(fn_bracket(), k)));
    CFunction fitted = fn_sum(std::move(parts));

    // held-out residual of the predicted approximants
    std::vector<PadicScalar> predicted = poly_make(ctx, d);
    for (int k = 0; k <= d; ++k) poly_axpy(predicted, coef[std::size_t(k)], rho[std::size_t(k)]);
    PNorm fit_residual = PNorm::zero(ctx.p());
    for (i64 x = d + 1; x <= d + holdout; ++x) {
        PadicScalar pred = poly_eval(ctx, predicted, qint_int(ctx, x));
        fit_residual = max(fit_residual, (pred - samples[std::size_t(x)]).norm());
    }
    if (fit_residual > residual_threshold)
        throw domain_error("decompose: RN derivative not expressible at this fit degree (residual " +
                           fit_residual.str() + ")");

    CylinderDistribution mu1 = distribution_from_function(ctx, fitted, L, M);
    CylinderDistribution mu2 = dist_difference(mu, mu1);
    PNorm bound = PNorm::zero(ctx.p());
    bool exact = true;
    for (int n = 0; n <= L; ++n) {
        i64 count = ipow(ctx.p(), n);
        for (i64 a = 0; a < count; ++a) {
            bound = max(bound, mu2.value(a, n).norm());
            if (!(mu1.value(a, n) + mu2.value(a, n)).equals(mu.value(a, n))) exact = false;
        }
    }
    return DecompositionResult{std::move(mu1), std::move(mu2), bound, exact, fitted, fit_residual};
}

}  // namespace padicq
