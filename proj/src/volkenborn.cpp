#include "padicq/volkenborn.hpp"

#include <numeric>

namespace padicq {

namespace {

// sum_{x<p^N} f(x) q^x with incremental q^x, fast Laurent path when available
PadicScalar weighted_sum(const QContext& ctx, const CFunction& f, int N) {
    i64 count = ipow(ctx.p(), N);
    ctx.charge(count);
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    auto poly = to_qtpoly(ctx, f);
    if (poly) {
        PadicScalar z = ctx.one(), z_inv = ctx.one();
        PadicScalar q = ctx.q(), qinv = ctx.q().inv();
        for (i64 x = 0; x < count; ++x) {
            acc = acc + eval_qtpoly(ctx, *poly, z, z_inv) * z;
            z = z * q;
            z_inv = z_inv * qinv;
        }
        return acc;
    }
    PadicScalar qx = ctx.one();
    for (i64 x = 0; x < count; ++x) {
        acc = acc + eval_function_at(ctx, f, x) * qx;
        if (!ctx.q_is_one()) qx = qx * ctx.q();
    }
    return acc;
}

bool defects_converged(const std::vector<PNorm>& d) {
    if (d.size() < 3) return false;
    std::size_t k = d.size();
    const PNorm &a = d[k - 3], &b = d[k - 2], &c = d[k - 1];
    if (a.is_zero() && b.is_zero() && c.is_zero()) return true;
    return a > b && (b > c || (b.is_zero() && c.is_zero()));
}

}  // namespace

PadicScalar riemann_sum(const QContext& ctx, const CFunction& f, int N) {
    if (N < 1) throw domain_error("riemann_sum: N must be >= 1");
    return weighted_sum(ctx, f, N) / bracket_pN(ctx, N);
}

PadicScalar riemann_sum_fn(const QContext& ctx, const std::function<PadicScalar(i64)>& f, int N) {
    if (N < 1) throw domain_error("riemann_sum: N must be >= 1");
    i64 count = ipow(ctx.p(), N);
    ctx.charge(count);
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    PadicScalar qx = ctx.one();
    for (i64 x = 0; x < count; ++x) {
        acc = acc + f(x) * qx;
        if (!ctx.q_is_one()) qx = qx * ctx.q();
    }
    return acc / bracket_pN(ctx, N);
}

template <typename SumFn>
static IntegralResult integrate_impl(const QContext& ctx, SumFn&& level_sum, int N_min, int N_max) {
    if (N_min < 1 || N_min >= N_max) throw domain_error("integrate: need 1 <= N_min < N_max");
    IntegralResult r{PadicScalar::zero(ctx.p(), ctx.rel_cap()), {}, {}, false};
    PadicScalar prev = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    for (int N = N_min; N <= N_max; ++N) {
        PadicScalar s = level_sum(N);
        r.levels.push_back(N);
        if (N > N_min) r.defects.push_back((s - prev).norm());
        prev = s;
    }
    r.value = prev;
    r.converged = defects_converged(r.defects);
    return r;
}

IntegralResult integrate(const QContext& ctx, const CFunction& f, int N_min, int N_max) {
    return integrate_impl(ctx, [&](int N) { return riemann_sum(ctx, f, N); }, N_min, N_max);
}

IntegralResult integrate_fn(const QContext& ctx, const std::function<PadicScalar(i64)>& f,
                            int N_min, int N_max) {
    return integrate_impl(ctx, [&](int N) { return riemann_sum_fn(ctx, f, N); }, N_min, N_max);
}

Rational bernoulli_rational(int k) {
    if (k < 0 || k > 20) throw domain_error("bernoulli_rational: k out of range");
    // B_m = -1/(m+1) sum_{j<m} C(m+1,j) B_j
    auto reduce = [](Rational r) {
        i64 g = std::gcd(r.num < 0 ? -r.num : r.num, r.den < 0 ? -r.den : r.den);
        if (g > 1) {
            r.num /= g;
            r.den /= g;
        }
        if (r.den < 0) {
            r.den = -r.den;
            r.num = -r.num;
        }
        return r;
    };
    std::vector<Rational> B(std::size_t(k) + 1);
    B[0] = {1, 1};
    for (int m = 1; m <= k; ++m) {
        // C(m+1, j) incrementally
        i64 num = 0, den = 1;
        i64 binom = 1;  // C(m+1, 0)
        for (int j = 0; j < m; ++j) {
            // accumulate C(m+1,j) * B_j
            i64 tn = binom * B[std::size_t(j)].num;
            i64 td = B[std::size_t(j)].den;
            num = num * td + tn * den;
            den = den * td;
            Rational red = reduce({num, den});
            num = red.num;
            den = red.den;
            binom = binom * (m + 1 - j) / (j + 1);
        }
        B[std::size_t(m)] = reduce({-num, den * (m + 1)});
    }
    return B[std::size_t(k)];
}

PadicScalar qbernoulli_closed(const QContext& ctx, int m) {
    if (m < 0) throw domain_error("qbernoulli: m must be >= 0");
    if (ctx.q_is_one()) {
        Rational b = bernoulli_rational(m);
        return ctx.scalar(b.num, b.den);
    }
    PadicScalar acc = ctx.q_minus_one() / ctx.log_q();
    i64 binom = 1;
    for (int i = 1; i <= m; ++i) {
        binom = binom * (m - i + 1) / i;  // C(m, i)
        PadicScalar term = ctx.scalar(binom * i) / qint_int(ctx, i);
        if (i % 2 == 1) term = -term;
        acc = acc + term;
    }
    if (m == 0) return acc;
    return acc * (-ctx.q_minus_one()).pow(m).inv();
}

PadicScalar qbernoulli_integral(const QContext& ctx, int m, int N) {
    if (m < 0) throw domain_error("qbernoulli: m must be >= 0");
    CFunction integrand =
        m == 0 ? CFunction(fn_qpower(-1))
               : fn_product({fn_qpower(-1), fn_pow(fn_bracket(), m)});
    if (ctx.q_is_one()) {
        integrand = m == 0 ? fn_const(1) : fn_pow(fn_bracket(), m);
    }
    return riemann_sum(ctx, integrand, N);
}

PadicScalar qbernoulli_poly(const QContext& ctx, int n, const PadicScalar& x) {
    if (n < 0) throw domain_error("qbernoulli_poly: n must be >= 0");
    PadicScalar qx = qpow(ctx, x);
    PadicScalar bx = qint(ctx, x);
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    i64 binom = 1;
    for (int k = 0; k <= n; ++k) {
        PadicScalar term = ctx.scalar(binom) * qx.pow(k) * qbernoulli_closed(ctx, k);
        if (n - k > 0) term = term * bx.pow(n - k);
        acc = acc + term;
        binom = binom * (n - k) / (k + 1);
    }
    return acc;
}

}  // namespace padicq
