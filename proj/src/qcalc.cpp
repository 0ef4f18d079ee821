#include "padicq/qcalc.hpp"

namespace padicq {

QContext QContext::make(i64 p, i64 q_num, i64 q_den, i64 work_prec, i64 budget) {
    if (!is_prime(p)) throw domain_error("not a prime: " + std::to_string(p));
    if (work_prec < 4) throw domain_error("working precision must be >= 4");
    if (q_den == 0) throw domain_error("zero denominator in q");
    if (q_num == q_den) return classical(p, work_prec, budget);
    QContext ctx;
    ctx.p_ = p;
    ctx.work_prec_ = work_prec;
    ctx.budget_ = budget;
    ctx.spent_ = std::make_shared<std::atomic<i64>>(0);
    ctx.rel_cap_ = max_rel_digits(p);
    if (work_prec > ctx.rel_cap_)
        throw precision_error("requested precision exceeds 64-bit digit cap for p=" + std::to_string(p));
    ctx.q_ = PadicScalar::from_rational(p, q_num, q_den, ctx.rel_cap_);
    PadicScalar one = PadicScalar::from_integer(p, 1, ctx.rel_cap_);
    ctx.q_minus_one_ = ctx.q_ - one;
    i64 v1 = ctx.q_minus_one_.is_zero() ? ctx.rel_cap_ : ctx.q_minus_one_.valuation();
    if (v1 < 1 || (p == 2 && v1 < 2))
        throw domain_error("q must satisfy |1-q| < p^(-1/(p-1)): need q = 1 mod p (mod 4 for p=2)");
    ctx.inv_one_minus_q_ = (-ctx.q_minus_one_).inv();
    ctx.log_q_ = plog(ctx.q_);
    if (ctx.log_q_.is_zero()) throw precision_error("log q vanished at working precision");
    return ctx;
}

QContext QContext::classical(i64 p, i64 work_prec, i64 budget) {
    if (!is_prime(p)) throw domain_error("not a prime: " + std::to_string(p));
    if (work_prec < 4) throw domain_error("working precision must be >= 4");
    QContext ctx;
    ctx.p_ = p;
    ctx.q_is_one_ = true;
    ctx.work_prec_ = work_prec;
    ctx.budget_ = budget;
    ctx.spent_ = std::make_shared<std::atomic<i64>>(0);
    ctx.rel_cap_ = max_rel_digits(p);
    ctx.q_ = PadicScalar::from_integer(p, 1, ctx.rel_cap_);
    ctx.q_minus_one_ = PadicScalar::zero(p, ctx.rel_cap_);
    ctx.log_q_ = PadicScalar::zero(p, ctx.rel_cap_);
    ctx.inv_one_minus_q_ = ctx.q_;  // unused in the classical limit
    return ctx;
}

QContext QContext::with_q_power(i64 e) const {
    if (e < 1) throw domain_error("with_q_power: exponent must be >= 1");
    if (q_is_one_) return *this;
    QContext ctx;
    ctx.p_ = p_;
    ctx.work_prec_ = work_prec_;
    ctx.budget_ = budget_;
    ctx.spent_ = spent_;
    ctx.rel_cap_ = rel_cap_;
    ctx.q_ = q_.pow(e);
    PadicScalar one = PadicScalar::from_integer(p_, 1, rel_cap_);
    ctx.q_minus_one_ = ctx.q_ - one;
    if (ctx.q_minus_one_.is_zero()) {
        // q^e indistinguishable from 1 at working precision
        QContext cl = classical(p_, work_prec_, budget_);
        cl.spent_ = spent_;
        return cl;
    }
    ctx.inv_one_minus_q_ = (-ctx.q_minus_one_).inv();
    ctx.log_q_ = log_q_ * PadicScalar::from_integer(p_, e, rel_cap_ + 30);
    return ctx;
}

void QContext::charge(i64 terms) const {
    i64 total = spent_ ? spent_->fetch_add(terms) + terms : terms;
    if (total > budget_)
        throw budget_error("summation budget exceeded: " + std::to_string(total) + " > " +
                           std::to_string(budget_));
}

PadicScalar qpow_int(const QContext& ctx, i64 e) {
    if (ctx.q_is_one()) return ctx.one();
    return ctx.q().pow(e);
}

PadicScalar qpow(const QContext& ctx, const PadicScalar& x) {
    if (ctx.q_is_one()) return ctx.one();
    if (!x.is_zero() && x.valuation() < 0) throw domain_error("qpow: x outside Z_p");
    return pexp(x * ctx.log_q());
}

PadicScalar qint(const QContext& ctx, const PadicScalar& x) {
    if (ctx.q_is_one()) return x;
    if (!x.is_zero() && x.valuation() < 0) throw domain_error("qint: x outside Z_p");
    PadicScalar one = ctx.one();
    return (one - qpow(ctx, x)) * ctx.inv_one_minus_q();
}

PadicScalar qint_int(const QContext& ctx, i64 n) {
    if (ctx.q_is_one()) return ctx.scalar(n);
    PadicScalar one = ctx.one();
    return (one - qpow_int(ctx, n)) * ctx.inv_one_minus_q();
}

PadicScalar qfactorial(const QContext& ctx, int n) {
    if (n < 0) throw domain_error("qfactorial: negative n");
    PadicScalar r = ctx.one();
    for (int k = 2; k <= n; ++k) r = r * qint_int(ctx, k);
    return r;
}

PadicScalar qbinom(const QContext& ctx, const PadicScalar& x, int n) {
    if (n < 0) throw domain_error("qbinom: negative n");
    if (n == 0) return ctx.one();
    PadicScalar num = ctx.one();
    for (int k = 0; k < n; ++k) {
        PadicScalar xk = x - ctx.scalar(k);
        num = num * qint(ctx, xk);
    }
    return num / qfactorial(ctx, n);
}

PadicScalar qbinom_int(const QContext& ctx, i64 x, int n) {
    if (n < 0) throw domain_error("qbinom: negative n");
    if (n == 0) return ctx.one();
    PadicScalar num = ctx.one();
    for (int k = 0; k < n; ++k) num = num * qint_int(ctx, x - k);
    return num / qfactorial(ctx, n);
}

PadicScalar bracket_pN(const QContext& ctx, int N) {
    if (ctx.q_is_one()) return ctx.scalar(ipow(ctx.p(), N));
    return qint_int(ctx, ipow(ctx.p(), N));
}

}  // namespace padicq
