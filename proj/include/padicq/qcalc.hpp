#pragma once

#include <atomic>
#include <memory>

#include "padicq/padic.hpp"

namespace padicq {

/// Ambient parameters: prime p, deformation q in 1 + pZ_p (or the q = 1
/// classical limit), working precision and a summation budget.
/// Immutable after construction; log q is cached eagerly.
class QContext {
public:
    static QContext make(i64 p, i64 q_num, i64 q_den, i64 work_prec, i64 budget = 100'000'000);
    static QContext classical(i64 p, i64 work_prec, i64 budget = 100'000'000);

    i64 p() const { return p_; }
    bool q_is_one() const { return q_is_one_; }
    const PadicScalar& q() const { return q_; }
    const PadicScalar& log_q() const { return log_q_; }          // nonzero when q != 1
    const PadicScalar& q_minus_one() const { return q_minus_one_; }
    const PadicScalar& inv_one_minus_q() const { return inv_one_minus_q_; }
    i64 work_prec() const { return work_prec_; }
    i64 budget() const { return budget_; }
    int rel_cap() const { return rel_cap_; }

    PadicScalar one() const { return PadicScalar::from_integer(p_, 1, rel_cap_); }
    PadicScalar scalar(i64 num, i64 den = 1) const {
        return PadicScalar::from_rational(p_, num, den, rel_cap_ + 8);
    }

    // context with q replaced by q^e (e >= 1), same prime and precision
    QContext with_q_power(i64 e) const;

    // cumulative budget accounting: throws budget_error once the running total
    // of summation terms (shared with derived contexts) exceeds the budget
    void charge(i64 terms) const;
    i64 spent() const { return spent_ ? spent_->load() : 0; }

private:
    QContext() = default;
    i64 p_ = 0;
    bool q_is_one_ = false;
    PadicScalar q_ = PadicScalar::zero(2, 1);
    PadicScalar log_q_ = PadicScalar::zero(2, 1);
    PadicScalar q_minus_one_ = PadicScalar::zero(2, 1);
    PadicScalar inv_one_minus_q_ = PadicScalar::zero(2, 1);
    i64 work_prec_ = 0;
    i64 budget_ = 0;
    int rel_cap_ = 0;
    std::shared_ptr<std::atomic<i64>> spent_;
};

// q^x for x in Z_p, via exp(x log q); agrees with repeated multiplication on integers
PadicScalar qpow(const QContext& ctx, const PadicScalar& x);
PadicScalar qpow_int(const QContext& ctx, i64 e);

// q-integer [x]_q = (1 - q^x)/(1 - q); equal to x in the q = 1 limit
PadicScalar qint(const QContext& ctx, const PadicScalar& x);
PadicScalar qint_int(const QContext& ctx, i64 n);

// [n]_q! = [n]_q [n-1]_q ... [1]_q
PadicScalar qfactorial(const QContext& ctx, int n);

// Gaussian binomial binom(x, n)_q = [x]_q [x-1]_q ... [x-n+1]_q / [n]_q!
PadicScalar qbinom(const QContext& ctx, const PadicScalar& x, int n);
PadicScalar qbinom_int(const QContext& ctx, i64 x, int n);

// [p^N]_q
PadicScalar bracket_pN(const QContext& ctx, int N);

}  // namespace padicq
