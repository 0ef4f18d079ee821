#pragma once

#include <functional>

#include "padicq/funcexpr.hpp"

namespace padicq {

struct IntegralResult {
    PadicScalar value;           // deepest partial sum
    std::vector<int> levels;     // N values used
    std::vector<PNorm> defects;  // |S_{N+1} - S_N|
    bool converged = false;      // defects decay monotonically over the last three levels
};

// level-N Riemann sum (1/[p^N]_q) sum_{x<p^N} f(x) q^x
PadicScalar riemann_sum(const QContext& ctx, const CFunction& f, int N);
// same sum against an arbitrary integrand given by values at integers
PadicScalar riemann_sum_fn(const QContext& ctx, const std::function<PadicScalar(i64)>& f, int N);

IntegralResult integrate(const QContext& ctx, const CFunction& f, int N_min, int N_max);
IntegralResult integrate_fn(const QContext& ctx, const std::function<PadicScalar(i64)>& f,
                            int N_min, int N_max);

// q-Bernoulli number beta_{m,q} from the closed form
//   (1/(1-q)^m) [ (q-1)/log q + sum_{i=1}^m C(m,i)(-1)^i i/[i]_q ],
// routed to the exact rational Bernoulli numbers when q = 1
PadicScalar qbernoulli_closed(const QContext& ctx, int m);

// beta_{m,q} as the level-N Riemann sum of q^-x [x]_q^m
PadicScalar qbernoulli_integral(const QContext& ctx, int m, int N);

// q-Bernoulli polynomial beta_n(x) = sum_k C(n,k) q^{kx} beta_{k,q} [x]_q^{n-k}
PadicScalar qbernoulli_poly(const QContext& ctx, int n, const PadicScalar& x);

struct Rational {
    i64 num = 0;
    i64 den = 1;
};
// ordinary Bernoulli number B_k, exact (k <= 20)
Rational bernoulli_rational(int k);

}  // namespace padicq
