#pragma once

#include "padicq/dist.hpp"
#include "padicq/mahler.hpp"

namespace padicq {

/// Congruence expansion of [p^n]_q mu_{P,q}(a + p^n Z_p) against the series
/// sum_i P^(i)(a)/i! * beta_{i,q^{p^n}} [p^n]_q^i q^{ai}, truncated to `terms`
/// terms. `residual` is |lhs - rhs| at the [p^n]_q-mu scale; `residual_mu` the
/// same at the mu scale (divided by [p^n]_q). The two-displayed-term variant
/// with the minus sign is measured alongside as `alt_residual_mu`, without
/// being asserted anywhere.
struct CongruenceResult {
    PadicScalar lhs;
    PadicScalar rhs;
    PNorm residual;
    PNorm residual_mu;
    PNorm alt_residual_mu;
};

CongruenceResult check_congruence12(const QContext& ctx, const CFunction& P, i64 a, int n,
                                    int terms, int M);

struct DensityResult {
    PadicScalar lhs;  // sum_i g(i) mu_{P,q}(i + p^N Z_p)
    PadicScalar rhs;  // level-(N+M) Riemann sum of g P q^-x
    PNorm defect;
};

DensityResult check_density_theorem3(const QContext& ctx, const CFunction& P, const CFunction& g,
                                     int N, int M);

struct RecoveryRow {
    int n;
    PNorm diff;  // |f(a) - [p^n]_q mu_{f,q}(a + p^n Z_p)|
};

std::vector<RecoveryRow> check_rn_recovery(const QContext& ctx, const CFunction& f, i64 a,
                                           int n_max, int M);

struct DecompositionResult {
    CylinderDistribution mu1;  // distribution built from the fitted density
    CylinderDistribution mu2;  // mu - mu1, entry-wise
    PNorm bound;               // sup |mu2| over all stored cylinders
    bool exact_sum;            // mu1 + mu2 reproduces mu entry-wise
    CFunction fitted;          // q-polynomial fit of the RN derivative
    PNorm fit_residual;        // worst mismatch of the fit at held-out points
};

// Lebesgue-style decomposition: extract the RN derivative of a strong
// distribution, re-express it over the q-binomial basis (degree fit_degree,
// residual checked against threshold), and split mu = mu1 + mu2.
DecompositionResult decompose_theorem4(const QContext& ctx, const CylinderDistribution& mu, int M,
                                       int fit_degree, const PNorm& residual_threshold);

}  // namespace padicq
