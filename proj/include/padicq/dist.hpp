#pragma once

#include "padicq/volkenborn.hpp"

namespace padicq {

struct Cylinder {
    i64 a = 0;  // residue, 0 <= a < p^n
    int n = 0;  // level
};

enum class Provenance { base, from_function, difference, custom };

/// Depth-L table of cylinder values mu(a + p^n Z_p), n = 0..L.
struct CylinderDistribution {
    QContext ctx;
    int depth = 0;
    Provenance tag = Provenance::custom;
    int inner_level = 0;  // M used by from_function tables
    std::vector<std::vector<PadicScalar>> levels;  // levels[n] has p^n entries

    const PadicScalar& value(i64 a, int n) const;
};

// mu_q(a + p^n Z_p) = q^a / [p^n]_q, to depth L
CylinderDistribution base_distribution(const QContext& ctx, int L);

// mu_{f,q}(a + p^n Z_p) ~ (1/[p^{n+M}]_q) sum_{x<p^M} f(a + p^n x)
CylinderDistribution distribution_from_function(const QContext& ctx, const CFunction& f, int L,
                                                int M);
// a single cylinder value of mu_{f,q}, without building the whole table
PadicScalar mu_f_cylinder(const QContext& ctx, const CFunction& f, i64 a, int n, int M);

// entry-wise difference a - b (same ctx/depth)
CylinderDistribution dist_difference(const CylinderDistribution& a, const CylinderDistribution& b);

// max over stored parent cylinders of |mu(parent) - sum of children|
PNorm additivity_defect(const CylinderDistribution& d);

enum class Invariance { strong, weak, neither };

struct InvarianceReport {
    std::vector<PNorm> delta;          // delta_n for n = 0..depth-1
    PNorm fitted_c;                    // max of delta_n * p^n
    Invariance classification = Invariance::neither;
    std::vector<PNorm> admissible_c;   // c_n = max_a |[p^n]_q mu(a+p^n Z_p)| for n = 0..depth
    bool one_admissible = false;
};

InvarianceReport invariance_report(const CylinderDistribution& d);

struct RnResult {
    std::vector<PadicScalar> approximants;  // [p^n]_q mu(x+p^n Z_p), n = 1..n_max
    PadicScalar value;                      // deepest approximant
    std::vector<PNorm> defects;             // successive differences
};

// q-analogue Radon-Nikodym derivative of mu at x, as finite evidence
RnResult rn_derivative(const CylinderDistribution& d, i64 x, int n_max);

struct LipschitzEstimate {
    PNorm value;
    bool reliable = false;  // set when the distribution classifies strong
};

// max over pairs x != y at the deepest level of |f_mu(x)-f_mu(y)|/|x-y|
LipschitzEstimate lipschitz_estimate(const CylinderDistribution& d);

// JSON export/import of cylinder tables (schema used by the CLI)
std::string distribution_to_json(const CylinderDistribution& d);
CylinderDistribution distribution_from_json(const QContext& ctx, const std::string& text);

}  // namespace padicq
