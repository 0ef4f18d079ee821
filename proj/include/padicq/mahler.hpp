#pragma once

#include "padicq/funcexpr.hpp"

namespace padicq {

/// Coefficients of f against the q-binomial basis binom(x,n)_q, solved from
/// the values f(0..M); tail_norms[n] is the exact rational n*|a_{n,q}|.
struct MahlerExpansion {
    std::vector<PadicScalar> coeffs;
    std::vector<PNorm> tail_norms;
};

// B[i][n] = binom(i,n)_q for 0 <= i,n <= M; lower unitriangular
std::vector<std::vector<PadicScalar>> basis_matrix(const QContext& ctx, int M);

MahlerExpansion expand_mahler(const QContext& ctx, const CFunction& f, int M);
MahlerExpansion expand_from_values(const QContext& ctx, const std::vector<PadicScalar>& values);

// truncation f_m = sum_{i<=m} a_i binom(x,i)_q plus the horizon-limited tail
// bound max_{n >= m} n|a_{n,q}|
struct Truncation {
    CFunction f_m;
    PNorm tail_bound;
};
Truncation truncate_tail(const QContext& ctx, const MahlerExpansion& e, int m);

PadicScalar eval_expansion(const QContext& ctx, const MahlerExpansion& e, const PadicScalar& x);

}  // namespace padicq
