#include "padicq/mahler.hpp"

namespace padicq {

std::vector<std::vector<PadicScalar>> basis_matrix(const QContext& ctx, int M) {
    if (M < 0) throw domain_error("basis_matrix: M must be >= 0");
    ctx.charge(i64(M + 1) * i64(M + 1));
    std::vector<std::vector<PadicScalar>> B;
    B.reserve(std::size_t(M) + 1);
    for (int i = 0; i <= M; ++i) {
        std::vector<PadicScalar> row;
        row.reserve(std::size_t(M) + 1);
        for (int n = 0; n <= M; ++n) {
            if (n > i)
                row.push_back(PadicScalar::zero(ctx.p(), ctx.rel_cap()));
            else
                row.push_back(qbinom_int(ctx, i, n));
        }
        B.push_back(std::move(row));
    }
    return B;
}

MahlerExpansion expand_from_values(const QContext& ctx, const std::vector<PadicScalar>& values) {
    if (values.empty()) throw domain_error("expand: no sample values");
    int M = int(values.size()) - 1;
    auto B = basis_matrix(ctx, M);
    MahlerExpansion e;
    e.coeffs.reserve(values.size());
    // forward substitution against the unitriangular basis
    for (int i = 0; i <= M; ++i) {
        PadicScalar acc = values[std::size_t(i)];
        for (int n = 0; n < i; ++n)
            acc = acc - B[std::size_t(i)][std::size_t(n)] * e.coeffs[std::size_t(n)];
        e.coeffs.push_back(acc);
    }
    for (int n = 0; n <= M; ++n) e.tail_norms.push_back(e.coeffs[std::size_t(n)].norm().times(u64(n)));
    return e;
}

MahlerExpansion expand_mahler(const QContext& ctx, const CFunction& f, int M) {
    if (M < 0) throw domain_error("expand_mahler: M must be >= 0");
    std::vector<PadicScalar> values;
    values.reserve(std::size_t(M) + 1);
    for (int i = 0; i <= M; ++i) values.push_back(eval_function_at(ctx, f, i));
    return expand_from_values(ctx, values);
}

Truncation truncate_tail(const QContext& ctx, const MahlerExpansion& e, int m) {
    int M = int(e.coeffs.size()) - 1;
    if (m < 0 || m > M) throw domain_error("truncate_tail: m out of range");
    std::vector<CFunction> parts;
    for (int i = 0; i <= m; ++i) {
        if (e.coeffs[std::size_t(i)].is_zero()) continue;
        parts.push_back(fn_scale(e.coeffs[std::size_t(i)], fn_qbinom(i)));
    }
    Truncation t{parts.empty() ? fn_const(0) : fn_sum(std::move(parts)), PNorm::zero(ctx.p())};
    for (int n = m; n <= M; ++n) t.tail_bound = max(t.tail_bound, e.tail_norms[std::size_t(n)]);
    return t;
}

PadicScalar eval_expansion(const QContext& ctx, const MahlerExpansion& e, const PadicScalar& x) {
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    PadicScalar basis = ctx.one();  // binom(x,0)_q
    for (std::size_t n = 0; n < e.coeffs.size(); ++n) {
        if (n > 0) {
            // binom(x,n) = binom(x,n-1) * [x-n+1]_q / [n]_q
            basis = basis * qint(ctx, x - ctx.scalar(i64(n) - 1)) / qint_int(ctx, i64(n));
        }
        acc = acc + e.coeffs[n] * basis;
    }
    return acc;
}

}  // namespace padicq
