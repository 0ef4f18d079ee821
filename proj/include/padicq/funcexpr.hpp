#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padicq/qcalc.hpp"

namespace padicq {

enum class NodeKind { Const, QBracket, QPower, QBinom, Sum, Product, Scale };

struct FuncNode;
using FuncPtr = std::shared_ptr<const FuncNode>;

struct FuncNode {
    NodeKind kind;
    i64 num = 0, den = 1;                  // Const, rational Scale
    std::optional<PadicScalar> coeff;      // Scale with a p-adic coefficient
    int param = 0;                         // QPower exponent c, QBinom n
    std::vector<FuncPtr> children;
};

/// Expression tree for functions Z_p -> Q_p built from [x]_q, q^(c*x),
/// Gaussian binomials, rational constants, sums, products and scalings.
class CFunction {
public:
    CFunction() = default;
    explicit CFunction(FuncPtr root) : root_(std::move(root)) {}
    const FuncPtr& root() const { return root_; }
    bool valid() const { return root_ != nullptr; }

private:
    FuncPtr root_;
};

// builders
CFunction fn_const(i64 num, i64 den = 1);
CFunction fn_bracket();
CFunction fn_qpower(int c);
CFunction fn_qbinom(int n);
CFunction fn_sum(std::vector<CFunction> parts);
CFunction fn_product(std::vector<CFunction> parts);
CFunction fn_scale(i64 num, i64 den, const CFunction& f);
CFunction fn_scale(const PadicScalar& c, const CFunction& f);
CFunction fn_pow(const CFunction& f, int e);  // e >= 1, repeated product

// grammar:
//   expr   := ['-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := number | '[x]' | 'q^(' int '*x)' | 'qbinom(x,' int ')'
//           | '(' expr ')' | factor '^' uint
// parse errors carry the 1-based column
CFunction parse_function(const std::string& text);
std::string to_string(const CFunction& f);

PadicScalar eval_function(const QContext& ctx, const CFunction& f, const PadicScalar& x);
PadicScalar eval_function_at(const QContext& ctx, const CFunction& f, i64 x);

// coefficients of f as a polynomial in y = [x]_q (q^(c*x) with c >= 0 is
// rewritten via q^x = 1 + (q-1)[x]_q); throws on QBinom or negative powers
std::vector<PadicScalar> to_qpoly(const QContext& ctx, const CFunction& f);
PadicScalar eval_qpoly(const QContext& ctx, const std::vector<PadicScalar>& c, const PadicScalar& y);

// formal (d/d[x]_q)^order of a q-polynomial
CFunction formal_qderiv(const QContext& ctx, const CFunction& f, int order);

// difference quotient (f(x+m) - f(x))/m, m != 0
PadicScalar delta1(const QContext& ctx, const CFunction& f, const PadicScalar& m,
                   const PadicScalar& x);

struct C1Norm {
    PNorm sup;    // sampled lower bound for ||f||_inf
    PNorm delta;  // sampled lower bound for ||Delta_1 f||_inf
};
// sampling over x mod p^depth and m in {u p^j : 1<=u<p, 0<=j<depth}
C1Norm c1_norm_estimate(const QContext& ctx, const CFunction& f, int depth);

/// Laurent polynomial in z = q^x: f(x) = sum_k coeffs[k] * z^(min_deg + k).
/// Available unless q = 1 or the expanded degree exceeds max_deg; used as
/// the fast path for long Riemann sums.
struct QtPoly {
    i64 min_deg = 0;
    std::vector<PadicScalar> coeffs;
};
std::optional<QtPoly> to_qtpoly(const QContext& ctx, const CFunction& f, int max_deg = 96);
// evaluate given z = q^x and z_inv = q^-x
PadicScalar eval_qtpoly(const QContext& ctx, const QtPoly& poly, const PadicScalar& z,
                        const PadicScalar& z_inv);

}  // namespace padicq
