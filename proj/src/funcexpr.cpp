#include "padicq/funcexpr.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace padicq {

// ---------------------------------------------------------------------------
// builders

static FuncPtr make_node(FuncNode n) { return std::make_shared<const FuncNode>(std::move(n)); }

CFunction fn_const(i64 num, i64 den) {
    if (den == 0) throw domain_error("fn_const: zero denominator");
    if (den < 0) {
        den = -den;
        num = -num;
    }
    i64 g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    FuncNode n;
    n.kind = NodeKind::Const;
    n.num = num;
    n.den = den;
    return CFunction(make_node(std::move(n)));
}

CFunction fn_bracket() {
    FuncNode n;
    n.kind = NodeKind::QBracket;
    return CFunction(make_node(std::move(n)));
}

CFunction fn_qpower(int c) {
    FuncNode n;
    n.kind = NodeKind::QPower;
    n.param = c;
    return CFunction(make_node(std::move(n)));
}

CFunction fn_qbinom(int k) {
    if (k < 0) throw domain_error("fn_qbinom: negative n");
    FuncNode n;
    n.kind = NodeKind::QBinom;
    n.param = k;
    return CFunction(make_node(std::move(n)));
}

CFunction fn_sum(std::vector<CFunction> parts) {
    if (parts.empty()) return fn_const(0);
    if (parts.size() == 1) return parts[0];
    FuncNode n;
    n.kind = NodeKind::Sum;
    for (auto& p : parts) n.children.push_back(p.root());
    return CFunction(make_node(std::move(n)));
}

CFunction fn_product(std::vector<CFunction> parts) {
    if (parts.empty()) return fn_const(1);
    if (parts.size() == 1) return parts[0];
    FuncNode n;
    n.kind = NodeKind::Product;
    for (auto& p : parts) n.children.push_back(p.root());
    return CFunction(make_node(std::move(n)));
}

CFunction fn_scale(i64 num, i64 den, const CFunction& f) {
    FuncNode n;
    n.kind = NodeKind::Scale;
    if (den < 0) {
        den = -den;
        num = -num;
    }
    n.num = num;
    n.den = den;
    n.children.push_back(f.root());
    return CFunction(make_node(std::move(n)));
}

CFunction fn_scale(const PadicScalar& c, const CFunction& f) {
    FuncNode n;
    n.kind = NodeKind::Scale;
    n.coeff = c;
    n.children.push_back(f.root());
    return CFunction(make_node(std::move(n)));
}

CFunction fn_pow(const CFunction& f, int e) {
    if (e < 1) throw domain_error("fn_pow: exponent must be >= 1");
    if (e == 1) return f;
    std::vector<CFunction> parts(e, f);
    return fn_product(std::move(parts));
}

// ---------------------------------------------------------------------------
// parser

namespace {

struct Parser {
    const std::string& s;
    std::size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!consume(c))
            throw parse_error(std::string("expected '") + c + "'", pos + 1);
    }
    bool lookahead(const char* word) {
        skip_ws();
        return s.compare(pos, std::char_traits<char>::length(word), word) == 0;
    }
    void expect_word(const char* word) {
        if (!lookahead(word)) throw parse_error(std::string("expected '") + word + "'", pos + 1);
        pos += std::char_traits<char>::length(word);
    }

    i64 parse_int() {
        skip_ws();
        std::size_t start = pos;
        bool neg = false;
        if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) {
            neg = s[pos] == '-';
            ++pos;
        }
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw parse_error("expected integer", pos + 1);
        i64 v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v < 0) throw parse_error("integer overflow", start + 1);
            ++pos;
        }
        return neg ? -v : v;
    }

    CFunction parse_expr() {
        std::vector<CFunction> parts;
        bool neg = consume('-');
        CFunction t = parse_term();
        parts.push_back(neg ? fn_scale(-1, 1, t) : t);
        for (;;) {
            if (consume('+')) {
                parts.push_back(parse_term());
            } else if (consume('-')) {
                parts.push_back(fn_scale(-1, 1, parse_term()));
            } else {
                break;
            }
        }
        return fn_sum(std::move(parts));
    }

    CFunction parse_term() {
        std::vector<CFunction> factors;
        factors.push_back(parse_factor());
        while (consume('*')) factors.push_back(parse_factor());
        // flatten a^i * a^j runs into one product
        std::vector<CFunction> flat;
        for (auto& f : factors) {
            if (f.root()->kind == NodeKind::Product) {
                for (auto& c : f.root()->children) flat.push_back(CFunction(c));
            } else {
                flat.push_back(f);
            }
        }
        return fn_product(std::move(flat));
    }

    CFunction parse_factor() {
        CFunction base = parse_atom();
        while (peek() == '^') {
            consume('^');
            skip_ws();
            std::size_t at = pos;
            i64 e = parse_int();
            if (e < 0) throw parse_error("exponent must be non-negative", at + 1);
            if (e == 0) {
                base = fn_const(1);
            } else {
                base = fn_pow(base, int(e));
            }
        }
        return base;
    }

    CFunction parse_atom() {
        skip_ws();
        if (pos >= s.size()) throw parse_error("unexpected end of input", pos + 1);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            i64 num = parse_int();
            if (consume('/')) {
                i64 den = parse_int();
                if (den == 0) throw parse_error("zero denominator", pos);
                return fn_const(num, den);
            }
            return fn_const(num);
        }
        if (c == '[') {
            std::size_t at = pos;
            ++pos;
            if (pos < s.size() && s[pos] == 'x') {
                ++pos;
                if (pos < s.size() && s[pos] == ']') {
                    ++pos;
                    return fn_bracket();
                }
            }
            throw parse_error("expected '[x]'", at + 2);
        }
        if (lookahead("qbinom(")) {
            expect_word("qbinom(");
            expect('x');
            expect(',');
            std::size_t at = pos;
            i64 n = parse_int();
            if (n < 0) throw parse_error("qbinom order must be non-negative", at + 1);
            expect(')');
            return fn_qbinom(int(n));
        }
        if (c == 'q') {
            expect_word("q^(");
            i64 cc = parse_int();
            expect('*');
            expect('x');
            expect(')');
            return fn_qpower(int(cc));
        }
        if (c == '(') {
            ++pos;
            CFunction e = parse_expr();
            expect(')');
            return e;
        }
        throw parse_error(std::string("unknown symbol '") + c + "'", pos + 1);
    }
};

bool node_equal(const FuncPtr& a, const FuncPtr& b) {
    if (a == b) return true;
    if (a->kind != b->kind || a->num != b->num || a->den != b->den || a->param != b->param)
        return false;
    if (a->coeff.has_value() != b->coeff.has_value()) return false;
    if (a->coeff && !(a->coeff->equals(*b->coeff))) return false;
    if (a->children.size() != b->children.size()) return false;
    for (std::size_t i = 0; i < a->children.size(); ++i)
        if (!node_equal(a->children[i], b->children[i])) return false;
    return true;
}

std::string print_node(const FuncPtr& n, bool parenthesize_sum);

std::string print_factor(const FuncPtr& n) { return print_node(n, true); }

std::string print_product(const FuncPtr& n) {
    // group runs of equal factors as base^k
    std::ostringstream os;
    const auto& ch = n->children;
    std::size_t i = 0;
    bool first = true;
    while (i < ch.size()) {
        std::size_t j = i + 1;
        while (j < ch.size() && node_equal(ch[i], ch[j])) ++j;
        if (!first) os << "*";
        first = false;
        os << print_factor(ch[i]);
        if (j - i > 1) os << "^" << (j - i);
        i = j;
    }
    return os.str();
}

std::string print_node(const FuncPtr& n, bool parenthesize_sum) {
    std::ostringstream os;
    switch (n->kind) {
        case NodeKind::Const:
            if (n->den == 1)
                os << n->num;
            else
                os << n->num << "/" << n->den;
            break;
        case NodeKind::QBracket:
            os << "[x]";
            break;
        case NodeKind::QPower:
            os << "q^(" << n->param << "*x)";
            break;
        case NodeKind::QBinom:
            os << "qbinom(x," << n->param << ")";
            break;
        case NodeKind::Product:
            os << print_product(n);
            break;
        case NodeKind::Scale: {
            std::string inner = print_factor(n->children[0]);
            if (n->coeff) {
                os << "{" << n->coeff->str() << "}*" << inner;
            } else if (n->num == -1 && n->den == 1) {
                os << "-" << inner;
            } else {
                if (n->den == 1)
                    os << n->num;
                else
                    os << n->num << "/" << n->den;
                os << "*" << inner;
            }
            break;
        }
        case NodeKind::Sum: {
            std::ostringstream in;
            bool first = true;
            for (const auto& c : n->children) {
                if (c->kind == NodeKind::Scale && !c->coeff && c->num < 0) {
                    // render "- |coeff|*child"
                    in << (first ? "-" : " - ");
                    if (c->num != -1 || c->den != 1) {
                        in << -c->num;
                        if (c->den != 1) in << "/" << c->den;
                        in << "*";
                    }
                    in << print_factor(c->children[0]);
                } else {
                    if (!first) in << " + ";
                    in << print_node(c, false);
                }
                first = false;
            }
            if (parenthesize_sum)
                os << "(" << in.str() << ")";
            else
                os << in.str();
            break;
        }
    }
    return os.str();
}

}  // namespace

CFunction parse_function(const std::string& text) {
    Parser p(text);
    CFunction f = p.parse_expr();
    if (!p.eof()) throw parse_error("trailing input", p.pos + 1);
    return f;
}

std::string to_string(const CFunction& f) {
    if (!f.valid()) return "<empty>";
    return print_node(f.root(), false);
}

// ---------------------------------------------------------------------------
// evaluation

static PadicScalar scale_value(const QContext& ctx, const FuncNode& n, const PadicScalar& child) {
    if (n.coeff) return *n.coeff * child;
    return ctx.scalar(n.num, n.den) * child;
}

static PadicScalar eval_node(const QContext& ctx, const FuncPtr& n, const PadicScalar& x) {
    switch (n->kind) {
        case NodeKind::Const:
            return ctx.scalar(n->num, n->den);
        case NodeKind::QBracket:
            return qint(ctx, x);
        case NodeKind::QPower:
            return qpow(ctx, ctx.scalar(n->param) * x);
        case NodeKind::QBinom:
            return qbinom(ctx, x, n->param);
        case NodeKind::Sum: {
            PadicScalar acc = eval_node(ctx, n->children[0], x);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                acc = acc + eval_node(ctx, n->children[i], x);
            return acc;
        }
        case NodeKind::Product: {
            PadicScalar acc = eval_node(ctx, n->children[0], x);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                acc = acc * eval_node(ctx, n->children[i], x);
            return acc;
        }
        case NodeKind::Scale:
            return scale_value(ctx, *n, eval_node(ctx, n->children[0], x));
    }
    throw error("eval: corrupt node");
}

static PadicScalar eval_node_at(const QContext& ctx, const FuncPtr& n, i64 x) {
    switch (n->kind) {
        case NodeKind::Const:
            return ctx.scalar(n->num, n->den);
        case NodeKind::QBracket:
            return qint_int(ctx, x);
        case NodeKind::QPower:
            return qpow_int(ctx, i64(n->param) * x);
        case NodeKind::QBinom:
            return qbinom_int(ctx, x, n->param);
        case NodeKind::Sum: {
            PadicScalar acc = eval_node_at(ctx, n->children[0], x);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                acc = acc + eval_node_at(ctx, n->children[i], x);
            return acc;
        }
        case NodeKind::Product: {
            PadicScalar acc = eval_node_at(ctx, n->children[0], x);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                acc = acc * eval_node_at(ctx, n->children[i], x);
            return acc;
        }
        case NodeKind::Scale:
            return scale_value(ctx, *n, eval_node_at(ctx, n->children[0], x));
    }
    throw error("eval: corrupt node");
}

PadicScalar eval_function(const QContext& ctx, const CFunction& f, const PadicScalar& x) {
    if (!f.valid()) throw domain_error("empty function");
    if (!x.is_zero() && x.valuation() < 0) throw domain_error("eval: x outside Z_p");
    return eval_node(ctx, f.root(), x);
}

PadicScalar eval_function_at(const QContext& ctx, const CFunction& f, i64 x) {
    if (!f.valid()) throw domain_error("empty function");
    return eval_node_at(ctx, f.root(), x);
}

// ---------------------------------------------------------------------------
// polynomial view in y = [x]_q

namespace {

using Poly = std::vector<PadicScalar>;

Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a.size() >= b.size() ? a : b;
    const Poly& s = a.size() >= b.size() ? b : a;
    for (std::size_t i = 0; i < s.size(); ++i) r[i] = r[i] + s[i];
    return r;
}

Poly poly_mul(const QContext& ctx, const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, PadicScalar::zero(ctx.p(), ctx.rel_cap()));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    return r;
}

Poly poly_scale(const Poly& a, const PadicScalar& c) {
    Poly r = a;
    for (auto& v : r) v = v * c;
    return r;
}

Poly qpoly_node(const QContext& ctx, const FuncPtr& n) {
    switch (n->kind) {
        case NodeKind::Const:
            return {ctx.scalar(n->num, n->den)};
        case NodeKind::QBracket:
            return {PadicScalar::zero(ctx.p(), ctx.rel_cap()), ctx.one()};
        case NodeKind::QPower: {
            if (n->param < 0)
                throw domain_error("formal derivative: q^(c*x) with negative c is not a q-polynomial");
            // q^x = 1 + (q-1)[x]_q
            Poly base = {ctx.one(), ctx.q_minus_one()};
            Poly r = {ctx.one()};
            for (int i = 0; i < n->param; ++i) r = poly_mul(ctx, r, base);
            return r;
        }
        case NodeKind::QBinom:
            throw domain_error("formal derivative: qbinom node is not a q-polynomial");
        case NodeKind::Sum: {
            Poly r = qpoly_node(ctx, n->children[0]);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                r = poly_add(r, qpoly_node(ctx, n->children[i]));
            return r;
        }
        case NodeKind::Product: {
            Poly r = qpoly_node(ctx, n->children[0]);
            for (std::size_t i = 1; i < n->children.size(); ++i)
                r = poly_mul(ctx, r, qpoly_node(ctx, n->children[i]));
            return r;
        }
        case NodeKind::Scale: {
            Poly r = qpoly_node(ctx, n->children[0]);
            PadicScalar c = n->coeff ? *n->coeff : ctx.scalar(n->num, n->den);
            return poly_scale(r, c);
        }
    }
    throw error("qpoly: corrupt node");
}

}  // namespace

std::vector<PadicScalar> to_qpoly(const QContext& ctx, const CFunction& f) {
    if (!f.valid()) throw domain_error("empty function");
    return qpoly_node(ctx, f.root());
}

PadicScalar eval_qpoly(const QContext& ctx, const std::vector<PadicScalar>& c,
                       const PadicScalar& y) {
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * y + c[i];
    return acc;
}

CFunction formal_qderiv(const QContext& ctx, const CFunction& f, int order) {
    if (order < 1) throw domain_error("formal_qderiv: order must be >= 1");
    Poly c = to_qpoly(ctx, f);
    for (int o = 0; o < order; ++o) {
        if (c.size() <= 1) {
            c = {PadicScalar::zero(ctx.p(), ctx.rel_cap())};
            break;
        }
        Poly d(c.size() - 1, PadicScalar::zero(ctx.p(), ctx.rel_cap()));
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = c[k] * ctx.scalar(i64(k));
        c = d;
    }
    std::vector<CFunction> parts;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k].is_zero()) continue;
        CFunction basis = k == 0 ? fn_const(1) : fn_pow(fn_bracket(), int(k));
        parts.push_back(fn_scale(c[k], basis));
    }
    if (parts.empty()) return fn_const(0);
    return fn_sum(std::move(parts));
}

PadicScalar delta1(const QContext& ctx, const CFunction& f, const PadicScalar& m,
                   const PadicScalar& x) {
    if (m.is_zero()) throw domain_error("delta1: m must be nonzero");
    return (eval_function(ctx, f, x + m) - eval_function(ctx, f, x)) / m;
}

C1Norm c1_norm_estimate(const QContext& ctx, const CFunction& f, int depth) {
    if (depth < 1) throw domain_error("c1_norm_estimate: depth must be >= 1");
    i64 p = ctx.p();
    i64 count = ipow(p, depth);
    ctx.charge(count * (1 + (p - 1) * depth));
    C1Norm out{PNorm::zero(p), PNorm::zero(p)};
    for (i64 x = 0; x < count; ++x) {
        PadicScalar fx = eval_function_at(ctx, f, x);
        out.sup = max(out.sup, fx.norm());
        for (int j = 0; j < depth; ++j) {
            for (i64 u = 1; u < p; ++u) {
                i64 m = u * ipow(p, j);
                PadicScalar d = (eval_function_at(ctx, f, x + m) - fx) /
                                PadicScalar::from_integer(p, m, ctx.rel_cap());
                out.delta = max(out.delta, d.norm());
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Laurent view in z = q^x

namespace {

std::optional<QtPoly> qt_node(const QContext& ctx, const FuncPtr& n, int max_deg);

std::optional<QtPoly> qt_check(QtPoly p, int max_deg) {
    if (int(p.coeffs.size()) > max_deg + 1) return std::nullopt;
    return p;
}

std::optional<QtPoly> qt_mul(const QContext& ctx, const QtPoly& a, const QtPoly& b, int max_deg) {
    QtPoly r;
    r.min_deg = a.min_deg + b.min_deg;
    r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1,
                    PadicScalar::zero(ctx.p(), ctx.rel_cap()));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            r.coeffs[i + j] = r.coeffs[i + j] + a.coeffs[i] * b.coeffs[j];
    return qt_check(std::move(r), max_deg);
}

std::optional<QtPoly> qt_node(const QContext& ctx, const FuncPtr& n, int max_deg) {
    switch (n->kind) {
        case NodeKind::Const: {
            QtPoly r;
            r.coeffs = {ctx.scalar(n->num, n->den)};
            return r;
        }
        case NodeKind::QBracket: {
            QtPoly r;
            r.coeffs = {ctx.inv_one_minus_q(), -ctx.inv_one_minus_q()};
            return r;
        }
        case NodeKind::QPower: {
            QtPoly r;
            r.min_deg = n->param;
            r.coeffs = {ctx.one()};
            return r;
        }
        case NodeKind::QBinom: {
            // binom(x,k)_q = prod_j (1 - z q^-j)/(1-q) / [k]_q!
            QtPoly r;
            r.coeffs = {ctx.one()};
            for (int j = 0; j < n->param; ++j) {
                QtPoly lin;
                lin.coeffs = {ctx.inv_one_minus_q(), -qpow_int(ctx, -j) * ctx.inv_one_minus_q()};
                auto m = qt_mul(ctx, r, lin, max_deg);
                if (!m) return std::nullopt;
                r = *m;
            }
            PadicScalar inv_fact = qfactorial(ctx, n->param).inv();
            for (auto& c : r.coeffs) c = c * inv_fact;
            return r;
        }
        case NodeKind::Sum: {
            auto acc = qt_node(ctx, n->children[0], max_deg);
            if (!acc) return std::nullopt;
            for (std::size_t i = 1; i < n->children.size(); ++i) {
                auto b = qt_node(ctx, n->children[i], max_deg);
                if (!b) return std::nullopt;
                i64 mn = std::min(acc->min_deg, b->min_deg);
                i64 mx = std::max(acc->min_deg + i64(acc->coeffs.size()),
                                  b->min_deg + i64(b->coeffs.size()));
                QtPoly r;
                r.min_deg = mn;
                r.coeffs.assign(std::size_t(mx - mn), PadicScalar::zero(ctx.p(), ctx.rel_cap()));
                for (std::size_t i2 = 0; i2 < acc->coeffs.size(); ++i2)
                    r.coeffs[std::size_t(acc->min_deg - mn) + i2] =
                        r.coeffs[std::size_t(acc->min_deg - mn) + i2] + acc->coeffs[i2];
                for (std::size_t i2 = 0; i2 < b->coeffs.size(); ++i2)
                    r.coeffs[std::size_t(b->min_deg - mn) + i2] =
                        r.coeffs[std::size_t(b->min_deg - mn) + i2] + b->coeffs[i2];
                auto ck = qt_check(std::move(r), max_deg);
                if (!ck) return std::nullopt;
                acc = ck;
            }
            return acc;
        }
        case NodeKind::Product: {
            auto acc = qt_node(ctx, n->children[0], max_deg);
            if (!acc) return std::nullopt;
            for (std::size_t i = 1; i < n->children.size(); ++i) {
                auto b = qt_node(ctx, n->children[i], max_deg);
                if (!b) return std::nullopt;
                auto m = qt_mul(ctx, *acc, *b, max_deg);
                if (!m) return std::nullopt;
                acc = m;
            }
            return acc;
        }
        case NodeKind::Scale: {
            auto r = qt_node(ctx, n->children[0], max_deg);
            if (!r) return std::nullopt;
            PadicScalar c = n->coeff ? *n->coeff : ctx.scalar(n->num, n->den);
            for (auto& v : r->coeffs) v = v * c;
            return r;
        }
    }
    throw error("qtpoly: corrupt node");
}

}  // namespace

std::optional<QtPoly> to_qtpoly(const QContext& ctx, const CFunction& f, int max_deg) {
    if (!f.valid()) throw domain_error("empty function");
    if (ctx.q_is_one()) return std::nullopt;  // z = q^x is constant in the classical limit
    return qt_node(ctx, f.root(), max_deg);
}

PadicScalar eval_qtpoly(const QContext& ctx, const QtPoly& poly, const PadicScalar& z,
                        const PadicScalar& z_inv) {
    PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
    for (std::size_t i = poly.coeffs.size(); i-- > 0;) acc = acc * z + poly.coeffs[i];
    if (poly.min_deg > 0) acc = acc * z.pow(poly.min_deg);
    if (poly.min_deg < 0) acc = acc * z_inv.pow(-poly.min_deg);
    return acc;
}

}  // namespace padicq
