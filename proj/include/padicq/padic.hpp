#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace padicq {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : error {
    using error::error;
};
struct precision_error : error {
    using error::error;
};
struct budget_error : error {
    using error::error;
};
struct parse_error : error {
    parse_error(const std::string& msg, std::size_t col) : error(msg), column(col) {}
    std::size_t column;
};

bool is_prime(i64 n);
i64 ipow(i64 base, int e);

// largest r such that p^r < 2^62 (so products fit in u128 / sums in u64)
int max_rel_digits(i64 p);

u64 mulmod(u64 a, u64 b, u64 m);
u64 powmod(u64 a, u64 e, u64 m);
// inverse of a unit modulo p^r
u64 invmod_pp(u64 a, i64 p, int r);

/// An exact value m * p^{-e} with small integer mantissa m >= 0.
/// Used for all norms and defect magnitudes; never a float.
class PNorm {
public:
    PNorm() : p_(0), m_(0), e_(0) {}
    PNorm(i64 p, u64 mantissa, i64 exp10) : p_(p), m_(mantissa), e_(exp10) { normalize(); }
    static PNorm zero(i64 p) { return PNorm(p, 0, 0); }
    static PNorm p_pow(i64 p, i64 minus_e) { return PNorm(p, 1, -minus_e); }

    bool is_zero() const { return m_ == 0; }
    u64 mantissa() const { return m_; }
    i64 exponent() const { return e_; }  // value = m * p^{-e}
    i64 prime() const { return p_; }

    PNorm scaled_p(i64 k) const { return PNorm(p_, m_, e_ - k); }  // * p^k
    PNorm times(u64 n) const { return PNorm(p_, m_ * n, e_); }

    int compare(const PNorm& o) const;
    bool operator<(const PNorm& o) const { return compare(o) < 0; }
    bool operator<=(const PNorm& o) const { return compare(o) <= 0; }
    bool operator>(const PNorm& o) const { return compare(o) > 0; }
    bool operator>=(const PNorm& o) const { return compare(o) >= 0; }
    bool operator==(const PNorm& o) const { return compare(o) == 0; }

    double approx() const;
    std::string str() const;  // "1/125", "3*5^-9", ...

private:
    void normalize();
    i64 p_;
    u64 m_;
    i64 e_;
};

PNorm max(const PNorm& a, const PNorm& b);

/// A finite-precision element of Q_p in (valuation, unit) form.
/// The value is known modulo p^(valuation + rel_precision). Exact zero is a
/// distinguished state; a zero carries the absolute precision at which the
/// cancellation was observed.
class PadicScalar {
public:
    static PadicScalar from_integer(i64 p, i64 value, i64 abs_prec);
    static PadicScalar from_rational(i64 p, i64 num, i64 den, i64 abs_prec);
    static PadicScalar zero(i64 p, i64 abs_prec);
    static PadicScalar from_unit(i64 p, i64 valuation, u64 unit, int rel_prec);

    i64 prime() const { return p_; }
    bool is_zero() const { return zero_; }
    i64 valuation() const;          // throws on exact zero
    i64 abs_precision() const { return zero_ ? val_ : val_ + rel_; }
    int rel_precision() const { return rel_; }
    u64 unit() const { return unit_; }

    PNorm norm() const;             // 0 for exact zero

    PadicScalar operator-() const;
    PadicScalar operator+(const PadicScalar& o) const;
    PadicScalar operator-(const PadicScalar& o) const;
    PadicScalar operator*(const PadicScalar& o) const;
    PadicScalar operator/(const PadicScalar& o) const;
    PadicScalar inv() const;
    PadicScalar pow(i64 e) const;   // e may be negative
    PadicScalar truncated(i64 abs_prec) const;

    // equal as residues modulo p^min(abs_precisions)
    bool equals(const PadicScalar& o) const;

    std::vector<int> digits(int count) const;  // base-p digits of the unit part
    std::string str() const;                   // "5-adic: v=0, digits=[3,1,2,...]"

private:
    PadicScalar(i64 p, bool zero, i64 val, u64 unit, int rel)
        : p_(p), zero_(zero), val_(val), unit_(unit), rel_(rel) {}
    void check_same_prime(const PadicScalar& o) const;
    u64 modulus() const;  // p^rel_

    i64 p_;
    bool zero_;
    i64 val_;   // valuation; for exact zero: the abs precision of the zero claim
    u64 unit_;  // unit part modulo p^rel_, coprime to p unless zero
    int rel_;
};

// p-adic logarithm, defined for v_p(a-1) >= 1 (>= 2 when p = 2)
PadicScalar plog(const PadicScalar& a);
// p-adic exponential, defined for v_p(a) >= 1 (>= 2 when p = 2)
PadicScalar pexp(const PadicScalar& a);

}  // namespace padicq
