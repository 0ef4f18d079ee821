#include "padicq/padic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace padicq {

bool is_prime(i64 n) {
    if (n < 2) return false;
    for (i64 d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

i64 ipow(i64 base, int e) {
    i64 r = 1;
    for (int i = 0; i < e; ++i) r *= base;
    return r;
}

int max_rel_digits(i64 p) {
    const u64 limit = u64(1) << 62;
    int r = 0;
    u64 m = 1;
    while (m < limit / u64(p)) {
        m *= u64(p);
        ++r;
    }
    return r;
}

u64 mulmod(u64 a, u64 b, u64 m) { return u64((u128(a) * b) % m); }

u64 powmod(u64 a, u64 e, u64 m) {
    u64 r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

u64 invmod_pp(u64 a, i64 p, int r) {
    // order of (Z/p^r)^* is p^(r-1)(p-1)
    u64 m = 1;
    for (int i = 0; i < r; ++i) m *= u64(p);
    u64 order = (m / u64(p)) * u64(p - 1);
    if (a % u64(p) == 0) throw domain_error("invmod_pp: argument not a unit");
    return powmod(a % m, order - 1, m);
}

// ---------------------------------------------------------------------------
// PNorm

void PNorm::normalize() {
    if (m_ == 0) {
        e_ = 0;
        return;
    }
    if (p_ < 2) throw domain_error("PNorm: bad prime");
    while (m_ % u64(p_) == 0) {
        m_ /= u64(p_);
        e_ -= 1;
    }
}

int PNorm::compare(const PNorm& o) const {
    if (m_ == 0 && o.m_ == 0) return 0;
    if (m_ == 0) return -1;
    if (o.m_ == 0) return 1;
    // compare m * p^-e vs om * p^-oe  <=>  m * p^oe vs om * p^e
    i64 d = e_ - o.e_;  // a = m p^-oe-d ...
    u128 lhs = m_, rhs = o.m_;
    const u128 cap = u128(1) << 120;
    if (d > 0) {
        // multiply rhs by p^d
        for (i64 i = 0; i < d && rhs < cap; ++i) rhs *= u128(p_);
    } else {
        for (i64 i = 0; i < -d && lhs < cap; ++i) lhs *= u128(p_);
    }
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
}

double PNorm::approx() const {
    if (m_ == 0) return 0.0;
    return double(m_) * std::pow(double(p_), -double(e_));
}

std::string PNorm::str() const {
    if (m_ == 0) return "0";
    std::ostringstream os;
    if (e_ <= 0) {
        // integer value m * p^{-e}
        if (-e_ <= 18) {
            u128 v = m_;
            for (i64 i = 0; i < -e_; ++i) v *= u128(p_);
            if (v < (u128(1) << 63)) {
                os << u64(v);
                return os.str();
            }
        }
        os << m_ << "*" << p_ << "^" << -e_;
        return os.str();
    }
    if (e_ <= 18) {
        u128 den = 1;
        for (i64 i = 0; i < e_; ++i) den *= u128(p_);
        if (den < (u128(1) << 63)) {
            os << m_ << "/" << u64(den);
            return os.str();
        }
    }
    os << m_ << "*" << p_ << "^-" << e_;
    return os.str();
}

PNorm max(const PNorm& a, const PNorm& b) { return a >= b ? a : b; }

// ---------------------------------------------------------------------------
// PadicScalar

u64 PadicScalar::modulus() const {
    u64 m = 1;
    for (int i = 0; i < rel_; ++i) m *= u64(p_);
    return m;
}

PadicScalar PadicScalar::zero(i64 p, i64 abs_prec) {
    return PadicScalar(p, true, abs_prec, 0, 0);
}

PadicScalar PadicScalar::from_unit(i64 p, i64 valuation, u64 unit, int rel_prec) {
    if (rel_prec < 1) throw precision_error("from_unit: rel precision < 1");
    if (rel_prec > max_rel_digits(p)) throw precision_error("from_unit: precision beyond 64-bit cap");
    u64 m = 1;
    for (int i = 0; i < rel_prec; ++i) m *= u64(p);
    unit %= m;
    if (unit % u64(p) == 0) throw domain_error("from_unit: unit divisible by p");
    return PadicScalar(p, false, valuation, unit, rel_prec);
}

PadicScalar PadicScalar::from_integer(i64 p, i64 value, i64 abs_prec) {
    if (!is_prime(p)) throw domain_error("not a prime: " + std::to_string(p));
    if (value == 0) return zero(p, abs_prec);
    i64 v = 0;
    u64 mag = value < 0 ? u64(-(value + 1)) + 1 : u64(value);
    while (mag % u64(p) == 0) {
        mag /= u64(p);
        ++v;
    }
    i64 rel = abs_prec - v;
    if (rel <= 0) return zero(p, abs_prec);
    int r = int(std::min<i64>(rel, max_rel_digits(p)));
    u64 m = 1;
    for (int i = 0; i < r; ++i) m *= u64(p);
    u64 u = mag % m;
    if (value < 0) u = (m - u) % m;
    return PadicScalar(p, false, v, u, r);
}

PadicScalar PadicScalar::from_rational(i64 p, i64 num, i64 den, i64 abs_prec) {
    if (den == 0) throw domain_error("zero denominator");
    if (num == 0) return zero(p, abs_prec);
    if (den < 0) {
        den = -den;
        num = -num;
    }
    i64 vd = 0;
    u64 dmag = u64(den);
    while (dmag % u64(p) == 0) {
        dmag /= u64(p);
        ++vd;
    }
    i64 vn = 0;
    u64 nmag = num < 0 ? u64(-(num + 1)) + 1 : u64(num);
    while (nmag % u64(p) == 0) {
        nmag /= u64(p);
        ++vn;
    }
    i64 v = vn - vd;
    i64 rel = abs_prec - v;
    if (rel <= 0) return zero(p, abs_prec);
    int r = int(std::min<i64>(rel, max_rel_digits(p)));
    u64 m = 1;
    for (int i = 0; i < r; ++i) m *= u64(p);
    u64 u = mulmod(nmag % m, invmod_pp(dmag % m, p, r), m);
    if (num < 0) u = (m - u) % m;
    if (!is_prime(p)) throw domain_error("not a prime: " + std::to_string(p));
    return PadicScalar(p, false, v, u, r);
}

i64 PadicScalar::valuation() const {
    if (zero_) throw domain_error("valuation of exact zero is +infinity");
    return val_;
}

PNorm PadicScalar::norm() const {
    if (zero_) return PNorm::zero(p_);
    return PNorm::p_pow(p_, -val_);
}

void PadicScalar::check_same_prime(const PadicScalar& o) const {
    if (p_ != o.p_) throw domain_error("prime mismatch");
}

PadicScalar PadicScalar::truncated(i64 abs_prec) const {
    if (zero_) return zero(p_, std::min(val_, abs_prec));
    i64 rel = abs_prec - val_;
    if (rel <= 0) return zero(p_, abs_prec);
    if (rel >= rel_) return *this;
    u64 m = 1;
    for (i64 i = 0; i < rel; ++i) m *= u64(p_);
    u64 u = unit_ % m;
    if (u == 0) return zero(p_, abs_prec);  // cannot happen: unit coprime to p
    return PadicScalar(p_, false, val_, u, int(rel));
}

PadicScalar PadicScalar::operator-() const {
    if (zero_) return *this;
    return PadicScalar(p_, false, val_, (modulus() - unit_) % modulus(), rel_);
}

PadicScalar PadicScalar::operator+(const PadicScalar& o) const {
    check_same_prime(o);
    if (zero_ && o.zero_) return zero(p_, std::min(val_, o.val_));
    if (zero_) return o.truncated(std::min(val_, o.abs_precision()));
    if (o.zero_) return truncated(std::min(o.val_, abs_precision()));
    i64 A = std::min(abs_precision(), o.abs_precision());
    i64 v = std::min(val_, o.val_);
    i64 rel = A - v;
    if (rel <= 0) return zero(p_, A);
    int r = int(std::min<i64>(rel, max_rel_digits(p_)));
    u64 m = 1;
    for (int i = 0; i < r; ++i) m *= u64(p_);
    u64 ua = unit_ % m, ub = o.unit_ % m;
    for (i64 i = 0; i < val_ - v; ++i) ua = mulmod(ua, u64(p_), m);
    for (i64 i = 0; i < o.val_ - v; ++i) ub = mulmod(ub, u64(p_), m);
    u64 u = (ua + ub) % m;
    if (u == 0) return zero(p_, v + r);
    i64 k = 0;
    while (u % u64(p_) == 0) {
        u /= u64(p_);
        ++k;
        m /= u64(p_);
    }
    u %= m;
    return PadicScalar(p_, false, v + k, u, int(r - k));
}

PadicScalar PadicScalar::operator-(const PadicScalar& o) const { return *this + (-o); }

PadicScalar PadicScalar::operator*(const PadicScalar& o) const {
    check_same_prime(o);
    if (zero_ || o.zero_) {
        // |0 * x| <= p^-(A + v_x)
        i64 a = zero_ ? val_ : val_;
        i64 b = o.zero_ ? o.val_ : o.val_;
        return zero(p_, a + b);
    }
    int r = std::min(rel_, o.rel_);
    u64 m = 1;
    for (int i = 0; i < r; ++i) m *= u64(p_);
    return PadicScalar(p_, false, val_ + o.val_, mulmod(unit_ % m, o.unit_ % m, m), r);
}

PadicScalar PadicScalar::operator/(const PadicScalar& o) const {
    check_same_prime(o);
    if (o.zero_) throw domain_error("division by exact zero");
    if (zero_) return zero(p_, val_ - o.val_);
    int r = std::min(rel_, o.rel_);
    u64 m = 1;
    for (int i = 0; i < r; ++i) m *= u64(p_);
    u64 u = mulmod(unit_ % m, invmod_pp(o.unit_ % m, p_, r), m);
    return PadicScalar(p_, false, val_ - o.val_, u, r);
}

PadicScalar PadicScalar::inv() const {
    if (zero_) throw domain_error("inverse of exact zero");
    return PadicScalar(p_, false, -val_, invmod_pp(unit_, p_, rel_), rel_);
}

PadicScalar PadicScalar::pow(i64 e) const {
    if (e == 0) return from_integer(p_, 1, zero_ ? val_ : val_ + rel_);
    if (e < 0) return inv().pow(-e);
    if (zero_) return zero(p_, val_ * e);
    u64 m = modulus();
    u64 u = powmod(unit_, u64(e), m);
    return PadicScalar(p_, false, val_ * e, u, rel_);
}

bool PadicScalar::equals(const PadicScalar& o) const {
    check_same_prime(o);
    return (*this - o).is_zero();
}

std::vector<int> PadicScalar::digits(int count) const {
    std::vector<int> d;
    u64 u = zero_ ? 0 : unit_;
    for (int i = 0; i < count; ++i) {
        d.push_back(int(u % u64(p_)));
        u /= u64(p_);
    }
    return d;
}

std::string PadicScalar::str() const {
    std::ostringstream os;
    os << p_ << "-adic: ";
    if (zero_) {
        os << "0 + O(" << p_ << "^" << val_ << ")";
        return os.str();
    }
    os << "v=" << val_ << ", digits=[";
    auto d = digits(std::min(rel_, 12));
    for (std::size_t i = 0; i < d.size(); ++i) os << (i ? "," : "") << d[i];
    if (rel_ > 12) os << ",...";
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------------------
// log / exp

static i64 vp_of(i64 n, i64 p) {
    i64 v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

PadicScalar plog(const PadicScalar& a) {
    i64 p = a.prime();
    PadicScalar z = a - PadicScalar::from_integer(p, 1, a.abs_precision());
    if (z.is_zero()) return z;
    i64 vz = z.valuation();
    if (vz < 1 || (p == 2 && vz < 2)) throw domain_error("plog: argument outside 1 + pZ_p convergence domain");
    i64 limit = a.abs_precision();
    PadicScalar sum = PadicScalar::zero(p, limit);
    PadicScalar zpow = z;
    int maxrel = max_rel_digits(p);
    for (i64 n = 1;; ++n) {
        if (n > 1 && n * vz - vp_of(n, p) > limit + 2) break;
        if (n > 4000) break;
        PadicScalar term = zpow / PadicScalar::from_integer(p, n, vp_of(n, p) + maxrel);
        if (n % 2 == 0) term = -term;
        sum = sum + term;
        zpow = zpow * z;
    }
    return sum;
}

PadicScalar pexp(const PadicScalar& a) {
    i64 p = a.prime();
    if (a.is_zero()) {
        return PadicScalar::from_integer(p, 1, a.abs_precision());
    }
    i64 va = a.valuation();
    if (va < 1 || (p == 2 && va < 2)) throw domain_error("pexp: argument outside convergence domain");
    i64 limit = a.abs_precision();
    int maxrel = max_rel_digits(p);
    PadicScalar sum = PadicScalar::from_integer(p, 1, limit);
    PadicScalar term = PadicScalar::from_integer(p, 1, limit);
    i64 vfact = 0;
    for (i64 n = 1;; ++n) {
        vfact += vp_of(n, p);
        if (n * va - vfact > limit + 2) break;
        if (n > 4000) break;
        term = term * a / PadicScalar::from_integer(p, n, vp_of(n, p) + maxrel);
        sum = sum + term;
    }
    return sum;
}

}  // namespace padicq
