#include "padicq/dist.hpp"

#include <nlohmann/json.hpp>

namespace padicq {

using nlohmann::json;

const PadicScalar& CylinderDistribution::value(i64 a, int n) const {
    if (n < 0 || n > depth) throw domain_error("cylinder level out of range");
    i64 m = ipow(ctx.p(), n);
    a %= m;
    if (a < 0) a += m;
    return levels[std::size_t(n)][std::size_t(a)];
}

CylinderDistribution base_distribution(const QContext& ctx, int L) {
    if (L < 1) throw domain_error("depth must be >= 1");
    i64 total = 0;
    for (int n = 0; n <= L; ++n) total += ipow(ctx.p(), n);
    ctx.charge(total);
    CylinderDistribution d{ctx, L, Provenance::base, 0, {}};
    for (int n = 0; n <= L; ++n) {
        i64 count = ipow(ctx.p(), n);
        PadicScalar inv_bracket = bracket_pN(ctx, n).inv();
        std::vector<PadicScalar> row;
        row.reserve(std::size_t(count));
        PadicScalar qa = ctx.one();
        for (i64 a = 0; a < count; ++a) {
            row.push_back(qa * inv_bracket);
            qa = qa * ctx.q();
        }
        d.levels.push_back(std::move(row));
    }
    return d;
}

namespace {

// sum_{x<p^M} f(a + p^n x), with incremental powers of q when f is a Laurent
// polynomial in q^x
std::vector<PadicScalar> level_sums(const QContext& ctx, const CFunction& f,
                                    const std::optional<QtPoly>& poly, int n, i64 a_begin,
                                    i64 a_end, int M) {
    i64 pn = ipow(ctx.p(), n);
    i64 inner = ipow(ctx.p(), M);
    std::vector<PadicScalar> out;
    out.reserve(std::size_t(a_end - a_begin));
    if (poly) {
        PadicScalar q = ctx.q(), qinv = q.inv();
        PadicScalar qpn = qpow_int(ctx, pn), qpn_inv = qpn.inv();
        PadicScalar z0 = qpow_int(ctx, a_begin), z0_inv = z0.inv();
        for (i64 a = a_begin; a < a_end; ++a) {
            PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
            PadicScalar z = z0, zi = z0_inv;
            for (i64 x = 0; x < inner; ++x) {
                acc = acc + eval_qtpoly(ctx, *poly, z, zi);
                z = z * qpn;
                zi = zi * qpn_inv;
            }
            out.push_back(acc);
            z0 = z0 * q;
            z0_inv = z0_inv * qinv;
        }
        return out;
    }
    for (i64 a = a_begin; a < a_end; ++a) {
        PadicScalar acc = PadicScalar::zero(ctx.p(), ctx.rel_cap());
        for (i64 x = 0; x < inner; ++x) acc = acc + eval_function_at(ctx, f, a + pn * x);
        out.push_back(acc);
    }
    return out;
}

}  // namespace

CylinderDistribution distribution_from_function(const QContext& ctx, const CFunction& f, int L,
                                                int M) {
    if (L < 1 || M < 1) throw domain_error("depth and inner level must be >= 1");
    i64 total = 0;
    for (int n = 0; n <= L; ++n) total += ipow(ctx.p(), n) * ipow(ctx.p(), M);
    ctx.charge(total);
    auto poly = to_qtpoly(ctx, f);
    CylinderDistribution d{ctx, L, Provenance::from_function, M, {}};
    for (int n = 0; n <= L; ++n) {
        i64 count = ipow(ctx.p(), n);
        PadicScalar inv_bracket = bracket_pN(ctx, n + M).inv();
        auto sums = level_sums(ctx, f, poly, n, 0, count, M);
        for (auto& s : sums) s = s * inv_bracket;
        d.levels.push_back(std::move(sums));
    }
    return d;
}

PadicScalar mu_f_cylinder(const QContext& ctx, const CFunction& f, i64 a, int n, int M) {
    ctx.charge(ipow(ctx.p(), M));
    auto poly = to_qtpoly(ctx, f);
    auto sums = level_sums(ctx, f, poly, n, a, a + 1, M);
    return sums[0] / bracket_pN(ctx, n + M);
}

CylinderDistribution dist_difference(const CylinderDistribution& a,
                                     const CylinderDistribution& b) {
    if (a.ctx.p() != b.ctx.p() || a.depth != b.depth)
        throw domain_error("dist_difference: mismatched tables");
    CylinderDistribution d{a.ctx, a.depth, Provenance::difference, std::max(a.inner_level, b.inner_level), {}};
    for (int n = 0; n <= a.depth; ++n) {
        std::vector<PadicScalar> row;
        row.reserve(a.levels[std::size_t(n)].size());
        for (std::size_t i = 0; i < a.levels[std::size_t(n)].size(); ++i)
            row.push_back(a.levels[std::size_t(n)][i] - b.levels[std::size_t(n)][i]);
        d.levels.push_back(std::move(row));
    }
    return d;
}

PNorm additivity_defect(const CylinderDistribution& d) {
    i64 p = d.ctx.p();
    PNorm worst = PNorm::zero(p);
    for (int n = 0; n < d.depth; ++n) {
        i64 count = ipow(p, n);
        i64 pn = count;
        for (i64 a = 0; a < count; ++a) {
            PadicScalar kids = PadicScalar::zero(p, d.ctx.rel_cap());
            for (i64 i = 0; i < p; ++i) kids = kids + d.value(a + i * pn, n + 1);
            worst = max(worst, (d.value(a, n) - kids).norm());
        }
    }
    return worst;
}

InvarianceReport invariance_report(const CylinderDistribution& d) {
    if (d.depth < 3) throw domain_error("invariance_report: depth must be >= 3");
    const QContext& ctx = d.ctx;
    i64 p = ctx.p();
    InvarianceReport rep;
    std::vector<PadicScalar> brackets;
    for (int n = 0; n <= d.depth; ++n) brackets.push_back(bracket_pN(ctx, n));
    // delta_n = max_a |[p^n] mu(a mod p^n) - [p^{n+1}] mu(a)|, a at level n+1
    for (int n = 0; n < d.depth; ++n) {
        PNorm worst = PNorm::zero(p);
        i64 count = ipow(p, n + 1);
        for (i64 a = 0; a < count; ++a) {
            PadicScalar hi = brackets[std::size_t(n + 1)] * d.value(a, n + 1);
            PadicScalar lo = brackets[std::size_t(n)] * d.value(a, n);
            worst = max(worst, (lo - hi).norm());
        }
        rep.delta.push_back(worst);
    }
    // admissibility sequence c_n = max_a |[p^n]_q| |mu(a+p^n Z_p)|
    for (int n = 0; n <= d.depth; ++n) {
        PNorm worst = PNorm::zero(p);
        i64 count = ipow(p, n);
        for (i64 a = 0; a < count; ++a)
            worst = max(worst, d.value(a, n).norm().scaled_p(-n));
        rep.admissible_c.push_back(worst);
    }
    // fitted strong constant: c = max delta_n * p^n
    rep.fitted_c = PNorm::zero(p);
    for (int n = 0; n < int(rep.delta.size()); ++n)
        rep.fitted_c = max(rep.fitted_c, rep.delta[std::size_t(n)].scaled_p(n));
    // strong: the rescaled defects are stable within a factor p over the last
    // three levels (exact zeros count as stable)
    std::vector<PNorm> tail;
    for (std::size_t i = rep.delta.size() >= 3 ? rep.delta.size() - 3 : 0; i < rep.delta.size(); ++i)
        tail.push_back(rep.delta[i].scaled_p(i64(i)));
    std::vector<PNorm> nonzero;
    for (auto& t : tail)
        if (!t.is_zero()) nonzero.push_back(t);
    bool strong_fit = true;
    for (auto& t : nonzero) {
        for (auto& u : nonzero) {
            if (t > u.scaled_p(1)) strong_fit = false;  // ratio beyond factor p
        }
    }
    // weak: delta non-increasing over the last three levels and shrinking
    std::size_t k = rep.delta.size();
    const PNorm &da = rep.delta[k - 3], &db = rep.delta[k - 2], &dc = rep.delta[k - 1];
    bool weak_fit = da >= db && db >= dc && (dc < da || dc.is_zero());
    if (strong_fit)
        rep.classification = Invariance::strong;
    else if (weak_fit)
        rep.classification = Invariance::weak;
    else
        rep.classification = Invariance::neither;
    // 1-admissible: c_n non-increasing over the last three observed levels and
    // strictly below the first of them at the end
    std::size_t m = rep.admissible_c.size();
    const PNorm &ca = rep.admissible_c[m - 3], &cb = rep.admissible_c[m - 2],
                &cc = rep.admissible_c[m - 1];
    rep.one_admissible = ca >= cb && cb >= cc && (cc < ca || cc.is_zero());
    return rep;
}

RnResult rn_derivative(const CylinderDistribution& d, i64 x, int n_max) {
    if (n_max < 1 || n_max > d.depth) throw domain_error("rn_derivative: bad n_max");
    RnResult r{{}, PadicScalar::zero(d.ctx.p(), d.ctx.rel_cap()), {}};
    for (int n = 1; n <= n_max; ++n)
        r.approximants.push_back(bracket_pN(d.ctx, n) * d.value(x, n));
    for (std::size_t i = 1; i < r.approximants.size(); ++i)
        r.defects.push_back((r.approximants[i] - r.approximants[i - 1]).norm());
    r.value = r.approximants.back();
    return r;
}

LipschitzEstimate lipschitz_estimate(const CylinderDistribution& d) {
    const QContext& ctx = d.ctx;
    i64 p = ctx.p();
    int L = d.depth;
    i64 count = ipow(p, L);
    ctx.charge(count * count / 2);
    PadicScalar bracket = bracket_pN(ctx, L);
    std::vector<PadicScalar> f;
    f.reserve(std::size_t(count));
    for (i64 a = 0; a < count; ++a) f.push_back(bracket * d.value(a, L));
    PNorm worst = PNorm::zero(p);
    for (i64 a = 0; a < count; ++a) {
        for (i64 b = a + 1; b < count; ++b) {
            i64 diff = b - a, v = 0;
            while (diff % p == 0) {
                diff /= p;
                ++v;
            }
            PNorm ratio = (f[std::size_t(a)] - f[std::size_t(b)]).norm().scaled_p(v);
            worst = max(worst, ratio);
        }
    }
    LipschitzEstimate est;
    est.value = worst;
    est.reliable = invariance_report(d).classification == Invariance::strong;
    return est;
}

// ---------------------------------------------------------------------------
// JSON

static json scalar_to_json(const PadicScalar& s) {
    json j;
    j["p"] = s.prime();
    if (s.is_zero()) {
        j["zero"] = true;
        j["prec"] = s.abs_precision();
        return j;
    }
    j["v"] = s.valuation();
    j["digits"] = s.digits(s.rel_precision());
    j["prec"] = s.abs_precision();
    return j;
}

static PadicScalar scalar_from_json(const json& j) {
    i64 p = j.at("p").get<i64>();
    if (j.value("zero", false)) return PadicScalar::zero(p, j.at("prec").get<i64>());
    i64 v = j.at("v").get<i64>();
    auto digs = j.at("digits").get<std::vector<int>>();
    u64 unit = 0, mult = 1;
    int rel = int(digs.size());
    for (int i = 0; i < rel; ++i) {
        unit += u64(digs[std::size_t(i)]) * mult;
        mult *= u64(p);
    }
    return PadicScalar::from_unit(p, v, unit, rel);
}

std::string distribution_to_json(const CylinderDistribution& d) {
    json j;
    j["schema"] = 1;
    j["p"] = d.ctx.p();
    j["q"] = d.ctx.q_is_one() ? "1" : d.ctx.q().str();
    j["depth"] = d.depth;
    json entries = json::array();
    for (int n = 0; n <= d.depth; ++n) {
        i64 count = ipow(d.ctx.p(), n);
        for (i64 a = 0; a < count; ++a) {
            json e;
            e["a"] = a;
            e["n"] = n;
            e["value"] = scalar_to_json(d.value(a, n));
            entries.push_back(std::move(e));
        }
    }
    j["entries"] = std::move(entries);
    return j.dump(2);
}

CylinderDistribution distribution_from_json(const QContext& ctx, const std::string& text) {
    json j = json::parse(text);
    if (j.at("p").get<i64>() != ctx.p()) throw domain_error("distribution file: prime mismatch");
    int depth = j.at("depth").get<int>();
    if (depth < 1) throw domain_error("distribution file: bad depth");
    CylinderDistribution d{ctx, depth, Provenance::custom, 0, {}};
    for (int n = 0; n <= depth; ++n)
        d.levels.emplace_back(std::size_t(ipow(ctx.p(), n)),
                              PadicScalar::zero(ctx.p(), ctx.rel_cap()));
    for (const auto& e : j.at("entries")) {
        int n = e.at("n").get<int>();
        i64 a = e.at("a").get<i64>();
        if (n < 0 || n > depth || a < 0 || a >= ipow(ctx.p(), n))
            throw domain_error("distribution file: entry out of range");
        d.levels[std::size_t(n)][std::size_t(a)] = scalar_from_json(e.at("value"));
    }
    return d;
}

}  // namespace padicq
