#include "padicq/cli.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "padicq/dist.hpp"
#include "padicq/theorems.hpp"

namespace padicq {

using nlohmann::json;

QContext RunConfig::context() const {
    if (precision < 4) throw domain_error("precision must be >= 4");
    if (budget < p * p) throw domain_error("budget must be >= p^2");
    i64 num = 0, den = 1;
    auto slash = q_spec.find('/');
    try {
        if (slash == std::string::npos) {
            num = std::stoll(q_spec);
        } else {
            num = std::stoll(q_spec.substr(0, slash));
            den = std::stoll(q_spec.substr(slash + 1));
        }
    } catch (const std::exception&) {
        throw domain_error("bad q: " + q_spec);
    }
    if (num == den) return QContext::classical(p, precision, budget);
    return QContext::make(p, num, den, precision, budget);
}

namespace {

struct Report {
    json j;
    bool as_json = false;
    std::vector<std::string> lines;

    void result(const std::string& key, const json& v, const std::string& line) {
        j["results"].push_back(json{{"name", key}, {"value", v}});
        lines.push_back(line);
    }
    void check(const std::string& name, bool ok, const PNorm& norm) {
        j["checks"].push_back(json{{"name", name}, {"ok", ok}, {"norm", norm.str()}});
        lines.push_back(std::string(ok ? "ok   " : "FAIL ") + name + "  (norm " + norm.str() + ")");
    }
    bool all_ok() const {
        if (!j.contains("checks")) return true;
        for (const auto& c : j["checks"])
            if (!c["ok"].get<bool>()) return false;
        return true;
    }
    void emit(std::ostream& out) const {
        if (as_json) {
            out << j.dump(2) << "\n";
        } else {
            for (const auto& l : lines) out << l << "\n";
        }
    }
};

json scalar_json(const PadicScalar& s) {
    json v;
    v["p"] = s.prime();
    if (s.is_zero()) {
        v["zero"] = true;
        v["prec"] = s.abs_precision();
    } else {
        v["v"] = s.valuation();
        v["digits"] = s.digits(s.rel_precision());
        v["prec"] = s.abs_precision();
    }
    return v;
}

std::string inv_name(Invariance c) {
    switch (c) {
        case Invariance::strong: return "strong";
        case Invariance::weak: return "weak";
        default: return "neither";
    }
}

CFunction parse_fn_arg(const std::string& text) {
    try {
        return parse_function(text);
    } catch (const parse_error& e) {
        throw domain_error("bad function '" + text + "' at column " + std::to_string(e.column) +
                           ": " + e.what());
    }
}

CylinderDistribution load_distribution(const QContext& ctx, bool base, const std::string& fexpr,
                                       const std::string& input, int depth, int M) {
    if (!input.empty()) {
        std::ifstream in(input);
        if (!in) throw domain_error("cannot open " + input);
        std::stringstream ss;
        ss << in.rdbuf();
        return distribution_from_json(ctx, ss.str());
    }
    if (base || fexpr.empty()) return base_distribution(ctx, depth);
    return distribution_from_function(ctx, parse_fn_arg(fexpr), depth, M);
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"q-Volkenborn integration and p-adic q-invariant distribution toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    app.add_option("--p", cfg.p, "prime p");
    app.add_option("--q", cfg.q_spec, "q as integer or rational, congruent to 1 mod p (\"1\" for the classical limit)");
    app.add_option("--prec", cfg.precision, "working absolute precision");
    app.add_option("--budget", cfg.budget, "max total summation terms");
    app.add_option("--format", cfg.format, "output format: text|json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "seed recorded in reports");

    app.fallthrough();

    // bernoulli
    auto* sc_bern = app.add_subcommand("bernoulli", "q-Bernoulli numbers, closed form vs integral");
    sc_bern->fallthrough();
    int bern_m = 4, bern_N = 5;
    sc_bern->add_option("--m", bern_m, "largest index m");
    sc_bern->add_option("--N", bern_N, "integration level");

    // integrate
    auto* sc_int = app.add_subcommand("integrate", "q-Volkenborn integral with defect diagnostics");
    sc_int->fallthrough();
    std::string int_f = "1", int_levels = "2..6";
    sc_int->add_option("--f", int_f, "integrand expression");
    sc_int->add_option("--levels", int_levels, "level range, e.g. 2..6");

    // check-distribution
    auto* sc_dist = app.add_subcommand("check-distribution",
                                       "additivity, invariance and admissibility of a distribution");
    sc_dist->fallthrough();
    std::string dist_f, dist_input;
    bool dist_base = false;
    int dist_depth = 4, dist_M = 4;
    sc_dist->add_flag("--base", dist_base, "use the base distribution mu_q");
    sc_dist->add_option("--f", dist_f, "build mu_{f,q} from this function");
    sc_dist->add_option("--input", dist_input, "import a distribution table from JSON");
    sc_dist->add_option("--depth", dist_depth, "table depth");
    sc_dist->add_option("--M", dist_M, "inner level for mu_{f,q}");

    // radon-nikodym
    auto* sc_rn = app.add_subcommand("radon-nikodym", "RN derivative approximant sequence");
    sc_rn->fallthrough();
    std::string rn_f, rn_input;
    bool rn_base = false;
    i64 rn_x = 0;
    int rn_depth = 4, rn_M = 4;
    sc_rn->add_flag("--base", rn_base, "use the base distribution mu_q");
    sc_rn->add_option("--f", rn_f, "build mu_{f,q} from this function");
    sc_rn->add_option("--input", rn_input, "import a distribution table from JSON");
    sc_rn->add_option("--x", rn_x, "point x");
    sc_rn->add_option("--depth", rn_depth, "table depth / deepest approximant");
    sc_rn->add_option("--M", rn_M, "inner level for mu_{f,q}");

    // verify eq13|eq16|eq17
    auto* sc_ver = app.add_subcommand("verify", "certify one of the central identities");
    sc_ver->fallthrough();
    sc_ver->require_subcommand(1);
    auto* sc_eq13 = sc_ver->add_subcommand("eq13", "congruence expansion of [p^n]_q mu_{P,q}");
    sc_eq13->fallthrough();
    std::string v_P = "[x]^2", v_g = "[x]", v_f = "[x]";
    i64 v_a = 0;
    int v_n = 2, v_terms = 2, v_M = 4, v_N = 4, v_depth = 4, v_tol = -1;
    sc_eq13->add_option("--P", v_P, "q-polynomial P");
    sc_eq13->add_option("--a", v_a, "residue a");
    sc_eq13->add_option("--n", v_n, "cylinder level n");
    sc_eq13->add_option("--terms", v_terms, "series terms (2 = displayed congruence)");
    sc_eq13->add_option("--M", v_M, "inner level");
    sc_eq13->add_option("--tol-exp", v_tol, "pass when residual <= p^-tol (default n)");
    auto* sc_eq16 = sc_ver->add_subcommand("eq16", "density identity of the integral against mu_{P,q}");
    sc_eq16->fallthrough();
    sc_eq16->add_option("--P", v_P, "q-polynomial P");
    sc_eq16->add_option("--g", v_g, "test function g");
    sc_eq16->add_option("--N", v_N, "outer level");
    sc_eq16->add_option("--M", v_M, "inner level");
    sc_eq16->add_option("--tol-exp", v_tol, "pass when defect <= p^-tol (default floor(min(N,M)/2))");
    auto* sc_eq17 = sc_ver->add_subcommand("eq17", "RN recovery f_{mu_{f,q}} = f");
    sc_eq17->fallthrough();
    sc_eq17->add_option("--f", v_f, "C^1 function f");
    sc_eq17->add_option("--a", v_a, "point a");
    sc_eq17->add_option("--depth", v_depth, "deepest level n");
    sc_eq17->add_option("--M", v_M, "inner level");
    sc_eq17->add_option("--tol-exp", v_tol, "pass when the deepest difference <= p^-tol (default depth-2)");

    // decompose
    auto* sc_dec = app.add_subcommand("decompose", "Lebesgue-style split mu = mu_1 + mu_2");
    sc_dec->fallthrough();
    std::string dec_f, dec_input;
    bool dec_base = false;
    int dec_depth = 4, dec_M = 4, dec_fit = 8, dec_thresh = 2;
    sc_dec->add_flag("--base", dec_base, "use the base distribution mu_q");
    sc_dec->add_option("--f", dec_f, "build mu_{f,q} from this function");
    sc_dec->add_option("--input", dec_input, "import a distribution table from JSON");
    sc_dec->add_option("--depth", dec_depth, "table depth");
    sc_dec->add_option("--M", dec_M, "inner level");
    sc_dec->add_option("--fit-degree", dec_fit, "q-binomial fit degree for the density");
    sc_dec->add_option("--threshold-exp", dec_thresh, "fit residual threshold p^-t");

    // mahler
    auto* sc_mah = app.add_subcommand("mahler", "q-Mahler expansion coefficients and tail norms");
    sc_mah->fallthrough();
    std::string mah_f = "[x]";
    int mah_M = 8, mah_trunc = -1;
    sc_mah->add_option("--f", mah_f, "function to expand");
    sc_mah->add_option("--M", mah_M, "horizon");
    sc_mah->add_option("--truncate", mah_trunc, "also emit the tail bound for f_m at this m");

    std::vector<std::string> argv = args;
    std::reverse(argv.begin(), argv.end());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    }

    Report rep;
    rep.as_json = cfg.format == "json";
    rep.j["schema"] = 1;
    rep.j["config"] = {{"p", cfg.p},       {"q", cfg.q_spec},         {"prec", cfg.precision},
                       {"budget", cfg.budget}, {"format", cfg.format}, {"seed", cfg.seed}};
    rep.j["results"] = json::array();
    rep.j["checks"] = json::array();

    try {
        QContext ctx = cfg.context();

        if (*sc_bern) {
            for (int m = 0; m <= bern_m; ++m) {
                PadicScalar closed = qbernoulli_closed(ctx, m);
                PadicScalar integral = qbernoulli_integral(ctx, m, bern_N);
                PNorm defect = (closed - integral).norm();
                rep.result("beta_" + std::to_string(m),
                           json{{"closed", scalar_json(closed)},
                                {"integral_at_N", scalar_json(integral)},
                                {"defect", defect.str()}},
                           "beta_" + std::to_string(m) + ": closed " + closed.str() +
                               " | integral(N=" + std::to_string(bern_N) + ") " + integral.str() +
                               " | defect " + defect.str());
            }
        } else if (*sc_int) {
            auto dots = int_levels.find("..");
            if (dots == std::string::npos) throw domain_error("bad --levels, expected a..b");
            int lo = std::stoi(int_levels.substr(0, dots));
            int hi = std::stoi(int_levels.substr(dots + 2));
            IntegralResult r = integrate(ctx, parse_fn_arg(int_f), lo, hi);
            json defects = json::array();
            std::string dline;
            for (const auto& d : r.defects) {
                defects.push_back(d.str());
                dline += (dline.empty() ? "" : ", ") + d.str();
            }
            rep.result("integral",
                       json{{"value", scalar_json(r.value)},
                            {"levels", r.levels},
                            {"defects", defects},
                            {"converged", r.converged}},
                       "integral = " + r.value.str());
            rep.lines.push_back("defects: [" + dline + "]");
            rep.lines.push_back(std::string("converged: ") + (r.converged ? "yes" : "no"));
        } else if (*sc_dist) {
            CylinderDistribution d =
                load_distribution(ctx, dist_base, dist_f, dist_input, dist_depth, dist_M);
            PNorm add = additivity_defect(d);
            InvarianceReport r = invariance_report(d);
            LipschitzEstimate lip = lipschitz_estimate(d);
            json deltas = json::array();
            std::string dline;
            for (const auto& x : r.delta) {
                deltas.push_back(x.str());
                dline += (dline.empty() ? "" : ", ") + x.str();
            }
            rep.result("distribution",
                       json{{"additivity_defect", add.str()},
                            {"classification", inv_name(r.classification)},
                            {"fitted_c", r.fitted_c.str()},
                            {"delta", deltas},
                            {"one_admissible", r.one_admissible},
                            {"lipschitz", lip.value.str()},
                            {"lipschitz_reliable", lip.reliable}},
                       "additivity defect: " + add.str());
            rep.lines.push_back("delta_n: [" + dline + "]");
            rep.lines.push_back("classification: " + inv_name(r.classification) +
                                " (fitted c = " + r.fitted_c.str() + ")");
            rep.lines.push_back(std::string("1-admissible: ") + (r.one_admissible ? "yes" : "no"));
            rep.lines.push_back("Lipschitz estimate: " + lip.value.str() +
                                (lip.reliable ? "" : " (not strong: estimate only)"));
        } else if (*sc_rn) {
            CylinderDistribution d = load_distribution(ctx, rn_base, rn_f, rn_input, rn_depth, rn_M);
            RnResult r = rn_derivative(d, rn_x, rn_depth);
            json approx = json::array();
            for (std::size_t i = 0; i < r.approximants.size(); ++i) {
                approx.push_back(scalar_json(r.approximants[i]));
                rep.lines.push_back("n=" + std::to_string(i + 1) + ": " + r.approximants[i].str() +
                                    (i > 0 ? "  (defect " + r.defects[i - 1].str() + ")" : ""));
            }
            rep.result("rn_derivative",
                       json{{"approximants", approx}, {"value", scalar_json(r.value)}},
                       "value = " + r.value.str());
        } else if (*sc_ver) {
            if (*sc_eq13) {
                CongruenceResult r =
                    check_congruence12(ctx, parse_fn_arg(v_P), v_a, v_n, v_terms, v_M);
                int tol = v_tol >= 0 ? v_tol : v_n;
                rep.result("eq13",
                           json{{"lhs", scalar_json(r.lhs)},
                                {"rhs", scalar_json(r.rhs)},
                                {"residual", r.residual.str()},
                                {"residual_mu", r.residual_mu.str()},
                                {"alt_residual_mu", r.alt_residual_mu.str()}},
                           "lhs " + r.lhs.str() + " | rhs " + r.rhs.str());
                rep.check("eq13 residual_mu <= p^-" + std::to_string(tol),
                          r.residual_mu <= PNorm::p_pow(ctx.p(), -tol), r.residual_mu);
            } else if (*sc_eq16) {
                DensityResult r = check_density_theorem3(ctx, parse_fn_arg(v_P), parse_fn_arg(v_g),
                                                         v_N, v_M);
                int tol = v_tol >= 0 ? v_tol : std::min(v_N, v_M) / 2;
                rep.result("eq16",
                           json{{"lhs", scalar_json(r.lhs)},
                                {"rhs", scalar_json(r.rhs)},
                                {"defect", r.defect.str()}},
                           "lhs " + r.lhs.str() + " | rhs " + r.rhs.str());
                rep.check("eq16 defect <= p^-" + std::to_string(tol),
                          r.defect <= PNorm::p_pow(ctx.p(), -tol), r.defect);
            } else if (*sc_eq17) {
                auto rows = check_rn_recovery(ctx, parse_fn_arg(v_f), v_a, v_depth, v_M);
                int tol = v_tol >= 0 ? v_tol : std::max(1, v_depth - 2);
                json table = json::array();
                for (const auto& row : rows) {
                    table.push_back(json{{"n", row.n}, {"diff", row.diff.str()}});
                    rep.lines.push_back("n=" + std::to_string(row.n) + ": |f(a) - approx| = " +
                                        row.diff.str());
                }
                rep.result("eq17", json{{"decay", table}}, "recovery decay table");
                rep.check("eq17 deepest diff <= p^-" + std::to_string(tol),
                          rows.back().diff <= PNorm::p_pow(ctx.p(), -tol), rows.back().diff);
            }
        } else if (*sc_dec) {
            CylinderDistribution d =
                load_distribution(ctx, dec_base, dec_f, dec_input, dec_depth, dec_M);
            DecompositionResult r = decompose_theorem4(ctx, d, dec_M, dec_fit,
                                                       PNorm::p_pow(ctx.p(), -dec_thresh));
            rep.result("decompose",
                       json{{"bound_M", r.bound.str()},
                            {"exact_sum", r.exact_sum},
                            {"fit_residual", r.fit_residual.str()},
                            {"fitted", to_string(r.fitted)}},
                       "bound_M = " + r.bound.str() + ", fit residual = " + r.fit_residual.str());
            rep.check("decompose exact_sum", r.exact_sum, PNorm::zero(ctx.p()));
        } else if (*sc_mah) {
            MahlerExpansion e = expand_mahler(ctx, parse_fn_arg(mah_f), mah_M);
            json rows = json::array();
            for (std::size_t n = 0; n < e.coeffs.size(); ++n) {
                rows.push_back(json{{"n", n},
                                    {"a_n", scalar_json(e.coeffs[n])},
                                    {"n|a_n|", e.tail_norms[n].str()}});
                rep.lines.push_back("n=" + std::to_string(n) + ": a_n = " + e.coeffs[n].str() +
                                    "  n|a_n| = " + e.tail_norms[n].str());
            }
            rep.result("mahler", json{{"rows", rows}}, "mahler table");
            if (mah_trunc >= 0) {
                Truncation t = truncate_tail(ctx, e, mah_trunc);
                rep.result("truncation",
                           json{{"m", mah_trunc}, {"tail_bound", t.tail_bound.str()}},
                           "tail bound for m=" + std::to_string(mah_trunc) + ": " +
                               t.tail_bound.str() + " (horizon-limited)");
            }
        }
    } catch (const budget_error& e) {
        err << "budget exhausted: " << e.what() << "\n";
        return 3;
    } catch (const precision_error& e) {
        err << "precision exhausted: " << e.what() << "\n";
        return 3;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    rep.emit(out);
    return rep.all_ok() ? 0 : 1;
}

}  // namespace padicq
