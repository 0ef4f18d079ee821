// python bindings for the core operations

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padicq/theorems.hpp"

namespace py = pybind11;
using namespace padicq;

namespace {

const char* invariance_name(Invariance c) {
    switch (c) {
        case Invariance::strong: return "strong";
        case Invariance::weak: return "weak";
        default: return "neither";
    }
}

}  // namespace

PYBIND11_MODULE(_padicq, m) {
    m.doc() = "finite-precision q-deformed p-adic computation core";

    // translators run newest-first, so the base class goes in first
    py::register_exception<error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<precision_error>(m, "PrecisionError", PyExc_ArithmeticError);
    py::register_exception<budget_error>(m, "BudgetError", PyExc_RuntimeError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);

    py::class_<PNorm>(m, "PNorm")
        .def_static("zero", &PNorm::zero, py::arg("p"))
        .def_static("p_pow", &PNorm::p_pow, py::arg("p"), py::arg("e"),
                    "the norm value p**e")
        .def("is_zero", &PNorm::is_zero)
        .def("scaled_p", &PNorm::scaled_p, py::arg("k"), "multiply by p**k")
        .def("approx", &PNorm::approx)
        .def(py::self < py::self)
        .def(py::self <= py::self)
        .def(py::self > py::self)
        .def(py::self >= py::self)
        .def(py::self == py::self)
        .def("__repr__", &PNorm::str)
        .def("__str__", &PNorm::str);
    m.def("norm_max", [](const PNorm& a, const PNorm& b) { return max(a, b); });

    py::class_<PadicScalar>(m, "PadicScalar")
        .def("prime", &PadicScalar::prime)
        .def("is_zero", &PadicScalar::is_zero)
        .def("valuation", &PadicScalar::valuation)
        .def("abs_precision", &PadicScalar::abs_precision)
        .def("norm", &PadicScalar::norm)
        .def("digits", &PadicScalar::digits, py::arg("count"))
        .def("inv", &PadicScalar::inv)
        .def("pow", &PadicScalar::pow, py::arg("e"))
        .def("equals", &PadicScalar::equals, py::arg("other"),
             "equal as residues modulo the coarser precision")
        .def(-py::self)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def(py::self * py::self)
        .def(py::self / py::self)
        .def("__repr__", &PadicScalar::str)
        .def("__str__", &PadicScalar::str);

    py::class_<QContext>(m, "Context")
        .def_static("make", &QContext::make, py::arg("p"), py::arg("q_num"),
                    py::arg("q_den") = 1, py::arg("work_prec") = 12,
                    py::arg("budget") = 100'000'000)
        .def_static("classical", &QContext::classical, py::arg("p"),
                    py::arg("work_prec") = 12, py::arg("budget") = 100'000'000)
        .def("p", &QContext::p)
        .def("q", &QContext::q)
        .def("q_is_one", &QContext::q_is_one)
        .def("log_q", &QContext::log_q)
        .def("work_prec", &QContext::work_prec)
        .def("budget", &QContext::budget)
        .def("spent", &QContext::spent)
        .def("one", &QContext::one)
        .def("scalar", &QContext::scalar, py::arg("num"), py::arg("den") = 1)
        .def("with_q_power", &QContext::with_q_power, py::arg("e"));

    py::class_<CFunction>(m, "Function")
        .def("__repr__", [](const CFunction& f) { return to_string(f); })
        .def("__str__", [](const CFunction& f) { return to_string(f); });
    m.def("parse_function", &parse_function, py::arg("text"));
    m.def("eval_function", &eval_function, py::arg("ctx"), py::arg("f"), py::arg("x"));
    m.def("eval_function_at", &eval_function_at, py::arg("ctx"), py::arg("f"), py::arg("x"));
    m.def("formal_qderiv", &formal_qderiv, py::arg("ctx"), py::arg("f"),
          py::arg("order") = 1);
    m.def("c1_norm_estimate", [](const QContext& ctx, const CFunction& f, int depth) {
        C1Norm n = c1_norm_estimate(ctx, f, depth);
        return py::make_tuple(n.sup, n.delta);
    }, py::arg("ctx"), py::arg("f"), py::arg("depth"));

    m.def("qpow", &qpow_int, py::arg("ctx"), py::arg("e"));
    m.def("qint", &qint_int, py::arg("ctx"), py::arg("n"));
    m.def("qfactorial", &qfactorial, py::arg("ctx"), py::arg("n"));
    m.def("qbinom", &qbinom_int, py::arg("ctx"), py::arg("x"), py::arg("n"));
    m.def("bracket_pN", &bracket_pN, py::arg("ctx"), py::arg("N"));

    py::class_<IntegralResult>(m, "IntegralResult")
        .def_readonly("value", &IntegralResult::value)
        .def_readonly("levels", &IntegralResult::levels)
        .def_readonly("defects", &IntegralResult::defects)
        .def_readonly("converged", &IntegralResult::converged);
    m.def("riemann_sum", &riemann_sum, py::arg("ctx"), py::arg("f"), py::arg("N"));
    m.def("integrate", &integrate, py::arg("ctx"), py::arg("f"), py::arg("N_min"),
          py::arg("N_max"));
    m.def("qbernoulli", &qbernoulli_closed, py::arg("ctx"), py::arg("m"));
    m.def("qbernoulli_integral", &qbernoulli_integral, py::arg("ctx"), py::arg("m"),
          py::arg("N"));
    m.def("qbernoulli_poly", &qbernoulli_poly, py::arg("ctx"), py::arg("n"), py::arg("x"));
    m.def("bernoulli_rational", [](int k) {
        Rational b = bernoulli_rational(k);
        return py::make_tuple(b.num, b.den);
    }, py::arg("k"));

    py::class_<CylinderDistribution>(m, "Distribution")
        .def_readonly("depth", &CylinderDistribution::depth)
        .def_readonly("inner_level", &CylinderDistribution::inner_level)
        .def("value", &CylinderDistribution::value, py::arg("a"), py::arg("n"),
             py::return_value_policy::copy);
    m.def("base_distribution", &base_distribution, py::arg("ctx"), py::arg("depth"));
    m.def("distribution_from_function", &distribution_from_function, py::arg("ctx"),
          py::arg("f"), py::arg("depth"), py::arg("inner_level"));
    m.def("mu_f_cylinder", &mu_f_cylinder, py::arg("ctx"), py::arg("f"), py::arg("a"),
          py::arg("n"), py::arg("M"));
    m.def("dist_difference", &dist_difference, py::arg("a"), py::arg("b"));
    m.def("additivity_defect", &additivity_defect, py::arg("dist"));
    m.def("distribution_to_json", &distribution_to_json, py::arg("dist"));
    m.def("distribution_from_json", &distribution_from_json, py::arg("ctx"), py::arg("text"));

    py::class_<InvarianceReport>(m, "InvarianceReport")
        .def_readonly("delta", &InvarianceReport::delta)
        .def_readonly("fitted_c", &InvarianceReport::fitted_c)
        .def_readonly("admissible_c", &InvarianceReport::admissible_c)
        .def_readonly("one_admissible", &InvarianceReport::one_admissible)
        .def_property_readonly("classification", [](const InvarianceReport& r) {
            return invariance_name(r.classification);
        });
    m.def("invariance_report", &invariance_report, py::arg("dist"));

    py::class_<RnResult>(m, "RnResult")
        .def_readonly("approximants", &RnResult::approximants)
        .def_readonly("value", &RnResult::value)
        .def_readonly("defects", &RnResult::defects);
    m.def("rn_derivative", &rn_derivative, py::arg("dist"), py::arg("x"), py::arg("n_max"));

    py::class_<LipschitzEstimate>(m, "LipschitzEstimate")
        .def_readonly("value", &LipschitzEstimate::value)
        .def_readonly("reliable", &LipschitzEstimate::reliable);
    m.def("lipschitz_estimate", &lipschitz_estimate, py::arg("dist"));

    py::class_<CongruenceResult>(m, "CongruenceResult")
        .def_readonly("lhs", &CongruenceResult::lhs)
        .def_readonly("rhs", &CongruenceResult::rhs)
        .def_readonly("residual", &CongruenceResult::residual)
        .def_readonly("residual_mu", &CongruenceResult::residual_mu)
        .def_readonly("alt_residual_mu", &CongruenceResult::alt_residual_mu);
    m.def("check_congruence", &check_congruence12, py::arg("ctx"), py::arg("P"),
          py::arg("a"), py::arg("n"), py::arg("terms"), py::arg("M"));

    py::class_<DensityResult>(m, "DensityResult")
        .def_readonly("lhs", &DensityResult::lhs)
        .def_readonly("rhs", &DensityResult::rhs)
        .def_readonly("defect", &DensityResult::defect);
    m.def("check_density", &check_density_theorem3, py::arg("ctx"), py::arg("P"),
          py::arg("g"), py::arg("N"), py::arg("M"));

    m.def("check_rn_recovery", [](const QContext& ctx, const CFunction& f, i64 a,
                                  int n_max, int M) {
        py::list rows;
        for (const RecoveryRow& r : check_rn_recovery(ctx, f, a, n_max, M))
            rows.append(py::make_tuple(r.n, r.diff));
        return rows;
    }, py::arg("ctx"), py::arg("f"), py::arg("a"), py::arg("n_max"), py::arg("M"));

    py::class_<DecompositionResult>(m, "DecompositionResult")
        .def_readonly("mu1", &DecompositionResult::mu1)
        .def_readonly("mu2", &DecompositionResult::mu2)
        .def_readonly("bound", &DecompositionResult::bound)
        .def_readonly("exact_sum", &DecompositionResult::exact_sum)
        .def_readonly("fitted", &DecompositionResult::fitted)
        .def_readonly("fit_residual", &DecompositionResult::fit_residual);
    m.def("decompose", &decompose_theorem4, py::arg("ctx"), py::arg("mu"), py::arg("M"),
          py::arg("fit_degree"), py::arg("residual_threshold"));

    py::class_<MahlerExpansion>(m, "MahlerExpansion")
        .def_readonly("coeffs", &MahlerExpansion::coeffs)
        .def_readonly("tail_norms", &MahlerExpansion::tail_norms);
    m.def("expand_mahler", &expand_mahler, py::arg("ctx"), py::arg("f"), py::arg("M"));
    m.def("expand_from_values", &expand_from_values, py::arg("ctx"), py::arg("values"));
    m.def("eval_expansion", &eval_expansion, py::arg("ctx"), py::arg("e"), py::arg("x"));
    py::class_<Truncation>(m, "Truncation")
        .def_readonly("f_m", &Truncation::f_m)
        .def_readonly("tail_bound", &Truncation::tail_bound);
    m.def("truncate_tail", &truncate_tail, py::arg("ctx"), py::arg("e"), py::arg("m"));
}
