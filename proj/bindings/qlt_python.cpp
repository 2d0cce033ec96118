#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlt/qapps.hpp"
#include "qlt/qsymbolic.hpp"
#include "qlt/qtransform2.hpp"

namespace py = pybind11;
using namespace qlt;

namespace {

FloatContext fctx(const std::string& q, double tol) { return FloatContext(to_double(parse_rational(q)), tol); }
ExactContext ectx(const std::string& q, double tol) { return ExactContext(parse_rational(q), tol); }

TransformKind kind_of(int k) {
    if (k < 1 || k > 4) throw domain_error("kind must be 1..4");
    return static_cast<TransformKind>(k);
}

py::dict report_to_dict(const SolutionReport& rep) {
    py::dict d;
    d["equation"] = std::string(to_string(rep.id));
    d["solution"] = rep.form;
    d["transform_domain"] = rep.transform_domain.str();
    d["inversion_complete"] = rep.inversion_complete;
    d["residual_exact"] = rep.residual_exact;
    d["residual_max"] = rep.residual_max;
    d["points_checked"] = rep.lattice_points_checked;
    if (rep.transform_check_error >= 0) d["transform_check_error"] = rep.transform_check_error;
    return d;
}

} // namespace

PYBIND11_MODULE(_qlt, m) {
    m.doc() = "double q-Laplace transform kernel: q-special functions, Jackson integration, "
              "transform evaluation and the closed-form catalog";

    py::register_exception<domain_error>(m, "DomainError", PyExc_ValueError);
    py::register_exception<parse_error>(m, "ParseError", PyExc_ValueError);
    py::register_exception<divergence_error>(m, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<convergence_error>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<catalog_miss>(m, "CatalogMiss", PyExc_KeyError);
    py::register_exception<no_match_error>(m, "NoInverseMatch", PyExc_KeyError);

    m.def(
        "q_number", [](double a, const std::string& q) { return q_number<double>(a, fctx(q, 1e-12)); },
        py::arg("a"), py::arg("q") = "1/2");
    m.def(
        "q_factorial", [](long n, const std::string& q) { return q_factorial<double>(n, fctx(q, 1e-12)); },
        py::arg("n"), py::arg("q") = "1/2");
    m.def(
        "q_factorial_exact",
        [](long n, const std::string& q) { return to_string(q_factorial<Rational>(n, ectx(q, 1e-12))); },
        py::arg("n"), py::arg("q") = "1/2");
    m.def(
        "q_binomial",
        [](long n, long k, const std::string& q) { return q_binomial<double>(n, k, fctx(q, 1e-12)); },
        py::arg("n"), py::arg("k"), py::arg("q") = "1/2");
    m.def(
        "q_pochhammer",
        [](double a, py::object n, const std::string& q) {
            FloatContext c = fctx(q, 1e-14);
            if (n.is_none()) return q_pochhammer_inf(a, c);
            double nv = n.cast<double>();
            if (std::floor(nv) == nv && nv >= 0) return q_pochhammer<double>(a, static_cast<long>(nv), c);
            return q_pochhammer_real(a, nv, c);
        },
        py::arg("a"), py::arg("n") = py::none(), py::arg("q") = "1/2",
        "(a;q)_n; n=None selects the infinite product, fractional n the real-exponent extension");
    m.def(
        "expand_q_addition",
        [](const std::string& kind, long n, const std::string& q) {
            AdditionKind k;
            if (kind == "ward_add" || kind == "ward")
                k = AdditionKind::ward_add;
            else if (kind == "ward_sub")
                k = AdditionKind::ward_sub;
            else if (kind == "coadd")
                k = AdditionKind::coadd;
            else if (kind == "cosub")
                k = AdditionKind::cosub;
            else if (kind == "qpow_add" || kind == "qpow")
                k = AdditionKind::qpow_add;
            else if (kind == "qpow_sub")
                k = AdditionKind::qpow_sub;
            else
                throw parse_error("unknown addition kind '" + kind + "'");
            QPoly2<Rational> p = expand_q_addition<Rational>(k, n, ectx(q, 1e-12));
            py::dict out;
            for (auto& [key, c] : p.terms())
                out[py::make_tuple(key.first, key.second)] = to_string(c);
            return out;
        },
        py::arg("kind"), py::arg("n"), py::arg("q") = "1/2",
        "exact coefficients of the degree-n expansion, keyed by (deg_x, deg_y)");
    m.def(
        "q_exp_small", [](double z, const std::string& q) { return q_exp_small(z, fctx(q, 1e-14)); },
        py::arg("z"), py::arg("q") = "1/2");
    m.def(
        "q_exp_big", [](double z, const std::string& q) { return q_exp_big(z, fctx(q, 1e-14)); }, py::arg("z"),
        py::arg("q") = "1/2");
    m.def(
        "q_trig",
        [](double z, const std::string& which, const std::string& q) {
            return q_trig(z, parse_atom1d<double>("trig:" + which + ",1").trig, fctx(q, 1e-14));
        },
        py::arg("z"), py::arg("which"), py::arg("q") = "1/2");
    m.def(
        "q_gamma_first", [](double t, const std::string& q) { return q_gamma_first(t, fctx(q, 1e-14)); },
        py::arg("t"), py::arg("q") = "1/2");
    m.def(
        "q_gamma_second", [](double t, const std::string& q) { return q_gamma_second(t, fctx(q, 1e-14)); },
        py::arg("t"), py::arg("q") = "1/2");

    m.def(
        "q_derivative",
        [](const std::function<double(double)>& f, double x, int order, const std::string& q) {
            return q_derivative(f, x, order, fctx(q, 1e-12));
        },
        py::arg("f"), py::arg("x"), py::arg("order") = 1, py::arg("q") = "1/2");
    m.def(
        "jackson_integral",
        [](const std::function<double(double)>& f, double a, double b, const std::string& q) {
            return jackson_integral_finite(f, a, b, fctx(q, 1e-14), 0.0);
        },
        py::arg("f"), py::arg("a"), py::arg("b"), py::arg("q") = "1/2");
    m.def(
        "jackson_integral_improper",
        [](const std::function<double(double)>& f, const std::string& q, double A) {
            LatticeSumPlan plan = second_kind_plan();
            plan.A = A;
            return jackson_integral_improper(f, plan, fctx(q, 1e-14));
        },
        py::arg("f"), py::arg("q") = "1/2", py::arg("A") = 1.0);

    m.def(
        "transform_numeric",
        [](const std::string& descriptor, double r, double s, int kind, const std::string& q) {
            return qlap2d_numeric(parse_descriptor<double>(descriptor), r, s, kind_of(kind), fctx(q, 1e-14));
        },
        py::arg("descriptor"), py::arg("r"), py::arg("s"), py::arg("kind") = 1, py::arg("q") = "1/2");
    m.def(
        "transform_catalog",
        [](const std::string& descriptor, int kind, const std::string& q) {
            QContext<double> c(to_double(parse_rational(q)), 1e-14);
            return qlap2d_catalog<double>(parse_descriptor<double>(descriptor), kind_of(kind), c).str();
        },
        py::arg("descriptor"), py::arg("kind") = 1, py::arg("q") = "1/2");
    m.def(
        "transform_catalog_eval",
        [](const std::string& descriptor, double r, double s, int kind, const std::string& q) {
            QContext<double> c(to_double(parse_rational(q)), 1e-14);
            return qlap2d_catalog<double>(parse_descriptor<double>(descriptor), kind_of(kind), c).eval(r, s);
        },
        py::arg("descriptor"), py::arg("r"), py::arg("s"), py::arg("kind") = 1, py::arg("q") = "1/2");
    m.def(
        "transform_1d_numeric",
        [](const std::string& atom, double s, int kind, const std::string& q) {
            Kind1D k = kind == 1 ? Kind1D::first : Kind1D::second;
            return qlap1d_numeric(parse_atom1d<double>(atom), s, k, fctx(q, 1e-14));
        },
        py::arg("atom"), py::arg("s"), py::arg("kind") = 1, py::arg("q") = "1/2");

    m.def(
        "inverse_catalog",
        [](const std::string& descriptor, int kind, const std::string& q) {
            ExactContext c = ectx(q, 1e-12);
            Descriptor<Rational> d = parse_descriptor<Rational>(descriptor);
            RSExpr<Rational> img = qlap2d_catalog<Rational>(d, kind_of(kind), c);
            return inverse_catalog<Rational>(img, kind_of(kind), c).str();
        },
        py::arg("descriptor"), py::arg("kind") = 1, py::arg("q") = "1/2",
        "round-trips a descriptor through its closed form and the backward catalog");

    m.def(
        "solve",
        [](const std::string& equation, const std::string& q, const std::string& c, double alpha, double beta,
           const std::string& f, const std::string& g, const std::string& k) {
            auto id = parse_equation_id(equation);
            if (!id) throw parse_error("unknown equation id '" + equation + "'");
            ExactContext ctx = ectx(q, 1e-12);
            switch (*id) {
                case EquationId::transport:
                    return report_to_dict(solve_transport(parse_rational(c), parse_atom1d<Rational>(f),
                                                          parse_atom1d<Rational>(g), ctx));
                case EquationId::telegraph:
                    return report_to_dict(verify_telegraph(to_double(parse_rational(c)), alpha, beta, ctx));
                case EquationId::wave:
                    return report_to_dict(solve_wave(parse_rational(c), parse_atom1d<Rational>(f),
                                                     parse_atom1d<Rational>(g), ctx));
                default:
                    return report_to_dict(solve_functional(*id, ctx, parse_rational(k)));
            }
        },
        py::arg("equation"), py::arg("q") = "1/2", py::arg("c") = "1", py::arg("alpha") = 0.0,
        py::arg("beta") = 0.0, py::arg("f") = "zero", py::arg("g") = "zero", py::arg("k") = "1");
}
