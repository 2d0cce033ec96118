#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

#include "qlt/qapps.hpp"
#include "qlt/qsymbolic.hpp"
#include "qlt/qtransform2.hpp"
#include "qlt/report.hpp"

using json = nlohmann::json;
using namespace qlt;

namespace {

constexpr int EXIT_OK = 0;
constexpr int EXIT_VERIFY_FAIL = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_DIVERGENCE = 3;
constexpr int EXIT_CATALOG_MISS = 4;

struct RunConfig {
    std::string q_text = "1/2";
    std::string mode = "auto"; // auto: exact for fraction strings, float otherwise
    double tol = 1e-8;         // agreement threshold for two-path checks
    long k_min = -64, k_max = 600;
    std::string output = "json";
    long seed = 12345;
    std::string out_path;

    Rational q_rational() const { return parse_rational(q_text); }
    bool exact() const {
        if (mode == "exact") return true;
        if (mode == "float") return false;
        return q_text.find('/') != std::string::npos;
    }
    // evaluation runs at least as tight as 1e-12 regardless of the threshold
    double eval_tol() const { return std::min(tol, 1e-12); }
    ExactContext exact_ctx() const {
        Rational q = q_rational();
        return ExactContext(q, eval_tol());
    }
    FloatContext float_ctx() const { return FloatContext(to_double(q_rational()), eval_tol()); }

    void emit(const json& record, int /*precision*/ = 17) const {
        std::string text;
        if (output == "csv") {
            std::string header, values;
            for (auto it = record.begin(); it != record.end(); ++it) {
                if (!header.empty()) {
                    header += ",";
                    values += ",";
                }
                header += it.key();
                values += it.value().is_string() ? it.value().get<std::string>() : it.value().dump();
            }
            text = header + "\n" + values + "\n";
        } else {
            text = record.dump(2) + "\n";
        }
        if (out_path.empty()) {
            std::cout << text;
        } else {
            std::ofstream f(out_path);
            f << text;
        }
    }
};

int run_eval(const RunConfig& cfg, const std::string& fn, const std::vector<std::string>& args) {
    json rec{{"op", "eval"}, {"function", fn}, {"q", cfg.q_text}};
    auto need = [&](std::size_t n) {
        if (args.size() != n) throw parse_error("eval " + fn + ": expected " + std::to_string(n) + " argument(s)");
    };
    FloatContext fctx = cfg.float_ctx();
    auto set_float = [&](double v) { rec["value"] = v; };

    if (fn == "qnum" || fn == "qfact" || fn == "qbinom" || fn == "qpoch") {
        if (cfg.exact()) {
            ExactContext ctx = cfg.exact_ctx();
            if (fn == "qnum") {
                need(1);
                rec["value"] = to_string(q_number<Rational>(parse_rational(args[0]), ctx));
            } else if (fn == "qfact") {
                need(1);
                rec["value"] = to_string(q_factorial<Rational>(std::stol(args[0]), ctx));
            } else if (fn == "qbinom") {
                need(2);
                rec["value"] = to_string(q_binomial<Rational>(std::stol(args[0]), std::stol(args[1]), ctx));
            } else {
                need(2);
                if (args[1] == "inf") {
                    rec["value"] = q_pochhammer_inf(to_double(parse_rational(args[0])), fctx);
                } else {
                    Rational n = parse_rational(args[1]);
                    if (is_integer(n))
                        rec["value"] = to_string(q_pochhammer<Rational>(parse_rational(args[0]), to_long(n), ctx));
                    else
                        rec["value"] =
                            q_pochhammer_real(to_double(parse_rational(args[0])), to_double(n), fctx);
                }
            }
        } else {
            if (fn == "qnum") {
                need(1);
                set_float(q_number<double>(to_double(parse_rational(args[0])), fctx));
            } else if (fn == "qfact") {
                need(1);
                set_float(q_factorial<double>(std::stol(args[0]), fctx));
            } else if (fn == "qbinom") {
                need(2);
                set_float(q_binomial<double>(std::stol(args[0]), std::stol(args[1]), fctx));
            } else {
                need(2);
                if (args[1] == "inf")
                    set_float(q_pochhammer_inf(to_double(parse_rational(args[0])), fctx));
                else {
                    Rational n = parse_rational(args[1]);
                    if (is_integer(n))
                        set_float(q_pochhammer<double>(to_double(parse_rational(args[0])), to_long(n), fctx));
                    else
                        set_float(q_pochhammer_real(to_double(parse_rational(args[0])), to_double(n), fctx));
                }
            }
        }
    } else if (fn == "eq") {
        need(1);
        set_float(q_exp_small(to_double(parse_rational(args[0])), fctx));
    } else if (fn == "Eq") {
        need(1);
        set_float(q_exp_big(to_double(parse_rational(args[0])), fctx));
    } else if (fn == "trig") {
        need(2);
        TrigKind t = parse_atom1d<double>("trig:" + args[0] + ",1").trig;
        set_float(q_trig(to_double(parse_rational(args[1])), t, fctx));
    } else if (fn == "gamma1") {
        need(1);
        set_float(q_gamma_first(to_double(parse_rational(args[0])), fctx));
    } else if (fn == "gamma2") {
        need(1);
        set_float(q_gamma_second(to_double(parse_rational(args[0])), fctx));
    } else {
        throw parse_error("unknown eval function '" + fn + "'");
    }
    rec["args"] = args;
    cfg.emit(rec);
    return EXIT_OK;
}

int run_transform(const RunConfig& cfg, const std::string& desc_text, int kind_no, double r, double s,
                  const std::string& mode, bool window_set) {
    TransformKind kind = static_cast<TransformKind>(kind_no);
    FloatContext fctx = cfg.float_ctx();
    json rec{{"op", "transform"}, {"kind", kind_no}, {"q", cfg.q_text}, {"params", desc_text},
             {"r", r},            {"s", s}};

    // a window override keeps each axis on its own lattice scale
    std::optional<LatticeSumPlan> plan_x, plan_y;
    if (window_set) {
        auto axis_plan = [&](Kind1D k, double freq) {
            LatticeSumPlan p = (k == Kind1D::first) ? first_kind_adapted_plan(freq, fctx) : second_kind_plan();
            p.k_min = std::min(cfg.k_min, 0L);
            p.k_max = std::max(cfg.k_max, 0L);
            return p;
        };
        plan_x = axis_plan(axis_kind_x(kind), r);
        plan_y = axis_plan(axis_kind_y(kind), s);
    }
    std::optional<double> numeric, closed;
    if (mode == "numeric" || mode == "both") {
        Descriptor<double> d = parse_descriptor<double>(desc_text);
        numeric = qlap2d_numeric(d, r, s, kind, fctx, plan_x, plan_y);
        rec["value_numeric"] = *numeric;
    }
    if (mode == "catalog" || mode == "both") {
        bool exact_done = false;
        if (cfg.exact()) {
            try {
                ExactContext ctx = cfg.exact_ctx();
                Descriptor<Rational> d = parse_descriptor<Rational>(desc_text);
                RSExpr<Rational> e = qlap2d_catalog<Rational>(d, kind, ctx);
                rec["catalog_expr"] = e.str();
                closed = to_double(e.eval(parse_rational(std::to_string(r)), parse_rational(std::to_string(s))));
                if (!e.notes.empty()) rec["notes"] = e.notes;
                exact_done = true;
            } catch (const exact_input_error&) {
                // half-integer images need the float gamma values
            }
        }
        if (!exact_done) {
            QContext<double> ctx = cfg.float_ctx();
            Descriptor<double> d = parse_descriptor<double>(desc_text);
            RSExpr<double> e = qlap2d_catalog<double>(d, kind, ctx);
            rec["catalog_expr"] = e.str();
            closed = e.eval(r, s);
            if (!e.notes.empty()) rec["notes"] = e.notes;
        }
        rec["value_catalog"] = *closed;
    }
    int code = EXIT_OK;
    if (numeric && closed) {
        double scale = std::max({std::fabs(*numeric), std::fabs(*closed), 1e-30});
        double diff = std::fabs(*numeric - *closed) / scale;
        rec["rel_diff"] = diff;
        rec["status"] = diff <= cfg.tol ? "pass" : "fail";
        if (diff > cfg.tol) code = EXIT_VERIFY_FAIL;
    }
    cfg.emit(rec);
    return code;
}

int run_verify(const RunConfig& cfg, const std::string& suite) {
    std::vector<VerifyRow> rows;
    ExactContext ectx = cfg.exact_ctx();
    FloatContext fctx = cfg.float_ctx();
    bool known = false;
    if (suite == "identities" || suite == "all") {
        auto r = suite_identities(ectx);
        rows.insert(rows.end(), r.begin(), r.end());
        known = true;
    }
    if (suite == "gamma" || suite == "all") {
        auto r = suite_gamma(fctx);
        rows.insert(rows.end(), r.begin(), r.end());
        known = true;
    }
    if (suite == "transforms" || suite == "all") {
        auto r = suite_transform_tables(fctx);
        rows.insert(rows.end(), r.begin(), r.end());
        known = true;
    }
    if (suite == "derivatives" || suite == "all") {
        auto r = suite_operator_theorems(fctx);
        rows.insert(rows.end(), r.begin(), r.end());
        known = true;
    }
    if (suite == "apps" || suite == "all") {
        auto r = suite_apps(ectx);
        rows.insert(rows.end(), r.begin(), r.end());
        known = true;
    }
    if (suite == "divergence" || suite == "all") {
        auto r = suite_divergence(fctx);
        rows.insert(rows.end(), r.begin(), r.end());
        known = true;
    }
    if (!known) throw parse_error("unknown verify suite '" + suite + "'");

    std::string text = cfg.output == "csv" ? rows_to_csv(rows) : rows_to_json(rows);
    if (cfg.out_path.empty()) {
        std::cout << text << "\n";
    } else {
        std::ofstream f(cfg.out_path);
        f << text;
    }
    return all_pass(rows) ? EXIT_OK : EXIT_VERIFY_FAIL;
}

int run_solve(const RunConfig& cfg, const std::string& id_text, const std::string& c_text, double alpha,
              double beta, const std::string& f_text, const std::string& g_text, const std::string& k_text) {
    auto id = parse_equation_id(id_text);
    if (!id) throw parse_error("unknown equation id '" + id_text + "'");
    ExactContext ctx = cfg.exact_ctx();

    SolutionReport rep;
    switch (*id) {
        case EquationId::cauchy_ward:
        case EquationId::cauchy_coadd:
        case EquationId::abel_ward:
        case EquationId::abel_coadd:
            rep = solve_functional(*id, ctx, parse_rational(k_text));
            break;
        case EquationId::transport:
            rep = solve_transport(parse_rational(c_text), parse_atom1d<Rational>(f_text),
                                  parse_atom1d<Rational>(g_text), ctx);
            break;
        case EquationId::telegraph:
            rep = verify_telegraph(to_double(parse_rational(c_text)), alpha, beta, ctx);
            break;
        case EquationId::wave:
            rep = solve_wave(parse_rational(c_text), parse_atom1d<Rational>(f_text),
                             parse_atom1d<Rational>(g_text), ctx);
            break;
    }
    json rec{{"op", "solve"},
             {"equation", to_string(rep.id)},
             {"q", cfg.q_text},
             {"solution", rep.form},
             {"transform_domain", rep.transform_domain.str()},
             {"inversion_complete", rep.inversion_complete},
             {"residual_exact", rep.residual_exact},
             {"residual_max", rep.residual_max},
             {"points_checked", rep.lattice_points_checked}};
    if (rep.transform_check_error >= 0) rec["transform_check_error"] = rep.transform_check_error;
    cfg.emit(rec);
    return EXIT_OK;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"computation kernel and verification workbench for double q-Laplace transforms"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env_tol = std::getenv("Q_LAB_TOL")) cfg.tol = std::atof(env_tol);
    app.add_option("--q", cfg.q_text, "deformation parameter, fraction string or decimal, in (0,1)");
    app.add_option("--mode", cfg.mode, "exact|float|auto")->check(CLI::IsMember({"exact", "float", "auto"}));
    app.add_option("--tol", cfg.tol, "agreement threshold for two-path checks");
    auto* kmin_opt = app.add_option("--k-min", cfg.k_min, "lattice window lower index");
    auto* kmax_opt = app.add_option("--k-max", cfg.k_max, "lattice window upper index");
    app.add_option("--output", cfg.output, "json|csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--out", cfg.out_path, "write the report to this path instead of stdout");

    auto* eval_cmd = app.add_subcommand("eval", "evaluate a q-function");
    eval_cmd->fallthrough();
    std::string eval_fn;
    std::vector<std::string> eval_args;
    eval_cmd->add_option("function", eval_fn, "qnum|qfact|qbinom|qpoch|eq|Eq|trig|gamma1|gamma2")->required();
    eval_cmd->add_option("args", eval_args, "function arguments");

    auto* tr_cmd = app.add_subcommand("transform", "double q-Laplace transform of a descriptor");
    tr_cmd->fallthrough();
    std::string tr_desc, tr_mode = "both";
    int tr_kind = 1;
    double tr_r = 1.0, tr_s = 1.0;
    tr_cmd->add_option("descriptor", tr_desc, "integrand descriptor")->required();
    tr_cmd->add_option("--kind", tr_kind, "transform kind 1..4")->check(CLI::Range(1, 4));
    tr_cmd->add_option("--r", tr_r, "first frequency");
    tr_cmd->add_option("--s", tr_s, "second frequency");
    tr_cmd->add_option("--mode", tr_mode, "numeric|catalog|both")
        ->check(CLI::IsMember({"numeric", "catalog", "both"}));

    auto* ver_cmd = app.add_subcommand("verify", "run a verification suite");
    ver_cmd->fallthrough();
    std::string ver_suite;
    ver_cmd->add_option("suite", ver_suite, "identities|gamma|transforms|derivatives|apps|divergence|all")
        ->required();

    auto* solve_cmd = app.add_subcommand("solve", "solve or verify one of the reproduced equations");
    solve_cmd->fallthrough();
    std::string sv_id, sv_c = "1", sv_f = "zero", sv_g = "zero", sv_k = "1";
    double sv_alpha = 0.0, sv_beta = 0.0;
    solve_cmd->add_option("equation", sv_id, "cauchy_ward|cauchy_coadd|abel_ward|abel_coadd|transport|telegraph|wave")
        ->required();
    solve_cmd->add_option("--c", sv_c, "wave/transport speed (rational)");
    solve_cmd->add_option("--alpha", sv_alpha, "telegraph damping");
    solve_cmd->add_option("--beta", sv_beta, "telegraph damping");
    solve_cmd->add_option("--f", sv_f, "1-D data atom");
    solve_cmd->add_option("--g", sv_g, "1-D data atom");
    solve_cmd->add_option("--k", sv_k, "free constant of the functional equations");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << e.what() << "\n";
        return EXIT_USAGE;
    }

    try {
        Rational q = cfg.q_rational();
        if (!(q > 0 && q < 1)) throw parse_error("q must lie strictly inside (0,1)");
        if (eval_cmd->parsed()) return run_eval(cfg, eval_fn, eval_args);
        if (tr_cmd->parsed()) {
            bool window_set = kmin_opt->count() > 0 || kmax_opt->count() > 0;
            return run_transform(cfg, tr_desc, tr_kind, tr_r, tr_s, tr_mode, window_set);
        }
        if (ver_cmd->parsed()) return run_verify(cfg, ver_suite);
        if (solve_cmd->parsed())
            return run_solve(cfg, sv_id, sv_c, sv_alpha, sv_beta, sv_f, sv_g, sv_k);
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const divergence_error& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return EXIT_DIVERGENCE;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << "\n";
        return EXIT_DIVERGENCE;
    } catch (const catalog_miss& e) {
        std::cerr << "catalog miss: " << e.what() << "\n";
        return EXIT_CATALOG_MISS;
    } catch (const no_match_error& e) {
        std::cerr << "no inverse match: " << e.what() << "\n";
        return EXIT_CATALOG_MISS;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    }
    return EXIT_USAGE;
}
