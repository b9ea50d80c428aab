// fockweyl: Fock-space representations of the generalized diamond group,
// Berezin / complex Weyl symbol calculus and star products, with a
// verification harness over the closed-form and quadrature engines.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "fockweyl/json_io.hpp"
#include "fockweyl/orbit.hpp"
#include "fockweyl/schrodinger.hpp"
#include "fockweyl/star.hpp"
#include "fockweyl/verify.hpp"

using namespace fockweyl;

namespace {

json load_json_arg(const std::string& arg) {
    // file path or inline JSON
    if (!arg.empty() && (arg[0] == '{' || arg[0] == '[')) return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw config_error("cannot open JSON file '" + arg + "'");
    json j;
    in >> j;
    return j;
}

Config load_config(const std::string& path) {
    Config cfg;
    if (path.empty()) return cfg;
    json j = load_json_arg(path);
    cfg.lambda = j.value("lambda", 1.0);
    cfg.n = j.value("n", std::size_t(1));
    cfg.m = j.value("m", std::size_t(1));
    if (j.contains("alpha")) cfg.alpha = j["alpha"].get<std::vector<std::vector<double>>>();
    if (j.contains("beta")) cfg.beta = j["beta"].get<std::vector<double>>();
    cfg.seed = j.value("seed", cfg.seed);
    cfg.truncation_degree = j.value("truncation_degree", cfg.truncation_degree);
    if (j.contains("quad_order")) {
        cfg.quad_order_n1 = j["quad_order"].get<int>();
        cfg.quad_order_n2 = std::min(cfg.quad_order_n1, 40);
    }
    if (j.contains("tolerances"))
        for (auto it = j["tolerances"].begin(); it != j["tolerances"].end(); ++it)
            cfg.tolerances[it.key()] = it.value().get<double>();
    if (cfg.lambda <= 0.0) throw config_error("config: lambda > 0 required");
    if (cfg.n < 1 || cfg.m < 1) throw config_error("config: n, m >= 1 required");
    if (!cfg.alpha.empty()) {
        if (cfg.alpha.size() != cfg.m) throw config_error("config: alpha must have m rows");
        for (const auto& row : cfg.alpha)
            if (row.size() != cfg.n) throw config_error("config: alpha rows must have n entries");
    }
    if (!cfg.beta.empty() && cfg.beta.size() != cfg.m)
        throw config_error("config: beta must have m entries");
    return cfg;
}

WeightSystem model_from_config(const Config& cfg) {
    if (!cfg.alpha.empty()) {
        std::vector<double> beta = cfg.beta.empty() ? std::vector<double>(cfg.m, 0.0) : cfg.beta;
        return WeightSystem(cfg.n, cfg.m, cfg.alpha, beta, cfg.lambda);
    }
    return WeightSystem(cfg.n, cfg.m,
                        std::vector<std::vector<double>>(cfg.m, std::vector<double>(cfg.n, 1.0)),
                        std::vector<double>(cfg.m, 0.0), cfg.lambda);
}

json report_to_json(const std::vector<SuiteReport>& suites, const Config& cfg,
                    const std::string& selected) {
    json out;
    out["schema"] = 1;
    out["suite"] = selected;
    out["seed"] = cfg.seed;
    out["config"] = json{{"sweep", cfg.alpha.empty()},
                         {"lambda", cfg.lambda},
                         {"n", cfg.n},
                         {"m", cfg.m},
                         {"quad_order_n1", cfg.quad_order_n1},
                         {"quad_order_n2", cfg.quad_order_n2},
                         {"truncation_degree", cfg.truncation_degree}};
    json suite_list = json::array();
    std::size_t total = 0, passed = 0;
    json checks = json::array();
    for (const auto& s : suites) {
        suite_list.push_back(json{{"name", s.suite}, {"selected", true}, {"pass", s.pass}});
        for (const auto& c : s.checks) {
            ++total;
            if (c.pass) ++passed;
            json jc{{"suite", s.suite},
                    {"name", c.name},
                    {"samples", c.samples},
                    {"max_abs_residual", c.max_abs_residual},
                    {"tolerance", c.tolerance},
                    {"pass", c.pass}};
            if (cfg.timings) jc["wall_time_ms"] = c.wall_time_ms;
            if (!c.note.empty()) jc["note"] = c.note;
            checks.push_back(jc);
        }
    }
    for (const std::string& name : all_suite_names()) {
        bool ran = false;
        for (const auto& s : suites)
            if (s.suite == name) ran = true;
        if (!ran)
            suite_list.push_back(
                json{{"name", name}, {"selected", false}, {"skipped", "not selected"}});
    }
    out["suites"] = suite_list;
    out["checks"] = checks;
    out["summary"] = json{{"total", total},
                          {"passed", passed},
                          {"failed", total - passed},
                          {"pass", passed == total}};
    return out;
}

int cmd_verify(const std::string& suite, const Config& cfg, const std::string& out_path) {
    std::vector<SuiteReport> reports;
    if (suite == "all") {
        for (const std::string& name : all_suite_names()) reports.push_back(run_suite(name, cfg));
    } else {
        reports.push_back(run_suite(suite, cfg));
    }
    json out = report_to_json(reports, cfg, suite);
    std::string text = out.dump(2);
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        f << text << "\n";
    }
    std::cout << text << "\n";
    bool pass = out["summary"]["pass"].get<bool>();
    return pass ? 0 : 1;
}

cvec point_from_json(const json& j) {
    // accept [[re,im],...], [re,im], or a bare number
    if (j.is_number()) return {cplx(j.get<double>(), 0.0)};
    if (j.is_array() && j.size() == 2 && j[0].is_number()) return {cplx_from_json(j)};
    return cvec_from_json(j);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fock-space symbol calculus for the generalized diamond group"};
    app.require_subcommand(1);

    std::string config_path, out_path, suite = "all", g_json, op_arg, at_arg, kind = "weyl0";
    std::string product = "moyal", f_arg, g_arg, z_arg, a_arg, b_arg;
    std::uint64_t seed_override = 0;
    bool timings = false;
    int quad_order = 0, degree = 0, jobs = 1, series_order = -1;
    double c0 = 0.0;

    std::vector<CLI::Option*> seed_opts;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        seed_opts.push_back(cmd->add_option("--seed", seed_override, "override the config seed"));
        cmd->add_option("--quad-order", quad_order, "Gauss-Hermite order per real axis");
        cmd->add_option("--degree", degree, "Fock basis truncation degree");
    };

    CLI::App* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite,
                       "group|gaussian|representation|correspondences|orbit|star|all");
    verify->add_option("--out", out_path, "write the JSON report to this path");
    verify->add_option("--jobs", jobs, "checks run in parallel");
    verify->add_flag("--timings", timings, "include wall times in the report");
    add_common(verify);

    CLI::App* kernel = app.add_subcommand("kernel", "print a representation kernel as JSON");
    std::string which_kernel;
    bool with_matrix = false;
    kernel->add_option("type", which_kernel, "pi|rho|sigma|mehler")->required();
    kernel->add_option("--g", g_json, "group element JSON {\"t\":[..],\"z0\":[[re,im]..],\"c0\":r}")
        ->required();
    kernel->add_flag("--matrix", with_matrix,
                     "also dump the truncated Fock-basis matrix (see --degree)");
    add_common(kernel);

    CLI::App* symbol = app.add_subcommand("symbol", "evaluate a symbol of a Gaussian kernel");
    symbol->add_option("--kind", kind, "berezin|weyl0|weyl1");
    symbol->add_option("--op", op_arg, "kernel JSON (inline or file)")->required();
    symbol->add_option("--at", at_arg, "evaluation point JSON")->required();
    add_common(symbol);

    CLI::App* star_cmd = app.add_subcommand("star", "star product of two polynomials");
    star_cmd->add_option("--product", product, "moyal|star0|star1");
    star_cmd->add_option("--f", f_arg, "first polynomial (text or JSON)")->required();
    star_cmd->add_option("--g", g_arg, "second polynomial (text or JSON)")->required();
    add_common(star_cmd);

    CLI::App* star_exp = app.add_subcommand("star-exp", "closed-form star exponential");
    star_exp->add_option("--c0", c0, "constant part");
    star_exp->add_option("--a", a_arg, "linear coefficient vector JSON");
    star_exp->add_option("--b", b_arg, "quadratic coefficient vector JSON")->required();
    star_exp->add_option("--at", z_arg, "evaluation point JSON")->required();
    star_exp->add_option("--series-order", series_order,
                         "also evaluate the truncated series to this order");
    add_common(star_exp);

    CLI::App* orbit_cmd = app.add_subcommand("orbit", "psi-map of a point");
    orbit_cmd->add_option("--z", z_arg, "point JSON")->required();
    add_common(orbit_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        Config cfg = load_config(config_path);
        for (const CLI::Option* opt : seed_opts)
            if (opt->count() > 0) cfg.seed = seed_override;
        if (quad_order > 0) {
            cfg.quad_order_n1 = quad_order;
            cfg.quad_order_n2 = std::min(quad_order, 40);
        }
        if (degree > 0) cfg.truncation_degree = degree;
        cfg.jobs = jobs;
        cfg.timings = timings;

        if (verify->parsed()) return cmd_verify(suite, cfg, out_path);

        WeightSystem ws = model_from_config(cfg);

        if (kernel->parsed()) {
            GroupElement g = group_element_from_json(load_json_arg(g_json));
            json out;
            auto maybe_matrix = [&](const GaussianKernelOp& k, json& j) {
                if (!with_matrix) return;
                FockBasisSpec spec{ws.n, ws.lambda, std::min(cfg.truncation_degree, 12)};
                j = json{{"kernel", j}, {"matrix", to_json(kernel_to_matrix(k, spec))}};
            };
            if (which_kernel == "pi") {
                out = to_json(pi_kernel(g, ws));
                maybe_matrix(pi_kernel(g, ws), out);
            } else if (which_kernel == "rho") {
                out = to_json(rho_kernel(g.z0, g.c0, ws));
                maybe_matrix(rho_kernel(g.z0, g.c0, ws), out);
            } else if (which_kernel == "sigma") {
                out = to_json(sigma_kernel(g.t, ws));
                maybe_matrix(sigma_kernel(g.t, ws), out);
            } else if (which_kernel == "mehler") {
                SchrodingerGaussianKernel k = mehler_kernel(g.t, ws);
                out = json{{"c", to_json(k.c)},   {"P", to_json(k.P)},   {"R", to_json(k.R)},
                           {"S", to_json(k.S)},   {"lx", to_json(k.lx)}, {"ly", to_json(k.ly)},
                           {"lambda", k.lambda}};
            } else {
                throw config_error("unknown kernel type '" + which_kernel + "'");
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (symbol->parsed()) {
            GaussianKernelOp op = kernel_from_json(load_json_arg(op_arg));
            cvec at = point_from_json(load_json_arg(at_arg));
            if (at.size() != op.dim()) throw config_error("point dimension mismatch");
            cplx value;
            if (kind == "berezin")
                value = berezin_symbol(op, at);
            else if (kind == "weyl0" || kind == "weyl1")
                // W_1(A)(x,y) = W_0(B A B^{-1})(x+iy): the operator is already
                // given by its Fock-side kernel, so both kinds evaluate W_0
                value = weyl0_symbol_trace(op, at, ws);
            else
                throw config_error("unknown symbol kind '" + kind + "'");
            std::cout << json{{"kind", kind}, {"value", to_json(value)}}.dump(2) << "\n";
            return 0;
        }

        if (star_cmd->parsed()) {
            json out;
            if (product == "star0") {
                PolyZ f = (f_arg[0] == '[') ? poly_from_json<PolyZ>(json::parse(f_arg), ws.n)
                                            : poly_from_text<PolyZ>(f_arg, ws.n, true);
                PolyZ g = (g_arg[0] == '[') ? poly_from_json<PolyZ>(json::parse(g_arg), ws.n)
                                            : poly_from_text<PolyZ>(g_arg, ws.n, true);
                PolyZ r = star0(f, g, ws);
                out = json{{"product", product},
                           {"text", poly_to_text(r, true)},
                           {"terms", poly_to_json(r)}};
            } else if (product == "moyal" || product == "star1") {
                PolyXY f = (f_arg[0] == '[') ? poly_from_json<PolyXY>(json::parse(f_arg), ws.n)
                                             : poly_from_text<PolyXY>(f_arg, ws.n, false);
                PolyXY g = (g_arg[0] == '[') ? poly_from_json<PolyXY>(json::parse(g_arg), ws.n)
                                             : poly_from_text<PolyXY>(g_arg, ws.n, false);
                PolyXY r = (product == "moyal") ? moyal(f, g) : star1(f, g, ws);
                out = json{{"product", product},
                           {"text", poly_to_text(r, false)},
                           {"terms", poly_to_json(r)}};
            } else {
                throw config_error("unknown product '" + product + "'");
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (star_exp->parsed()) {
            cvec a = a_arg.empty() ? cvec(ws.n, cplx(0.0, 0.0))
                                   : point_from_json(load_json_arg(a_arg));
            json bj = load_json_arg(b_arg);
            rvec b;
            if (bj.is_number())
                b.push_back(bj.get<double>());
            else
                b = bj.get<std::vector<double>>();
            cvec z = point_from_json(load_json_arg(z_arg));
            cplx closed = star_exp_closed(c0, a, b, z, ws);
            json out{{"closed", to_json(closed)}};
            if (series_order >= 0) {
                PolyZ p = star_exp_quadratic(c0, a, b, ws.n);
                FormalSeries<PolyZ> s = star_exp_series_star0(p, series_order, ws);
                cplx sum(0.0, 0.0);
                for (const auto& coeff : s.coefficients) sum += coeff.evaluate(z);
                out["series"] = to_json(sum);
                out["series_order"] = series_order;
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }

        if (orbit_cmd->parsed()) {
            cvec z = point_from_json(load_json_arg(z_arg));
            std::cout << to_json(psi_map(z, ws)).dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
