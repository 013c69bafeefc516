#include <cmdegkit/acceptance.hpp>
#include <cmdegkit/catalog.hpp>
#include <cmdegkit/cmdeg.hpp>
#include <cmdegkit/errors.hpp>
#include <cmdegkit/inequalities.hpp>
#include <cmdegkit/kernel.hpp>
#include <cmdegkit/report.hpp>
#include <cmdegkit/series.hpp>
#include <cmdegkit/strongcm.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace cmdegkit;

struct Options {
    std::string fn = "Psi";
    double x = 1.0;
    bool x_given = false;
    double alpha = 4.0;
    int order = 8;
    int kmax = 12;
    double lambda = 0.0;
    double mu = 0.0;
    bool mu_given = false;
    double nu = 4.0;
    bool nu_given = false;
    double alpha_lo = 0.0;
    double alpha_hi = 8.0;
    double width_tol = 0.1;
    GridSpec grid;
    std::string format = "json";
    std::string out;
    EvalContext ctx;
};

int emit(const Options& opt, const std::string& payload, bool pass) {
    if (opt.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream file(opt.out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open output file: " << opt.out << "\n";
            return 2;
        }
        file << payload;
    }
    return pass ? 0 : 1;
}

int emit_error(const Options& opt, const std::string& message) {
    std::string payload;
    const OutputFormat fmt = parse_format(opt.format);
    if (fmt == OutputFormat::json) {
        nlohmann::ordered_json j;
        j["schema"] = 1;
        j["kind"] = "error";
        j["message"] = message;
        payload = j.dump(2) + "\n";
    } else if (fmt == OutputFormat::csv) {
        payload = "# error=" + message + "\n";
    } else {
        payload = "error: " + message + "\n";
    }
    emit(opt, payload, false);
    return 1;
}

void add_grid_options(CLI::App* cmd, Options& opt) {
    cmd->add_option("--grid-min", opt.grid.min, "grid lower endpoint");
    cmd->add_option("--grid-max", opt.grid.max, "grid upper endpoint");
    cmd->add_option("--grid-points", opt.grid.points, "grid point count");
    cmd->add_option("--grid-scale", opt.grid.scale,
                    "grid spacing: log or linear");
}

} // namespace

int main(int argc, char** argv) {
    Options opt;

    CLI::App app{"cmdeg-kit: numerical checks for the complete-monotonicity "
                 "degree of [psi'(x)]^2 + psi''(x)"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "flat key=value file for the global options below");
    app.add_option("--format", opt.format, "output format: json, csv, text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    app.add_option("--out", opt.out, "write the report to this file");
    app.add_option("--quad-rel-tol", opt.ctx.quad_rel_tol,
                   "quadrature relative tolerance");
    app.add_option("--horizon", opt.ctx.horizon,
                   "truncation horizon for improper integrals");
    app.add_option("--shift-threshold", opt.ctx.shift_threshold,
                   "argument size the recurrence shifts up to");

    auto* eval = app.add_subcommand("eval", "evaluate a catalog function");
    eval->fallthrough();
    eval->add_option("--fn", opt.fn, "catalog function id");
    eval->add_option("--x", opt.x, "evaluation point")->required();

    auto* kernel = app.add_subcommand(
        "kernel", "dump kernel samples (sigma, derivatives, q4, "
                  "log-concavity) over a t-grid");
    kernel->fallthrough();
    add_grid_options(kernel, opt);

    auto* series = app.add_subcommand(
        "series", "exact series coefficient table and positivity");
    series->fallthrough();
    series->add_option("--kmax", opt.kmax, "largest index to tabulate");

    auto* verify = app.add_subcommand("verify", "run a verification check");
    verify->require_subcommand(1);
    verify->fallthrough();

    auto* vcm = verify->add_subcommand(
        "cm", "sign conditions for x^alpha f over a grid");
    vcm->fallthrough();
    vcm->add_option("--fn", opt.fn, "catalog function id");
    vcm->add_option("--alpha", opt.alpha, "weight exponent");
    vcm->add_option("--order", opt.order, "highest derivative order");
    add_grid_options(vcm, opt);

    auto* vbounds = verify->add_subcommand(
        "bounds", "rational bound sandwich, or the (mu, nu) pair when "
                  "--mu/--nu are given");
    vbounds->fallthrough();
    auto* mu_opt = vbounds->add_option("--mu", opt.mu,
                                       "lower-side family parameter");
    auto* nu_opt = vbounds->add_option("--nu", opt.nu,
                                       "upper-side family parameter");
    add_grid_options(vbounds, opt);

    auto* vstrong = verify->add_subcommand(
        "strongcm", "strong-form check vs the weighted check on x f");
    vstrong->fallthrough();
    vstrong->add_option("--fn", opt.fn, "catalog function id");
    vstrong->add_option("--order", opt.order, "highest derivative order");
    add_grid_options(vstrong, opt);

    auto* vlaplace = verify->add_subcommand(
        "laplace", "integral representation of x^4 Psi");
    vlaplace->fallthrough();
    auto* x_opt = vlaplace->add_option("--x", opt.x, "single evaluation "
                                                     "point (default 1, 2, "
                                                     "5)");

    auto* vchain = verify->add_subcommand(
        "chain", "positivity chain: auxiliary functions, log-concavity, "
                 "q4, convolution ordering");
    vchain->fallthrough();

    auto* degree = app.add_subcommand(
        "degree", "bisect the largest weight passing the sign conditions");
    degree->fallthrough();
    degree->add_option("--fn", opt.fn, "catalog function id");
    degree->add_option("--order", opt.order, "highest derivative order");
    degree->add_option("--alpha-lo", opt.alpha_lo,
                       "bracket start (must pass)");
    degree->add_option("--alpha-hi", opt.alpha_hi, "bracket end (must fail)");
    degree->add_option("--width-tol", opt.width_tol,
                       "stop once the bracket is this narrow");
    add_grid_options(degree, opt);

    auto* probe = app.add_subcommand("probe", "exploratory runs");
    probe->require_subcommand(1);
    probe->fallthrough();
    auto* pconj = probe->add_subcommand(
        "conjecture", "degree brackets for the bound-gap family");
    pconj->fallthrough();
    pconj->add_option("--lambda", opt.lambda, "lower-gap parameter");
    auto* pmu = pconj->add_option("--mu", opt.mu, "upper-gap parameter");

    auto* report = app.add_subcommand(
        "report", "run the full library-level release gate");
    report->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    opt.x_given = x_opt->count() > 0;
    opt.mu_given = mu_opt->count() > 0;
    opt.nu_given = nu_opt->count() > 0;

    try {
        opt.ctx.validate();
        const OutputFormat fmt = parse_format(opt.format);

        if (eval->parsed()) {
            opt.x_given = true;
            const double v = catalog_eval(opt.fn, opt.x, opt.ctx);
            return emit(opt, render_eval(opt.fn, opt.x, v, fmt), true);
        }
        if (kernel->parsed()) {
            GridSpec tgrid = opt.grid;
            if (kernel->count("--grid-min") == 0)
                tgrid.min = 1e-3;
            if (kernel->count("--grid-max") == 0)
                tgrid.max = 30.0;
            if (kernel->count("--grid-points") == 0)
                tgrid.points = 200;
            std::vector<KernelSample> rows;
            for (double t : make_grid(tgrid))
                rows.push_back(kernel_sample(t, opt.ctx));
            return emit(opt, render(rows, fmt), true);
        }
        if (series->parsed()) {
            const SeriesTable table = q_positivity(opt.kmax);
            return emit(opt, render(table, fmt), table.all_positive);
        }
        if (vcm->parsed()) {
            const CMReport rep =
                cm_check(opt.fn, opt.alpha, opt.order, opt.grid, opt.ctx);
            return emit(opt, render(rep, fmt), rep.verdict);
        }
        if (vbounds->parsed()) {
            const BoundReport rep =
                (opt.mu_given || opt.nu_given)
                    ? double_inequality_check(opt.mu, opt.nu, opt.grid,
                                              opt.ctx)
                    : sandwich_check(opt.grid, opt.ctx);
            return emit(opt, render(rep, fmt), rep.verdict);
        }
        if (vstrong->parsed()) {
            const EquivalenceReport rep =
                equivalence_test(opt.fn, opt.order, opt.grid, opt.ctx);
            return emit(opt, render_equivalence(opt.fn, rep, fmt),
                        rep.agree);
        }
        if (vlaplace->parsed()) {
            std::vector<double> xs =
                opt.x_given ? std::vector<double>{opt.x}
                            : std::vector<double>{1.0, 2.0, 5.0};
            std::vector<LaplaceCheck> checks;
            bool all = true;
            for (double x : xs) {
                checks.push_back(laplace_identity_check(x, opt.ctx));
                all = all && checks.back().pass;
            }
            return emit(opt, render(checks, fmt), all);
        }
        if (vchain->parsed()) {
            SuiteResult one;
            one.criteria.push_back(run_criterion(4, opt.ctx));
            one.all_pass = one.criteria.front().pass;
            return emit(opt, render(one, fmt), one.all_pass);
        }
        if (degree->parsed()) {
            const DegreeEstimate est =
                degree_estimate(opt.fn, opt.alpha_lo, opt.alpha_hi,
                                opt.order, opt.grid, opt.ctx, opt.width_tol);
            return emit(opt, render(est, fmt), true);
        }
        if (pconj->parsed()) {
            if (pmu->count() == 0)
                opt.mu = 4.0;
            const ConjectureProbe pr =
                conjecture_probe(opt.lambda, opt.mu, opt.ctx);
            return emit(opt, render(pr, fmt), true);
        }
        if (report->parsed()) {
            const SuiteResult suite = run_suite(opt.ctx);
            return emit(opt, render(suite, fmt), suite.all_pass);
        }
    } catch (const std::exception& e) {
        return emit_error(opt, e.what());
    }
    return 2;
}
