// gheat - command-line front end: convergence/invariance/noise studies and
// direct access to the G operator, the dp and PDE solvers and the
// adversarial Monte Carlo simulator. Problem specs come from YAML files
// (see README); tabular results go to CSV, reports to JSON.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gheat/config.hpp"
#include "gheat/consistency.hpp"
#include "gheat/dp_solver.hpp"
#include "gheat/g_operator.hpp"
#include "gheat/harness.hpp"
#include "gheat/mc_simulator.hpp"
#include "gheat/pde_solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonArgs {
    std::string spec_file;
    std::string out_dir;
    bool print_json = false;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--spec", args.spec_file, "problem spec YAML file")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--out", args.out_dir, "directory for report.json and CSV output");
    cmd->add_flag("--print-json", args.print_json, "dump the JSON report to stdout");
}

fs::path ensure_out_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void emit_report(const CommonArgs& args, const json& report,
                 const std::function<void(std::ostream&)>& csv_writer = {}) {
    if (!args.out_dir.empty()) {
        const fs::path dir = ensure_out_dir(args.out_dir);
        std::ofstream js(dir / "report.json");
        js << report.dump(2) << "\n";
        if (csv_writer) {
            std::ofstream cs(dir / "table.csv");
            csv_writer(cs);
        }
    }
    if (args.print_json) std::cout << report.dump(2) << "\n";
}

gheat::GridSchedule parse_schedule(const std::string& s) {
    if (s == "offset") return gheat::GridSchedule::Offset;
    if (s == "aligned") return gheat::GridSchedule::Aligned;
    throw gheat::ConfigError("unknown grid schedule '" + s + "' (offset|aligned)");
}

gheat::SpatialGrid pde_grid(const gheat::ProblemSpec& spec, double half_width, double spacing) {
    const int half_cells = std::max(1, static_cast<int>(std::ceil(half_width / spacing - 1e-9)));
    return gheat::SpatialGrid::isotropic(spec.dim(), half_cells * spacing, 2 * half_cells + 1);
}

gheat::Matrix parse_square_matrix(const std::vector<double>& flat, int dim) {
    if (static_cast<int>(flat.size()) != dim * dim)
        throw gheat::ConfigError("matrix needs dim*dim row-major entries");
    gheat::Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r)
        for (int c = 0; c < dim; ++c) m(r, c) = flat[static_cast<std::size_t>(r) * dim + c];
    return m;
}

gheat::TestFunction test_function_preset(const std::string& name, int dim) {
    if (name == "affine")
        return gheat::TestFunction::affine(0.5, gheat::Vector::Constant(dim, -1.25));
    if (name == "quadratic") {
        gheat::SymMatrix s(dim);
        for (int r = 0; r < dim; ++r)
            for (int c = r; c < dim; ++c) s.set(r, c, r == c ? 1.5 : 0.25);
        return gheat::TestFunction::quadratic(s);
    }
    if (name == "cos-linear") return gheat::TestFunction::cos_linear_time(dim);
    if (name == "cos-exp") return gheat::TestFunction::cos_exp_time(dim, 0.7);
    if (name == "quartic") return gheat::TestFunction::quartic_linear_time(dim);
    throw gheat::ConfigError("unknown test function '" + name +
                             "' (affine|quadratic|cos-linear|cos-exp|quartic)");
}

// "t,x1[,x2,x3];t,x1..." -> evaluation points
std::vector<std::pair<double, gheat::Vector>> parse_points(const std::string& text, int dim) {
    std::vector<std::pair<double, gheat::Vector>> points;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::stringstream fields(group);
        std::string field;
        std::vector<double> values;
        while (std::getline(fields, field, ',')) values.push_back(std::stod(field));
        if (static_cast<int>(values.size()) != dim + 1)
            throw gheat::ConfigError("each point needs t plus one coordinate per axis");
        gheat::Vector x(dim);
        for (int r = 0; r < dim; ++r) x(r) = values[static_cast<std::size_t>(r) + 1];
        points.push_back({values[0], x});
    }
    if (points.empty()) throw gheat::ConfigError("no evaluation points given");
    return points;
}

gheat::NoiseModel noise_preset(const std::string& name, int dim) {
    if (name == "rademacher") return gheat::NoiseModel::rademacher(dim);
    if (name == "two_point") return gheat::NoiseModel::two_point_asymmetric(dim);
    if (name.rfind("gh", 0) == 0) {
        const int order = std::stoi(name.substr(2));
        return gheat::NoiseModel::gauss_hermite(dim, order);
    }
    if (name.rfind("file:", 0) == 0) return gheat::load_noise(name.substr(5), dim);
    throw gheat::ConfigError("unknown noise preset '" + name +
                             "' (rademacher|two_point|gh<order>|file:<path>)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical toolkit for the G-heat equation and worst-case CLT limits"};
    app.require_subcommand(1);

    // ------------------------------------------------------------------ converge
    CommonArgs conv_args;
    std::vector<int> conv_n{8, 32, 128, 512};
    double conv_grid_r = 0.0, conv_pde_h = 0.0, conv_theta = 0.9;
    std::string conv_schedule = "offset";
    int conv_max_nodes = 0;
    auto* conv = app.add_subcommand(
        "converge", "dp values per n against one PDE reference; gaps and empirical rates");
    add_common(conv, conv_args);
    conv->add_option("--n", conv_n, "step counts (space separated)");
    conv->add_option("--grid-r", conv_grid_r, "domain half-width override");
    conv->add_option("--pde-h", conv_pde_h, "PDE spatial spacing (default half-width/120)");
    conv->add_option("--theta", conv_theta, "CFL safety factor");
    conv->add_option("--schedule", conv_schedule, "dp grid schedule: offset|aligned");
    conv->add_option("--max-nodes", conv_max_nodes, "dp grid node cap per axis");

    // ---------------------------------------------------------------- invariance
    CommonArgs inv_args;
    std::vector<int> inv_n{8, 32, 128, 512};
    double inv_grid_r = 0.0, inv_quad_tol = 1e-6;
    double inv_rotation_deg = std::nan("");
    std::vector<double> inv_matrix;
    std::string inv_schedule = "aligned";
    int inv_max_nodes = 0;
    auto* inv = app.add_subcommand(
        "invariance", "solve with Lambda and Lambda*O; the limit depends only on {A A^T}");
    add_common(inv, inv_args);
    inv->add_option("--n", inv_n, "step counts");
    inv->add_option("--grid-r", inv_grid_r, "domain half-width override");
    inv->add_option("--rotation-deg", inv_rotation_deg, "d=2 rotation angle in degrees");
    inv->add_option("--matrix", inv_matrix, "orthogonal matrix, row-major");
    inv->add_option("--quad-tol", inv_quad_tol, "per-n gap bound for Gaussian noise");
    inv->add_option("--schedule", inv_schedule, "dp grid schedule: offset|aligned");
    inv->add_option("--max-nodes", inv_max_nodes, "dp grid node cap per axis");

    // --------------------------------------------------------------- noise-study
    CommonArgs ns_args;
    std::vector<int> ns_n{8, 32, 128, 512};
    double ns_grid_r = 0.0;
    std::vector<std::string> ns_noises{"rademacher", "gh7", "two_point"};
    int ns_max_nodes = 0;
    auto* ns = app.add_subcommand("noise-study",
                                  "dp values per (noise, n); the limit ignores the law");
    add_common(ns, ns_args);
    ns->add_option("--n", ns_n, "step counts");
    ns->add_option("--grid-r", ns_grid_r, "domain half-width override");
    ns->add_option("--noises", ns_noises,
                   "noise presets: rademacher|two_point|gh<order>|file:<path>");
    ns->add_option("--max-nodes", ns_max_nodes, "dp grid node cap per axis");

    // --------------------------------------------------------------------- g-eval
    CommonArgs g_args;
    std::vector<double> g_s;
    auto* gev = app.add_subcommand("g-eval", "evaluate G(S) and its maximizer");
    add_common(gev, g_args);
    gev->add_option("--s", g_s, "symmetric matrix S, row-major")->required();

    // ------------------------------------------------------------------- solve-dp
    CommonArgs dp_args;
    int dp_n = 64, dp_nodes = 0, dp_max_nodes = 0;
    double dp_grid_r = 0.0;
    std::string dp_schedule = "offset";
    auto* sdp = app.add_subcommand("solve-dp", "backward value iteration; prints v_n(0,0)");
    add_common(sdp, dp_args);
    sdp->add_option("--n", dp_n, "step count")->required();
    sdp->add_option("--grid-r", dp_grid_r, "domain half-width override");
    sdp->add_option("--grid-nodes", dp_nodes, "explicit odd node count per axis");
    sdp->add_option("--schedule", dp_schedule, "default grid schedule: offset|aligned");
    sdp->add_option("--max-nodes", dp_max_nodes, "default grid node cap per axis");

    // ------------------------------------------------------------------ solve-pde
    CommonArgs pde_args;
    double pde_h = 0.0, pde_theta = 0.9, pde_grid_r = 0.0;
    double pde_dt = 0.0;
    int pde_slices = 9;
    auto* spde = app.add_subcommand("solve-pde",
                                    "explicit monotone finite differences; prints v(0,0)");
    add_common(spde, pde_args);
    spde->add_option("--pde-h", pde_h, "spatial spacing (default half-width/120)");
    spde->add_option("--grid-r", pde_grid_r, "domain half-width override");
    spde->add_option("--theta", pde_theta, "CFL safety factor");
    spde->add_option("--dt", pde_dt, "explicit time step (must satisfy the CFL bound)");
    spde->add_option("--slices", pde_slices, "stored time slices");

    // ---------------------------------------------------------------------- euler
    CommonArgs eul_args;
    int eul_n = 256;
    long eul_paths = 100000;
    std::uint64_t eul_seed = 1;
    auto* eul = app.add_subcommand(
        "euler", "same feedback policy driven by native vs Gaussian increments");
    add_common(eul, eul_args);
    eul->add_option("--n", eul_n, "step count");
    eul->add_option("--paths", eul_paths, "path count");
    eul->add_option("--seed", eul_seed, "64-bit seed");

    // ---------------------------------------------------------------- consistency
    CommonArgs cons_args;
    std::vector<int> cons_n{16, 64, 256, 1024};
    std::string cons_phi = "cos-linear";
    std::string cons_points = "0.4,0.3";
    auto* cons = app.add_subcommand(
        "consistency", "scheme residual against phi_t + G(phi_xx) per (point, n)");
    add_common(cons, cons_args);
    cons->add_option("--n", cons_n, "step counts");
    cons->add_option("--phi", cons_phi,
                     "test function: affine|quadratic|cos-linear|cos-exp|quartic");
    cons->add_option("--points", cons_points,
                     "evaluation points \"t,x1[,x2,x3];t,x1...\"");

    // ------------------------------------------------------------------- validate
    CommonArgs val_args;
    auto* val = app.add_subcommand("validate",
                                   "check the standing assumptions of a problem spec");
    add_common(val, val_args);

    // ------------------------------------------------------------------- simulate
    CommonArgs sim_args;
    int sim_n = 64;
    long sim_paths = 100000;
    std::uint64_t sim_seed = 1;
    std::string sim_strategy = "scan";
    std::string sim_policy_file;
    auto* sim = app.add_subcommand("simulate", "forward Monte Carlo of the controlled walk");
    add_common(sim, sim_args);
    sim->add_option("--n", sim_n, "step count");
    sim->add_option("--paths", sim_paths, "path count");
    sim->add_option("--seed", sim_seed, "64-bit seed");
    sim->add_option("--strategy", sim_strategy, "feedback | fixed:<extreme index> | scan");
    sim->add_option("--policy", sim_policy_file, "policy file for the feedback strategy");

    CLI11_PARSE(app, argc, argv);

    try {
        if (conv->parsed()) {
            const auto spec = gheat::load_problem(conv_args.spec_file);
            gheat::ConvergenceOptions opts;
            opts.n_list = conv_n;
            if (conv_grid_r > 0.0) opts.half_width = conv_grid_r;
            if (conv_pde_h > 0.0) opts.pde_spacing = conv_pde_h;
            opts.pde_theta = conv_theta;
            opts.schedule = parse_schedule(conv_schedule);
            opts.max_nodes_per_axis = conv_max_nodes;
            const auto report = gheat::run_convergence(spec, opts);

            std::cout << "pde reference v(0,0) = " << report.pde_value << "\n";
            std::cout << "n, dp value, |dp - pde|\n";
            for (const auto& row : report.rows)
                std::cout << row.n << ", " << row.dp_value << ", " << row.gap << "\n";
            if (!report.rates.empty()) {
                std::cout << "empirical rates:";
                for (double r : report.rates) std::cout << " " << r;
                std::cout << "\n";
            }
            emit_report(conv_args, gheat::to_json(report),
                        [&](std::ostream& os) { gheat::write_csv(os, report); });
        } else if (inv->parsed()) {
            const auto spec = gheat::load_problem(inv_args.spec_file);
            gheat::InvarianceOptions opts;
            opts.n_list = inv_n;
            if (inv_grid_r > 0.0) opts.half_width = inv_grid_r;
            opts.quad_tolerance = inv_quad_tol;
            opts.schedule = parse_schedule(inv_schedule);
            opts.max_nodes_per_axis = inv_max_nodes;
            if (!std::isnan(inv_rotation_deg)) {
                if (spec.dim() != 2)
                    throw gheat::ConfigError("--rotation-deg needs a d=2 problem");
                opts.orthogonal =
                    gheat::rotation_2d(inv_rotation_deg * std::numbers::pi / 180.0);
            } else if (!inv_matrix.empty()) {
                opts.orthogonal = parse_square_matrix(inv_matrix, spec.dim());
            } else {
                throw gheat::ConfigError("invariance needs --rotation-deg or --matrix");
            }
            const auto report = gheat::run_invariance(spec, opts);
            std::cout << "n, v(Lambda), v(Lambda O), gap\n";
            for (const auto& row : report.rows)
                std::cout << row.n << ", " << row.value_base << ", " << row.value_rotated
                          << ", " << row.gap << "\n";
            std::cout << (report.gaussian_noise
                              ? (report.per_n_within_tolerance ? "per-n gaps within tolerance"
                                                               : "per-n gaps EXCEED tolerance")
                              : (report.gap_decays ? "gap decays with n"
                                                   : "gap does NOT decay"))
                      << "\n";
            emit_report(inv_args, gheat::to_json(report),
                        [&](std::ostream& os) { gheat::write_csv(os, report); });
        } else if (ns->parsed()) {
            const auto spec = gheat::load_problem(ns_args.spec_file);
            gheat::NoiseStudyOptions opts;
            opts.n_list = ns_n;
            if (ns_grid_r > 0.0) opts.half_width = ns_grid_r;
            opts.max_nodes_per_axis = ns_max_nodes;
            for (const auto& name : ns_noises)
                opts.noises.push_back({name, noise_preset(name, spec.dim())});
            const auto report = gheat::run_noise_study(spec, opts);
            std::cout << "n";
            for (const auto& name : report.noise_names) std::cout << ", " << name;
            std::cout << ", max gap\n";
            for (std::size_t i = 0; i < report.n_list.size(); ++i) {
                std::cout << report.n_list[i];
                for (const auto& col : report.values) std::cout << ", " << col[i];
                std::cout << ", " << report.max_pairwise_gap[i] << "\n";
            }
            emit_report(ns_args, gheat::to_json(report),
                        [&](std::ostream& os) { gheat::write_csv(os, report); });
        } else if (gev->parsed()) {
            const auto spec = gheat::load_problem(g_args.spec_file);
            const gheat::SymMatrix s =
                gheat::SymMatrix::from_dense(parse_square_matrix(g_s, spec.dim()));
            const auto result = gheat::g_argmax(s, spec.uncertainty);
            std::cout << "G(S) = " << result.value << "\n";
            std::cout << "argmax extreme index " << result.index << ":\n"
                      << spec.uncertainty.extremes()[result.index] << "\n";
            json report;
            report["kind"] = "g_eval";
            report["value"] = result.value;
            report["argmax_index"] = result.index;
            report["config"] = gheat::config_echo(spec);
            emit_report(g_args, report);
        } else if (sdp->parsed()) {
            const auto spec = gheat::load_problem(dp_args.spec_file);
            const double r = dp_grid_r > 0.0 ? dp_grid_r : spec.default_half_width();
            const gheat::SpatialGrid grid =
                dp_nodes > 0 ? gheat::SpatialGrid::isotropic(spec.dim(), r, dp_nodes)
                             : gheat::default_dp_grid(spec, dp_n, parse_schedule(dp_schedule),
                                                      r, dp_max_nodes);
            const auto res = gheat::dp_solve(spec, dp_n, grid);
            std::cout << "v_" << dp_n << "(0,0) = " << res.value_at_origin << "\n";
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

            json report;
            report["kind"] = "solve_dp";
            report["n"] = dp_n;
            report["value_at_origin"] = res.value_at_origin;
            report["max_abs_value"] = res.max_abs_value;
            report["payoff_bound"] = res.payoff_bound;
            report["grid"] = {{"half_width", grid.half_width(0)},
                              {"nodes_per_axis", grid.axis_nodes(0)},
                              {"spacing", grid.spacing(0)}};
            report["warnings"] = res.warnings;
            report["config"] = gheat::config_echo(spec);
            emit_report(dp_args, report);
            if (!dp_args.out_dir.empty()) {
                const fs::path dir = ensure_out_dir(dp_args.out_dir);
                gheat::save_policy((dir / "policy.bin").string(),
                                   {grid, res.policy, res.value_at_origin});
                std::ofstream t(dir / "terminal.csv");
                gheat::write_slice_csv(t, grid, res.values.terminal());
                std::ofstream i(dir / "initial.csv");
                gheat::write_slice_csv(i, grid, res.values.initial());
            }
        } else if (spde->parsed()) {
            const auto spec = gheat::load_problem(pde_args.spec_file);
            const double r = pde_grid_r > 0.0 ? pde_grid_r : spec.default_half_width();
            const double h = pde_h > 0.0 ? pde_h : r / 120.0;
            gheat::PdeConfig config(pde_grid(spec, r, h), pde_theta);
            if (pde_dt > 0.0) config.dt = pde_dt;
            config.max_stored_slices = pde_slices;
            const auto res = gheat::pde_solve(spec, config);
            std::cout << "v(0,0) = " << res.value_at_origin << "\n";
            for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";

            json report;
            report["kind"] = "solve_pde";
            report["value_at_origin"] = res.value_at_origin;
            report["steps"] = res.steps;
            report["dt"] = res.dt;
            report["min_value"] = res.min_value;
            report["max_value"] = res.max_value;
            report["payoff_bound"] = res.payoff_bound;
            report["grid"] = {{"half_width", config.grid.half_width(0)},
                              {"nodes_per_axis", config.grid.axis_nodes(0)},
                              {"spacing", config.grid.spacing(0)}};
            report["theta"] = pde_theta;
            report["warnings"] = res.warnings;
            report["config"] = gheat::config_echo(spec);
            emit_report(pde_args, report);
            if (!pde_args.out_dir.empty()) {
                const fs::path dir = ensure_out_dir(pde_args.out_dir);
                for (const auto& slice : res.values.slices) {
                    std::ostringstream name;
                    name << "slice_t" << slice.t << ".csv";
                    std::ofstream os(dir / name.str());
                    gheat::write_slice_csv(os, config.grid, slice);
                }
            }
        } else if (eul->parsed()) {
            const auto spec = gheat::load_problem(eul_args.spec_file);
            const auto rep = gheat::euler_compare(spec, eul_n, eul_paths, eul_seed);
            std::cout << "native:   mean = " << rep.native.mean
                      << "  stderr = " << rep.native.standard_error << "\n";
            std::cout << "gaussian: mean = " << rep.gaussian.mean
                      << "  stderr = " << rep.gaussian.standard_error << "\n";
            std::cout << "difference = " << rep.difference
                      << "  combined stderr = " << rep.combined_stderr
                      << "  dp value = " << rep.dp_value << "\n";
            json report;
            report["kind"] = "euler_compare";
            report["n"] = eul_n;
            report["paths"] = eul_paths;
            report["seed"] = eul_seed;
            report["native"] = {{"mean", rep.native.mean},
                                {"standard_error", rep.native.standard_error}};
            report["gaussian"] = {{"mean", rep.gaussian.mean},
                                  {"standard_error", rep.gaussian.standard_error}};
            report["difference"] = rep.difference;
            report["combined_stderr"] = rep.combined_stderr;
            report["dp_value"] = rep.dp_value;
            report["config"] = gheat::config_echo(spec);
            emit_report(eul_args, report);
        } else if (cons->parsed()) {
            const auto spec = gheat::load_problem(cons_args.spec_file);
            const auto phi = test_function_preset(cons_phi, spec.dim());
            const auto points = parse_points(cons_points, spec.dim());
            const auto table =
                gheat::consistency_sweep(phi, points, cons_n, spec.uncertainty, spec.noise);
            std::cout << "t, x, n, residual\n";
            for (const auto& row : table.rows) {
                std::cout << row.t << ", (";
                for (int a = 0; a < row.x.size(); ++a)
                    std::cout << (a ? " " : "") << row.x(a);
                std::cout << "), " << row.n << ", " << row.residual << "\n";
            }
            std::cout << (table.all_monotone() ? "residuals decay monotonically per point"
                                               : "residuals are NOT monotone everywhere")
                      << "\n";
            json report;
            report["kind"] = "consistency";
            report["phi"] = phi.name();
            report["n_list"] = cons_n;
            report["all_monotone"] = table.all_monotone();
            json rows = json::array();
            for (const auto& row : table.rows) {
                std::vector<double> coords(row.x.data(), row.x.data() + row.x.size());
                rows.push_back(
                    {{"t", row.t}, {"x", coords}, {"n", row.n}, {"residual", row.residual}});
            }
            report["rows"] = rows;
            report["config"] = gheat::config_echo(spec);
            emit_report(cons_args, report,
                        [&](std::ostream& os) { gheat::write_consistency_csv(os, table); });
        } else if (val->parsed()) {
            const auto spec = gheat::load_problem(val_args.spec_file);
            const auto rep = gheat::validate(spec);
            std::cout << rep.summary();
            std::cout << (rep.passed() ? "spec is valid" : "spec is INVALID") << "\n";
            json report;
            report["kind"] = "validate";
            report["passed"] = rep.passed();
            json checks = json::array();
            for (const auto& c : rep.checks)
                checks.push_back({{"name", c.name},
                                  {"pass", c.pass},
                                  {"measured", c.measured},
                                  {"tolerance", c.tolerance},
                                  {"note", c.note}});
            report["checks"] = checks;
            report["warnings"] = rep.warnings;
            report["config"] = gheat::config_echo(spec);
            emit_report(val_args, report);
            if (!rep.passed()) return 1;
        } else if (sim->parsed()) {
            const auto spec = gheat::load_problem(sim_args.spec_file);
            gheat::SimConfig config;
            config.paths = sim_paths;
            config.seed = sim_seed;
            config.steps = sim_n;

            std::optional<gheat::PolicyFile> policy;
            if (sim_strategy == "feedback") {
                if (sim_policy_file.empty())
                    throw gheat::ConfigError("feedback strategy needs --policy <file>");
                policy = gheat::load_policy(sim_policy_file);
                config.strategy = gheat::FeedbackStrategy{&policy->grid, &policy->policy};
            } else if (sim_strategy.rfind("fixed:", 0) == 0) {
                const std::size_t index = std::stoul(sim_strategy.substr(6));
                const auto& extremes = spec.uncertainty.extremes();
                if (index >= extremes.size())
                    throw gheat::ConfigError("fixed strategy index out of range");
                config.strategy = gheat::FixedMatrixStrategy{extremes[index]};
            } else if (sim_strategy == "scan") {
                config.strategy = gheat::RandomizedScanStrategy{};
            } else {
                throw gheat::ConfigError("unknown strategy '" + sim_strategy + "'");
            }

            const auto est = gheat::simulate(spec, config);
            std::cout << "mean = " << est.mean << "  stderr = " << est.standard_error
                      << "  paths = " << est.paths << "\n";
            json report;
            report["kind"] = "simulate";
            report["mean"] = est.mean;
            report["standard_error"] = est.standard_error;
            report["paths"] = est.paths;
            report["n"] = sim_n;
            report["seed"] = sim_seed;
            report["strategy"] = sim_strategy;
            report["config"] = gheat::config_echo(spec);
            emit_report(sim_args, report);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
