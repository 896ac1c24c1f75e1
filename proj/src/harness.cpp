#include "gheat/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>

#include "gheat/config.hpp"

namespace gheat {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SpatialGrid pde_grid_for(const ProblemSpec& spec, double half_width, double spacing) {
    const long half_cells = std::max(1L, std::lround(std::ceil(half_width / spacing - 1e-9)));
    return SpatialGrid::isotropic(spec.dim(), static_cast<double>(half_cells) * spacing,
                                  static_cast<int>(2 * half_cells + 1));
}

std::vector<int> sorted_unique(std::vector<int> ns) {
    std::sort(ns.begin(), ns.end());
    ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
    return ns;
}

}  // namespace

ConvergenceReport run_convergence(const ProblemSpec& spec, const ConvergenceOptions& options) {
    require_valid(spec);
    if (options.n_list.empty())
        throw ValidationError("convergence study: need at least one step count");
    const std::vector<int> ns = sorted_unique(options.n_list);
    const double r = options.half_width.value_or(spec.default_half_width());

    ConvergenceReport report;
    report.config = config_echo(spec);
    report.config["n_list"] = ns;
    report.config["half_width"] = r;

    const double pde_h = options.pde_spacing.value_or(r / 120.0);
    report.config["pde_spacing"] = pde_h;
    report.config["pde_theta"] = options.pde_theta;
    {
        const auto start = std::chrono::steady_clock::now();
        PdeConfig cfg{pde_grid_for(spec, r, pde_h), options.pde_theta};
        report.pde_value = pde_solve(spec, cfg).value_at_origin;
        report.pde_runtime_sec = seconds_since(start);
    }

    for (int n : ns) {
        const auto start = std::chrono::steady_clock::now();
        const SpatialGrid grid =
            default_dp_grid(spec, n, options.schedule, r, options.max_nodes_per_axis);
        DpOptions dp_opts;
        dp_opts.extract_policy = false;
        const DpResult dp = dp_solve(spec, n, grid, dp_opts);
        report.rows.push_back({n, dp.value_at_origin,
                               std::abs(dp.value_at_origin - report.pde_value),
                               seconds_since(start)});
    }

    report.gaps_strictly_decreasing = report.rows.size() > 1;
    for (std::size_t i = 0; i + 1 < report.rows.size(); ++i) {
        const double g0 = report.rows[i].gap;
        const double g1 = report.rows[i + 1].gap;
        if (!(g1 < g0)) report.gaps_strictly_decreasing = false;
        // empirical order: gap ~ n^(-rate)
        const double dn = std::log(static_cast<double>(report.rows[i + 1].n) /
                                   static_cast<double>(report.rows[i].n));
        report.rates.push_back(g1 > 0.0 && g0 > 0.0 ? std::log(g0 / g1) / dn : 0.0);
    }
    return report;
}

nlohmann::json to_json(const ConvergenceReport& report) {
    nlohmann::json j;
    j["kind"] = "convergence";
    j["pde_value"] = report.pde_value;
    j["pde_runtime_sec"] = report.pde_runtime_sec;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"n", r.n},
                        {"dp_value", r.dp_value},
                        {"gap", r.gap},
                        {"runtime_sec", r.runtime_sec}});
    j["rows"] = rows;
    j["rates"] = report.rates;
    j["gaps_strictly_decreasing"] = report.gaps_strictly_decreasing;
    j["config"] = report.config;
    return j;
}

void write_csv(std::ostream& os, const ConvergenceReport& report) {
    os << "n,dp_value,gap,runtime_sec\n";
    for (const auto& r : report.rows)
        os << r.n << "," << r.dp_value << "," << r.gap << "," << r.runtime_sec << "\n";
}

Matrix rotation_2d(double radians) {
    Matrix o(2, 2);
    o << std::cos(radians), -std::sin(radians), std::sin(radians), std::cos(radians);
    return o;
}

InvarianceReport run_invariance(const ProblemSpec& spec, const InvarianceOptions& options) {
    require_valid(spec);
    if (options.n_list.empty())
        throw ValidationError("invariance study: need at least one step count");
    const Matrix& o = options.orthogonal;
    if (o.rows() != spec.dim() || o.cols() != spec.dim())
        throw DimensionError("invariance study: orthogonal matrix size disagrees with problem");
    const double defect =
        (o * o.transpose() - Matrix::Identity(o.rows(), o.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw ValidationError("invariance study: matrix is not orthogonal (|OO^T - I| = " +
                              std::to_string(defect) + ")");

    const std::vector<int> ns = sorted_unique(options.n_list);
    const double r = options.half_width.value_or(spec.default_half_width());

    ProblemSpec rotated{spec.uncertainty.right_multiplied(o), spec.noise, spec.payoff,
                        spec.domain_half_width};

    InvarianceReport report;
    report.gaussian_noise = spec.noise.gaussian_law();
    report.quad_tolerance = options.quad_tolerance;
    report.config = config_echo(spec);
    report.config["n_list"] = ns;
    report.config["half_width"] = r;
    {
        nlohmann::json flat = nlohmann::json::array();
        for (int i = 0; i < o.rows(); ++i)
            for (int c = 0; c < o.cols(); ++c) flat.push_back(o(i, c));
        report.config["orthogonal"] = flat;
    }

    DpOptions dp_opts;
    dp_opts.extract_policy = false;
    for (int n : ns) {
        const SpatialGrid grid_base =
            default_dp_grid(spec, n, options.schedule, r, options.max_nodes_per_axis);
        const SpatialGrid grid_rot =
            default_dp_grid(rotated, n, options.schedule, r, options.max_nodes_per_axis);
        const double base = dp_solve(spec, n, grid_base, dp_opts).value_at_origin;
        const double rot = dp_solve(rotated, n, grid_rot, dp_opts).value_at_origin;
        report.rows.push_back({n, base, rot, std::abs(base - rot)});
    }

    report.per_n_within_tolerance = true;
    double max_gap = 0.0;
    for (const auto& row : report.rows) {
        if (row.gap > options.quad_tolerance) report.per_n_within_tolerance = false;
        max_gap = std::max(max_gap, row.gap);
    }
    // identically-zero gaps (e.g. O = I) count as trivially decayed
    report.gap_decays = report.rows.size() > 1 &&
                        (report.rows.back().gap < report.rows.front().gap || max_gap == 0.0);
    return report;
}

nlohmann::json to_json(const InvarianceReport& report) {
    nlohmann::json j;
    j["kind"] = "invariance";
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows)
        rows.push_back({{"n", r.n},
                        {"value_base", r.value_base},
                        {"value_rotated", r.value_rotated},
                        {"gap", r.gap}});
    j["rows"] = rows;
    j["gaussian_noise"] = report.gaussian_noise;
    j["quad_tolerance"] = report.quad_tolerance;
    j["per_n_within_tolerance"] = report.per_n_within_tolerance;
    j["gap_decays"] = report.gap_decays;
    j["config"] = report.config;
    return j;
}

void write_csv(std::ostream& os, const InvarianceReport& report) {
    os << "n,value_base,value_rotated,gap\n";
    for (const auto& r : report.rows)
        os << r.n << "," << r.value_base << "," << r.value_rotated << "," << r.gap << "\n";
}

NoiseStudyReport run_noise_study(const ProblemSpec& spec, const NoiseStudyOptions& options) {
    if (options.n_list.empty() || options.noises.empty())
        throw ValidationError("noise study: need step counts and at least one noise");
    const std::vector<int> ns = sorted_unique(options.n_list);
    const double r = options.half_width.value_or(spec.default_half_width());

    NoiseStudyReport report;
    report.n_list = ns;
    report.config = config_echo(spec);
    report.config["n_list"] = ns;
    report.config["half_width"] = r;

    DpOptions dp_opts;
    dp_opts.extract_policy = false;
    for (const auto& [name, noise] : options.noises) {
        ProblemSpec variant{spec.uncertainty, noise, spec.payoff, spec.domain_half_width};
        require_valid(variant);  // hard error on any invalid noise
        report.noise_names.push_back(name);
        std::vector<double> column;
        for (int n : ns) {
            const SpatialGrid grid =
                default_dp_grid(variant, n, options.schedule, r, options.max_nodes_per_axis);
            column.push_back(dp_solve(variant, n, grid, dp_opts).value_at_origin);
        }
        report.values.push_back(std::move(column));
    }

    for (std::size_t i = 0; i < ns.size(); ++i) {
        double gap = 0.0;
        for (std::size_t a = 0; a < report.values.size(); ++a)
            for (std::size_t b = a + 1; b < report.values.size(); ++b)
                gap = std::max(gap, std::abs(report.values[a][i] - report.values[b][i]));
        report.max_pairwise_gap.push_back(gap);
    }
    report.gap_shrinks = report.values.size() > 1 && ns.size() > 1 &&
                         report.max_pairwise_gap.back() < report.max_pairwise_gap.front();
    return report;
}

nlohmann::json to_json(const NoiseStudyReport& report) {
    nlohmann::json j;
    j["kind"] = "noise_study";
    j["n_list"] = report.n_list;
    j["noises"] = report.noise_names;
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& column : report.values) vals.push_back(column);
    j["values"] = vals;
    j["max_pairwise_gap"] = report.max_pairwise_gap;
    j["gap_shrinks"] = report.gap_shrinks;
    j["config"] = report.config;
    return j;
}

void write_csv(std::ostream& os, const NoiseStudyReport& report) {
    os << "n";
    for (const auto& name : report.noise_names) os << "," << name;
    os << ",max_pairwise_gap\n";
    for (std::size_t i = 0; i < report.n_list.size(); ++i) {
        os << report.n_list[i];
        for (const auto& column : report.values) os << "," << column[i];
        os << "," << report.max_pairwise_gap[i] << "\n";
    }
}

}  // namespace gheat
