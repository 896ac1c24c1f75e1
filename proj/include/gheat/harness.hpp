#ifndef GHEAT_HARNESS_HPP
#define GHEAT_HARNESS_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "gheat/dp_solver.hpp"
#include "gheat/pde_solver.hpp"
#include "gheat/problem.hpp"

namespace gheat {

// ---------------------------------------------------------------------------
// convergence study: dp values per n against one PDE reference
// ---------------------------------------------------------------------------

struct ConvergenceOptions {
    std::vector<int> n_list;
    std::optional<double> half_width;    // domain override
    std::optional<double> pde_spacing;   // default half_width/120
    double pde_theta = 0.9;
    GridSchedule schedule = GridSchedule::Offset;
    int max_nodes_per_axis = 0;  // 0 = per-dimension default
};

struct ConvergenceRow {
    int n = 0;
    double dp_value = 0.0;
    double gap = 0.0;  // |dp - pde|
    double runtime_sec = 0.0;
};

struct ConvergenceReport {
    std::vector<ConvergenceRow> rows;  // sorted by n
    double pde_value = 0.0;
    double pde_runtime_sec = 0.0;
    std::vector<double> rates;  // empirical order between successive rows
    bool gaps_strictly_decreasing = false;
    nlohmann::json config;
};

ConvergenceReport run_convergence(const ProblemSpec& spec, const ConvergenceOptions& options);
nlohmann::json to_json(const ConvergenceReport& report);
void write_csv(std::ostream& os, const ConvergenceReport& report);

// ---------------------------------------------------------------------------
// covariance-only dependence: Lambda vs Lambda * O for orthogonal O
// ---------------------------------------------------------------------------

struct InvarianceOptions {
    std::vector<int> n_list;
    Matrix orthogonal;
    std::optional<double> half_width;
    GridSchedule schedule = GridSchedule::Aligned;
    double quad_tolerance = 1e-6;  // per-n bound asserted for Gaussian noise
    int max_nodes_per_axis = 0;
};

struct InvarianceRow {
    int n = 0;
    double value_base = 0.0;
    double value_rotated = 0.0;
    double gap = 0.0;
};

struct InvarianceReport {
    std::vector<InvarianceRow> rows;
    bool gaussian_noise = false;
    bool per_n_within_tolerance = false;  // Gaussian assertion
    bool gap_decays = false;              // non-Gaussian assertion: last < first
    double quad_tolerance = 0.0;
    nlohmann::json config;
};

InvarianceReport run_invariance(const ProblemSpec& spec, const InvarianceOptions& options);
nlohmann::json to_json(const InvarianceReport& report);
void write_csv(std::ostream& os, const InvarianceReport& report);

Matrix rotation_2d(double radians);

// ---------------------------------------------------------------------------
// noise study: dp values per (noise, n); the limit must not depend on the law
// ---------------------------------------------------------------------------

struct NoiseStudyOptions {
    std::vector<int> n_list;
    std::vector<std::pair<std::string, NoiseModel>> noises;
    std::optional<double> half_width;
    GridSchedule schedule = GridSchedule::Offset;
    int max_nodes_per_axis = 0;
};

struct NoiseStudyReport {
    std::vector<std::string> noise_names;
    std::vector<int> n_list;
    std::vector<std::vector<double>> values;  // [noise][n index]
    std::vector<double> max_pairwise_gap;     // per n
    bool gap_shrinks = false;                 // largest n vs smallest n
    nlohmann::json config;
};

NoiseStudyReport run_noise_study(const ProblemSpec& spec, const NoiseStudyOptions& options);
nlohmann::json to_json(const NoiseStudyReport& report);
void write_csv(std::ostream& os, const NoiseStudyReport& report);

}  // namespace gheat

#endif  // GHEAT_HARNESS_HPP
