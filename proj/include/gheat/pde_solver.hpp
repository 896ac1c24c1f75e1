#ifndef GHEAT_PDE_SOLVER_HPP
#define GHEAT_PDE_SOLVER_HPP

#include <optional>
#include <vector>

#include "gheat/problem.hpp"
#include "gheat/value_grid.hpp"

namespace gheat {

// Explicit monotone finite-difference march for the terminal-value problem
//   -v_t - G(v_xx) = 0 on [0,1) x R^d,   v(1, .) = f,
// truncated to the grid box with the boundary frozen at f (domain width
// 6*sigma_max makes the boundary influence at the origin negligible for
// bounded f). d <= 2; cross-derivative terms use the sign-adapted 7-point
// stencil, monotone when every extreme A A^T is diagonally dominant.
struct PdeConfig {
    explicit PdeConfig(SpatialGrid g, double safety = 0.9) : grid(std::move(g)), theta(safety) {}

    SpatialGrid grid;
    double theta;                   // CFL safety factor in (0, 1]
    std::optional<double> dt;       // default: theta * cfl_max_dt, snapped to divide 1
    int max_stored_slices = 9;      // terminal + initial always kept
};

// Largest stable explicit step h^2 / (d * lambda_max); the update is then
// a convex combination for diagonally dominant A A^T.
double cfl_max_dt(double spacing, const UncertaintySet& lambda, int dim);

struct PdeResult {
    explicit PdeResult(SpatialGrid grid) : values(std::move(grid)) {}

    ValueGrid values;
    double value_at_origin = 0.0;
    double min_value = 0.0;  // over every slice of the march
    double max_value = 0.0;
    double payoff_bound = 0.0;
    int steps = 0;
    double dt = 0.0;
    std::vector<std::string> warnings;
};

PdeResult pde_solve(const ProblemSpec& spec, const PdeConfig& config);

// One explicit update v + dt * G(D^2_h v) with frozen boundary, exposed so
// the monotonicity of the update map is directly testable.
std::vector<double> pde_apply_step(const ProblemSpec& spec, const SpatialGrid& grid,
                                   std::span<const double> slice, double dt);

// Argmax of G applied to the discrete Hessian, on the stored time slices.
struct PdePolicy {
    std::vector<double> times;
    FeedbackPolicy policy;  // one "step" per stored slice
};
PdePolicy pde_policy(const ProblemSpec& spec, const PdeConfig& config);

}  // namespace gheat

#endif  // GHEAT_PDE_SOLVER_HPP
