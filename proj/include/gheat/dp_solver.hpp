#ifndef GHEAT_DP_SOLVER_HPP
#define GHEAT_DP_SOLVER_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gheat/problem.hpp"
#include "gheat/value_grid.hpp"

namespace gheat {

// Precomputed machinery for one backward step of the value recurrence
//   v_j(x) = max_{A} sum_k p_k I[v_{j+1}](x + A z_k / sqrt(n)),
// where I is clamped multilinear interpolation. Displacements are
// constant across nodes on a uniform grid, so they are tabulated once in
// index space.
struct DpStepContext {
    const SpatialGrid* grid = nullptr;
    int steps = 0;
    int dim = 0;
    int extreme_count = 0;
    int atom_count = 0;
    std::vector<double> weights;  // atom weights
    std::vector<double> shifts;   // [extreme][atom][axis] displacement / spacing

    static DpStepContext make(const UncertaintySet& lambda, const NoiseModel& noise, int steps,
                              const SpatialGrid& grid);
};

// One backward step over a whole slice. policy_out may be null. The
// per-node result is clamped to the hull of the values it consumed, so
// max|v_j| <= max|v_{j+1}| holds exactly, not just up to roundoff.
void dp_step(const DpStepContext& ctx, std::span<const double> v_next, std::span<double> v_out,
             std::uint16_t* policy_out);

struct DpOptions {
    bool store_all_slices = false;  // default: terminal and initial only
    bool extract_policy = true;
};

struct DpResult {
    explicit DpResult(SpatialGrid grid) : values(std::move(grid)) {}

    ValueGrid values;
    FeedbackPolicy policy;
    double value_at_origin = 0.0;
    double max_abs_value = 0.0;  // over every slice of the solve
    double payoff_bound = 0.0;   // M on the grid's box
    std::vector<std::string> warnings;
};

// Backward value iteration from t=1 to t=0; the returned scalar is
// v_n(0, 0) read at the origin node.
DpResult dp_solve(const ProblemSpec& spec, int steps, const SpatialGrid& grid,
                  const DpOptions& options = {});

// The enumerated matrix the policy picks at the node nearest to x.
const Matrix& policy_matrix_at(const FeedbackPolicy& policy, const UncertaintySet& lambda,
                               int step, const double* x, const SpatialGrid& grid);

enum class GridSchedule {
    // Spacing 2*J_max/(2m+1), m = ceil(n^(3/8)): the dominant jump lands
    // mid-cell, making the interpolation bias a smooth O(n^(-3/4)) term.
    // This is the convergence-study default.
    Offset,
    // Spacing = the largest common divisor of the jump lengths when they
    // are commensurate (falls back to Offset otherwise): displacements
    // land on nodes and interpolation is exact.
    Aligned,
};

// Per-n default grid for a dp solve. half_width defaults to the problem's
// domain (6 * sigma_max); node counts are capped per dimension.
SpatialGrid default_dp_grid(const ProblemSpec& spec, int steps,
                            GridSchedule schedule = GridSchedule::Offset,
                            std::optional<double> half_width = {},
                            int max_nodes_per_axis = 0);

}  // namespace gheat

#endif  // GHEAT_DP_SOLVER_HPP
