#ifndef GHEAT_MC_SIMULATOR_HPP
#define GHEAT_MC_SIMULATOR_HPP

#include <cstdint>
#include <variant>

#include "gheat/problem.hpp"
#include "gheat/value_grid.hpp"

namespace gheat {

// Strategy classes for the controlled walk
//   X_{j+1} = X_j + A_j xi_{j+1} / sqrt(n),  X_0 = 0.
// Feedback looks the matrix index up at the node nearest to the current
// state (the faithful discrete analogue of a measurable selector);
// FixedMatrix plays one extreme forever; RandomizedScan draws a uniform
// extreme each step.
struct FeedbackStrategy {
    const SpatialGrid* grid = nullptr;
    const FeedbackPolicy* policy = nullptr;
};
struct FixedMatrixStrategy {
    Matrix matrix;
};
struct RandomizedScanStrategy {};

using Strategy = std::variant<FeedbackStrategy, FixedMatrixStrategy, RandomizedScanStrategy>;

struct SimConfig {
    long paths = 0;
    std::uint64_t seed = 0;
    int steps = 0;
    Strategy strategy;
};

struct McEstimate {
    double mean = 0.0;
    double standard_error = 0.0;  // sample std / sqrt(paths)
    long paths = 0;
};

// Mean and standard error of f(X_n). Bitwise deterministic for a fixed
// seed, path count and build: every path owns a counter-derived stream and
// the final reduction runs in path order.
McEstimate simulate(const ProblemSpec& spec, const SimConfig& config);

// Remark-3 experiment: the same feedback policy simulated once with the
// spec's own increments and once with standard Gaussian increments.
struct EulerCompareReport {
    McEstimate native;
    McEstimate gaussian;
    double difference = 0.0;
    double combined_stderr = 0.0;
    int steps = 0;
    double dp_value = 0.0;  // the dp value the policy came from
};
EulerCompareReport euler_compare(const ProblemSpec& spec, int steps, long paths,
                                 std::uint64_t seed);

}  // namespace gheat

#endif  // GHEAT_MC_SIMULATOR_HPP
