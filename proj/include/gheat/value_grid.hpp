#ifndef GHEAT_VALUE_GRID_HPP
#define GHEAT_VALUE_GRID_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gheat/grid.hpp"

namespace gheat {

// One stored time level of a solve.
struct TimeSlice {
    double t = 0.0;
    std::vector<double> values;  // one per grid node
};

// A time-indexed stack of spatial slices. Solvers may store all levels or
// a sampled subset; the terminal (t=1) and initial (t=0) slices are always
// present. `bound` is the payoff bound M the stack must respect.
struct ValueGrid {
    explicit ValueGrid(SpatialGrid g) : grid(std::move(g)) {}

    SpatialGrid grid;
    int steps = 0;        // number of time intervals of the producing solve
    double bound = 0.0;   // M
    std::vector<TimeSlice> slices;  // sorted by t ascending

    const TimeSlice& terminal() const { return slices.back(); }
    const TimeSlice& initial() const { return slices.front(); }
    const TimeSlice* at_time(double t, double tol = 1e-12) const;
};

// Per time step, per node: the index of the maximizing extreme matrix.
class FeedbackPolicy {
public:
    FeedbackPolicy() = default;
    FeedbackPolicy(int steps, std::size_t nodes, int choice_count)
        : steps_(steps), nodes_(nodes), choice_count_(choice_count),
          indices_(static_cast<std::size_t>(steps) * nodes, 0) {}

    int steps() const { return steps_; }
    std::size_t nodes() const { return nodes_; }
    int choice_count() const { return choice_count_; }

    std::uint16_t at(int step, std::size_t node) const {
        return indices_[static_cast<std::size_t>(step) * nodes_ + node];
    }
    void set(int step, std::size_t node, std::uint16_t idx) {
        indices_[static_cast<std::size_t>(step) * nodes_ + node] = idx;
    }
    std::uint16_t* step_data(int step) {
        return indices_.data() + static_cast<std::size_t>(step) * nodes_;
    }
    const std::uint16_t* step_data(int step) const {
        return indices_.data() + static_cast<std::size_t>(step) * nodes_;
    }
    bool valid() const;

private:
    int steps_ = 0;
    std::size_t nodes_ = 0;
    int choice_count_ = 0;
    std::vector<std::uint16_t> indices_;
};

// CSV: one row per node, "x1,...,xd,value".
void write_slice_csv(std::ostream& os, const SpatialGrid& grid, const TimeSlice& slice);

// Binary policy container (grid shape + step count + indices); the format
// is documented in the README. Round-trips bit-exactly.
struct PolicyFile {
    SpatialGrid grid;
    FeedbackPolicy policy;
    double value_at_origin = 0.0;
};
void save_policy(const std::string& path, const PolicyFile& data);
PolicyFile load_policy(const std::string& path);

}  // namespace gheat

#endif  // GHEAT_VALUE_GRID_HPP
