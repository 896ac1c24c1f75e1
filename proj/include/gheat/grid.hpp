#ifndef GHEAT_GRID_HPP
#define GHEAT_GRID_HPP

#include <array>
#include <cstddef>
#include <span>

#include "gheat/types.hpp"

namespace gheat {

// Uniform tensor grid on [-R_1,R_1] x ... x [-R_d,R_d], d <= 3. Node
// counts are odd so the origin is exactly a node (solution values are
// read there without interpolation).
class SpatialGrid {
public:
    static constexpr int kMaxDim = 3;

    SpatialGrid(int dim, std::array<double, kMaxDim> half_width,
                std::array<int, kMaxDim> nodes);
    static SpatialGrid isotropic(int dim, double half_width, int nodes_per_axis);

    int dim() const { return dim_; }
    double half_width(int axis) const { return half_width_[axis]; }
    int axis_nodes(int axis) const { return nodes_[axis]; }
    double spacing(int axis) const { return spacing_[axis]; }
    std::size_t node_count() const { return total_; }
    std::size_t origin_index() const { return origin_; }
    std::size_t stride(int axis) const { return stride_[axis]; }

    void node_coords(std::size_t index, double* x) const {
        for (int a = 0; a < dim_; ++a) {
            const std::size_t i = (index / stride_[a]) % static_cast<std::size_t>(nodes_[a]);
            x[a] = -half_width_[a] + spacing_[a] * static_cast<double>(i);
        }
    }

    std::size_t index_of(const int* axis_index) const {
        std::size_t idx = 0;
        for (int a = 0; a < dim_; ++a)
            idx += stride_[a] * static_cast<std::size_t>(axis_index[a]);
        return idx;
    }

    // nearest node, coordinates clamped into the box first
    std::size_t nearest_node(const double* x) const;

    // Multilinear interpolation with clamping: coordinates outside the box
    // take the boundary value. The result is additionally clamped to the
    // [min, max] of the corner values so it never leaves their hull.
    double interpolate(std::span<const double> values, const double* x) const;

    bool same_shape(const SpatialGrid& o) const;

private:
    int dim_;
    std::array<double, kMaxDim> half_width_{};
    std::array<int, kMaxDim> nodes_{};
    std::array<double, kMaxDim> spacing_{};
    std::array<std::size_t, kMaxDim> stride_{};
    std::size_t total_ = 1;
    std::size_t origin_ = 0;
};

}  // namespace gheat

#endif  // GHEAT_GRID_HPP
