#include "gheat/grid.hpp"

#include <algorithm>
#include <cmath>

namespace gheat {

SpatialGrid::SpatialGrid(int dim, std::array<double, kMaxDim> half_width,
                         std::array<int, kMaxDim> nodes)
    : dim_(dim), half_width_(half_width), nodes_(nodes) {
    if (dim_ < 1 || dim_ > kMaxDim)
        throw UnsupportedError("SpatialGrid: dimension must be in 1..3");
    for (int a = 0; a < dim_; ++a) {
        if (!(half_width_[a] > 0.0))
            throw ValidationError("SpatialGrid: half-width must be positive");
        if (nodes_[a] < 3 || nodes_[a] % 2 == 0)
            throw ValidationError("SpatialGrid: node count must be odd and >= 3");
        spacing_[a] = 2.0 * half_width_[a] / static_cast<double>(nodes_[a] - 1);
    }
    // last axis fastest, matching row-major table layouts
    stride_[dim_ - 1] = 1;
    for (int a = dim_ - 2; a >= 0; --a)
        stride_[a] = stride_[a + 1] * static_cast<std::size_t>(nodes_[a + 1]);
    for (int a = 0; a < dim_; ++a) total_ *= static_cast<std::size_t>(nodes_[a]);
    for (int a = 0; a < dim_; ++a)
        origin_ += stride_[a] * static_cast<std::size_t>(nodes_[a] / 2);
}

SpatialGrid SpatialGrid::isotropic(int dim, double half_width, int nodes_per_axis) {
    std::array<double, kMaxDim> hw{};
    std::array<int, kMaxDim> n{};
    for (int a = 0; a < dim; ++a) {
        hw[a] = half_width;
        n[a] = nodes_per_axis;
    }
    return SpatialGrid(dim, hw, n);
}

std::size_t SpatialGrid::nearest_node(const double* x) const {
    std::size_t idx = 0;
    for (int a = 0; a < dim_; ++a) {
        const double pos = (std::clamp(x[a], -half_width_[a], half_width_[a]) + half_width_[a]) /
                           spacing_[a];
        long i = std::lround(pos);
        i = std::clamp(i, 0L, static_cast<long>(nodes_[a] - 1));
        idx += stride_[a] * static_cast<std::size_t>(i);
    }
    return idx;
}

double SpatialGrid::interpolate(std::span<const double> values, const double* x) const {
    int cell[kMaxDim] = {0, 0, 0};
    double frac[kMaxDim] = {0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) {
        const double pos = (std::clamp(x[a], -half_width_[a], half_width_[a]) + half_width_[a]) /
                           spacing_[a];
        int c = static_cast<int>(pos);
        c = std::clamp(c, 0, nodes_[a] - 2);
        cell[a] = c;
        frac[a] = std::clamp(pos - static_cast<double>(c), 0.0, 1.0);
    }
    double acc = 0.0;
    double lo = values[0], hi = values[0];
    bool first = true;
    for (int corner = 0; corner < (1 << dim_); ++corner) {
        double w = 1.0;
        std::size_t idx = 0;
        for (int a = 0; a < dim_; ++a) {
            const int up = corner >> a & 1;
            w *= up ? frac[a] : 1.0 - frac[a];
            idx += stride_[a] * static_cast<std::size_t>(cell[a] + up);
        }
        const double v = values[idx];
        if (first) {
            lo = hi = v;
            first = false;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        acc += w * v;
    }
    return std::clamp(acc, lo, hi);
}

bool SpatialGrid::same_shape(const SpatialGrid& o) const {
    if (o.dim_ != dim_) return false;
    for (int a = 0; a < dim_; ++a)
        if (o.nodes_[a] != nodes_[a] || o.half_width_[a] != half_width_[a]) return false;
    return true;
}

}  // namespace gheat
