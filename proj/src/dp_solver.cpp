#include "gheat/dp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gheat {

namespace {

void apply_thread_env() {
#ifdef _OPENMP
    if (const char* env = std::getenv("GHEAT_THREADS")) {
        const int t = std::atoi(env);
        if (t > 0) omp_set_num_threads(t);
    }
#endif
}

}  // namespace

DpStepContext DpStepContext::make(const UncertaintySet& lambda, const NoiseModel& noise,
                                  int steps, const SpatialGrid& grid) {
    if (steps < 1) throw ValidationError("dp: step count must be >= 1");
    if (!noise.has_atoms())
        throw UnsupportedError(
            "dp: SamplerOnly noise has no atoms/quadrature nodes; use the simulator");
    if (noise.dim() != lambda.dim() || grid.dim() != lambda.dim())
        throw DimensionError("dp: dimensions of set, noise and grid disagree");

    DpStepContext ctx;
    ctx.grid = &grid;
    ctx.steps = steps;
    ctx.dim = grid.dim();
    ctx.extreme_count = static_cast<int>(lambda.extremes().size());
    ctx.atom_count = static_cast<int>(noise.points().size());
    ctx.weights = noise.weights();

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(steps));
    ctx.shifts.resize(static_cast<std::size_t>(ctx.extreme_count) * ctx.atom_count * ctx.dim);
    std::size_t pos = 0;
    for (const Matrix& a : lambda.extremes()) {
        const Matrix t = noise.effective_transform(a);
        for (const Vector& z : noise.points()) {
            const Vector delta = t * z * inv_sqrt_n;
            for (int r = 0; r < ctx.dim; ++r) ctx.shifts[pos++] = delta(r) / grid.spacing(r);
        }
    }
    return ctx;
}

void dp_step(const DpStepContext& ctx, std::span<const double> v_next, std::span<double> v_out,
             std::uint16_t* policy_out) {
    const SpatialGrid& grid = *ctx.grid;
    const std::size_t total = grid.node_count();
    if (v_next.size() != total || v_out.size() != total)
        throw DimensionError("dp_step: slice size disagrees with grid");

    const int dim = ctx.dim;
    const int atoms = ctx.atom_count;
    const int extremes = ctx.extreme_count;
    const double* w = ctx.weights.data();
    const double* shifts = ctx.shifts.data();
    const double* vn = v_next.data();

    int nnodes[SpatialGrid::kMaxDim];
    std::size_t stride[SpatialGrid::kMaxDim];
    for (int a = 0; a < dim; ++a) {
        nnodes[a] = grid.axis_nodes(a);
        stride[a] = grid.stride(a);
    }

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t node = 0; node < static_cast<std::ptrdiff_t>(total); ++node) {
        int axis_idx[SpatialGrid::kMaxDim];
        {
            std::size_t rem = static_cast<std::size_t>(node);
            for (int a = 0; a < dim; ++a) {
                axis_idx[a] = static_cast<int>(rem / stride[a]);
                rem %= stride[a];
            }
        }

        double best = 0.0;
        int best_idx = 0;
        for (int e = 0; e < extremes; ++e) {
            double acc = 0.0;
            double lo = 0.0, hi = 0.0;
            for (int k = 0; k < atoms; ++k) {
                const double* sh =
                    shifts + (static_cast<std::size_t>(e) * atoms + k) * dim;
                // locate the displaced point, clamped into the box
                int cell[SpatialGrid::kMaxDim];
                double frac[SpatialGrid::kMaxDim];
                for (int a = 0; a < dim; ++a) {
                    double pos = static_cast<double>(axis_idx[a]) + sh[a];
                    if (pos < 0.0) pos = 0.0;
                    const double top = static_cast<double>(nnodes[a] - 1);
                    if (pos > top) pos = top;
                    int c = static_cast<int>(pos);
                    if (c > nnodes[a] - 2) c = nnodes[a] - 2;
                    cell[a] = c;
                    double f = pos - static_cast<double>(c);
                    frac[a] = f < 0.0 ? 0.0 : (f > 1.0 ? 1.0 : f);
                }
                std::size_t base = 0;
                for (int a = 0; a < dim; ++a)
                    base += stride[a] * static_cast<std::size_t>(cell[a]);

                double val, clo, chi;
                if (dim == 1) {
                    const double v0 = vn[base], v1 = vn[base + 1];
                    val = v0 + frac[0] * (v1 - v0);
                    clo = std::min(v0, v1);
                    chi = std::max(v0, v1);
                } else if (dim == 2) {
                    const double v00 = vn[base], v01 = vn[base + stride[1]];
                    const double v10 = vn[base + stride[0]];
                    const double v11 = vn[base + stride[0] + stride[1]];
                    const double a0 = v00 + frac[1] * (v01 - v00);
                    const double a1 = v10 + frac[1] * (v11 - v10);
                    val = a0 + frac[0] * (a1 - a0);
                    clo = std::min(std::min(v00, v01), std::min(v10, v11));
                    chi = std::max(std::max(v00, v01), std::max(v10, v11));
                } else {
                    val = 0.0;
                    clo = chi = vn[base];
                    bool first = true;
                    for (int corner = 0; corner < (1 << dim); ++corner) {
                        double cw = 1.0;
                        std::size_t idx = base;
                        for (int a = 0; a < dim; ++a) {
                            const int up = corner >> a & 1;
                            cw *= up ? frac[a] : 1.0 - frac[a];
                            if (up) idx += stride[a];
                        }
                        const double v = vn[idx];
                        if (first) {
                            clo = chi = v;
                            first = false;
                        } else {
                            clo = std::min(clo, v);
                            chi = std::max(chi, v);
                        }
                        val += cw * v;
                    }
                }
                // hull clamp: interpolation must not escape its corners
                val = std::clamp(val, clo, chi);
                if (k == 0) {
                    lo = clo;
                    hi = chi;
                } else {
                    lo = std::min(lo, clo);
                    hi = std::max(hi, chi);
                }
                acc += w[k] * val;
            }
            // the expectation is a convex combination of consumed values
            acc = std::clamp(acc, lo, hi);
            if (e == 0 || acc > best) {
                best = acc;
                best_idx = e;
            }
        }
        v_out[static_cast<std::size_t>(node)] = best;
        if (policy_out) policy_out[node] = static_cast<std::uint16_t>(best_idx);
    }
}

DpResult dp_solve(const ProblemSpec& spec, int steps, const SpatialGrid& grid,
                  const DpOptions& options) {
    require_valid(spec);
    if (steps < 1) throw ValidationError("dp_solve: step count must be >= 1");
    apply_thread_env();

    const DpStepContext ctx = DpStepContext::make(spec.uncertainty, spec.noise, steps, grid);
    const int d = grid.dim();

    DpResult result(grid);
    if (options.extract_policy)
        result.policy = FeedbackPolicy(steps, grid.node_count(),
                                       static_cast<int>(spec.uncertainty.extremes().size()));
    result.values.steps = steps;

    double r_max = 0.0;
    for (int a = 0; a < d; ++a) r_max = std::max(r_max, grid.half_width(a));
    result.payoff_bound = spec.payoff.bound_on_radius(r_max, d);
    result.values.bound = result.payoff_bound;

    if (grid.half_width(0) < 3.0 * spec.uncertainty.sigma_max()) {
        std::ostringstream os;
        os << "grid half-width " << grid.half_width(0) << " below 3*sigma_max = "
           << 3.0 * spec.uncertainty.sigma_max() << "; truncation may dominate";
        result.warnings.push_back(os.str());
    }
    {
        const double jump = spec.uncertainty.sigma_max() / std::sqrt(static_cast<double>(steps));
        double h_max = 0.0;
        for (int a = 0; a < d; ++a) h_max = std::max(h_max, grid.spacing(a));
        if (h_max > jump * (1.0 + 1e-12)) {
            std::ostringstream os;
            os << "grid spacing " << h_max << " coarser than the noise jump sigma_max/sqrt(n) = "
               << jump << "; interpolation error may dominate";
            result.warnings.push_back(os.str());
        }
    }

    // terminal slice: v_n(1, x) = f(x), exactly
    std::vector<double> current(grid.node_count());
    {
        double x[SpatialGrid::kMaxDim];
        for (std::size_t i = 0; i < grid.node_count(); ++i) {
            grid.node_coords(i, x);
            current[i] = spec.payoff(x, d);
        }
    }
    auto slice_max_abs = [](const std::vector<double>& v) {
        double m = 0.0;
        for (double y : v) m = std::max(m, std::abs(y));
        return m;
    };
    result.max_abs_value = slice_max_abs(current);
    result.values.slices.push_back({1.0, current});

    std::vector<double> next(grid.node_count());
    for (int j = steps - 1; j >= 0; --j) {
        dp_step(ctx, current, next,
                options.extract_policy ? result.policy.step_data(j) : nullptr);
        current.swap(next);
        result.max_abs_value = std::max(result.max_abs_value, slice_max_abs(current));
        const double t = static_cast<double>(j) / static_cast<double>(steps);
        if (options.store_all_slices || j == 0)
            result.values.slices.push_back({t, current});
    }
    std::reverse(result.values.slices.begin(), result.values.slices.end());
    result.value_at_origin = result.values.initial().values[grid.origin_index()];
    return result;
}

const Matrix& policy_matrix_at(const FeedbackPolicy& policy, const UncertaintySet& lambda,
                               int step, const double* x, const SpatialGrid& grid) {
    if (step < 0 || step >= policy.steps())
        throw ValidationError("policy_matrix_at: step out of range");
    const std::size_t node = grid.nearest_node(x);
    return lambda.extremes()[policy.at(step, node)];
}

SpatialGrid default_dp_grid(const ProblemSpec& spec, int steps, GridSchedule schedule,
                            std::optional<double> half_width, int max_nodes_per_axis) {
    if (steps < 1) throw ValidationError("default_dp_grid: step count must be >= 1");
    if (!spec.noise.has_atoms())
        throw UnsupportedError("default_dp_grid: needs atoms/quadrature noise");
    const int d = spec.dim();
    const double r_target = half_width.value_or(spec.default_half_width());
    if (max_nodes_per_axis <= 0)
        max_nodes_per_axis = d == 1 ? 16385 : (d == 2 ? 1025 : 129);

    // per-axis jump lengths over extremes and atoms, with the atom weights
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(steps));
    std::vector<std::pair<double, double>> jumps;  // (|jump|, weight)
    for (const Matrix& a : spec.uncertainty.extremes()) {
        const Matrix t = spec.noise.effective_transform(a);
        for (std::size_t k = 0; k < spec.noise.points().size(); ++k) {
            const Vector delta = t * spec.noise.points()[k] * inv_sqrt_n;
            for (int r = 0; r < d; ++r)
                if (std::abs(delta(r)) > 1e-14)
                    jumps.push_back({std::abs(delta(r)), spec.noise.weights()[k]});
        }
    }
    if (jumps.empty()) jumps.push_back({spec.uncertainty.sigma_max() * inv_sqrt_n, 1.0});
    std::sort(jumps.begin(), jumps.end());
    const double j_max = jumps.back().first;
    const double j_min = jumps.front().first;
    // weighted median jump: where half of the displacement mass sits
    double total_weight = 0.0;
    for (const auto& [len, w] : jumps) total_weight += w;
    double j_med = j_max;
    double running = 0.0;
    for (const auto& [len, w] : jumps) {
        running += w;
        if (running >= 0.5 * total_weight) {
            j_med = len;
            break;
        }
    }

    double h = 0.0;
    if (schedule == GridSchedule::Aligned) {
        // largest h = j_min/k such that every jump is an integer multiple
        for (int k = 1; k <= 8 && h == 0.0; ++k) {
            const double base = j_min / static_cast<double>(k);
            bool ok = true;
            for (const auto& [len, w] : jumps) {
                const double ratio = len / base;
                if (std::abs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
                    ok = false;
                    break;
                }
            }
            if (ok) h = base;
        }
        // incommensurate jumps: fall through to the offset rule
    }
    if (h == 0.0) {
        // supersampling grows with n (the bias then decays ~ n^{-3/4}) and
        // with the spread between the largest and the mass-typical jump,
        // so wide-atom laws (Gauss-Hermite) still resolve their bulk
        const double spread = std::clamp(j_max / j_med, 1.0, 8.0);
        const int m = static_cast<int>(
            std::ceil(std::pow(static_cast<double>(steps), 0.375) * spread));
        h = 2.0 * j_max / static_cast<double>(2 * m + 1);
    }

    // node cap per axis
    const double h_floor = 2.0 * r_target / static_cast<double>(max_nodes_per_axis - 1);
    if (h < h_floor) h = h_floor;

    const long half_cells = std::max(1L, std::lround(std::ceil(r_target / h - 1e-9)));
    const double r_actual = static_cast<double>(half_cells) * h;
    return SpatialGrid::isotropic(d, r_actual, static_cast<int>(2 * half_cells + 1));
}

}  // namespace gheat
