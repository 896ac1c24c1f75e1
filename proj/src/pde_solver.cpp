#include "gheat/pde_solver.hpp"

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

// Stencil weights of (1/2) Tr(Sigma D^2_h): 3 points in 1-d; in 2-d the
// 9 slots are C,E,W,N,S,NE,SW,NW,SE with the diagonal pair picked by the
// sign of the cross coefficient.
struct CandidateStencil {
    double c = 0, e = 0, w = 0, n = 0, s = 0, ne = 0, sw = 0, nw = 0, se = 0;
};

CandidateStencil make_stencil(const Matrix& cov, const SpatialGrid& grid) {
    CandidateStencil st;
    const double hx = grid.spacing(0);
    if (grid.dim() == 1) {
        const double a = 0.5 * cov(0, 0) / (hx * hx);
        st.e = st.w = a;
        st.c = -2.0 * a;
        return st;
    }
    const double hy = grid.spacing(1);
    const double s11 = cov(0, 0), s22 = cov(1, 1), s12 = cov(0, 1);
    const double cross = std::abs(s12) / (2.0 * hx * hy);
    st.e = st.w = 0.5 * s11 / (hx * hx) - cross;
    st.n = st.s = 0.5 * s22 / (hy * hy) - cross;
    st.c = -(s11 / (hx * hx) + s22 / (hy * hy)) + 2.0 * cross;
    if (s12 >= 0.0)
        st.ne = st.sw = cross;
    else
        st.nw = st.se = cross;
    return st;
}

// one explicit update over the whole slice; boundary rows stay frozen
void apply_once(const std::vector<CandidateStencil>& stencils, const SpatialGrid& grid,
                const double* v, double* vnew, double dt) {
    const int d = grid.dim();
    const std::size_t total = grid.node_count();
    const int nx = grid.axis_nodes(0);
    const int ny = d == 2 ? grid.axis_nodes(1) : 1;
    const std::size_t sx = grid.stride(0);
    const std::ptrdiff_t ox = static_cast<std::ptrdiff_t>(sx);
    const std::ptrdiff_t oy = d == 2 ? static_cast<std::ptrdiff_t>(grid.stride(1)) : 0;
    const int extremes = static_cast<int>(stencils.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t node = 0; node < static_cast<std::ptrdiff_t>(total); ++node) {
        const int ix = static_cast<int>(static_cast<std::size_t>(node) / sx);
        const int iy = d == 2 ? static_cast<int>(static_cast<std::size_t>(node) % sx) : 0;
        if (ix == 0 || ix == nx - 1 || (d == 2 && (iy == 0 || iy == ny - 1))) {
            vnew[node] = v[node];
            continue;
        }
        const double* p = v + node;
        const double vC = p[0];
        const double vE = p[ox];
        const double vW = p[-ox];
        double vN = 0, vS = 0, vNE = 0, vSW = 0, vNW = 0, vSE = 0;
        if (d == 2) {
            vN = p[oy];
            vS = p[-oy];
            vNE = p[ox + oy];
            vSW = p[-(ox + oy)];
            vNW = p[oy - ox];
            vSE = p[ox - oy];
        }
        double g = 0.0;
        for (int e = 0; e < extremes; ++e) {
            const CandidateStencil& st = stencils[e];
            double cand = st.c * vC + st.e * vE + st.w * vW;
            if (d == 2)
                cand += st.n * vN + st.s * vS + st.ne * vNE + st.sw * vSW + st.nw * vNW +
                        st.se * vSE;
            if (e == 0 || cand > g) g = cand;
        }
        double val = vC + dt * g;
        // the update is a convex combination of the stencil values under
        // the CFL bound; clamp out roundoff escape
        double lo = std::min(std::min(vC, vE), vW);
        double hi = std::max(std::max(vC, vE), vW);
        if (d == 2) {
            lo = std::min(lo, std::min(std::min(vN, vS),
                                       std::min(std::min(vNE, vSW), std::min(vNW, vSE))));
            hi = std::max(hi, std::max(std::max(vN, vS),
                                       std::max(std::max(vNE, vSW), std::max(vNW, vSE))));
        }
        vnew[node] = std::clamp(val, lo, hi);
    }
}

struct March {
    explicit March(SpatialGrid grid) : result(std::move(grid)) {}
    PdeResult result;
    PdePolicy policy;
};

March march(const ProblemSpec& spec, const PdeConfig& config, bool want_policy) {
    require_valid(spec);
    apply_thread_env();
    const SpatialGrid& grid = config.grid;
    const int d = grid.dim();
    if (d > 2) throw UnsupportedError("pde_solve: d <= 2 only");
    if (grid.dim() != spec.dim())
        throw DimensionError("pde_solve: grid dimension disagrees with problem");
    if (d == 2 && std::abs(grid.spacing(0) - grid.spacing(1)) > 1e-12 * grid.spacing(0))
        throw UnsupportedError("pde_solve: d=2 requires equal spacing per axis");
    if (!(config.theta > 0.0 && config.theta <= 1.0))
        throw ValidationError("pde_solve: CFL safety factor must lie in (0, 1]");

    if (d == 2) {
        for (const Matrix& cov : spec.uncertainty.covariances()) {
            const double off = std::abs(cov(0, 1));
            if (off > std::min(cov(0, 0), cov(1, 1)) * (1.0 + 1e-12))
                throw UnsupportedError(
                    "pde_solve: extreme A A^T not diagonally dominant; the 7-point "
                    "monotone stencil does not apply");
        }
    }

    const double cfl = cfl_max_dt(grid.spacing(0), spec.uncertainty, d);
    double dt = config.dt.value_or(config.theta * cfl);
    if (dt > config.theta * cfl * (1.0 + 1e-12)) {
        std::ostringstream os;
        os << "pde_solve: dt = " << dt << " violates the CFL bound theta*h^2/(d*lambda_max) = "
           << config.theta * cfl;
        throw ValidationError(os.str());
    }
    const int steps = static_cast<int>(std::ceil(1.0 / dt - 1e-12));
    dt = 1.0 / static_cast<double>(steps);  // uniform steps covering [0,1] exactly

    std::vector<CandidateStencil> stencils;
    for (const Matrix& cov : spec.uncertainty.covariances())
        stencils.push_back(make_stencil(cov, grid));
    const int extremes = static_cast<int>(stencils.size());

    March out(grid);
    PdeResult& res = out.result;
    res.steps = steps;
    res.dt = dt;
    res.values.steps = steps;
    double r_max = 0.0;
    for (int a = 0; a < d; ++a) r_max = std::max(r_max, grid.half_width(a));
    res.payoff_bound = spec.payoff.bound_on_radius(r_max, d);
    res.values.bound = res.payoff_bound;
    if (grid.half_width(0) < 3.0 * spec.uncertainty.sigma_max())
        res.warnings.push_back("grid half-width below 3*sigma_max; truncation may dominate");

    const std::size_t total = grid.node_count();
    std::vector<double> v(total), vnew(total);
    {
        double x[SpatialGrid::kMaxDim];
        for (std::size_t i = 0; i < total; ++i) {
            grid.node_coords(i, x);
            v[i] = spec.payoff(x, d);
        }
    }
    res.min_value = *std::min_element(v.begin(), v.end());
    res.max_value = *std::max_element(v.begin(), v.end());

    // which marching steps get stored (terminal handled before the loop)
    const int interior_budget = std::max(0, config.max_stored_slices - 2);
    const int stride_steps =
        interior_budget > 0 ? std::max(1, steps / (interior_budget + 1)) : steps + 1;

    res.values.slices.push_back({1.0, v});
    std::vector<double> policy_times;
    std::vector<std::vector<std::uint16_t>> policy_slices;

    const int nx = grid.axis_nodes(0);
    const int ny = d == 2 ? grid.axis_nodes(1) : 1;
    const std::size_t sx = grid.stride(0);
    const std::ptrdiff_t ox = static_cast<std::ptrdiff_t>(sx);
    const std::ptrdiff_t oy = d == 2 ? static_cast<std::ptrdiff_t>(grid.stride(1)) : 0;

    auto record_policy = [&](double t, const std::vector<double>& slice) {
        std::vector<std::uint16_t> idx(total, 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (std::ptrdiff_t node = 0; node < static_cast<std::ptrdiff_t>(total); ++node) {
            const int ix = static_cast<int>(static_cast<std::size_t>(node) / sx);
            const int iy = d == 2 ? static_cast<int>(static_cast<std::size_t>(node) % sx) : 0;
            if (ix == 0 || ix == nx - 1 || (d == 2 && (iy == 0 || iy == ny - 1))) continue;
            double best = 0.0;
            int arg = 0;
            for (int e = 0; e < extremes; ++e) {
                const CandidateStencil& st = stencils[e];
                const double* p = slice.data() + node;
                double g = st.c * p[0] + st.e * p[ox] + st.w * p[-ox];
                if (d == 2)
                    g += st.n * p[oy] + st.s * p[-oy] + st.ne * p[ox + oy] +
                         st.sw * p[-(ox + oy)] + st.nw * p[oy - ox] + st.se * p[ox - oy];
                if (e == 0 || g > best) {
                    best = g;
                    arg = e;
                }
            }
            idx[static_cast<std::size_t>(node)] = static_cast<std::uint16_t>(arg);
        }
        policy_times.push_back(t);
        policy_slices.push_back(std::move(idx));
    };

    if (want_policy) record_policy(1.0, v);

    for (int step = 0; step < steps; ++step) {
        const double t = 1.0 - dt * static_cast<double>(step + 1);
        apply_once(stencils, grid, v.data(), vnew.data(), dt);
        v.swap(vnew);
        res.min_value = std::min(res.min_value, *std::min_element(v.begin(), v.end()));
        res.max_value = std::max(res.max_value, *std::max_element(v.begin(), v.end()));
        const bool last = step == steps - 1;
        if (last || ((step + 1) % stride_steps == 0 &&
                     static_cast<int>(res.values.slices.size()) < config.max_stored_slices - 1)) {
            res.values.slices.push_back({last ? 0.0 : t, v});
            if (want_policy && !last) record_policy(t, v);
        }
    }
    if (want_policy) record_policy(0.0, v);

    std::reverse(res.values.slices.begin(), res.values.slices.end());
    res.value_at_origin = res.values.initial().values[grid.origin_index()];

    if (want_policy) {
        std::reverse(policy_times.begin(), policy_times.end());
        std::reverse(policy_slices.begin(), policy_slices.end());
        out.policy.times = policy_times;
        out.policy.policy =
            FeedbackPolicy(static_cast<int>(policy_slices.size()), total, extremes);
        for (int j = 0; j < static_cast<int>(policy_slices.size()); ++j)
            std::copy(policy_slices[j].begin(), policy_slices[j].end(),
                      out.policy.policy.step_data(j));
    }
    return out;
}

}  // namespace

double cfl_max_dt(double spacing, const UncertaintySet& lambda, int dim) {
    if (!(spacing > 0.0)) throw ValidationError("cfl_max_dt: spacing must be positive");
    return spacing * spacing / (static_cast<double>(dim) * lambda.lambda_max());
}

PdeResult pde_solve(const ProblemSpec& spec, const PdeConfig& config) {
    return march(spec, config, false).result;
}

std::vector<double> pde_apply_step(const ProblemSpec& spec, const SpatialGrid& grid,
                                   std::span<const double> slice, double dt) {
    if (grid.dim() > 2) throw UnsupportedError("pde_apply_step: d <= 2 only");
    if (slice.size() != grid.node_count())
        throw DimensionError("pde_apply_step: slice size disagrees with grid");
    if (grid.dim() == 2) {
        for (const Matrix& cov : spec.uncertainty.covariances())
            if (std::abs(cov(0, 1)) > std::min(cov(0, 0), cov(1, 1)) * (1.0 + 1e-12))
                throw UnsupportedError("pde_apply_step: extreme A A^T not diagonally dominant");
    }
    const double cfl = cfl_max_dt(grid.spacing(0), spec.uncertainty, grid.dim());
    if (dt > cfl * (1.0 + 1e-12))
        throw ValidationError("pde_apply_step: dt violates the CFL bound");
    std::vector<CandidateStencil> stencils;
    for (const Matrix& cov : spec.uncertainty.covariances())
        stencils.push_back(make_stencil(cov, grid));
    std::vector<double> out(grid.node_count());
    apply_once(stencils, grid, slice.data(), out.data(), dt);
    return out;
}

PdePolicy pde_policy(const ProblemSpec& spec, const PdeConfig& config) {
    return march(spec, config, true).policy;
}

}  // namespace gheat
