#include "gheat/mc_simulator.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gheat/dp_solver.hpp"
#include "gheat/rng.hpp"

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

// increment sampler for one path
struct NoiseDraw {
    const NoiseModel* noise;
    std::vector<double> cumulative;  // atom laws only

    explicit NoiseDraw(const NoiseModel& n) : noise(&n) {
        if (n.has_atoms()) {
            cumulative.resize(n.weights().size());
            double acc = 0.0;
            for (std::size_t k = 0; k < n.weights().size(); ++k) {
                acc += n.weights()[k];
                cumulative[k] = acc;
            }
        }
    }

    void sample(PathRng& rng, double* z, int d) const {
        if (noise->has_atoms() && !noise->gaussian_law()) {
            const int k = rng.pick(cumulative.data(), static_cast<int>(cumulative.size()));
            const Vector& p = noise->points()[static_cast<std::size_t>(k)];
            for (int r = 0; r < d; ++r) z[r] = p(r);
            return;
        }
        if (noise->gaussian_law()) {
            for (int r = 0; r < d; ++r) z[r] = rng.normal();
            return;
        }
        switch (noise->sampler_law()) {
            case NoiseModel::SamplerLaw::Gaussian:
                for (int r = 0; r < d; ++r) z[r] = rng.normal();
                break;
            case NoiseModel::SamplerLaw::Rademacher:
                for (int r = 0; r < d; ++r) z[r] = rng.rademacher();
                break;
            case NoiseModel::SamplerLaw::UniformSqrt3:
                for (int r = 0; r < d; ++r)
                    z[r] = std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
                break;
        }
    }
};

McEstimate reduce(const std::vector<double>& payoffs) {
    McEstimate est;
    est.paths = static_cast<long>(payoffs.size());
    double sum = 0.0;
    for (double y : payoffs) sum += y;  // fixed path order
    est.mean = sum / static_cast<double>(est.paths);
    double ss = 0.0;
    for (double y : payoffs) {
        const double d = y - est.mean;
        ss += d * d;
    }
    const double var = est.paths > 1 ? ss / static_cast<double>(est.paths - 1) : 0.0;
    est.standard_error = std::sqrt(var / static_cast<double>(est.paths));
    return est;
}

}  // namespace

McEstimate simulate(const ProblemSpec& spec, const SimConfig& config) {
    require_valid(spec);
    apply_thread_env();
    if (config.paths < 1) throw ValidationError("simulate: need at least one path");
    if (config.steps < 1) throw ValidationError("simulate: need at least one step");
    const int d = spec.dim();

    // resolve the strategy into per-step effective matrices
    const auto& extremes = spec.uncertainty.extremes();
    std::vector<Matrix> transforms;
    transforms.reserve(extremes.size());
    for (const Matrix& a : extremes)
        transforms.push_back(spec.noise.effective_transform(a));

    const FeedbackStrategy* feedback = std::get_if<FeedbackStrategy>(&config.strategy);
    int fixed_index = -1;
    if (const auto* fixed = std::get_if<FixedMatrixStrategy>(&config.strategy)) {
        for (std::size_t i = 0; i < extremes.size(); ++i)
            if ((extremes[i] - fixed->matrix).cwiseAbs().maxCoeff() <= 1e-12)
                fixed_index = static_cast<int>(i);
        if (fixed_index < 0 && !spec.uncertainty.contains(fixed->matrix))
            throw ValidationError("simulate: fixed matrix is not a member of the set");
    }
    Matrix fixed_transform;
    if (const auto* fixed = std::get_if<FixedMatrixStrategy>(&config.strategy))
        fixed_transform = spec.noise.effective_transform(fixed->matrix);
    if (feedback) {
        if (!feedback->grid || !feedback->policy)
            throw ValidationError("simulate: feedback strategy needs a grid and a policy");
        if (feedback->policy->steps() != config.steps)
            throw ValidationError("simulate: policy step count disagrees with n");
        if (feedback->policy->choice_count() != static_cast<int>(extremes.size()))
            throw ValidationError("simulate: policy choice count disagrees with the set");
        if (feedback->grid->dim() != d)
            throw DimensionError("simulate: policy grid dimension disagrees with problem");
    }

    const NoiseDraw draw(spec.noise);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(config.steps));
    std::vector<double> payoffs(static_cast<std::size_t>(config.paths));

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long p = 0; p < config.paths; ++p) {
        PathRng rng(config.seed, static_cast<std::uint64_t>(p));
        double x[SpatialGrid::kMaxDim] = {0.0, 0.0, 0.0};
        double z[SpatialGrid::kMaxDim];
        for (int j = 0; j < config.steps; ++j) {
            const Matrix* t;
            if (feedback) {
                const std::size_t node = feedback->grid->nearest_node(x);
                t = &transforms[feedback->policy->at(j, node)];
            } else if (fixed_index >= 0) {
                t = &transforms[static_cast<std::size_t>(fixed_index)];
            } else if (std::holds_alternative<FixedMatrixStrategy>(config.strategy)) {
                t = &fixed_transform;
            } else {
                const std::uint64_t pickv = rng.next_u64() % transforms.size();
                t = &transforms[static_cast<std::size_t>(pickv)];
            }
            draw.sample(rng, z, d);
            double y[SpatialGrid::kMaxDim];
            for (int r = 0; r < d; ++r) {
                double acc = 0.0;
                for (int c = 0; c < d; ++c) acc += (*t)(r, c) * z[c];
                y[r] = acc;
            }
            for (int r = 0; r < d; ++r) x[r] += y[r] * inv_sqrt_n;
        }
        payoffs[static_cast<std::size_t>(p)] = spec.payoff(x, d);
    }
    return reduce(payoffs);
}

EulerCompareReport euler_compare(const ProblemSpec& spec, int steps, long paths,
                                 std::uint64_t seed) {
    require_valid(spec);
    if (!spec.noise.has_atoms())
        throw UnsupportedError(
            "euler_compare: the shared feedback policy needs atoms/quadrature noise");

    const SpatialGrid grid = default_dp_grid(spec, steps);
    const DpResult dp = dp_solve(spec, steps, grid);

    EulerCompareReport rep;
    rep.steps = steps;
    rep.dp_value = dp.value_at_origin;

    SimConfig native;
    native.paths = paths;
    native.seed = seed;
    native.steps = steps;
    native.strategy = FeedbackStrategy{&grid, &dp.policy};
    rep.native = simulate(spec, native);

    ProblemSpec gaussian_spec{spec.uncertainty,
                              NoiseModel::sampler(spec.dim(), NoiseModel::SamplerLaw::Gaussian),
                              spec.payoff, spec.domain_half_width};
    rep.gaussian = simulate(gaussian_spec, native);

    rep.difference = rep.native.mean - rep.gaussian.mean;
    rep.combined_stderr = std::sqrt(rep.native.standard_error * rep.native.standard_error +
                                    rep.gaussian.standard_error * rep.gaussian.standard_error);
    return rep;
}

}  // namespace gheat
