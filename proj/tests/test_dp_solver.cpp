#include <doctest.h>

#include <cmath>
#include <vector>

#include "gheat/dp_solver.hpp"
#include "gheat/rng.hpp"
#include "oracles.hpp"

using namespace gheat;

namespace {

ProblemSpec band_problem(double lo, double hi, Payoff payoff, double half_width = 0.0) {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, lo, hi), NoiseModel::rademacher(1),
                     std::move(payoff)};
    spec.domain_half_width = half_width;
    return spec;
}

// grid whose nodes include every Rademacher jump multiple: exact dp
SpatialGrid aligned_grid(const ProblemSpec& spec, int n, double half_width) {
    return default_dp_grid(spec, n, GridSchedule::Aligned, half_width);
}

}  // namespace

TEST_CASE("dp_step two-atom averages at the origin") {
    // f(x) = x^2, n=1: value at 0 is (f(sigma) + f(-sigma))/2, argmax sigma_hi
    auto spec = band_problem(1.0, 2.0, Payoff::quadratic(), 4.0);
    const auto grid = SpatialGrid::isotropic(1, 4.0, 9);  // h = 1, jumps on nodes
    const auto ctx = DpStepContext::make(spec.uncertainty, spec.noise, 1, grid);

    std::vector<double> terminal(grid.node_count());
    double x;
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        grid.node_coords(i, &x);
        terminal[i] = x * x;
    }
    std::vector<double> out(grid.node_count());
    std::vector<std::uint16_t> policy(grid.node_count());
    dp_step(ctx, terminal, out, policy.data());

    CHECK(out[grid.origin_index()] == doctest::Approx(4.0));  // max(1, (4+4)/2)
    CHECK(policy[grid.origin_index()] == 1);

    // singleton set: plain two-atom average
    ProblemSpec single{UncertaintySet::scalar_interval(1, 1.0, 1.0), NoiseModel::rademacher(1),
                       Payoff::quadratic()};
    const auto ctx1 = DpStepContext::make(single.uncertainty, single.noise, 1, grid);
    dp_step(ctx1, terminal, out, nullptr);
    CHECK(out[grid.origin_index()] == doctest::Approx(1.0));
}

TEST_CASE("constant slices are preserved exactly") {
    auto spec = band_problem(1.0, 2.0, Payoff::quadratic(), 5.0);
    const auto grid = SpatialGrid::isotropic(1, 5.0, 41);
    const auto ctx = DpStepContext::make(spec.uncertainty, spec.noise, 8, grid);
    std::vector<double> slice(grid.node_count(), 3.25), out(grid.node_count());
    dp_step(ctx, slice, out, nullptr);
    for (double v : out) CHECK(v == 3.25);
}

TEST_CASE("dp_solve reproduces the hand-enumerated examples") {
    auto spec = band_problem(1.0, 2.0, Payoff::quadratic(), 6.0);
    SUBCASE("n = 1") {
        const auto res = dp_solve(spec, 1, aligned_grid(spec, 1, 6.0));
        CHECK(res.value_at_origin == doctest::Approx(4.0).epsilon(1e-12));
    }
    SUBCASE("n = 2") {
        const auto res = dp_solve(spec, 2, aligned_grid(spec, 2, 6.0));
        CHECK(res.value_at_origin == doctest::Approx(4.0).epsilon(1e-10));
    }
}

TEST_CASE("terminal slice equals the payoff exactly and the bound holds") {
    auto spec = band_problem(1.0, 2.0, Payoff::quadratic(), 6.0);
    DpOptions opts;
    opts.store_all_slices = true;
    const auto res = dp_solve(spec, 4, aligned_grid(spec, 4, 6.0), opts);

    const auto& terminal = res.values.terminal();
    CHECK(terminal.t == 1.0);
    double x;
    for (std::size_t i = 0; i < res.values.grid.node_count(); ++i) {
        res.values.grid.node_coords(i, &x);
        CHECK(terminal.values[i] == x * x);
    }
    CHECK(res.max_abs_value <= res.payoff_bound);  // uniform bound, exact
    CHECK(res.values.slices.size() == 5);
}

TEST_CASE("constant payoff solves to the same constant exactly") {
    Payoff::TableData data;
    data.lo = {-6.0};
    data.hi = {6.0};
    data.nodes = {5};
    data.values = {2.5, 2.5, 2.5, 2.5, 2.5};
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0), NoiseModel::rademacher(1),
                     Payoff::table(data)};
    spec.domain_half_width = 6.0;
    DpOptions opts;
    opts.store_all_slices = true;
    const auto res = dp_solve(spec, 8, default_dp_grid(spec, 8, GridSchedule::Offset), opts);
    for (const auto& slice : res.values.slices)
        for (double v : slice.values) CHECK(v == 2.5);
}

TEST_CASE("oracle equivalence: strategy-table enumeration, n <= 4") {
    // literal sup over every history-adapted strategy table; the dp value
    // must match within the interpolation tolerance C h^2
    const std::vector<double> sigmas{1.0, 2.0};
    for (auto payoff : {Payoff::quadratic(), Payoff::cosine()}) {
        for (int n : {1, 2, 3, 4}) {
            CAPTURE(n);
            CAPTURE(payoff.describe());
            ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0),
                             NoiseModel::rademacher(1), payoff};
            spec.domain_half_width = 8.0;

            const auto oracle = oracles::strategy_table_enumeration(
                [&](double x) { return payoff(&x, 1); }, sigmas, n);

            const auto grid = aligned_grid(spec, n, 8.0);
            const auto res = dp_solve(spec, n, grid);
            const double h = grid.spacing(0);
            const double c_measured =
                std::abs(res.value_at_origin - oracle.best_value) / (h * h);
            CHECK(std::abs(res.value_at_origin - oracle.best_value) <= 1e-9);
            CHECK(c_measured <= 1.0);  // aligned grids: exact, so C is tiny

            // dominance: no constant strategy beats the dp value
            for (double fixed : oracle.fixed_values)
                CHECK(fixed <= res.value_at_origin + 1e-9);
        }
    }
}

TEST_CASE("oracle equivalence: exact tree recursion on an offset grid") {
    // offset grids interpolate, so the gap is a genuine C h^2
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0), NoiseModel::rademacher(1),
                     Payoff::cosine()};
    spec.domain_half_width = 8.0;
    for (int n : {2, 4}) {
        const double oracle = oracles::tree_value([](double x) { return std::cos(x); },
                                                  {1.0, 2.0}, {1.0, -1.0}, {0.5, 0.5}, n);
        const auto grid = default_dp_grid(spec, n, GridSchedule::Offset, 8.0);
        const auto res = dp_solve(spec, n, grid);
        const double h = grid.spacing(0);
        CHECK(std::abs(res.value_at_origin - oracle) <= 2.0 * n * h * h);
    }
}

TEST_CASE("classical-CLT oracle: singleton set matches binomial enumeration") {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 1.0), NoiseModel::rademacher(1),
                     Payoff::cosine()};
    spec.domain_half_width = 6.0;
    for (int n : {4, 8, 12}) {
        const double oracle =
            oracles::binomial_expectation([](double x) { return std::cos(x); }, 1.0, n);
        const auto res = dp_solve(spec, n, aligned_grid(spec, n, 6.0));
        CHECK(res.value_at_origin == doctest::Approx(oracle).epsilon(1e-10));
    }
}

TEST_CASE("monotonicity in the uncertainty set") {
    // a finite subset can only lower the value, at every node and step
    Matrix a1 = Matrix::Constant(1, 1, 1.0);
    Matrix a2 = Matrix::Constant(1, 1, 2.0);
    ProblemSpec small{UncertaintySet::finite({a1}), NoiseModel::rademacher(1), Payoff::cosine()};
    ProblemSpec big{UncertaintySet::finite({a1, a2}), NoiseModel::rademacher(1),
                    Payoff::cosine()};
    small.domain_half_width = big.domain_half_width = 12.0;

    const auto grid = default_dp_grid(big, 8, GridSchedule::Aligned, 12.0);
    DpOptions opts;
    opts.store_all_slices = true;
    const auto rs = dp_solve(small, 8, grid, opts);
    const auto rb = dp_solve(big, 8, grid, opts);
    REQUIRE(rs.values.slices.size() == rb.values.slices.size());
    for (std::size_t j = 0; j < rs.values.slices.size(); ++j)
        for (std::size_t i = 0; i < grid.node_count(); ++i)
            CHECK(rb.values.slices[j].values[i] >= rs.values.slices[j].values[i] - 1e-12);
}

TEST_CASE("dp_step is monotone in its input slice") {
    auto spec = band_problem(1.0, 2.0, Payoff::cosine(), 5.0);
    const auto grid = SpatialGrid::isotropic(1, 5.0, 31);
    const auto ctx = DpStepContext::make(spec.uncertainty, spec.noise, 4, grid);

    PathRng rng(42, 0);
    std::vector<double> base(grid.node_count()), raised(grid.node_count());
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
        base[i] = 2.0 * rng.uniform() - 1.0;
        raised[i] = base[i] + 0.5 * rng.uniform();  // pointwise >= base
    }
    std::vector<double> out_base(grid.node_count()), out_raised(grid.node_count());
    dp_step(ctx, base, out_base, nullptr);
    dp_step(ctx, raised, out_raised, nullptr);
    for (std::size_t i = 0; i < grid.node_count(); ++i)
        CHECK(out_raised[i] >= out_base[i] - 1e-14);
}

TEST_CASE("policy extraction: convex picks sigma_hi, concave sigma_lo") {
    auto convex = band_problem(1.0, 2.0, Payoff::quadratic(), 12.0);
    const auto grid = aligned_grid(convex, 16, 12.0);
    const auto res = dp_solve(convex, 16, grid);
    double x = 0.0;
    for (int j = 0; j < 16; ++j) {
        const Matrix& m = policy_matrix_at(res.policy, convex.uncertainty, j, &x, grid);
        CHECK(m(0, 0) == 2.0);
    }

    auto concave = band_problem(1.0, 2.0, Payoff::neg_quadratic(), 12.0);
    const auto res2 = dp_solve(concave, 16, grid);
    for (int j = 0; j < 16; ++j) {
        const Matrix& m = policy_matrix_at(res2.policy, concave.uncertainty, j, &x, grid);
        CHECK(m(0, 0) == 1.0);
    }

    // singleton set: always that matrix
    ProblemSpec single{UncertaintySet::singleton(Matrix::Constant(1, 1, 1.5)),
                       NoiseModel::rademacher(1), Payoff::cosine()};
    const auto gs = default_dp_grid(single, 4, GridSchedule::Aligned);
    const auto rs = dp_solve(single, 4, gs);
    CHECK(policy_matrix_at(rs.policy, single.uncertainty, 0, &x, gs)(0, 0) == 1.5);
}

TEST_CASE("d=3 classical walk matches the product closed form") {
    // independent coordinates: E cos(X+Y+Z) = cos(1/sqrt(n))^(3n); aligned
    // grid, no clipping, so the dp value is exact
    ProblemSpec spec{UncertaintySet::scalar_interval(3, 1.0, 1.0), NoiseModel::rademacher(3),
                     Payoff::cosine()};
    spec.domain_half_width = 6.0;
    const int n = 4;
    const auto grid = default_dp_grid(spec, n, GridSchedule::Aligned, 6.0);
    const auto res = dp_solve(spec, n, grid);
    const double exact =
        std::pow(std::cos(1.0 / std::sqrt(static_cast<double>(n))), 3.0 * n);
    CHECK(res.value_at_origin == doctest::Approx(exact).epsilon(1e-9));
}

TEST_CASE("sampler-only noise is rejected with an unsupported error") {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0),
                     NoiseModel::sampler(1, NoiseModel::SamplerLaw::Rademacher),
                     Payoff::cosine()};
    const auto grid = SpatialGrid::isotropic(1, 6.0, 61);
    CHECK_THROWS_AS(dp_solve(spec, 4, grid), UnsupportedError);
}

TEST_CASE("narrow grids and coarse spacing produce warnings") {
    auto spec = band_problem(1.0, 2.0, Payoff::cosine(), 0.0);
    const auto narrow = SpatialGrid::isotropic(1, 4.0, 257);  // 3*sigma_max = 6
    CHECK(!dp_solve(spec, 4, narrow).warnings.empty());

    const auto coarse = SpatialGrid::isotropic(1, 12.0, 5);  // h = 6 >> jump
    bool found = false;
    for (const auto& w : dp_solve(spec, 16, coarse).warnings)
        if (w.find("coarser") != std::string::npos) found = true;
    CHECK(found);
}

TEST_CASE("default grids: aligned lands jumps on nodes, offset mid-cell") {
    auto spec = band_problem(1.0, 2.0, Payoff::quadratic(), 12.0);
    const int n = 32;
    const auto aligned = default_dp_grid(spec, n, GridSchedule::Aligned, 12.0);
    const double jump = 1.0 / std::sqrt(32.0);
    const double ratio_aligned = jump / aligned.spacing(0);
    CHECK(std::abs(ratio_aligned - std::round(ratio_aligned)) < 1e-9);

    const auto offset = default_dp_grid(spec, n, GridSchedule::Offset, 12.0);
    const double big_jump = 2.0 / std::sqrt(32.0);
    const double ratio_offset = big_jump / offset.spacing(0);
    CHECK(std::abs(ratio_offset - std::floor(ratio_offset) - 0.5) < 1e-9);  // mid-cell
}

TEST_CASE("aligned schedule falls back to offset for incommensurate jumps") {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0),
                     NoiseModel::gauss_hermite(1, 7), Payoff::cosine()};
    const auto grid = default_dp_grid(spec, 16, GridSchedule::Aligned);
    CHECK(grid.spacing(0) > 0.0);
    // Gauss-Hermite nodes share no common divisor; the offset rule's
    // mid-cell property must hold for the largest jump instead
    const double j_max = 2.0 * 3.7504397177257425 / 4.0;  // sigma_hi * z_max / sqrt(16)
    const double ratio = j_max / grid.spacing(0);
    CHECK(std::abs(ratio - std::floor(ratio) - 0.5) < 1e-6);
}

TEST_CASE("policy file round-trip is exact") {
    auto spec = band_problem(1.0, 2.0, Payoff::quadratic(), 6.0);
    const auto grid = aligned_grid(spec, 4, 6.0);
    const auto res = dp_solve(spec, 4, grid);

    const std::string path = "test_policy_roundtrip.bin";
    save_policy(path, PolicyFile{grid, res.policy, res.value_at_origin});
    const auto loaded = load_policy(path);
    CHECK(loaded.grid.same_shape(grid));
    CHECK(loaded.value_at_origin == res.value_at_origin);
    REQUIRE(loaded.policy.steps() == res.policy.steps());
    for (int j = 0; j < res.policy.steps(); ++j)
        for (std::size_t i = 0; i < grid.node_count(); ++i)
            CHECK(loaded.policy.at(j, i) == res.policy.at(j, i));
    std::remove(path.c_str());
}
