#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gheat/harness.hpp"
#include "oracles.hpp"

using namespace gheat;

namespace {

ProblemSpec cosine_singleton() {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 1.0), NoiseModel::rademacher(1),
                     Payoff::cosine()};
    return spec;
}

}  // namespace

TEST_CASE("convergence study on the classical cosine problem") {
    ConvergenceOptions opts;
    opts.n_list = {8, 32, 128};
    opts.pde_spacing = 0.05;
    const auto report = run_convergence(cosine_singleton(), opts);

    REQUIRE(report.rows.size() == 3);
    CHECK(report.rows.front().n == 8);
    CHECK(report.rows.back().n == 128);
    const double heat = oracles::heat_cosine_value(1, 0.0, 0.0);
    CHECK(std::abs(report.pde_value - heat) < 1e-3);
    CHECK(std::abs(report.rows.back().dp_value - heat) < 1e-2);
    CHECK(report.gaps_strictly_decreasing);
    CHECK(report.rates.size() == 2);

    // JSON report echoes the resolved configuration
    const auto j = to_json(report);
    CHECK(j["config"]["dimension"] == 1);
    CHECK(j["config"]["pde_spacing"] == 0.05);
    CHECK(j["rows"].size() == 3);

    std::ostringstream csv;
    write_csv(csv, report);
    CHECK(csv.str().find("n,dp_value,gap,runtime_sec") == 0);
}

TEST_CASE("single-n study degenerates to one row and no rates") {
    ConvergenceOptions opts;
    opts.n_list = {16};
    const auto report = run_convergence(cosine_singleton(), opts);
    CHECK(report.rows.size() == 1);
    CHECK(report.rates.empty());
    CHECK(!report.gaps_strictly_decreasing);
}

TEST_CASE("invariance with the identity rotation gives identically zero gaps") {
    ProblemSpec spec{UncertaintySet::scalar_interval(2, 1.0, 1.5),
                     NoiseModel::rademacher(2), Payoff::gauss_bump()};
    InvarianceOptions opts;
    opts.n_list = {4, 16};
    opts.orthogonal = Matrix::Identity(2, 2);
    const auto report = run_invariance(spec, opts);
    for (const auto& row : report.rows) CHECK(row.gap == 0.0);
    CHECK(report.per_n_within_tolerance);
}

TEST_CASE("invariance rejects non-orthogonal matrices") {
    ProblemSpec spec{UncertaintySet::scalar_interval(2, 1.0, 1.5),
                     NoiseModel::rademacher(2), Payoff::gauss_bump()};
    InvarianceOptions opts;
    opts.n_list = {4};
    opts.orthogonal = 2.0 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(run_invariance(spec, opts), ValidationError);
}

TEST_CASE("gaussian invariance is exact for a rotated set") {
    ProblemSpec spec{UncertaintySet::singleton(Matrix::Identity(2, 2)),
                     NoiseModel::gauss_hermite(2, 7), Payoff::aniso_bump({1.0, 2.0})};
    spec.domain_half_width = 4.5;
    InvarianceOptions opts;
    opts.n_list = {4, 8};
    opts.orthogonal = rotation_2d(std::numbers::pi / 4.0);
    const auto report = run_invariance(spec, opts);
    CHECK(report.gaussian_noise);
    CHECK(report.per_n_within_tolerance);
    for (const auto& row : report.rows) CHECK(row.gap <= 1e-12);
}

TEST_CASE("rademacher invariance gaps decay with n") {
    ProblemSpec spec{UncertaintySet::singleton(Matrix::Identity(2, 2)),
                     NoiseModel::rademacher(2), Payoff::aniso_bump({1.0, 2.0})};
    spec.domain_half_width = 4.5;
    InvarianceOptions opts;
    opts.n_list = {8, 64};
    opts.orthogonal = rotation_2d(std::numbers::pi / 4.0);
    const auto report = run_invariance(spec, opts);
    CHECK(!report.gaussian_noise);
    CHECK(report.rows.front().gap > 0.0);
    CHECK(report.gap_decays);
}

TEST_CASE("noise study: values agree in the limit, gaps shrink") {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0), NoiseModel::rademacher(1),
                     Payoff::quadratic()};
    NoiseStudyOptions opts;
    opts.n_list = {8, 128};
    opts.noises = {{"rademacher", NoiseModel::rademacher(1)},
                   {"gh7", NoiseModel::gauss_hermite(1, 7)},
                   {"two_point", NoiseModel::two_point_asymmetric(1)}};
    const auto report = run_noise_study(spec, opts);
    REQUIRE(report.values.size() == 3);
    for (const auto& column : report.values)
        CHECK(std::abs(column.back() - 4.0) < 0.1);
    CHECK(report.gap_shrinks);

    std::ostringstream csv;
    write_csv(csv, report);
    CHECK(csv.str().find("rademacher") != std::string::npos);
}

TEST_CASE("noise study rejects invalid noise hard") {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 2.0), NoiseModel::rademacher(1),
                     Payoff::quadratic()};
    const double s = 2.0;
    std::vector<Vector> pts{Vector::Constant(1, s), Vector::Constant(1, -s)};
    NoiseStudyOptions opts;
    opts.n_list = {8};
    opts.noises = {{"scaled", NoiseModel::atoms(pts, {0.5, 0.5})}};  // covariance 4
    CHECK_THROWS_AS(run_noise_study(spec, opts), ValidationError);
}

TEST_CASE("single-noise study is a trivial report") {
    ProblemSpec spec{UncertaintySet::scalar_interval(1, 1.0, 1.0), NoiseModel::rademacher(1),
                     Payoff::cosine()};
    NoiseStudyOptions opts;
    opts.n_list = {8, 16};
    opts.noises = {{"rademacher", NoiseModel::rademacher(1)}};
    const auto report = run_noise_study(spec, opts);
    for (double g : report.max_pairwise_gap) CHECK(g == 0.0);
    CHECK(!report.gap_shrinks);  // nothing to compare
}
