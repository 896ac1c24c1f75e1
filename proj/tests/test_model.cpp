#include <doctest.h>

#include <cmath>

#include "gheat/problem.hpp"
#include "gheat/rng.hpp"

using namespace gheat;

namespace {

ProblemSpec basic_spec(UncertaintySet u, NoiseModel n, Payoff p) {
    return ProblemSpec{std::move(u), std::move(n), std::move(p)};
}

}  // namespace

TEST_CASE("rademacher atoms pass validation with zero defects") {
    const auto spec = basic_spec(UncertaintySet::scalar_interval(1, 1.0, 1.0),
                                 NoiseModel::rademacher(1), Payoff::cosine());
    const auto report = validate(spec);
    CHECK(report.passed());
    const auto defects = spec.noise.moment_defects();
    CHECK(defects.mean_max_abs == 0.0);
    CHECK(defects.cov_max_abs == 0.0);
}

TEST_CASE("uniform +-sqrt(3) atoms fail the covariance check with defect 2") {
    const double s = std::sqrt(3.0);
    std::vector<Vector> pts{Vector::Constant(1, s), Vector::Constant(1, -s)};
    const auto noise = NoiseModel::atoms(pts, {0.5, 0.5});
    const auto defects = noise.moment_defects();
    CHECK(defects.mean_max_abs == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(defects.cov_max_abs == doctest::Approx(2.0).epsilon(1e-12));

    const auto spec = basic_spec(UncertaintySet::scalar_interval(1, 1.0, 1.0), noise,
                                 Payoff::cosine());
    CHECK(!validate(spec).passed());
    CHECK_THROWS_AS(require_valid(spec), ValidationError);
}

TEST_CASE("gauss-hermite order 5 has defects below 1e-12") {
    // quadrature moments computed directly from the rule
    std::vector<double> nodes, weights;
    gauss_hermite_rule(5, nodes, weights);
    double total = 0.0, mean = 0.0, second = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        total += weights[i];
        mean += weights[i] * nodes[i];
        second += weights[i] * nodes[i] * nodes[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::abs(mean) < 1e-12);
    CHECK(std::abs(second - 1.0) < 1e-12);

    const auto noise = NoiseModel::gauss_hermite(1, 5);
    const auto defects = noise.moment_defects();
    CHECK(defects.mean_max_abs < 1e-12);
    CHECK(defects.cov_max_abs < 1e-12);

    // exactness through degree 2m-1: fourth moment of GH-5 equals 3
    double fourth = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        fourth += weights[i] * std::pow(nodes[i], 4);
    CHECK(fourth == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("tensorized noises keep exact weights and moments") {
    for (int d : {1, 2, 3}) {
        CAPTURE(d);
        for (const auto& noise : {NoiseModel::rademacher(d), NoiseModel::gauss_hermite(d, 5),
                                  NoiseModel::two_point_asymmetric(d)}) {
            double sum = 0.0;
            for (double w : noise.weights()) sum += w;
            CHECK(std::abs(sum - 1.0) < 1e-13);
            const auto defects = noise.moment_defects();
            CHECK(defects.mean_max_abs <= noise.moment_tolerance());
            CHECK(defects.cov_max_abs <= noise.moment_tolerance());
        }
    }
}

TEST_CASE("sampler-only noise validates empirically") {
    for (auto law : {NoiseModel::SamplerLaw::Gaussian, NoiseModel::SamplerLaw::Rademacher,
                     NoiseModel::SamplerLaw::UniformSqrt3}) {
        const auto noise = NoiseModel::sampler(2, law);
        const auto defects = noise.moment_defects();
        CHECK(defects.mean_max_abs <= 1e-2);
        CHECK(defects.cov_max_abs <= 1e-2);
        CHECK_THROWS_AS(noise.points(), UnsupportedError);
    }
}

TEST_CASE("dimension mismatch is a hard error") {
    const auto spec = basic_spec(UncertaintySet::scalar_interval(2, 1.0, 2.0),
                                 NoiseModel::rademacher(1), Payoff::cosine());
    CHECK(!validate(spec).passed());
    CHECK_THROWS_AS(require_valid(spec), DimensionError);
}

TEST_CASE("payoff bound holds on the computational domain") {
    const auto spec = basic_spec(UncertaintySet::scalar_interval(1, 1.0, 2.0),
                                 NoiseModel::rademacher(1), Payoff::quadratic());
    // M = R^2 with R = 6 * sigma_max = 12
    CHECK(spec.payoff.bound_on_radius(spec.default_half_width(), 1) ==
          doctest::Approx(144.0));
    CHECK(validate(spec).passed());
}

TEST_CASE("enumerate extremes: singleton, interval, box") {
    const auto single = UncertaintySet::singleton(Matrix::Identity(2, 2));
    REQUIRE(single.extremes().size() == 1);
    CHECK((single.extremes()[0] - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() == 0.0);

    const auto interval = UncertaintySet::scalar_interval(1, 1.0, 2.0);
    REQUIRE(interval.extremes().size() == 2);
    CHECK(interval.extremes()[0](0, 0) == 1.0);
    CHECK(interval.extremes()[1](0, 0) == 2.0);

    const auto box = UncertaintySet::diagonal_box({1.0, 1.0}, {2.0, 3.0});
    REQUIRE(box.extremes().size() == 4);
    for (const Matrix& m : box.extremes()) {
        CHECK((m(0, 0) == 1.0 || m(0, 0) == 2.0));
        CHECK((m(1, 1) == 1.0 || m(1, 1) == 3.0));
        CHECK(m(0, 1) == 0.0);
    }
}

TEST_CASE("extremes are members of the set") {
    const auto interval = UncertaintySet::scalar_interval(2, 0.5, 1.5);
    for (const Matrix& m : interval.extremes()) CHECK(interval.contains(m));
    const auto box = UncertaintySet::diagonal_box({1.0, 2.0}, {3.0, 2.5});
    for (const Matrix& m : box.extremes()) CHECK(box.contains(m));
    CHECK(!box.contains(4.0 * Matrix::Identity(2, 2)));
}

TEST_CASE("extreme-point sufficiency: dense sampling never beats the extremes") {
    // sup over the set of Tr(A A^T S) is attained at the enumerated
    // extreme points because the trace is linear in A A^T
    PathRng rng(2024, 7);
    const auto box = UncertaintySet::diagonal_box({0.5, 1.0}, {1.5, 2.0});
    for (int trial = 0; trial < 50; ++trial) {
        Matrix s(2, 2);
        const double a = 4.0 * rng.uniform() - 2.0;
        const double b = 4.0 * rng.uniform() - 2.0;
        const double c = 4.0 * rng.uniform() - 2.0;
        s << a, c, c, b;

        double best_extreme = -1e300;
        for (const Matrix& m : box.covariances())
            best_extreme = std::max(best_extreme, (m * s).trace());

        double best_sampled = -1e300;
        for (int i = 0; i < 200; ++i) {
            Matrix m = Matrix::Zero(2, 2);
            m(0, 0) = 0.5 + rng.uniform() * 1.0;
            m(1, 1) = 1.0 + rng.uniform() * 1.0;
            best_sampled = std::max(best_sampled, (m * m.transpose() * s).trace());
        }
        CHECK(best_sampled <= best_extreme + 1e-9);
    }
}

TEST_CASE("compactness invariants are enforced") {
    CHECK_THROWS_AS(UncertaintySet::scalar_interval(1, 0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(UncertaintySet::scalar_interval(1, 2.0, 1.0), ValidationError);
    CHECK_THROWS_AS(UncertaintySet::diagonal_box({1.0}, {0.5}), ValidationError);
    CHECK_THROWS_AS(UncertaintySet::finite({}), ValidationError);
    CHECK_THROWS_AS(NoiseModel::atoms({Vector::Constant(1, 1.0)}, {0.7}), ValidationError);
}

TEST_CASE("table payoff interpolates and extends as a constant") {
    Payoff::TableData data;
    data.lo = {-1.0};
    data.hi = {1.0};
    data.nodes = {3};
    data.values = {2.0, 0.0, 4.0};  // x = -1, 0, 1
    const auto payoff = Payoff::table(data);
    const double mid = 0.5;
    CHECK(payoff(&mid, 1) == doctest::Approx(2.0));
    const double outside = 5.0;
    CHECK(payoff(&outside, 1) == doctest::Approx(4.0));  // constant extension
    CHECK(payoff.bound_on_radius(10.0, 1) == doctest::Approx(4.0));
}

TEST_CASE("warning when the domain is narrower than 3 sigma_max") {
    auto spec = basic_spec(UncertaintySet::scalar_interval(1, 1.0, 2.0),
                           NoiseModel::rademacher(1), Payoff::cosine());
    spec.domain_half_width = 4.0;  // 3*sigma_max = 6
    const auto report = validate(spec);
    CHECK(report.passed());
    REQUIRE(report.warnings.size() == 1);
}
