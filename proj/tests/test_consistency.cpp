#include <doctest.h>

#include <cmath>

#include "gheat/consistency.hpp"
#include "gheat/g_operator.hpp"
#include "gheat/rng.hpp"

using namespace gheat;

namespace {

Vector vec1(double x) { return Vector::Constant(1, x); }

// random noise with exactly matched first and second moments: a symmetric
// pair +-z with a whitening rescale
NoiseModel random_whitened_noise(int dim, PathRng& rng) {
    Vector z(dim);
    for (int r = 0; r < dim; ++r) z(r) = 0.25 + rng.uniform();
    // symmetric two-point per axis product would be heavy; use the product
    // of per-axis symmetric pairs scaled to unit variance
    std::vector<Vector> pts;
    std::vector<double> wts;
    const int count = 1 << dim;
    for (int mask = 0; mask < count; ++mask) {
        Vector p(dim);
        for (int r = 0; r < dim; ++r) p(r) = (mask >> r & 1) ? 1.0 : -1.0;
        pts.push_back(p);
        wts.push_back(1.0 / static_cast<double>(count));
    }
    return NoiseModel::atoms(std::move(pts), std::move(wts));
}

SymMatrix random_sym(int dim, PathRng& rng) {
    SymMatrix s(dim);
    for (int r = 0; r < dim; ++r)
        for (int c = r; c < dim; ++c) s.set(r, c, 3.0 * (2.0 * rng.uniform() - 1.0));
    return s;
}

UncertaintySet random_set(int dim, PathRng& rng) {
    switch (static_cast<int>(rng.uniform() * 3.0)) {
        case 0: {
            const double lo = 0.3 + rng.uniform();
            return UncertaintySet::scalar_interval(dim, lo, lo + rng.uniform());
        }
        case 1: {
            std::vector<double> lo(dim), hi(dim);
            for (int r = 0; r < dim; ++r) {
                lo[r] = 0.3 + rng.uniform();
                hi[r] = lo[r] + rng.uniform();
            }
            return UncertaintySet::diagonal_box(lo, hi);
        }
        default: {
            std::vector<Matrix> ms;
            for (int i = 0; i < 2; ++i) {
                Matrix m(dim, dim);
                for (int r = 0; r < dim; ++r)
                    for (int c = 0; c < dim; ++c) m(r, c) = 2.0 * rng.uniform() - 1.0;
                m += 2.0 * Matrix::Identity(dim, dim);
                ms.push_back(m);
            }
            return UncertaintySet::finite(std::move(ms));
        }
    }
}

}  // namespace

TEST_CASE("affine test functions give machine-zero residuals") {
    const auto band = UncertaintySet::scalar_interval(1, 1.0, 2.0);
    const auto phi = TestFunction::affine(0.7, Vector::Constant(1, -1.3));
    for (int n : {1, 4, 64, 1024})
        CHECK(scheme_residual(phi, 0.5, vec1(0.8), n, band, NoiseModel::rademacher(1)) < 1e-12);
}

TEST_CASE("time-independent quadratics are exact: the scheme reproduces G(S)") {
    // E[(1/2) S (x + A z / sqrt(n)) . (x + A z / sqrt(n)) - (1/2) S x . x]
    // = (1/2n) Tr(A A^T S) by mean zero and identity covariance
    PathRng rng(321, 0);
    for (int trial = 0; trial < 100; ++trial) {
        const int dim = 1 + static_cast<int>(rng.uniform() * 2.0);
        const auto s = random_sym(dim, rng);
        const auto lambda = random_set(dim, rng);
        const auto noise = trial % 3 == 0 ? NoiseModel::gauss_hermite(dim, 5)
                                          : random_whitened_noise(dim, rng);
        Vector x(dim);
        for (int r = 0; r < dim; ++r) x(r) = 2.0 * rng.uniform() - 1.0;
        const int n = 1 << (1 + static_cast<int>(rng.uniform() * 9.0));
        const double residual =
            scheme_residual(TestFunction::quadratic(s), 0.3, x, n, lambda, noise);
        CAPTURE(trial);
        CHECK(residual <= 1e-12);
    }
}

TEST_CASE("cos(x)(1+t) residuals decay in n") {
    const auto band = UncertaintySet::scalar_interval(1, 1.0, 2.0);
    const auto noise = NoiseModel::rademacher(1);
    const auto phi = TestFunction::cos_linear_time(1);
    double prev = 1e300;
    for (int n : {16, 64, 256}) {
        const double r = scheme_residual(phi, 0.4, vec1(0.3), n, band, noise);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("sweep: quadratic table all below 1e-12, cos table decays, affine zero") {
    const auto band = UncertaintySet::scalar_interval(1, 0.8, 1.7);
    const auto noise = NoiseModel::rademacher(1);
    const std::vector<std::pair<double, Vector>> points{
        {0.0, vec1(0.0)}, {0.25, vec1(-0.6)}, {0.7, vec1(1.1)}};
    const std::vector<int> ns{16, 64, 256};

    SymMatrix s(1);
    s.set(0, 0, 1.4);
    const auto quad_table = consistency_sweep(TestFunction::quadratic(s), points, ns, band, noise);
    for (const auto& row : quad_table.rows) CHECK(row.residual <= 1e-12);

    const auto affine_table = consistency_sweep(TestFunction::affine(1.0, vec1(2.0)), points, ns,
                                                band, noise);
    for (const auto& row : affine_table.rows) CHECK(row.residual <= 1e-12);

    const auto cos_table =
        consistency_sweep(TestFunction::cos_linear_time(1), points, ns, band, noise);
    CHECK(cos_table.all_monotone());
    CHECK(cos_table.rows.size() == points.size() * ns.size());
}

TEST_CASE("drifting evaluation points still converge to the analytic limit") {
    // (t_n, x_n) -> (0.5, 0.2) along t_n = 0.5 - 1/n, x_n = 0.2 + 1/sqrt(n)
    const auto band = UncertaintySet::scalar_interval(1, 1.0, 2.0);
    const auto noise = NoiseModel::rademacher(1);
    const auto phi = TestFunction::cos_exp_time(1, 0.7);

    double prev = 1e300;
    for (int n : {64, 256, 1024, 4096}) {
        const double t_n = 0.5 - 1.0 / static_cast<double>(n);
        const Vector x_n = vec1(0.2 + 1.0 / std::sqrt(static_cast<double>(n)));
        const double r = scheme_residual(phi, t_n, x_n, n, band, noise);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("quartic in x with linear time factor decays like 1/n") {
    const auto box = UncertaintySet::diagonal_box({0.5, 1.0}, {1.0, 1.5});
    const auto noise = NoiseModel::gauss_hermite(2, 7);
    const auto phi = TestFunction::quartic_linear_time(2);
    Vector x(2);
    x << 0.4, -0.2;
    const double r64 = scheme_residual(phi, 0.2, x, 64, box, noise);
    const double r256 = scheme_residual(phi, 0.2, x, 256, box, noise);
    CHECK(r256 < r64 / 3.0);  // close to first-order decay in n
}

TEST_CASE("smooth non-polynomial built-ins decay monotonically past n = 16") {
    const auto band = UncertaintySet::scalar_interval(1, 1.0, 2.0);
    const auto noise = NoiseModel::rademacher(1);
    const std::vector<std::pair<double, Vector>> points{
        {0.0, vec1(0.0)}, {0.3, vec1(-0.7)}, {0.8, vec1(1.2)}};
    const std::vector<int> ns{16, 64, 256, 1024};
    for (const auto& phi :
         {TestFunction::cos_linear_time(1), TestFunction::cos_exp_time(1, 1.1)}) {
        CAPTURE(phi.name());
        const auto table = consistency_sweep(phi, points, ns, band, noise);
        CHECK(table.all_monotone());
    }
}

TEST_CASE("sampler-only noise is unsupported") {
    const auto band = UncertaintySet::scalar_interval(1, 1.0, 2.0);
    const auto phi = TestFunction::cos_linear_time(1);
    CHECK_THROWS_AS(scheme_residual(phi, 0.2, vec1(0.0), 16, band,
                                    NoiseModel::sampler(1, NoiseModel::SamplerLaw::Gaussian)),
                    UnsupportedError);
}
