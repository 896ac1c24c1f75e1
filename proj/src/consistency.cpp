#include "gheat/consistency.hpp"

#include <cmath>
#include <ostream>

#include "gheat/g_operator.hpp"

namespace gheat {

TestFunction TestFunction::affine(double c0, Vector a) {
    const int d = static_cast<int>(a.size());
    return TestFunction(
        "affine",
        [c0, a](double, const Vector& x) { return c0 + a.dot(x); },
        [](double, const Vector&) { return 0.0; },
        [d](double, const Vector&) { return SymMatrix(d); });
}

TestFunction TestFunction::quadratic(SymMatrix s) {
    return TestFunction(
        "quadratic",
        [s](double, const Vector& x) { return 0.5 * x.dot(s.dense() * x); },
        [](double, const Vector&) { return 0.0; },
        [s](double, const Vector&) { return s; });
}

TestFunction TestFunction::cos_linear_time(int dim) {
    return TestFunction(
        "cos*(1+t)",
        [](double t, const Vector& x) { return std::cos(x.sum()) * (1.0 + t); },
        [](double, const Vector& x) { return std::cos(x.sum()); },
        [dim](double t, const Vector& x) {
            SymMatrix h(dim);
            const double v = -std::cos(x.sum()) * (1.0 + t);
            for (int r = 0; r < dim; ++r)
                for (int c = r; c < dim; ++c) h.set(r, c, v);
            return h;
        });
}

TestFunction TestFunction::cos_exp_time(int dim, double kappa) {
    return TestFunction(
        "cos*exp(-kt)",
        [kappa](double t, const Vector& x) { return std::cos(x.sum()) * std::exp(-kappa * t); },
        [kappa](double t, const Vector& x) {
            return -kappa * std::cos(x.sum()) * std::exp(-kappa * t);
        },
        [dim, kappa](double t, const Vector& x) {
            SymMatrix h(dim);
            const double v = -std::cos(x.sum()) * std::exp(-kappa * t);
            for (int r = 0; r < dim; ++r)
                for (int c = r; c < dim; ++c) h.set(r, c, v);
            return h;
        });
}

TestFunction TestFunction::quartic_linear_time(int dim) {
    return TestFunction(
        "quartic*(1+t)",
        [](double t, const Vector& x) { return (1.0 + t) * x.array().pow(4).sum(); },
        [](double, const Vector& x) { return x.array().pow(4).sum(); },
        [dim](double t, const Vector& x) {
            SymMatrix h(dim);
            for (int r = 0; r < dim; ++r) h.set(r, r, 12.0 * (1.0 + t) * x(r) * x(r));
            return h;
        });
}

double scheme_residual(const TestFunction& phi, double t, const Vector& x, int n,
                       const UncertaintySet& lambda, const NoiseModel& noise) {
    if (!noise.has_atoms())
        throw UnsupportedError("scheme_residual: SamplerOnly noise has no atoms/quadrature");
    if (noise.dim() != lambda.dim() || x.size() != lambda.dim())
        throw DimensionError("scheme_residual: dimensions disagree");
    if (n < 1) throw ValidationError("scheme_residual: n must be >= 1");

    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));
    const double t_next = t + 1.0 / static_cast<double>(n);
    const double base = phi.value(t, x);

    double sup = 0.0;
    bool first = true;
    for (const Matrix& a : lambda.extremes()) {
        const Matrix tr = noise.effective_transform(a);
        double acc = 0.0;
        for (std::size_t k = 0; k < noise.points().size(); ++k) {
            const Vector y = x + tr * noise.points()[k] * inv_sqrt_n;
            acc += noise.weights()[k] * (phi.value(t_next, y) - base);
        }
        if (first || acc > sup) {
            sup = acc;
            first = false;
        }
    }

    const double scheme = static_cast<double>(n) * sup;
    const double limit = phi.dt(t, x) + g_value(phi.hessian(t, x), lambda);
    return std::abs(scheme - limit);
}

ConsistencyTable consistency_sweep(const TestFunction& phi,
                                   const std::vector<std::pair<double, Vector>>& points,
                                   const std::vector<int>& n_list,
                                   const UncertaintySet& lambda, const NoiseModel& noise) {
    ConsistencyTable table;
    table.n_list = n_list;
    for (const auto& [t, x] : points) {
        bool monotone = true;
        double prev = 0.0;
        for (std::size_t i = 0; i < n_list.size(); ++i) {
            const double r = scheme_residual(phi, t, x, n_list[i], lambda, noise);
            table.rows.push_back({t, x, n_list[i], r});
            if (i > 0 && r > prev) monotone = false;
            prev = r;
        }
        table.monotone_decay.push_back(monotone);
    }
    return table;
}

void write_consistency_csv(std::ostream& os, const ConsistencyTable& table) {
    os << "t,x,n,residual\n";
    for (const auto& row : table.rows) {
        os << row.t << ",\"";
        for (int a = 0; a < row.x.size(); ++a) os << (a ? " " : "") << row.x(a);
        os << "\"," << row.n << "," << row.residual << "\n";
    }
}

}  // namespace gheat
