#ifndef GHEAT_CONSISTENCY_HPP
#define GHEAT_CONSISTENCY_HPP

#include <functional>
#include <string>
#include <vector>

#include "gheat/noise.hpp"
#include "gheat/types.hpp"
#include "gheat/uncertainty.hpp"

namespace gheat {

// Smooth test function phi(t, x) carrying its analytic time derivative and
// Hessian, so the scheme residual isolates the discretization, not
// numerical differentiation.
class TestFunction {
public:
    using ValueFn = std::function<double(double, const Vector&)>;
    using HessFn = std::function<SymMatrix(double, const Vector&)>;

    TestFunction(std::string name, ValueFn value, ValueFn dt, HessFn hessian)
        : name_(std::move(name)), value_(std::move(value)), dt_(std::move(dt)),
          hessian_(std::move(hessian)) {}

    // c0 + a.x, constant in t
    static TestFunction affine(double c0, Vector a);
    // (1/2) x^T S x, constant in t
    static TestFunction quadratic(SymMatrix s);
    // cos(sum_r x_r) * (1 + t)
    static TestFunction cos_linear_time(int dim);
    // cos(sum_r x_r) * exp(-kappa t)
    static TestFunction cos_exp_time(int dim, double kappa);
    // (1 + t) * sum_r x_r^4 : separable polynomial times time
    static TestFunction quartic_linear_time(int dim);

    const std::string& name() const { return name_; }
    double value(double t, const Vector& x) const { return value_(t, x); }
    double dt(double t, const Vector& x) const { return dt_(t, x); }
    SymMatrix hessian(double t, const Vector& x) const { return hessian_(t, x); }

private:
    std::string name_;
    ValueFn value_;
    ValueFn dt_;
    HessFn hessian_;
};

// | n sup_A E[phi(t + 1/n, x + A xi / sqrt(n)) - phi(t, x)]
//   - phi_t(t, x) - G(phi_xx(t, x)) |
// with the expectation taken over the noise atoms and the sup enumerated
// over the extreme points. Zero to machine precision for affine and
// time-independent quadratic phi; decays in n for smooth phi.
double scheme_residual(const TestFunction& phi, double t, const Vector& x, int n,
                       const UncertaintySet& lambda, const NoiseModel& noise);

struct ResidualRow {
    double t = 0.0;
    Vector x;
    int n = 0;
    double residual = 0.0;
};

struct ConsistencyTable {
    std::vector<int> n_list;
    std::vector<ResidualRow> rows;          // grouped per point, ascending n
    std::vector<bool> monotone_decay;       // per point: residual falls along n_list
    bool all_monotone() const {
        for (bool b : monotone_decay)
            if (!b) return false;
        return !monotone_decay.empty();
    }
};

ConsistencyTable consistency_sweep(const TestFunction& phi,
                                   const std::vector<std::pair<double, Vector>>& points,
                                   const std::vector<int>& n_list,
                                   const UncertaintySet& lambda, const NoiseModel& noise);

void write_consistency_csv(std::ostream& os, const ConsistencyTable& table);

}  // namespace gheat

#endif  // GHEAT_CONSISTENCY_HPP
