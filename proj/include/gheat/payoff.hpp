#ifndef GHEAT_PAYOFF_HPP
#define GHEAT_PAYOFF_HPP

#include <string>
#include <vector>

#include "gheat/types.hpp"

namespace gheat {

// Terminal payoff f with an explicit bound M on the computational domain.
// Built-ins are globally continuous; the quadratic pair is unbounded on
// R^d but is admitted because the solvers only ever evaluate it on the
// truncated domain, where M = max |f| is finite.
class Payoff {
public:
    enum class Kind {
        Cosine,        // cos(sum_r x_r)
        Quadratic,     // |x|^2
        NegQuadratic,  // -|x|^2
        GaussBump,     // exp(-|x|^2)
        AnisoBump,     // exp(-sum_r w_r x_r^2)
        Coordinate,    // clamp(x_axis, -clip, clip)
        Table,         // multilinear interpolation of tabulated values
    };

    // Tabulated payoff on a uniform rectilinear grid; constant extension
    // outside the table keeps continuity and the bound.
    struct TableData {
        std::vector<double> lo;      // per-axis first coordinate
        std::vector<double> hi;      // per-axis last coordinate
        std::vector<int> nodes;      // per-axis node count (>= 2)
        std::vector<double> values;  // row-major, last axis fastest
    };

    static Payoff cosine();
    static Payoff quadratic();
    static Payoff neg_quadratic();
    static Payoff gauss_bump();
    static Payoff aniso_bump(std::vector<double> weights);
    static Payoff coordinate(int axis, double clip);
    static Payoff table(TableData data);

    Kind kind() const { return kind_; }

    double operator()(const double* x, int dim) const;
    double operator()(const Vector& x) const {
        return (*this)(x.data(), static_cast<int>(x.size()));
    }

    // 0 means any dimension; Table/AnisoBump pin theirs.
    int required_dim() const { return required_dim_; }

    // M = max |f| over the box [-r, r]^d.
    double bound_on_radius(double r, int dim) const;

    // Lipschitz constant of f on the same box (2-norm); exact for the
    // built-ins, a difference-quotient bound for tables.
    double lipschitz_on_radius(double r, int dim) const;

    std::string describe() const;

private:
    explicit Payoff(Kind k) : kind_(k) {}

    Kind kind_;
    int required_dim_ = 0;
    int axis_ = 0;
    double clip_ = 0.0;
    std::vector<double> weights_;
    TableData table_;
};

}  // namespace gheat

#endif  // GHEAT_PAYOFF_HPP
