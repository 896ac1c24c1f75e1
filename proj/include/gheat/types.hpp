#ifndef GHEAT_TYPES_HPP
#define GHEAT_TYPES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace gheat {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Error taxonomy: everything a caller may want to distinguish.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Shapes of inputs disagree (matrix vs. noise vs. payoff dimensions, ...).
class DimensionError : public Error {
public:
    using Error::Error;
};

// A standing assumption fails (moments, bounds, compactness, CFL, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

// The request is well-formed but outside what the solver supports
// (SamplerOnly noise in a quadrature context, d=2 cross terms without
// diagonal dominance, d > 3 grids, ...).
class UnsupportedError : public Error {
public:
    using Error::Error;
};

// Malformed configuration file or CLI input.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Symmetric d x d matrix stored as its upper triangle (row-major).
// Stands in for the Hessian argument of the G operator.
class SymMatrix {
public:
    explicit SymMatrix(int dim)
        : dim_(dim), upper_(static_cast<std::size_t>(dim) * (dim + 1) / 2, 0.0) {
        if (dim < 1) throw DimensionError("SymMatrix: dimension must be positive");
    }

    static SymMatrix identity(int dim) {
        SymMatrix s(dim);
        for (int i = 0; i < dim; ++i) s.set(i, i, 1.0);
        return s;
    }

    // Symmetrizes the input: (m + m^T)/2.
    static SymMatrix from_dense(const Matrix& m) {
        if (m.rows() != m.cols())
            throw DimensionError("SymMatrix::from_dense: matrix not square");
        SymMatrix s(static_cast<int>(m.rows()));
        for (int r = 0; r < s.dim_; ++r)
            for (int c = r; c < s.dim_; ++c)
                s.set(r, c, 0.5 * (m(r, c) + m(c, r)));
        return s;
    }

    int dim() const { return dim_; }

    double operator()(int r, int c) const { return upper_[index(r, c)]; }

    void set(int r, int c, double v) { upper_[index(r, c)] = v; }

    Matrix dense() const {
        Matrix m(dim_, dim_);
        for (int r = 0; r < dim_; ++r)
            for (int c = 0; c < dim_; ++c) m(r, c) = (*this)(r, c);
        return m;
    }

    SymMatrix scaled(double a) const {
        SymMatrix s(*this);
        for (double& v : s.upper_) v *= a;
        return s;
    }

    SymMatrix& operator+=(const SymMatrix& o) {
        if (o.dim_ != dim_) throw DimensionError("SymMatrix: dimension mismatch in +=");
        for (std::size_t i = 0; i < upper_.size(); ++i) upper_[i] += o.upper_[i];
        return *this;
    }

    friend SymMatrix operator+(SymMatrix a, const SymMatrix& b) { return a += b; }

private:
    std::size_t index(int r, int c) const {
        if (r < 0 || c < 0 || r >= dim_ || c >= dim_)
            throw DimensionError("SymMatrix: index out of range");
        if (r > c) std::swap(r, c);
        // row-major upper triangle offset
        return static_cast<std::size_t>(r) * dim_ - static_cast<std::size_t>(r) * (r - 1) / 2 +
               (c - r);
    }

    int dim_;
    std::vector<double> upper_;
};

}  // namespace gheat

#endif  // GHEAT_TYPES_HPP
