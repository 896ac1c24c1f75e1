#ifndef GHEAT_UNCERTAINTY_HPP
#define GHEAT_UNCERTAINTY_HPP

#include <variant>
#include <vector>

#include "gheat/types.hpp"

namespace gheat {

// The compact matrix set the adversary draws from. Three shapes:
//   FiniteSet      - an explicit list of d x d matrices
//   ScalarInterval - { sigma * I : sigma in [lo, hi] }, 0 < lo <= hi
//   DiagonalBox    - { diag(a) : a_r in [lo_r, hi_r] }, 0 < lo <= hi per axis
//
// Every function of the set that is linear in A A^T attains its sup over
// the set at the canonical extreme points, which is what extremes()
// enumerates: the list itself, the two interval endpoints, or the 2^d box
// vertices.
class UncertaintySet {
public:
    struct FiniteSet {
        std::vector<Matrix> matrices;
    };
    struct ScalarInterval {
        double sigma_lo;
        double sigma_hi;
    };
    struct DiagonalBox {
        std::vector<double> lo;
        std::vector<double> hi;
    };
    using Variant = std::variant<FiniteSet, ScalarInterval, DiagonalBox>;

    static UncertaintySet finite(std::vector<Matrix> matrices);
    static UncertaintySet singleton(const Matrix& a);
    static UncertaintySet scalar_interval(int dim, double sigma_lo, double sigma_hi);
    static UncertaintySet diagonal_box(std::vector<double> lo, std::vector<double> hi);

    int dim() const { return dim_; }
    const Variant& variant() const { return variant_; }

    // Canonical extreme-point enumeration; sup of any function linear in
    // A A^T over the set equals the max over this list.
    const std::vector<Matrix>& extremes() const { return extremes_; }

    // Covariances A A^T of the extreme matrices, same order.
    const std::vector<Matrix>& covariances() const { return covariances_; }

    // Largest spectral norm over the extremes. Sets the diffusion scale
    // (domain defaults use 6 * sigma_max).
    double sigma_max() const { return sigma_max_; }

    // Largest eigenvalue of A A^T over the extremes (= sigma_max^2);
    // appears in the CFL bound.
    double lambda_max() const { return sigma_max_ * sigma_max_; }

    // Membership up to tolerance; used by the extreme-subset checks.
    bool contains(const Matrix& a, double tol = 1e-12) const;

    // The set { A O : A in extremes } as a FiniteSet; O must be square of
    // matching dimension. Used by the covariance-invariance study.
    UncertaintySet right_multiplied(const Matrix& o) const;

private:
    UncertaintySet(int dim, Variant v);

    int dim_;
    Variant variant_;
    std::vector<Matrix> extremes_;
    std::vector<Matrix> covariances_;
    double sigma_max_ = 0.0;
};

}  // namespace gheat

#endif  // GHEAT_UNCERTAINTY_HPP
