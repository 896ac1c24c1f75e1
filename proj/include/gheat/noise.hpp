#ifndef GHEAT_NOISE_HPP
#define GHEAT_NOISE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gheat/types.hpp"

namespace gheat {

// The law of the i.i.d. increments: mean zero, identity covariance.
//
// Atoms        - explicit points z_k with weights p_k (Rademacher products,
//                two-point laws, user atoms, ...)
// GaussHermite - the standard d-dimensional normal, represented for
//                quadrature purposes by tensorized Gauss-Hermite nodes
// SamplerOnly  - a seeded generator with no atom representation; usable by
//                the Monte Carlo simulator only
class NoiseModel {
public:
    enum class Kind { Atoms, GaussHermite, SamplerOnly };
    enum class SamplerLaw { Gaussian, Rademacher, UniformSqrt3 };

    static NoiseModel atoms(std::vector<Vector> points, std::vector<double> weights,
                            double moment_tolerance = 1e-10);
    // product of independent +-1 coordinates: 2^d equally weighted atoms
    static NoiseModel rademacher(int dim);
    // product of the asymmetric two-point law z = +2 (p=0.2), z = -1/2 (p=0.8);
    // mean zero, unit variance, nonzero third moment
    static NoiseModel two_point_asymmetric(int dim);
    static NoiseModel gauss_hermite(int dim, int order = 7);
    static NoiseModel sampler(int dim, SamplerLaw law, double moment_tolerance = 1e-2);

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    double moment_tolerance() const { return moment_tolerance_; }

    // true for Atoms and GaussHermite: the law is available as points+weights
    bool has_atoms() const { return kind_ != Kind::SamplerOnly; }
    // true when the law is the standard normal (exact rotational invariance)
    bool gaussian_law() const;
    SamplerLaw sampler_law() const;

    const std::vector<Vector>& points() const;
    const std::vector<double>& weights() const;

    struct MomentDefects {
        double mean_max_abs = 0.0;  // componentwise |E z|
        double cov_max_abs = 0.0;   // max-norm of E z z^T - I
    };
    // Exact sums for atom laws; a seeded empirical estimate for samplers.
    MomentDefects moment_defects() const;

    // The matrix actually applied to the increments. Gaussian laws use the
    // canonical factor sqrtm(A A^T): exact in law (A xi ~ L xi for normal
    // xi) and it makes the limit's dependence on {A A^T} hold exactly at
    // the discrete level. Other laws use A as given.
    Matrix effective_transform(const Matrix& a) const;

    std::string describe() const;

private:
    NoiseModel(Kind k, int dim, double tol) : kind_(k), dim_(dim), moment_tolerance_(tol) {}

    Kind kind_;
    int dim_;
    double moment_tolerance_;
    SamplerLaw sampler_law_ = SamplerLaw::Gaussian;
    int gh_order_ = 0;
    std::vector<Vector> points_;
    std::vector<double> weights_;
};

// 1-d Gauss-Hermite rule for the standard normal weight (Golub-Welsch on
// the probabilists' Hermite recurrence). Exposed for tests.
void gauss_hermite_rule(int order, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace gheat

#endif  // GHEAT_NOISE_HPP
