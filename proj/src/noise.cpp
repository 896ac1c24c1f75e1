#include "gheat/noise.hpp"

#include <cmath>
#include <sstream>
#include <utility>

#include "gheat/rng.hpp"

namespace gheat {

void gauss_hermite_rule(int order, std::vector<double>& nodes, std::vector<double>& weights) {
    if (order < 1) throw ValidationError("gauss_hermite_rule: order must be >= 1");
    // Jacobi matrix of the probabilists' Hermite polynomials: zero diagonal,
    // off-diagonal sqrt(k). Eigenvalues are the nodes; squared first
    // eigenvector components are the weights (total mass 1).
    Matrix j = Matrix::Zero(order, order);
    for (int k = 1; k < order; ++k) {
        const double b = std::sqrt(static_cast<double>(k));
        j(k, k - 1) = b;
        j(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(j);
    nodes.resize(order);
    weights.resize(order);
    for (int i = 0; i < order; ++i) {
        nodes[i] = es.eigenvalues()(i);
        const double v = es.eigenvectors()(0, i);
        weights[i] = v * v;
    }
    // symmetrize against eigensolver roundoff: rule is even in z
    for (int i = 0, r = order - 1; i < r; ++i, --r) {
        const double n = 0.5 * (nodes[r] - nodes[i]);
        nodes[i] = -n;
        nodes[r] = n;
        const double w = 0.5 * (weights[i] + weights[r]);
        weights[i] = w;
        weights[r] = w;
    }
    if (order % 2 == 1) nodes[order / 2] = 0.0;
}

namespace {

void check_weights(const std::vector<double>& w) {
    double sum = 0.0;
    for (double p : w) {
        if (!(p > 0.0)) throw ValidationError("NoiseModel: weights must be positive");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12)
        throw ValidationError("NoiseModel: weights must sum to 1");
}

// tensorize a 1-d law into d independent coordinates
void tensorize(int dim, const std::vector<double>& n1, const std::vector<double>& w1,
               std::vector<Vector>& points, std::vector<double>& weights) {
    const int m = static_cast<int>(n1.size());
    std::size_t total = 1;
    for (int r = 0; r < dim; ++r) total *= m;
    points.assign(total, Vector::Zero(dim));
    weights.assign(total, 1.0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t rem = idx;
        for (int r = 0; r < dim; ++r) {
            const int k = static_cast<int>(rem % m);
            rem /= m;
            points[idx](r) = n1[k];
            weights[idx] *= w1[k];
        }
    }
}

}  // namespace

NoiseModel NoiseModel::atoms(std::vector<Vector> points, std::vector<double> weights,
                             double moment_tolerance) {
    if (points.empty() || points.size() != weights.size())
        throw ValidationError("NoiseModel: need matching nonempty points and weights");
    const int dim = static_cast<int>(points.front().size());
    for (const Vector& z : points)
        if (z.size() != dim) throw DimensionError("NoiseModel: atom dimensions disagree");
    check_weights(weights);
    NoiseModel n(Kind::Atoms, dim, moment_tolerance);
    n.points_ = std::move(points);
    n.weights_ = std::move(weights);
    return n;
}

NoiseModel NoiseModel::rademacher(int dim) {
    if (dim < 1) throw DimensionError("NoiseModel: dimension must be positive");
    NoiseModel n(Kind::Atoms, dim, 1e-10);
    tensorize(dim, {1.0, -1.0}, {0.5, 0.5}, n.points_, n.weights_);
    return n;
}

NoiseModel NoiseModel::two_point_asymmetric(int dim) {
    if (dim < 1) throw DimensionError("NoiseModel: dimension must be positive");
    NoiseModel n(Kind::Atoms, dim, 1e-10);
    tensorize(dim, {2.0, -0.5}, {0.2, 0.8}, n.points_, n.weights_);
    return n;
}

NoiseModel NoiseModel::gauss_hermite(int dim, int order) {
    if (dim < 1) throw DimensionError("NoiseModel: dimension must be positive");
    std::vector<double> n1, w1;
    gauss_hermite_rule(order, n1, w1);
    NoiseModel n(Kind::GaussHermite, dim, 1e-10);
    n.gh_order_ = order;
    tensorize(dim, n1, w1, n.points_, n.weights_);
    return n;
}

NoiseModel NoiseModel::sampler(int dim, SamplerLaw law, double moment_tolerance) {
    if (dim < 1) throw DimensionError("NoiseModel: dimension must be positive");
    NoiseModel n(Kind::SamplerOnly, dim, moment_tolerance);
    n.sampler_law_ = law;
    return n;
}

bool NoiseModel::gaussian_law() const {
    return kind_ == Kind::GaussHermite ||
           (kind_ == Kind::SamplerOnly && sampler_law_ == SamplerLaw::Gaussian);
}

NoiseModel::SamplerLaw NoiseModel::sampler_law() const {
    if (kind_ != Kind::SamplerOnly)
        throw UnsupportedError("NoiseModel: sampler_law only defined for SamplerOnly noise");
    return sampler_law_;
}

const std::vector<Vector>& NoiseModel::points() const {
    if (!has_atoms())
        throw UnsupportedError("NoiseModel: SamplerOnly noise has no atom representation");
    return points_;
}

const std::vector<double>& NoiseModel::weights() const {
    if (!has_atoms())
        throw UnsupportedError("NoiseModel: SamplerOnly noise has no atom representation");
    return weights_;
}

NoiseModel::MomentDefects NoiseModel::moment_defects() const {
    MomentDefects d;
    if (has_atoms()) {
        Vector mean = Vector::Zero(dim_);
        Matrix cov = Matrix::Zero(dim_, dim_);
        for (std::size_t k = 0; k < points_.size(); ++k) {
            mean += weights_[k] * points_[k];
            cov += weights_[k] * points_[k] * points_[k].transpose();
        }
        d.mean_max_abs = mean.cwiseAbs().maxCoeff();
        d.cov_max_abs = (cov - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
        return d;
    }
    // seeded empirical check for sampler-only laws
    const int samples = 200000;
    PathRng rng(0x5eedULL, 0);
    Vector mean = Vector::Zero(dim_);
    Matrix cov = Matrix::Zero(dim_, dim_);
    Vector z(dim_);
    for (int i = 0; i < samples; ++i) {
        for (int r = 0; r < dim_; ++r) {
            switch (sampler_law_) {
                case SamplerLaw::Gaussian: z(r) = rng.normal(); break;
                case SamplerLaw::Rademacher: z(r) = rng.rademacher(); break;
                case SamplerLaw::UniformSqrt3:
                    z(r) = std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
                    break;
            }
        }
        mean += z;
        cov += z * z.transpose();
    }
    mean /= samples;
    cov /= samples;
    d.mean_max_abs = mean.cwiseAbs().maxCoeff();
    d.cov_max_abs = (cov - Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff();
    return d;
}

Matrix NoiseModel::effective_transform(const Matrix& a) const {
    if (a.rows() != dim_ || a.cols() != dim_)
        throw DimensionError("NoiseModel: transform size disagrees with noise dimension");
    if (!gaussian_law()) return a;
    Eigen::SelfAdjointEigenSolver<Matrix> es(a * a.transpose());
    return es.operatorSqrt();
}

std::string NoiseModel::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case Kind::Atoms:
            os << "atoms[" << points_.size() << "] d=" << dim_;
            break;
        case Kind::GaussHermite:
            os << "gauss_hermite order=" << gh_order_ << " d=" << dim_;
            break;
        case Kind::SamplerOnly:
            os << "sampler(";
            switch (sampler_law_) {
                case SamplerLaw::Gaussian: os << "gaussian"; break;
                case SamplerLaw::Rademacher: os << "rademacher"; break;
                case SamplerLaw::UniformSqrt3: os << "uniform"; break;
            }
            os << ") d=" << dim_;
            break;
    }
    return os.str();
}

}  // namespace gheat
