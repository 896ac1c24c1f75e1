#include "gheat/uncertainty.hpp"

#include <cmath>
#include <utility>

namespace gheat {

namespace {

double spectral_norm(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a * a.transpose());
    return std::sqrt(es.eigenvalues().maxCoeff());
}

}  // namespace

UncertaintySet::UncertaintySet(int dim, Variant v) : dim_(dim), variant_(std::move(v)) {
    if (dim_ < 1) throw DimensionError("UncertaintySet: dimension must be positive");

    if (const auto* fs = std::get_if<FiniteSet>(&variant_)) {
        if (fs->matrices.empty())
            throw ValidationError("UncertaintySet: finite set must be nonempty");
        for (const Matrix& m : fs->matrices)
            if (m.rows() != dim_ || m.cols() != dim_)
                throw DimensionError("UncertaintySet: matrix size disagrees with dimension");
        extremes_ = fs->matrices;
    } else if (const auto* iv = std::get_if<ScalarInterval>(&variant_)) {
        if (!(iv->sigma_lo > 0.0) || !(iv->sigma_lo <= iv->sigma_hi))
            throw ValidationError("UncertaintySet: interval requires 0 < lo <= hi");
        extremes_.push_back(iv->sigma_lo * Matrix::Identity(dim_, dim_));
        if (iv->sigma_hi > iv->sigma_lo)
            extremes_.push_back(iv->sigma_hi * Matrix::Identity(dim_, dim_));
    } else {
        const auto& box = std::get<DiagonalBox>(variant_);
        if (static_cast<int>(box.lo.size()) != dim_ || static_cast<int>(box.hi.size()) != dim_)
            throw DimensionError("UncertaintySet: box bounds disagree with dimension");
        for (int r = 0; r < dim_; ++r)
            if (!(box.lo[r] > 0.0) || !(box.lo[r] <= box.hi[r]))
                throw ValidationError("UncertaintySet: box requires 0 < lo <= hi per axis");
        // box vertices: every lo/hi combination per axis
        const int count = 1 << dim_;
        for (int mask = 0; mask < count; ++mask) {
            Matrix m = Matrix::Zero(dim_, dim_);
            for (int r = 0; r < dim_; ++r)
                m(r, r) = (mask >> r & 1) ? box.hi[r] : box.lo[r];
            bool duplicate = false;
            for (const Matrix& seen : extremes_)
                if ((seen - m).cwiseAbs().maxCoeff() == 0.0) duplicate = true;
            if (!duplicate) extremes_.push_back(m);
        }
    }

    covariances_.reserve(extremes_.size());
    for (const Matrix& a : extremes_) {
        covariances_.push_back(a * a.transpose());
        sigma_max_ = std::max(sigma_max_, spectral_norm(a));
    }
}

UncertaintySet UncertaintySet::finite(std::vector<Matrix> matrices) {
    if (matrices.empty()) throw ValidationError("UncertaintySet: finite set must be nonempty");
    const int dim = static_cast<int>(matrices.front().rows());
    return UncertaintySet(dim, FiniteSet{std::move(matrices)});
}

UncertaintySet UncertaintySet::singleton(const Matrix& a) {
    return finite(std::vector<Matrix>{a});
}

UncertaintySet UncertaintySet::scalar_interval(int dim, double sigma_lo, double sigma_hi) {
    return UncertaintySet(dim, ScalarInterval{sigma_lo, sigma_hi});
}

UncertaintySet UncertaintySet::diagonal_box(std::vector<double> lo, std::vector<double> hi) {
    const int dim = static_cast<int>(lo.size());
    return UncertaintySet(dim, DiagonalBox{std::move(lo), std::move(hi)});
}

bool UncertaintySet::contains(const Matrix& a, double tol) const {
    if (a.rows() != dim_ || a.cols() != dim_) return false;
    if (const auto* fs = std::get_if<FiniteSet>(&variant_)) {
        for (const Matrix& m : fs->matrices)
            if ((m - a).cwiseAbs().maxCoeff() <= tol) return true;
        return false;
    }
    if (const auto* iv = std::get_if<ScalarInterval>(&variant_)) {
        const double s = a(0, 0);
        if (s < iv->sigma_lo - tol || s > iv->sigma_hi + tol) return false;
        return (a - s * Matrix::Identity(dim_, dim_)).cwiseAbs().maxCoeff() <= tol;
    }
    const auto& box = std::get<DiagonalBox>(variant_);
    for (int r = 0; r < dim_; ++r) {
        const double s = a(r, r);
        if (s < box.lo[r] - tol || s > box.hi[r] + tol) return false;
    }
    Matrix diag = Matrix::Zero(dim_, dim_);
    diag.diagonal() = a.diagonal();
    return (a - diag).cwiseAbs().maxCoeff() <= tol;
}

UncertaintySet UncertaintySet::right_multiplied(const Matrix& o) const {
    if (o.rows() != dim_ || o.cols() != dim_)
        throw DimensionError("UncertaintySet: right factor size disagrees with dimension");
    std::vector<Matrix> rotated;
    rotated.reserve(extremes_.size());
    for (const Matrix& a : extremes_) rotated.push_back(a * o);
    return finite(std::move(rotated));
}

}  // namespace gheat
