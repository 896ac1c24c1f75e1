#include "gheat/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gheat {

Payoff Payoff::cosine() { return Payoff(Kind::Cosine); }
Payoff Payoff::quadratic() { return Payoff(Kind::Quadratic); }
Payoff Payoff::neg_quadratic() { return Payoff(Kind::NegQuadratic); }
Payoff Payoff::gauss_bump() { return Payoff(Kind::GaussBump); }

Payoff Payoff::aniso_bump(std::vector<double> weights) {
    if (weights.empty()) throw ValidationError("Payoff: aniso_bump needs weights");
    for (double w : weights)
        if (!(w > 0.0)) throw ValidationError("Payoff: aniso_bump weights must be positive");
    Payoff p(Kind::AnisoBump);
    p.required_dim_ = static_cast<int>(weights.size());
    p.weights_ = std::move(weights);
    return p;
}

Payoff Payoff::coordinate(int axis, double clip) {
    if (axis < 0) throw ValidationError("Payoff: coordinate axis must be >= 0");
    if (!(clip > 0.0)) throw ValidationError("Payoff: coordinate clip must be positive");
    Payoff p(Kind::Coordinate);
    p.axis_ = axis;
    p.clip_ = clip;
    return p;
}

Payoff Payoff::table(TableData data) {
    const int dim = static_cast<int>(data.nodes.size());
    if (dim < 1 || dim > 3) throw UnsupportedError("Payoff: table supports 1 <= d <= 3");
    if (static_cast<int>(data.lo.size()) != dim || static_cast<int>(data.hi.size()) != dim)
        throw DimensionError("Payoff: table bounds disagree with node counts");
    std::size_t total = 1;
    for (int r = 0; r < dim; ++r) {
        if (data.nodes[r] < 2) throw ValidationError("Payoff: table needs >= 2 nodes per axis");
        if (!(data.lo[r] < data.hi[r]))
            throw ValidationError("Payoff: table requires lo < hi per axis");
        total *= static_cast<std::size_t>(data.nodes[r]);
    }
    if (data.values.size() != total)
        throw ValidationError("Payoff: table value count disagrees with grid shape");
    Payoff p(Kind::Table);
    p.required_dim_ = dim;
    p.table_ = std::move(data);
    return p;
}

double Payoff::operator()(const double* x, int dim) const {
    switch (kind_) {
        case Kind::Cosine: {
            double s = 0.0;
            for (int r = 0; r < dim; ++r) s += x[r];
            return std::cos(s);
        }
        case Kind::Quadratic: {
            double s = 0.0;
            for (int r = 0; r < dim; ++r) s += x[r] * x[r];
            return s;
        }
        case Kind::NegQuadratic: {
            double s = 0.0;
            for (int r = 0; r < dim; ++r) s += x[r] * x[r];
            return -s;
        }
        case Kind::GaussBump: {
            double s = 0.0;
            for (int r = 0; r < dim; ++r) s += x[r] * x[r];
            return std::exp(-s);
        }
        case Kind::AnisoBump: {
            double s = 0.0;
            for (int r = 0; r < dim; ++r) s += weights_[r] * x[r] * x[r];
            return std::exp(-s);
        }
        case Kind::Coordinate:
            return std::clamp(x[std::min(axis_, dim - 1)], -clip_, clip_);
        case Kind::Table: {
            // multilinear with constant extension: clamp to the table box
            int cell[3] = {0, 0, 0};
            double frac[3] = {0.0, 0.0, 0.0};
            for (int r = 0; r < dim; ++r) {
                const double h =
                    (table_.hi[r] - table_.lo[r]) / static_cast<double>(table_.nodes[r] - 1);
                double pos = (std::clamp(x[r], table_.lo[r], table_.hi[r]) - table_.lo[r]) / h;
                int c = static_cast<int>(pos);
                c = std::clamp(c, 0, table_.nodes[r] - 2);
                cell[r] = c;
                frac[r] = std::clamp(pos - c, 0.0, 1.0);
            }
            std::size_t stride[3] = {1, 1, 1};
            for (int r = dim - 2; r >= 0; --r)
                stride[r] = stride[r + 1] * static_cast<std::size_t>(table_.nodes[r + 1]);
            double acc = 0.0;
            for (int corner = 0; corner < (1 << dim); ++corner) {
                double w = 1.0;
                std::size_t idx = 0;
                for (int r = 0; r < dim; ++r) {
                    const int up = corner >> r & 1;
                    w *= up ? frac[r] : 1.0 - frac[r];
                    idx += stride[r] * static_cast<std::size_t>(cell[r] + up);
                }
                acc += w * table_.values[idx];
            }
            return acc;
        }
    }
    return 0.0;
}

double Payoff::bound_on_radius(double r, int dim) const {
    switch (kind_) {
        case Kind::Cosine:
        case Kind::GaussBump:
        case Kind::AnisoBump:
            return 1.0;
        case Kind::Quadratic:
        case Kind::NegQuadratic:
            return dim * r * r;
        case Kind::Coordinate:
            return clip_;
        case Kind::Table: {
            double m = 0.0;
            for (double v : table_.values) m = std::max(m, std::abs(v));
            return m;
        }
    }
    return 0.0;
}

double Payoff::lipschitz_on_radius(double r, int dim) const {
    switch (kind_) {
        case Kind::Cosine:
            return std::sqrt(static_cast<double>(dim));
        case Kind::Quadratic:
        case Kind::NegQuadratic:
            return 2.0 * r * std::sqrt(static_cast<double>(dim));
        case Kind::GaussBump:
            return std::sqrt(2.0 / std::exp(1.0));  // max |grad| of exp(-|x|^2)
        case Kind::AnisoBump: {
            double wmax = 0.0;
            for (double w : weights_) wmax = std::max(wmax, w);
            return std::sqrt(2.0 * wmax / std::exp(1.0));
        }
        case Kind::Coordinate:
            return 1.0;
        case Kind::Table: {
            // steepest difference quotient along each axis
            const int dimt = required_dim_;
            std::size_t stride[3] = {1, 1, 1};
            for (int a = dimt - 2; a >= 0; --a)
                stride[a] = stride[a + 1] * static_cast<std::size_t>(table_.nodes[a + 1]);
            double lip = 0.0;
            for (int a = 0; a < dimt; ++a) {
                const double h =
                    (table_.hi[a] - table_.lo[a]) / static_cast<double>(table_.nodes[a] - 1);
                for (std::size_t i = 0; i + stride[a] < table_.values.size(); ++i)
                    lip = std::max(lip,
                                   std::abs(table_.values[i + stride[a]] - table_.values[i]) / h);
            }
            return lip;
        }
    }
    return 0.0;
}

std::string Payoff::describe() const {
    switch (kind_) {
        case Kind::Cosine: return "cosine";
        case Kind::Quadratic: return "quadratic";
        case Kind::NegQuadratic: return "neg_quadratic";
        case Kind::GaussBump: return "gauss_bump";
        case Kind::AnisoBump: {
            std::ostringstream os;
            os << "aniso_bump[";
            for (std::size_t i = 0; i < weights_.size(); ++i)
                os << (i ? "," : "") << weights_[i];
            os << "]";
            return os.str();
        }
        case Kind::Coordinate: {
            std::ostringstream os;
            os << "coordinate(axis=" << axis_ << ",clip=" << clip_ << ")";
            return os.str();
        }
        case Kind::Table: return "table";
    }
    return "?";
}

}  // namespace gheat
