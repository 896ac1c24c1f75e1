#include "gheat/g_operator.hpp"

namespace gheat {

namespace {

// Tr(C S) for symmetric C, S without forming products
double trace_product(const Matrix& c, const SymMatrix& s) {
    const int d = s.dim();
    double acc = 0.0;
    for (int r = 0; r < d; ++r) {
        acc += c(r, r) * s(r, r);
        for (int q = r + 1; q < d; ++q) acc += 2.0 * c(r, q) * s(r, q);
    }
    return acc;
}

}  // namespace

GArgmax g_argmax(const SymMatrix& s, const UncertaintySet& lambda) {
    if (s.dim() != lambda.dim())
        throw DimensionError("g_argmax: matrix dimension disagrees with uncertainty set");
    const auto& covs = lambda.covariances();
    GArgmax best;
    best.index = 0;
    best.value = 0.5 * trace_product(covs[0], s);
    for (int i = 1; i < static_cast<int>(covs.size()); ++i) {
        const double v = 0.5 * trace_product(covs[i], s);
        if (v > best.value) {  // strict: ties keep the lowest index
            best.value = v;
            best.index = i;
        }
    }
    return best;
}

double g_value(const SymMatrix& s, const UncertaintySet& lambda) {
    return g_argmax(s, lambda).value;
}

double g_value_interval_1d(double s, double sigma_lo, double sigma_hi) {
    const double pos = s > 0.0 ? s : 0.0;
    const double neg = s < 0.0 ? -s : 0.0;
    return 0.5 * (sigma_hi * sigma_hi * pos - sigma_lo * sigma_lo * neg);
}

}  // namespace gheat
