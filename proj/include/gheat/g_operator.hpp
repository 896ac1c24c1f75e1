#ifndef GHEAT_G_OPERATOR_HPP
#define GHEAT_G_OPERATOR_HPP

#include "gheat/types.hpp"
#include "gheat/uncertainty.hpp"

namespace gheat {

// G(S) = (1/2) sup_{A in Lambda} Tr(A A^T S), evaluated by exact
// enumeration of the extreme points. Sublinear and monotone in S.
double g_value(const SymMatrix& s, const UncertaintySet& lambda);

struct GArgmax {
    int index = 0;      // position in lambda.extremes()
    double value = 0.0; // the attained G(S)
};

// Maximizer over the enumeration; ties go to the lowest index so
// extracted policies are deterministic.
GArgmax g_argmax(const SymMatrix& s, const UncertaintySet& lambda);

// Closed form for d=1 scalar intervals: (1/2)(hi^2 s^+ - lo^2 s^-).
double g_value_interval_1d(double s, double sigma_lo, double sigma_hi);

}  // namespace gheat

#endif  // GHEAT_G_OPERATOR_HPP
