#pragma once

#include "bml/frames.hpp"

namespace bml {

// Kobayashi metric of D x B_n(0,1) at the origin: max{|xi1|, |xi'|}.
double kobayashi_product(const CVector& xi);

struct LocalizationFactor {
  double factor = 1.0;         // coth of the Caratheodory half-log bound
  double carath_lower = 0.0;   // the half-log distance bound itself
};

// Explicit localization bound for M^K_{D_t^eps} / M^K_{D_t cap W}:
// coth((1/2) log{(1 - e^{-c0 d^{1/(1+eps)^2}})/d^{1/(1+eps)}}).
// Throws RegimeError when the inequality chain's positivity fails.
LocalizationFactor localization_factor(double d, double epsilon);

struct KobayashiBracket {
  double center = 0;        // max{|xi_N|/2d, |xi_T|/d*}
  double lower = 0, upper = 0;
  double lower_ratio = 0;   // d*/d2^eps
  double upper_ratio = 0;   // (1-delta)^{-1} * localization factor
  double delta_margin = 0;  // (1-delta)^{-1}
  double radius_ratio = 0;  // d*/d2^eps
  double loc_factor = 1;
  double norm_normal = 0, norm_tangent = 0;
};

// Squeeze bounds bracketing the Theorem-1.5 normalized ratio; valid on
// rows whose inclusion certification passed.
KobayashiBracket squeeze_bracket(const NormalizationFrame& frame, const ScaledRegion& region,
                                 double delta, const CVector& xi);

}  // namespace bml
