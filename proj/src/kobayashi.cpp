#include "bml/kobayashi.hpp"

#include <cmath>
#include <numbers>

#include "bml/errors.hpp"

namespace bml {

double kobayashi_product(const CVector& xi) {
  if (xi.size() < 2) throw DomainError("kobayashi_product: needs a product-domain vector");
  return std::max(std::abs(xi[0]), xi.tail(xi.size() - 1).norm());
}

LocalizationFactor localization_factor(double d, double epsilon) {
  if (!(d > 0) || !(d < 1)) throw DomainError("localization_factor: d must be in (0,1)");
  if (!(epsilon > 0)) throw DomainError("localization_factor: epsilon must be positive");
  const double c0 = std::cos(std::numbers::pi / (2.0 * (1.0 + epsilon)));
  const double log_d = std::log(d);
  const double s = std::exp(log_d / ((1.0 + epsilon) * (1.0 + epsilon)));  // d^{1/(1+eps)^2}
  const double log_den = log_d / (1.0 + epsilon);                          // log d^{1/(1+eps)}

  // log(1 - e^{-c0 s}); switch to log(c0 s) once the product underflows.
  double log_num;
  double c0s = c0 * s;
  if (c0s > 1e-280)
    log_num = std::log(-std::expm1(-c0s));
  else
    log_num = std::log(c0) + std::log(s);

  if (!(log_num > log_den))
    throw RegimeError("localization_factor: 1 - e^{-c0 d^{1/(1+eps)^2}} <= d^{1/(1+eps)}; "
                      "outside the asymptotic regime");

  LocalizationFactor out;
  out.carath_lower = 0.5 * (log_num - log_den);
  out.factor = 1.0 / std::tanh(out.carath_lower);
  return out;
}

KobayashiBracket squeeze_bracket(const NormalizationFrame& frame, const ScaledRegion& region,
                                 double delta, const CVector& xi) {
  if (!(delta > 0) || delta >= 1.0)
    throw DomainError("squeeze_bracket: delta must be in (0,1)");
  if (!(xi.norm() > 0)) throw DomainError("squeeze_bracket: xi must be nonzero");

  CVector rxi = frame.rotation() * xi;
  KobayashiBracket out;
  out.norm_normal = std::abs(rxi[0]);
  out.norm_tangent = rxi.tail(rxi.size() - 1).norm();
  out.center = std::max(out.norm_normal / (2.0 * frame.d()),
                        out.norm_tangent / frame.dstar());

  out.radius_ratio = frame.dstar() / region.d2;
  out.delta_margin = 1.0 / (1.0 - delta);
  out.loc_factor = localization_factor(frame.d(), region.epsilon).factor;

  out.lower_ratio = out.radius_ratio;
  out.upper_ratio = out.delta_margin * out.loc_factor;
  out.lower = out.lower_ratio * out.center;
  out.upper = out.upper_ratio * out.center;
  return out;
}

}  // namespace bml
