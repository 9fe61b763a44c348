#include "bml/profile.hpp"

#include <cmath>

#include "bml/errors.hpp"

namespace bml {

namespace {

// Polynomial in u, coefficients low-to-high.
double poly_eval(const std::vector<double>& q, double u) {
  double acc = 0.0;
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * u + *it;
  return acc;
}

// For f(x) = Q(u) exp(-u^m), u = 1/x:
//   f'(x) = -u^2 [Q'(u) - m u^{m-1} Q(u)] exp(-u^m).
std::vector<double> next_deriv_poly(const std::vector<double>& q, int m) {
  std::vector<double> out(q.size() + m + 1, 0.0);
  for (size_t j = 1; j < q.size(); ++j) out[j + 1] -= static_cast<double>(j) * q[j];
  for (size_t j = 0; j < q.size(); ++j) out[j + m + 1] += static_cast<double>(m) * q[j];
  return out;
}

}  // namespace

Profile Profile::exp_inverse(int m) {
  if (m < 1) throw ValidationError("profile: flatness order m must be >= 1");
  Profile p;
  p.form_ = ProfileForm::ExpInverse;
  p.m_ = m;
  // Exact convexity radius: phi'' > 0 iff x^m < m/(m+1).
  p.epsilon0_ = std::pow(static_cast<double>(m) / (m + 1), 1.0 / m);
  p.deriv_poly_[0] = {1.0};
  for (int k = 1; k <= 4; ++k) p.deriv_poly_[k] = next_deriv_poly(p.deriv_poly_[k - 1], m);
  p.validate();
  return p;
}

Profile Profile::custom(CustomProfileSpec spec) {
  if (!spec.value) throw ValidationError("profile: custom form needs a value callable");
  for (const auto& d : spec.derivative)
    if (!d) throw ValidationError("profile: custom form needs derivatives up to order 4");
  if (spec.flatness_order < 1) throw ValidationError("profile: flatness order m must be >= 1");
  if (!(spec.epsilon0 > 0)) throw ValidationError("profile: epsilon0 must be positive");
  Profile p;
  p.form_ = ProfileForm::Custom;
  p.m_ = spec.flatness_order;
  p.epsilon0_ = spec.epsilon0;
  p.custom_ = std::move(spec);
  p.validate();
  return p;
}

void Profile::validate() const {
  // Sampled checks of Definition-level invariants: strict increase and
  // phi'' > 0 on (0, epsilon0), and faster-than-any-power vanishing.
  const int kSamples = 64;
  double prev = 0.0;
  for (int i = 1; i <= kSamples; ++i) {
    double x = epsilon0_ * 0.999 * i / kSamples;
    double v = value(x);
    if (!(v > prev))
      throw ValidationError("profile: phi not strictly increasing on (0, epsilon0)");
    if (!(derivative(x, 2) > 0))
      throw ValidationError("profile: phi'' not positive on (0, epsilon0)");
    prev = v;
  }
  for (int k = 1; k <= 8; ++k) {
    double x = 0.02;
    if (!(value(x) / std::pow(x, k) < 1e-3))
      throw ValidationError("profile: phi does not vanish faster than x^k near 0");
  }
}

double Profile::value(double x) const {
  if (x <= 0.0) return 0.0;
  if (form_ == ProfileForm::Custom) return custom_.value(x);
  return std::exp(-std::pow(x, -m_));
}

LogVal Profile::value_log(double x) const {
  if (x <= 0.0) return LogVal::zero();
  if (form_ == ProfileForm::Custom) return LogVal::from_value(custom_.value(x));
  return LogVal::from_log(-std::pow(x, -m_));
}

double Profile::derivative(double x, int order) const {
  if (order < 1 || order > 4) throw DomainError("profile: derivative order must be 1..4");
  if (x <= 0.0) return 0.0;
  if (form_ == ProfileForm::Custom) return custom_.derivative[order - 1](x);
  double u = 1.0 / x;
  return poly_eval(deriv_poly_[order], u) * std::exp(-std::pow(u, m_));
}

LogVal Profile::derivative_log(double x) const {
  if (x <= 0.0) return LogVal::zero();
  if (form_ == ProfileForm::Custom) return LogVal::from_value(custom_.derivative[0](x));
  // phi'(x) = m x^{-(m+1)} exp(-1/x^m)
  double u = 1.0 / x;
  return LogVal::from_log(std::log(static_cast<double>(m_)) + (m_ + 1) * std::log(u) -
                          std::pow(u, m_));
}

double Profile::inverse(double y) const {
  if (form_ == ProfileForm::ExpInverse) {
    if (!(y > 0.0) || !(y < 1.0))
      throw DomainError("profile: inverse defined for y in (0,1)");
    return std::pow(-1.0 / std::log(y), 1.0 / m_);
  }
  double hi = epsilon0_;
  double phi_hi = custom_.value(hi);
  if (!(y > 0.0) || !(y < phi_hi))
    throw DomainError("profile: inverse argument outside (0, phi(epsilon0))");
  double lo = 0.0;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (custom_.value(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

LogVal Profile::scaling_ratio(double r, double x) const {
  if (!(r > 0.0) || !(x > 0.0))
    throw DomainError("profile: scaling_ratio needs r > 0 and x > 0");
  if (form_ == ProfileForm::ExpInverse) {
    // log ratio = r^{-m} (1 - x^{-m}), exact in log space.
    return LogVal::from_log(std::pow(r, -m_) * (1.0 - std::pow(x, -m_)));
  }
  double denom = custom_.value(r);
  if (denom == 0.0)
    throw DomainError("profile: phi(r) underflows to 0; ratio unavailable for custom form");
  return LogVal::from_value(custom_.value(r * x)) / LogVal::from_value(denom);
}

}  // namespace bml
