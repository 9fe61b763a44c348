#pragma once

#include <array>
#include <functional>
#include <vector>

#include "bml/logval.hpp"

namespace bml {

enum class ProfileForm { ExpInverse, Custom };

// Derivative callables a Custom profile must supply (orders 1..4).
struct CustomProfileSpec {
  std::function<double(double)> value;
  std::array<std::function<double(double)>, 4> derivative;
  int flatness_order = 1;
  double epsilon0 = 0.5;
};

// Exponentially flat profile function: phi(x) = 0 for x <= 0, vanishing
// to infinite order at 0, strictly convex on (0, epsilon0), with
// -1/log(phi) vanishing to finite order m. The built-in form is
// phi(x) = exp(-1/x^m).
class Profile {
 public:
  static Profile exp_inverse(int m);
  static Profile custom(CustomProfileSpec spec);

  ProfileForm form() const { return form_; }
  int flatness_order() const { return m_; }
  double epsilon0() const { return epsilon0_; }

  // phi(x); total function, 0 for x <= 0.
  double value(double x) const;

  // log phi(x) as a LogVal (exact -1/x^m for the ExpInverse form).
  LogVal value_log(double x) const;

  // d^order phi / dx^order, order 1..4; 0 for x <= 0.
  double derivative(double x, int order) const;

  // log phi'(x) for x > 0 (phi' > 0 there). ExpInverse only.
  LogVal derivative_log(double x) const;

  // Unique x > 0 with phi(x) = y. ExpInverse: x = (-1/log y)^{1/m},
  // valid for y in (0,1). Custom: bisection on (0, epsilon0).
  double inverse(double y) const;

  // phi(r x)/phi(r) in log space (Eq-dichotomy diagnostic input).
  LogVal scaling_ratio(double r, double x) const;

 private:
  Profile() = default;
  void validate() const;

  ProfileForm form_ = ProfileForm::ExpInverse;
  int m_ = 1;
  double epsilon0_ = 0.5;
  CustomProfileSpec custom_;
  // ExpInverse: phi^(k)(x) = Q_k(1/x) exp(-1/x^m); coefficients of Q_k.
  std::array<std::vector<double>, 5> deriv_poly_;
};

}  // namespace bml
