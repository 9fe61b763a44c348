#pragma once

#include <numbers>

#include "bml/geometry.hpp"

// Closed-form cross-check kernels, independent of the mode-sum engine:
// the half disc {|z| < 1, Re z < 0} via conformal transport of the unit
// disc kernel, and the radius-R disc.
namespace bml::oracles {

inline Complex half_disc_map(Complex z) {
  Complex zeta = Complex(0, -1) * z;            // upper half disc
  Complex w = -(zeta + 1.0 / zeta) / 2.0;       // upper half plane
  return (w - Complex(0, 1)) / (w + Complex(0, 1));
}

inline Complex half_disc_map_deriv(Complex z) {
  Complex zeta = Complex(0, -1) * z;
  Complex w = -(zeta + 1.0 / zeta) / 2.0;
  Complex dzeta = Complex(0, -1);
  Complex dw = -(1.0 - 1.0 / (zeta * zeta)) / 2.0;
  Complex du = Complex(0, 2) / ((w + Complex(0, 1)) * (w + Complex(0, 1)));
  return dzeta * dw * du;
}

// K_{HD}(z, w) = g'(z) conj(g'(w)) K_D(g(z), g(w)).
inline Complex half_disc_kernel(Complex z, Complex w) {
  Complex gz = half_disc_map(z), gw = half_disc_map(w);
  Complex denom = 1.0 - gz * std::conj(gw);
  return half_disc_map_deriv(z) * std::conj(half_disc_map_deriv(w)) /
         (std::numbers::pi * denom * denom);
}

inline Complex scaled_disc_kernel(double radius, Complex z, Complex w) {
  Complex denom = radius * radius - z * std::conj(w);
  return radius * radius / (std::numbers::pi * denom * denom);
}

// Diagonal kernel of the product HD(1) x disc(r2).
inline double half_disc_product_kappa(const CVector& z, double r2) {
  return (half_disc_kernel(z[0], z[0]) * scaled_disc_kernel(r2, z[1], z[1])).real();
}

}  // namespace bml::oracles
