#pragma once

#include <functional>
#include <vector>

#include "bml/geometry.hpp"

// Central finite-difference jets of scalar fields on C^nu, used to audit
// the analytic jets. Mixed Wirtinger derivatives are compositions of
// fourth-order five-point first-derivative stencils.
namespace bml::fd {

struct Term {
  CVector offset;
  Complex weight;
};

using Stencil = std::vector<Term>;

inline Stencil identity_stencil(int nu) { return {{CVector::Zero(nu), 1.0}}; }

// Apply d/dz_j (conjugate = false) or d/dzbar_j (conjugate = true):
// (d/dx -+ i d/dy)/2 with the five-point fourth-order first-derivative
// stencil in each real direction.
inline Stencil apply_wirtinger(const Stencil& base, int j, bool conjugate, double h) {
  static const double kC[4] = {1.0, -8.0, 8.0, -1.0};
  static const double kS[4] = {-2.0, -1.0, 1.0, 2.0};
  Stencil out;
  for (const Term& t : base)
    for (int dir = 0; dir < 2; ++dir) {  // 0: x_j, 1: y_j
      Complex dweight = dir == 0 ? Complex(0.5, 0.0)
                                 : (conjugate ? Complex(0.0, 0.5) : Complex(0.0, -0.5));
      for (int s = 0; s < 4; ++s) {
        Term nt;
        nt.offset = t.offset;
        nt.offset[j] += dir == 0 ? Complex(kS[s] * h, 0) : Complex(0, kS[s] * h);
        nt.weight = t.weight * dweight * kC[s] / (12.0 * h);
        out.push_back(nt);
      }
    }
  return out;
}

// d^a dbar^b F at z by composed stencils; a, b multi-indices of length nu.
inline Complex jet(const std::function<Complex(const CVector&)>& f, const CVector& z,
                   const std::vector<int>& a, const std::vector<int>& b, double h) {
  const int nu = static_cast<int>(z.size());
  Stencil st = identity_stencil(nu);
  for (int j = 0; j < nu; ++j)
    for (int rep = 0; rep < a[j]; ++rep) st = apply_wirtinger(st, j, false, h);
  for (int j = 0; j < nu; ++j)
    for (int rep = 0; rep < b[j]; ++rep) st = apply_wirtinger(st, j, true, h);
  Complex acc = 0;
  for (const Term& t : st) acc += t.weight * f(z + t.offset);
  return acc;
}

}  // namespace bml::fd
