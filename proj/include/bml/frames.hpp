#pragma once

#include <vector>

#include "bml/geometry.hpp"
#include "bml/logval.hpp"

namespace bml {

// All per-t scaling data: the symmetrized point, nearest boundary point,
// gradient norm A(t), the distances d(t), d*(t), and the composed affine
// normalization gamma_t o R1_t o T1_t with its inverse.
class NormalizationFrame {
 public:
  NormalizationFrame(const ModelDomain& domain, const CVector& q, double t);

  const ModelDomain& domain() const { return *domain_; }
  double t() const { return t_; }
  const CVector& q() const { return q_; }
  double re_q1() const { return re_q1_; }
  double r() const { return r_; }     // |q'(t)|
  double p2() const { return p2_; }   // tangential coordinate of p(t)
  double A() const { return a_; }     // |grad rho(p(t))|
  double d() const { return d_; }     // dist(q~, bOmega)
  double dstar() const { return dstar_; }
  double phi_p2sq() const { return phi_p2sq_; }
  double slope() const { return c_slope_; }  // 2 p2 phi'(p2^2) / A

  // Forward normalization z -> gamma_t(R1_t(T1_t(z))) and its inverse.
  CVector forward(const CVector& z) const;
  CVector inverse(const CVector& z) const;
  const CMatrix& rotation() const { return rot_; }  // R2_t . R1_t

  // Unit outward normal at p(t) expressed in the original coordinates.
  CVector unit_normal_original() const;

  // rho o gamma_t^{-1}(z), evaluated through the displayed closed form.
  double rho_pullback(const CVector& z) const;
  // Same quantity through the generic affine inverse, for cross-checks.
  double rho_pullback_composed(const CVector& z) const;

  // gamma_t^{-1}(z) by the paper's componentwise formula.
  CVector gamma_inverse_formula(const CVector& z) const;

 private:
  const ModelDomain* domain_;
  double t_ = 0;
  CVector q_;
  double re_q1_ = 0, r_ = 0;
  double p2_ = 0, a_ = 1, d_ = 0, dstar_ = 0;
  double phi_p2sq_ = 0, dphi_p2sq_ = 0, c_slope_ = 0;
  CMatrix rot_;   // R2 R1
  CVector shift_; // forward(z) = rot_ z + shift_
};

NormalizationFrame build_frame(const ModelDomain& domain, const ConeCurve& curve, double t);

// d*(t): smallest s > 0 with s e2 + (-d, 0, ...) on the boundary of the
// normalized domain; monotone 1-D root solve of the pulled-back defining
// function.
double tangential_radius(const NormalizationFrame& frame, double d);

// The epsilon-scaled region D_t^eps together with its sup-radii.
struct ScaledRegion {
  double epsilon = 0;
  double c0 = 0;              // cos(pi / (2(1+eps)))
  double w1_halfwidth = 0;    // delta0/10 box half-width for Re/Im z1
  double wprime_radius = 0;   // delta0/10 ball radius for z'
  double d1 = 0, d2 = 0;      // d1^eps(t), d2^eps(t)
  bool d1_capped = false, d2_capped = false;
  double re_z1_floor = 0;     // -d^{1/(1+eps)^2}
};

ScaledRegion d1_d2_radii(const NormalizationFrame& frame, double epsilon, double delta0);

bool in_scaled_region(const NormalizationFrame& frame, const ScaledRegion& region,
                      const CVector& z);

// f o Sigma: anisotropic dilation by (1/d, 1/d*) then the Cayley-type map
// (z1, z') -> ((1+z1)/(1-z1), z').
CVector cayley_sigma(const NormalizationFrame& frame, const CVector& z);
CVector cayley_sigma_inverse(const NormalizationFrame& frame, const CVector& w);

// Peak function h_eps(z1) = exp(-(-z1)^{1/(1+eps)}), principal branch.
Complex peak_function(double epsilon, Complex z1);

struct InclusionReport {
  double t = 0, d = 0, dstar = 0;
  double epsilon = 0, delta = 0;
  int samples_inner = 0, samples_outer = 0, accepted_outer = 0;
  double frac_inner = 0;  // preimages of (1-delta)(D x B) inside D_t^eps
  double frac_outer = 0;  // f o Sigma(D_t^eps) samples inside D x B(0, d2/d*)
  std::vector<CVector> counterexamples_inner;
  std::vector<CVector> counterexamples_outer;
  bool d1_capped = false, d2_capped = false;
  bool passed = false;
  bool outside_asymptotic_regime = false;
};

InclusionReport certify_inclusions(const NormalizationFrame& frame, double epsilon,
                                   double delta, int sample_count, double delta0);

// Radical-inverse low-discrepancy coordinate (deterministic sampling).
double halton(uint64_t index, int base);

}  // namespace bml
