#pragma once

#include <functional>
#include <vector>

#include "bml/geometry.hpp"
#include "bml/jets.hpp"

namespace bml {

// Diagonal kernel data at a point: kappa(z) plus the degree-4 expansion
// of log kappa in (dz, dzbar) around z.
struct KernelJets {
  double kappa = 0;
  Jet4 log_kappa{1};
};

enum class KernelSource { ClosedForm, NumericalModeSum };

// Bergman-kernel evaluator for one model domain. Closed-form for
// disc/ball/product; the Hartogs model plugs in the mode-sum engine.
class KernelModel {
 public:
  using Evaluator = std::function<KernelJets(const CVector&)>;

  KernelModel(ModelDomain domain, KernelSource source, Evaluator evaluator);
  static KernelModel closed_form(const ModelDomain& domain);

  const ModelDomain& domain() const { return domain_; }
  KernelSource source() const { return source_; }
  KernelJets jets(const CVector& z) const;

 private:
  ModelDomain domain_;
  KernelSource source_;
  Evaluator evaluator_;
};

// Off-diagonal closed-form kernel K_D(z, w) for disc, ball and product.
Complex kernel_closed_form(const ModelDomain& domain, const CVector& z, const CVector& w);

// Everything the invariant-metric formulas produce at one point/vector.
struct MetricReport {
  double kappa = 0;
  CMatrix G;                      // g_{j kbar}
  CMatrix Ginv;
  double detG = 0;
  double B = 0;                   // Bergman length of xi
  std::vector<Complex> curvature; // R_{hbar j k lbar}, index ((h*nu+j)*nu+k)*nu+l
  double ricci = 0;               // R(z; xi)
  double scalar = 0;              // S(z)
  double J = 0;                   // det G / kappa
  double kobayashi_fuks = 0;      // B * sqrt((nu+1) - R)
};

MetricReport metric_report(const KernelModel& km, const CVector& z, const CVector& xi);

// Complex Monge-Ampere operator: (-1)^nu det of the bordered matrix
// [[u, u_kbar], [u_j, u_{j kbar}]] for a real-valued field u with the
// given jets (u_kbar = conj(u_j)).
double monge_ampere(double u, const CVector& grad, const CMatrix& hess);

// J(kappa^{-1/(nu+1)}) assembled from a kernel model's jets; equals
// (nu+1)^{-nu} J_D by Ramadanov's identity.
double monge_ampere_of_kernel_root(const KernelModel& km, const CVector& z);

enum class TransformQuantity { Lambda, ExtremalI, ExtremalM, ExtremalN, J, Ricci, Scalar };

// Pull a quantity back through a biholomorphism f: D1 -> D2 with complex
// Jacobian determinant det_jf at z; returns the D1-side value given the
// value at f(z).
double transform_under_biholomorphism(TransformQuantity q, double value_at_image,
                                      Complex det_jf, int nu);

}  // namespace bml
