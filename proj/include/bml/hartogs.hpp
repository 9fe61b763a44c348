#pragma once

#include <memory>

#include "bml/kernels.hpp"

namespace bml {

struct EngineConfig {
  int dmax = 24;           // z1 polynomial degree
  int kmax = 16;           // highest fiber mode
  int quad_panels = 40;    // log-graded panels on the flat side
  int quad_nodes = 20;     // Gauss-Legendre nodes per x panel
  bool extended_precision = true;  // long double Gram accumulation
  double drop_tol = 1e-13;         // pivoted-Cholesky drop tolerance
  bool zero_profile = false;       // force phi == 0 (product-of-half-disc oracle)
  double basis_center = -0.35;     // real center c of ((z1 - c)/s)^j
  double basis_scale = 0.45;
};

struct ModeDiagnostics {
  int k = 0;
  int rank = 0;
  double cond_estimate = 0;  // first/last accepted pivot ratio
  bool degree_reduced = false;
};

struct HartogsJets {
  KernelJets jets;
  double tail_rel = 0;             // relative contribution of the last mode
  bool truncation_warning = false; // tail_rel > 1e-9
};

// Numerical Bergman kernel of the truncated Hartogs flat model in C^2 via
// the rotational mode decomposition A^2(D) = (+)_k z2^k (x) A^2(D1, w_k),
// with weighted Gram orthonormalization of centered monomials in z1.
class HartogsKernelEngine {
 public:
  HartogsKernelEngine(const ModelDomain& domain, EngineConfig cfg);

  const EngineConfig& config() const { return cfg_; }
  const ModelDomain& domain() const { return domain_; }

  // w_k(x) = pi r_max(x)^{2(k+1)}/(k+1), r_max = min(R2, sqrt(phi^{-1}(-x))).
  double mode_weight(int k, double x) const;

  // Finite-basis reproducing kernel K_k(z1, w1bar) of (D1, w_k).
  Complex mode_kernel(int k, Complex z1, Complex w1) const;

  // Diagonal jets d^a dbar^b K_k(z1, z1bar), a, b <= order.
  CMatrix mode_kernel_jets(int k, Complex z1, int order) const;

  double kappa(const CVector& z) const;
  HartogsJets kernel_jets(const CVector& z) const;

  // Wrap as the KernelModel the bergman module consumes.
  KernelModel model() const;

  const std::vector<ModeDiagnostics>& diagnostics() const { return diag_; }
  Eigen::MatrixXd gram(int k) const;

  // Combined quadrature nodes/weights for mode k (for reproducing tests).
  std::vector<std::pair<Complex, double>> quadrature(int k) const;

 private:
  struct Mode;
  void build();
  CVector basis_derivs(Complex z1, int order, int deriv) const;

  ModelDomain domain_;
  EngineConfig cfg_;
  std::vector<ModeDiagnostics> diag_;
  std::shared_ptr<const std::vector<Mode>> modes_;
  std::vector<double> qx_, qw_;  // x nodes/weights (before w_k, after y-reduction handling)
};

}  // namespace bml
