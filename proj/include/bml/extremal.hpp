#pragma once

#include "bml/kernels.hpp"

namespace bml {

// Exact orthonormal monomial bases of the Bergman spaces of the
// closed-form model domains, truncated at a total degree.
class OrthonormalBasis {
 public:
  static OrthonormalBasis closed_form(const ModelDomain& domain, int degree);

  int size() const { return static_cast<int>(scale_.size()); }
  int nu() const { return nu_; }
  int degree() const { return degree_; }

  // Rows indexed by basis function.
  CVector values(const CVector& z) const;      // size
  CMatrix gradients(const CVector& z) const;   // size x nu
  CMatrix hessians(const CVector& z) const;    // size x nu^2, column j*nu+l

 private:
  OrthonormalBasis() = default;
  int nu_ = 1;
  int degree_ = 0;
  std::vector<std::vector<int>> exps_;
  std::vector<double> scale_;
};

enum class ExtremalQuantity { LambdaK, Lambda, I, M, N, L };

struct ExtremalEstimate {
  ExtremalQuantity quantity = ExtremalQuantity::LambdaK;
  double value = 0;
  int basis_degree = 0;
  int constraint_rank = 0;
  Eigen::VectorXcd maximizer;  // coefficients in the orthonormal basis
};

// sup{|df/dz_k|^2 : f in S_z, df/dz_j = 0 for j < k}; k is 1-based.
ExtremalEstimate estimate_lambda_k(const OrthonormalBasis& basis, const CVector& z, int k);

// lambda = prod_k lambda^k.
ExtremalEstimate estimate_lambda(const OrthonormalBasis& basis, const CVector& z);

// sup{xi f'' conj(G)^{-1} conj(f'') xi* : f in S_z, f' = 0}.
ExtremalEstimate estimate_I(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z, const CVector& xi);

// kappa^{nu-1}-weighted adjugate form of I.
ExtremalEstimate estimate_M(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z, const CVector& xi);

// sup{tr(f'' conj(G)^{-1} conj(f'') G^{-1}) : f in S_z, f' = 0}.
ExtremalEstimate estimate_L(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z);

// kappa^{2nu-2}-weighted double-adjugate trace form.
ExtremalEstimate estimate_N(const OrthonormalBasis& basis, const MetricReport& rep,
                            const CVector& z);

}  // namespace bml
