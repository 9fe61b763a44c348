#pragma once

#include <Eigen/Dense>
#include <complex>
#include <optional>

#include "bml/profile.hpp"

namespace bml {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

// Truncation radii for the Hartogs flat model: |z1| < r1, |z'| < r2.
struct HartogsBox {
  double r1 = 1.0;
  double r2 = 1.0;
};

enum class DomainKind { UnitDisc, UnitBall, ProductDiscBall, HartogsFlat };

// One of the bounded model domains the lab computes on. Ambient complex
// dimension is nu; for ProductDiscBall and HartogsFlat nu = n + 1 with n
// the ball/fiber dimension.
class ModelDomain {
 public:
  static ModelDomain unit_disc();
  static ModelDomain unit_ball(int ambient_dim);
  static ModelDomain product_disc_ball(int fiber_dim);
  static ModelDomain hartogs_flat(Profile profile, int fiber_dim, HartogsBox box = {});

  DomainKind kind() const { return kind_; }
  int ambient_dim() const { return ambient_dim_; }
  int fiber_dim() const { return fiber_dim_; }
  const Profile& profile() const;
  const HartogsBox& box() const;

  bool contains(const CVector& z) const;

 private:
  ModelDomain() = default;
  DomainKind kind_ = DomainKind::UnitDisc;
  int ambient_dim_ = 1;
  int fiber_dim_ = 0;
  std::optional<Profile> profile_;
  HartogsBox box_;
};

// Defining function of the Hartogs flat model: Re z1 + phi(|z'|^2).
double rho(const ModelDomain& domain, const CVector& z);

struct BoundaryGradient {
  CVector gradient;  // (1, 2 s phi'(s^2), 0, ..., 0)
  double norm = 1.0;  // A = |grad rho|
};

// Gradient of rho at a boundary point in the symmetric slice z' = s e2,
// s >= 0 real.
BoundaryGradient grad_rho(const ModelDomain& domain, const CVector& z);

struct NearestBoundaryPoint {
  CVector point;   // p = (-phi(s*^2), s*, 0, ...)
  double dist = 0; // d(t) = |q~ - p|
  double s = 0;    // tangential coordinate of p (p2)
};

// Nearest boundary point to q~ = (x, r, 0, ...) with x < 0, r >= 0, found
// by the 1-D minimization over the symmetric slice the defining function
// reduces to. Throws ConvergenceError when the bracket fails.
NearestBoundaryPoint nearest_boundary_point(const ModelDomain& domain, double x, double r);

struct TangentDecomposition {
  CVector xi;
  CVector xi_normal;
  CVector xi_tangent;
  double norm_normal = 0;   // |xi_{N,t}|
  double norm_tangent = 0;  // |xi_{T,t}|
};

// Hermitian-orthogonal split xi = xi_N + xi_T against a unit normal.
TangentDecomposition decompose_vector(const CVector& xi, const CVector& unit_normal);

// Cone-type approach curve inside C_{alpha,N} = {Re z1 < -alpha |z'|^N}.
// The default schedule is q(t) = (-t, c t^{1/N} u') with c = (2 alpha)^{-1/N},
// which keeps alpha |q'|^N = t/2; the normal schedule is q(t) = (-t, 0).
class ConeCurve {
 public:
  enum class Schedule { Default, Normal };

  ConeCurve(double alpha, double big_n, Eigen::VectorXd direction,
            Schedule schedule = Schedule::Default);
  static ConeCurve normal(int fiber_dim);

  double alpha() const { return alpha_; }
  double big_n() const { return big_n_; }
  Schedule schedule() const { return schedule_; }

  // Point in C^{nu} with nu = direction dim + 1.
  CVector point(double t) const;
  bool in_cone(const CVector& q) const;

 private:
  double alpha_ = 1.0;
  double big_n_ = 2.0;
  Eigen::VectorXd direction_;
  Schedule schedule_ = Schedule::Default;
  double speed_ = 1.0;
};

}  // namespace bml
