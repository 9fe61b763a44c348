#include "bml/geometry.hpp"

#include <cmath>

#include "bml/errors.hpp"

namespace bml {

ModelDomain ModelDomain::unit_disc() {
  ModelDomain d;
  d.kind_ = DomainKind::UnitDisc;
  d.ambient_dim_ = 1;
  d.fiber_dim_ = 0;
  return d;
}

ModelDomain ModelDomain::unit_ball(int ambient_dim) {
  if (ambient_dim < 1) throw ValidationError("domain: ball dimension must be >= 1");
  ModelDomain d;
  d.kind_ = DomainKind::UnitBall;
  d.ambient_dim_ = ambient_dim;
  d.fiber_dim_ = 0;
  return d;
}

ModelDomain ModelDomain::product_disc_ball(int fiber_dim) {
  if (fiber_dim < 1) throw ValidationError("domain: fiber dimension must be >= 1");
  ModelDomain d;
  d.kind_ = DomainKind::ProductDiscBall;
  d.ambient_dim_ = fiber_dim + 1;
  d.fiber_dim_ = fiber_dim;
  return d;
}

ModelDomain ModelDomain::hartogs_flat(Profile profile, int fiber_dim, HartogsBox box) {
  if (fiber_dim < 1) throw ValidationError("domain: fiber dimension must be >= 1");
  if (!(box.r1 > 0) || !(box.r2 > 0)) throw ValidationError("domain: box radii must be positive");
  ModelDomain d;
  d.kind_ = DomainKind::HartogsFlat;
  d.ambient_dim_ = fiber_dim + 1;
  d.fiber_dim_ = fiber_dim;
  d.profile_ = std::move(profile);
  d.box_ = box;
  return d;
}

const Profile& ModelDomain::profile() const {
  if (!profile_) throw KindError("domain: only the Hartogs flat model carries a profile");
  return *profile_;
}

const HartogsBox& ModelDomain::box() const {
  if (kind_ != DomainKind::HartogsFlat)
    throw KindError("domain: only the Hartogs flat model carries a truncation box");
  return box_;
}

bool ModelDomain::contains(const CVector& z) const {
  if (z.size() != ambient_dim_) throw DomainError("domain: point has wrong dimension");
  switch (kind_) {
    case DomainKind::UnitDisc:
    case DomainKind::UnitBall:
      return z.norm() < 1.0;
    case DomainKind::ProductDiscBall:
      return std::abs(z[0]) < 1.0 && z.tail(fiber_dim_).norm() < 1.0;
    case DomainKind::HartogsFlat: {
      double sq = z.tail(fiber_dim_).squaredNorm();
      return z[0].real() + profile_->value(sq) < 0.0 && std::abs(z[0]) < box_.r1 &&
             std::sqrt(sq) < box_.r2;
    }
  }
  return false;
}

double rho(const ModelDomain& domain, const CVector& z) {
  if (domain.kind() != DomainKind::HartogsFlat)
    throw KindError("rho: defining function belongs to the Hartogs flat model");
  if (z.size() != domain.ambient_dim()) throw DomainError("rho: point has wrong dimension");
  return z[0].real() + domain.profile().value(z.tail(domain.fiber_dim()).squaredNorm());
}

BoundaryGradient grad_rho(const ModelDomain& domain, const CVector& z) {
  if (domain.kind() != DomainKind::HartogsFlat)
    throw KindError("grad_rho: defining function belongs to the Hartogs flat model");
  const int nu = domain.ambient_dim();
  if (z.size() != nu) throw DomainError("grad_rho: point has wrong dimension");
  const double kTol = 1e-12;
  Complex z2 = z[1];
  if (std::abs(z2.imag()) > kTol || z2.real() < -kTol)
    throw SymmetryError("grad_rho: z' must lie along e2 with nonnegative real coefficient");
  for (int j = 2; j < nu; ++j)
    if (std::abs(z[j]) > kTol)
      throw SymmetryError("grad_rho: z' must lie along e2 with nonnegative real coefficient");
  double s = std::max(0.0, z2.real());
  BoundaryGradient out;
  out.gradient = CVector::Zero(nu);
  out.gradient[0] = 1.0;
  out.gradient[1] = 2.0 * s * domain.profile().derivative(s * s, 1);
  out.norm = out.gradient.norm();
  return out;
}

namespace {

// Squared distance from (x, r) to the boundary slice point (-phi(s^2), s).
struct SliceObjective {
  const Profile* profile;
  double x, r;
  double f(double s) const {
    double ph = profile->value(s * s);
    double dx = x + ph;
    double dr = r - s;
    return dx * dx + dr * dr;
  }
  double df(double s) const {
    double ph = profile->value(s * s);
    double dph = 2.0 * s * profile->derivative(s * s, 1);
    return 2.0 * (x + ph) * dph - 2.0 * (r - s);
  }
  double d2f(double s) const {
    double ph = profile->value(s * s);
    double p1 = profile->derivative(s * s, 1);
    double p2 = profile->derivative(s * s, 2);
    double dph = 2.0 * s * p1;
    double d2ph = 2.0 * p1 + 4.0 * s * s * p2;
    return 2.0 * dph * dph + 2.0 * (x + ph) * d2ph + 2.0;
  }
};

}  // namespace

NearestBoundaryPoint nearest_boundary_point(const ModelDomain& domain, double x, double r) {
  if (domain.kind() != DomainKind::HartogsFlat)
    throw KindError("nearest_boundary_point: needs the Hartogs flat model");
  if (!(x < 0.0) || r < 0.0)
    throw DomainError("nearest_boundary_point: expects x < 0, r >= 0");
  const Profile& prof = domain.profile();
  const int nu = domain.ambient_dim();
  double smax = std::min(domain.box().r2, 0.98 * std::sqrt(prof.epsilon0()));

  SliceObjective obj{&prof, x, r};
  double sstar;
  if (r == 0.0) {
    // df(s) = 2 s [1 + 2 phi'(s^2)(x + phi(s^2))]; the bracket term must stay
    // positive for the normal foot point to be the unique minimizer.
    for (int i = 1; i <= 32; ++i) {
      double s = smax * i / 32.0;
      if (!(obj.df(s) > 0.0))
        throw ConvergenceError("nearest_boundary_point: base point too deep for normal slice");
    }
    sstar = 0.0;
  } else {
    double lo = 0.0, hi = smax;
    double flo = obj.df(lo), fhi = obj.df(hi);
    if (!(flo < 0.0))
      throw ConvergenceError("nearest_boundary_point: stationarity bracket fails at s = 0");
    if (!(fhi > 0.0))
      throw ConvergenceError("nearest_boundary_point: stationarity bracket fails at s = smax");
    for (int it = 0; it < 400 && hi - lo > 1e-17 * std::max(1.0, hi); ++it) {
      double mid = 0.5 * (lo + hi);
      double fm = obj.df(mid);
      if (fm < 0.0)
        lo = mid;
      else
        hi = mid;
      if (fm == 0.0) break;
    }
    sstar = 0.5 * (lo + hi);
    // Newton polish.
    for (int it = 0; it < 4; ++it) {
      double d2 = obj.d2f(sstar);
      if (!(d2 > 0.0)) break;
      double step = obj.df(sstar) / d2;
      double cand = sstar - step;
      if (cand > 0.0 && cand < smax) sstar = cand;
    }
    if (!(obj.d2f(sstar) > 0.0))
      throw ConvergenceError("nearest_boundary_point: minimizer fails convexity check");
  }

  NearestBoundaryPoint out;
  out.s = sstar;
  out.point = CVector::Zero(nu);
  out.point[0] = -prof.value(sstar * sstar);
  out.point[1] = sstar;
  out.dist = std::sqrt(obj.f(sstar));
  if (!(out.dist > 0.0))
    throw ConvergenceError("nearest_boundary_point: base point is not strictly interior");
  return out;
}

TangentDecomposition decompose_vector(const CVector& xi, const CVector& unit_normal) {
  if (xi.size() != unit_normal.size())
    throw DomainError("decompose_vector: dimension mismatch");
  if (std::abs(unit_normal.norm() - 1.0) > 1e-12)
    throw NormalizationError("decompose_vector: normal is not a unit vector");
  TangentDecomposition out;
  out.xi = xi;
  Complex coeff = unit_normal.dot(xi);  // <xi, n> Hermitian (Eigen conjugates lhs)
  out.xi_normal = coeff * unit_normal;
  out.xi_tangent = xi - out.xi_normal;
  out.norm_normal = out.xi_normal.norm();
  out.norm_tangent = out.xi_tangent.norm();
  return out;
}

ConeCurve::ConeCurve(double alpha, double big_n, Eigen::VectorXd direction, Schedule schedule)
    : alpha_(alpha), big_n_(big_n), direction_(std::move(direction)), schedule_(schedule) {
  if (!(alpha_ > 0) || !(big_n_ > 0))
    throw ValidationError("cone curve: alpha and N must be positive");
  if (direction_.size() < 1) throw ValidationError("cone curve: direction must be nonempty");
  double nrm = direction_.norm();
  if (schedule_ == Schedule::Default) {
    if (!(nrm > 0)) throw ValidationError("cone curve: direction must be nonzero");
    direction_ /= nrm;
  }
  speed_ = std::pow(2.0 * alpha_, -1.0 / big_n_);
}

ConeCurve ConeCurve::normal(int fiber_dim) {
  return ConeCurve(1.0, 2.0, Eigen::VectorXd::Zero(std::max(1, fiber_dim)), Schedule::Normal);
}

CVector ConeCurve::point(double t) const {
  if (!(t > 0)) throw DomainError("cone curve: t must be positive");
  const int nu = static_cast<int>(direction_.size()) + 1;
  CVector q = CVector::Zero(nu);
  q[0] = Complex(-t, 0.0);
  if (schedule_ == Schedule::Default) {
    double radial = speed_ * std::pow(t, 1.0 / big_n_);
    for (int j = 0; j < direction_.size(); ++j) q[j + 1] = radial * direction_[j];
  }
  return q;
}

bool ConeCurve::in_cone(const CVector& q) const {
  double rp = q.tail(q.size() - 1).norm();
  return q[0].real() < -alpha_ * std::pow(rp, big_n_);
}

}  // namespace bml
