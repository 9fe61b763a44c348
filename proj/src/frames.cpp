#include "bml/frames.hpp"

#include <cmath>
#include <numbers>

#include "bml/errors.hpp"

namespace bml {

namespace {

constexpr double kPi = std::numbers::pi;

// Unitary on C^n sending the unit vector u to e1 (LAPACK-style Householder
// followed by a phase fix on the first row).
CMatrix unitary_to_e1(const CVector& u) {
  const int n = static_cast<int>(u.size());
  CMatrix out = CMatrix::Identity(n, n);
  Complex u1 = u[0];
  double theta = std::abs(u1) > 0 ? std::arg(u1) : 0.0;
  Complex phase = std::polar(1.0, theta);
  CVector v = u;
  v[0] += phase;  // u + e^{i theta} e1
  double vn2 = v.squaredNorm();
  if (vn2 > 1e-30) {
    CMatrix h = CMatrix::Identity(n, n) - (2.0 / vn2) * (v * v.adjoint());
    out = h;
    out.row(0) *= -std::conj(phase);  // H u = -e^{i theta} e1; fix to e1
  }
  return out;
}

}  // namespace

NormalizationFrame::NormalizationFrame(const ModelDomain& domain, const CVector& q, double t)
    : domain_(&domain), t_(t), q_(q) {
  if (domain.kind() != DomainKind::HartogsFlat)
    throw KindError("frame: normalization frames exist for the Hartogs flat model");
  const int nu = domain.ambient_dim();
  if (q.size() != nu) throw DomainError("frame: point has wrong dimension");
  if (!domain.contains(q)) throw DomainError("frame: curve point not inside the domain");

  re_q1_ = q[0].real();
  const double im_q1 = q[0].imag();
  CVector qprime = q.tail(nu - 1);
  r_ = qprime.norm();

  CMatrix r1 = CMatrix::Identity(nu, nu);
  if (r_ > 0) r1.block(1, 1, nu - 1, nu - 1) = unitary_to_e1(qprime / r_);

  auto nb = nearest_boundary_point(domain, re_q1_, r_);
  p2_ = nb.s;
  d_ = nb.dist;
  const Profile& prof = domain.profile();
  phi_p2sq_ = prof.value(p2_ * p2_);
  dphi_p2sq_ = prof.derivative(p2_ * p2_, 1);
  double g2 = 2.0 * p2_ * dphi_p2sq_;
  a_ = std::sqrt(1.0 + g2 * g2);
  c_slope_ = g2 / a_;

  CMatrix r2 = CMatrix::Identity(nu, nu);
  r2(0, 0) = 1.0 / a_;
  r2(0, 1) = g2 / a_;
  r2(1, 0) = -g2 / a_;
  r2(1, 1) = 1.0 / a_;

  rot_ = r2 * r1;
  // forward(z) = R2 (R1 (z - i Im q1 e1) - p)
  CVector c = CVector::Zero(nu);
  c[0] = Complex(0.0, im_q1);
  shift_ = -(r2 * (r1 * c)) - r2 * nb.point;

  dstar_ = tangential_radius(*this, d_);
}

CVector NormalizationFrame::forward(const CVector& z) const { return rot_ * z + shift_; }

CVector NormalizationFrame::inverse(const CVector& z) const {
  return rot_.adjoint() * (z - shift_);
}

CVector NormalizationFrame::unit_normal_original() const {
  const int nu = domain_->ambient_dim();
  CVector e1 = CVector::Zero(nu);
  e1[0] = 1.0;
  return rot_.adjoint() * e1;
}

double NormalizationFrame::rho_pullback(const CVector& z) const {
  const int nu = domain_->ambient_dim();
  if (z.size() != nu) throw DomainError("frame: point has wrong dimension");
  const Profile& prof = domain_->profile();
  const double g2 = 2.0 * p2_ * dphi_p2sq_;  // = A c_slope
  Complex fiber = z[1] / a_ + p2_ + (g2 / a_) * z[0];
  double arg = std::norm(fiber);
  for (int j = 2; j < nu; ++j) arg += std::norm(z[j]);
  return z[0].real() / a_ - (g2 / a_) * z[1].real() - phi_p2sq_ + prof.value(arg);
}

double NormalizationFrame::rho_pullback_composed(const CVector& z) const {
  // gamma_t^{-1} = T2^{-1} o R2^{-1}; R1/T1 leave rho invariant.
  const int nu = domain_->ambient_dim();
  const double g2 = 2.0 * p2_ * dphi_p2sq_;
  CMatrix r2 = CMatrix::Identity(nu, nu);
  r2(0, 0) = 1.0 / a_;
  r2(0, 1) = g2 / a_;
  r2(1, 0) = -g2 / a_;
  r2(1, 1) = 1.0 / a_;
  CVector p = CVector::Zero(nu);
  p[0] = -phi_p2sq_;
  p[1] = p2_;
  CVector w = r2.adjoint() * z + p;
  double sq = w.tail(nu - 1).squaredNorm();
  return w[0].real() + domain_->profile().value(sq);
}

CVector NormalizationFrame::gamma_inverse_formula(const CVector& z) const {
  const int nu = domain_->ambient_dim();
  const double g2 = 2.0 * p2_ * dphi_p2sq_;
  CVector out = z;
  out[0] = (z[0] - g2 * z[1]) / a_ - phi_p2sq_;
  out[1] = (z[1] + g2 * z[0]) / a_ + p2_;
  return out;
}

NormalizationFrame build_frame(const ModelDomain& domain, const ConeCurve& curve, double t) {
  return NormalizationFrame(domain, curve.point(t), t);
}

double tangential_radius(const NormalizationFrame& frame, double d) {
  if (!(d > 0)) throw DomainError("tangential_radius: d must be positive");
  const ModelDomain& domain = frame.domain();
  const int nu = domain.ambient_dim();
  CVector z = CVector::Zero(nu);
  z[0] = -d;
  auto f = [&](double s) {
    z[1] = s;
    return frame.rho_pullback(z);
  };
  double smax = domain.box().r2;
  double flo = f(0.0);
  double fhi = f(smax * (1.0 - 1e-12));
  if (!(flo < 0.0) || !(fhi > 0.0))
    throw RootBracketError(
        "tangential_radius: no sign change in (0, R2); boundary sphere outside truncation");
  double lo = 0.0, hi = smax * (1.0 - 1e-12);
  for (int it = 0; it < 200 && (hi - lo) > 1e-16 * hi; ++it) {
    double mid = 0.5 * (lo + hi);
    if (f(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  // Secant polish inside the final bracket.
  double a = lo, b = hi, fa = f(a), fb = f(b);
  for (int it = 0; it < 8 && fb != fa; ++it) {
    double c = b - fb * (b - a) / (fb - fa);
    if (!(c > lo) || !(c < hi)) break;
    double fc = f(c);
    a = b;
    fa = fb;
    b = c;
    fb = fc;
  }
  return std::abs(fb) < std::abs(f(0.5 * (lo + hi))) ? b : 0.5 * (lo + hi);
}

ScaledRegion d1_d2_radii(const NormalizationFrame& frame, double epsilon, double delta0) {
  if (!(epsilon > 0)) throw DomainError("d1_d2_radii: epsilon must be positive");
  if (!(delta0 > 0)) throw DomainError("d1_d2_radii: delta0 must be positive");
  const Profile& prof = frame.domain().profile();
  ScaledRegion region;
  region.epsilon = epsilon;
  region.c0 = std::cos(kPi / (2.0 * (1.0 + epsilon)));
  region.w1_halfwidth = delta0 / 10.0;
  region.wprime_radius = delta0 / 10.0;
  region.re_z1_floor = -std::pow(frame.d(), 1.0 / ((1.0 + epsilon) * (1.0 + epsilon)));

  // sup reduction: phi(boundary arg) = d^{1/(1+eps)^k}/A + phi(p2^2) + c * Re z2,
  // correction maximized over W's admissible Re z2, plus the p2 and z1-coupling
  // shifts; capped by W's z' radius.
  auto radius = [&](double exponent, bool& capped) {
    double rhs = std::pow(frame.d(), exponent) / frame.A() + frame.phi_p2sq() +
                 frame.slope() * region.wprime_radius;
    double shift = frame.p2() + frame.slope() * std::numbers::sqrt2 * region.w1_halfwidth;
    double raw;
    if (rhs >= prof.value(region.wprime_radius * region.wprime_radius) || rhs >= 1.0) {
      capped = true;
      return region.wprime_radius;
    }
    raw = frame.A() * (std::sqrt(prof.inverse(rhs)) + shift);
    if (raw >= region.wprime_radius) {
      capped = true;
      return region.wprime_radius;
    }
    capped = false;
    return raw;
  };
  region.d1 = radius(1.0 / (1.0 + epsilon), region.d1_capped);
  region.d2 = radius(1.0 / ((1.0 + epsilon) * (1.0 + epsilon)), region.d2_capped);
  return region;
}

bool in_scaled_region(const NormalizationFrame& frame, const ScaledRegion& region,
                      const CVector& z) {
  const int nu = frame.domain().ambient_dim();
  if (std::abs(z[0].real()) >= region.w1_halfwidth) return false;
  if (std::abs(z[0].imag()) >= region.w1_halfwidth) return false;
  if (z.tail(nu - 1).norm() >= region.wprime_radius) return false;
  if (!(z[0].real() > region.re_z1_floor)) return false;
  return frame.rho_pullback(z) < 0.0;
}

CVector cayley_sigma(const NormalizationFrame& frame, const CVector& z) {
  const int nu = frame.domain().ambient_dim();
  CVector w(nu);
  Complex w1 = z[0] / frame.d();
  if (std::abs(w1 - Complex(1.0, 0.0)) < 1e-14)
    throw PoleError("cayley_sigma: z1 = d(t) is the pole of f o Sigma");
  w[0] = (1.0 + w1) / (1.0 - w1);
  for (int j = 1; j < nu; ++j) w[j] = z[j] / frame.dstar();
  return w;
}

CVector cayley_sigma_inverse(const NormalizationFrame& frame, const CVector& w) {
  const int nu = frame.domain().ambient_dim();
  CVector z(nu);
  z[0] = frame.d() * (w[0] - 1.0) / (w[0] + 1.0);
  for (int j = 1; j < nu; ++j) z[j] = frame.dstar() * w[j];
  return z;
}

Complex peak_function(double epsilon, Complex z1) {
  if (!(z1.real() < 0.0))
    throw BranchError("peak_function: principal branch needs Re z1 < 0");
  Complex w = -z1;
  Complex power = std::exp(std::log(w) / (1.0 + epsilon));
  return std::exp(-power);
}

double halton(uint64_t index, int base) {
  double f = 1.0, out = 0.0;
  uint64_t i = index;
  while (i > 0) {
    f /= base;
    out += f * static_cast<double>(i % base);
    i /= base;
  }
  return out;
}

namespace {

constexpr int kHaltonBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Deterministic point in the closed ball of C^k (radius rad): direction via
// Box-Muller on Halton coordinates, radius via the 2k-dim volume map.
CVector ball_point(uint64_t idx, int k, double rad, int base_offset) {
  Eigen::VectorXd g(2 * k);
  for (int j = 0; j < k; ++j) {
    double u = halton(idx, kHaltonBases[base_offset + 2 * j]);
    double v = halton(idx, kHaltonBases[base_offset + 2 * j + 1]);
    u = std::min(std::max(u, 1e-12), 1.0 - 1e-12);
    double mag = std::sqrt(-2.0 * std::log(u));
    g[2 * j] = mag * std::cos(2.0 * kPi * v);
    g[2 * j + 1] = mag * std::sin(2.0 * kPi * v);
  }
  double nrm = g.norm();
  if (nrm < 1e-12) {
    g.setZero();
    g[0] = 1.0;
    nrm = 1.0;
  }
  double ur = halton(idx, kHaltonBases[base_offset + 2 * k]);
  double radial = rad * std::pow(ur, 1.0 / (2.0 * k));
  CVector out(k);
  for (int j = 0; j < k; ++j)
    out[j] = radial / nrm * Complex(g[2 * j], g[2 * j + 1]);
  return out;
}

}  // namespace

InclusionReport certify_inclusions(const NormalizationFrame& frame, double epsilon,
                                   double delta, int sample_count, double delta0) {
  if (!(delta > 0.0) || delta >= 1.0)
    throw ValidationError("certify_inclusions: open inclusion needs margin delta in (0,1)");
  if (!(epsilon > 0.0)) throw ValidationError("certify_inclusions: epsilon must be positive");
  if (sample_count < 1) throw ValidationError("certify_inclusions: sample count must be >= 1");

  const int nu = frame.domain().ambient_dim();
  const int n = nu - 1;
  ScaledRegion region = d1_d2_radii(frame, epsilon, delta0);

  InclusionReport rep;
  rep.t = frame.t();
  rep.d = frame.d();
  rep.dstar = frame.dstar();
  rep.epsilon = epsilon;
  rep.delta = delta;
  rep.d1_capped = region.d1_capped;
  rep.d2_capped = region.d2_capped;

  // (a) Halton sample of (1-delta)(D x B_n(0,1)); preimages must lie in D_t^eps.
  int pass_inner = 0;
  for (int i = 1; i <= sample_count; ++i) {
    uint64_t idx = static_cast<uint64_t>(i);
    double u = halton(idx, 2);
    double v = halton(idx, 3);
    Complex w1 = std::polar((1.0 - delta) * std::sqrt(u), 2.0 * kPi * v);
    CVector w(nu);
    w[0] = w1;
    w.tail(n) = ball_point(idx, n, 1.0 - delta, 2);
    CVector z = cayley_sigma_inverse(frame, w);
    if (in_scaled_region(frame, region, z)) {
      ++pass_inner;
    } else if (rep.counterexamples_inner.size() < 8) {
      rep.counterexamples_inner.push_back(w);
    }
  }
  rep.samples_inner = sample_count;
  rep.frac_inner = static_cast<double>(pass_inner) / sample_count;

  // (b) Halton sample of D_t^eps; images must lie in D x B_n(0, d2/d*).
  double s_floor = -region.re_z1_floor;
  double zprime_rad = std::min(region.wprime_radius, region.d2);
  int accepted = 0, pass_outer = 0;
  for (int i = 1; i <= sample_count; ++i) {
    uint64_t idx = static_cast<uint64_t>(i);
    CVector z(nu);
    double x = -s_floor * halton(idx, 2);
    double y = (2.0 * halton(idx, 3) - 1.0) * region.w1_halfwidth;
    z[0] = Complex(x, y);
    z.tail(n) = ball_point(idx, n, zprime_rad, 2);
    if (!in_scaled_region(frame, region, z)) continue;
    ++accepted;
    CVector w = cayley_sigma(frame, z);
    bool inside = std::abs(w[0]) < 1.0 &&
                  w.tail(n).norm() <= region.d2 / frame.dstar() * (1.0 + 1e-13);
    if (inside) {
      ++pass_outer;
    } else if (rep.counterexamples_outer.size() < 8) {
      rep.counterexamples_outer.push_back(z);
    }
  }
  rep.samples_outer = sample_count;
  rep.accepted_outer = accepted;
  rep.frac_outer = accepted > 0 ? static_cast<double>(pass_outer) / accepted : 0.0;

  rep.passed = rep.frac_inner == 1.0 && accepted > 0 && rep.frac_outer == 1.0;
  rep.outside_asymptotic_regime = !rep.passed;
  return rep;
}

}  // namespace bml
