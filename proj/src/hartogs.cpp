#include "bml/hartogs.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "bml/errors.hpp"

namespace bml {

namespace {

constexpr double kPi = std::numbers::pi;
using Real = long double;
using CReal = std::complex<Real>;
using MatR = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton on the Legendre recurrence.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double t = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double p0 = 0, p1 = 0;
    for (int it = 0; it < 100; ++it) {
      p0 = 1.0;
      p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
      }
      double dp = n * (t * p0 - p1) / (t * t - 1.0);
      double dt = p0 / dp;
      t -= dt;
      if (std::abs(dt) < 1e-16) break;
    }
    p0 = 1.0;
    p1 = 0.0;
    for (int j = 0; j < n; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
    }
    double dp = n * (t * p0 - p1) / (t * t - 1.0);
    x[i] = -t;
    x[n - 1 - i] = t;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
}

Complex pow_int(Complex z, int p) {
  Complex out = 1.0;
  for (int i = 0; i < p; ++i) out *= z;
  return out;
}

double binom(int n, int k) {
  double out = 1.0;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double fact(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

struct HartogsKernelEngine::Mode {
  int rank = 0;
  std::vector<int> piv;
  MatR chol;  // lower-triangular factor of P G P^T, rank columns
  MatR gram;  // assembled Gram (kept for diagnostics/tests)
};

HartogsKernelEngine::HartogsKernelEngine(const ModelDomain& domain, EngineConfig cfg)
    : domain_(domain), cfg_(cfg) {
  if (domain.kind() != DomainKind::HartogsFlat)
    throw KindError("hartogs engine: needs the Hartogs flat model");
  if (domain.ambient_dim() != 2)
    throw KindError("hartogs engine: restricted to C^2 (one fiber dimension)");
  if (cfg_.dmax < 2 || cfg_.dmax > 40) throw ValidationError("hartogs engine: dmax out of range");
  if (cfg_.kmax < 2) throw ValidationError("hartogs engine: kmax must be >= 2");
  build();
}

double HartogsKernelEngine::mode_weight(int k, double x) const {
  if (!(x < 0)) throw DomainError("mode_weight: x must be negative");
  const double r2 = domain_.box().r2;
  double rmax;
  if (cfg_.zero_profile) {
    rmax = r2;
  } else {
    const Profile& prof = domain_.profile();
    double phi_r2 = prof.value(r2 * r2);
    rmax = (-x >= phi_r2 || -x >= 1.0) ? r2 : std::sqrt(prof.inverse(-x));
  }
  return kPi * std::pow(rmax, 2 * (k + 1)) / (k + 1);
}

namespace {

struct XNode {
  double x, w;
};

// Lower-triangular Gram accumulation at scalar precision R; the
// extended_precision toggle selects long double vs double here.
template <typename R>
std::vector<MatR> assemble_grams(const std::vector<XNode>& xnodes, int nb, int nk,
                                 double r1, double center, double scale, int ny,
                                 const std::vector<double>& gy_x,
                                 const std::vector<double>& gy_w,
                                 const std::function<double(int, double)>& weight) {
  using CR = std::complex<R>;
  using Mat = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
  const CR c(static_cast<R>(center), 0);
  const R s = static_cast<R>(scale);
  std::vector<Mat> grams(nk, Mat::Zero(nb, nb));
  Mat gy(nb, nb);
  std::vector<CR> bv(nb);
  for (const auto& node : xnodes) {
    double ycap = std::sqrt(std::max(0.0, r1 * r1 - node.x * node.x));
    gy.setZero();
    for (int iy = 0; iy < ny; ++iy) {
      double y = ycap * gy_x[iy];
      double wy = ycap * gy_w[iy];
      CR u = (CR(static_cast<R>(node.x), static_cast<R>(y)) - c) / s;
      bv[0] = CR(1, 0);
      for (int j = 1; j < nb; ++j) bv[j] = bv[j - 1] * u;
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j <= i; ++j) {
          R re = bv[i].real() * bv[j].real() + bv[i].imag() * bv[j].imag();
          gy(i, j) += static_cast<R>(wy) * re;  // Re(b_i conj(b_j)); real by y-symmetry
        }
    }
    for (int k = 0; k < nk; ++k) {
      R wk = static_cast<R>(weight(k, node.x) * node.w);
      for (int i = 0; i < nb; ++i)
        for (int j = 0; j <= i; ++j) grams[k](i, j) += wk * gy(i, j);
    }
  }
  std::vector<MatR> out;
  out.reserve(nk);
  for (auto& g : grams) out.push_back(g.template cast<Real>());
  return out;
}

}  // namespace

void HartogsKernelEngine::build() {
  const double r1 = domain_.box().r1;
  const int nb = cfg_.dmax + 1;
  const int nk = cfg_.kmax + 1;

  // x panels: quadratically graded toward the corner at -r1, then
  // log-substituted (u = -ln(-x)) uniform panels toward 0 where the
  // weight's r_max transition lives.
  const double x_knee = -std::min(0.5, 0.5 * r1);
  const double u_knee = -std::log(-x_knee);
  const double u_max = 50.0;
  const int pa = std::max(8, cfg_.quad_panels / 4);
  const int pb = cfg_.quad_panels;
  std::vector<double> gl_x, gl_w;
  gauss_legendre(cfg_.quad_nodes, gl_x, gl_w);

  std::vector<XNode> xnodes;
  for (int p = 0; p < pa; ++p) {
    double f0 = static_cast<double>(p) / pa, f1 = static_cast<double>(p + 1) / pa;
    // grade toward -r1 (square-root edge of the half disc)
    double a = -r1 + (r1 + x_knee) * f0 * f0;
    double b = -r1 + (r1 + x_knee) * f1 * f1;
    for (int i = 0; i < cfg_.quad_nodes; ++i)
      xnodes.push_back({0.5 * (a + b) + 0.5 * (b - a) * gl_x[i], 0.5 * (b - a) * gl_w[i]});
  }
  for (int p = 0; p < pb; ++p) {
    double ua = u_knee + (u_max - u_knee) * p / pb;
    double ub = u_knee + (u_max - u_knee) * (p + 1) / pb;
    for (int i = 0; i < cfg_.quad_nodes; ++i) {
      double u = 0.5 * (ua + ub) + 0.5 * (ub - ua) * gl_x[i];
      double x = -std::exp(-u);
      xnodes.push_back({x, 0.5 * (ub - ua) * gl_w[i] * std::exp(-u)});  // dx = e^{-u} du
    }
  }

  const int ny = cfg_.dmax + 2;
  std::vector<double> gy_x, gy_w;
  gauss_legendre(ny, gy_x, gy_w);

  qx_.clear();
  qw_.clear();
  for (const auto& node : xnodes) {
    qx_.push_back(node.x);
    qw_.push_back(node.w);
  }

  std::function<double(int, double)> weight = [this](int k, double x) {
    return mode_weight(k, x);
  };
  std::vector<MatR> grams =
      cfg_.extended_precision
          ? assemble_grams<long double>(xnodes, nb, nk, r1, cfg_.basis_center,
                                        cfg_.basis_scale, ny, gy_x, gy_w, weight)
          : assemble_grams<double>(xnodes, nb, nk, r1, cfg_.basis_center, cfg_.basis_scale,
                                   ny, gy_x, gy_w, weight);

  auto modes = std::make_shared<std::vector<Mode>>(nk);
  diag_.clear();
  for (int k = 0; k < nk; ++k) {
    MatR g = grams[k];
    for (int i = 0; i < nb; ++i)
      for (int j = i + 1; j < nb; ++j) g(i, j) = g(j, i);
    Mode& md = (*modes)[k];
    md.gram = g;
    // pivoted Cholesky with diagonal drop tolerance
    MatR l = MatR::Zero(nb, nb);
    std::vector<int> piv(nb);
    for (int i = 0; i < nb; ++i) piv[i] = i;
    MatR a = g;
    Real maxdiag = 0;
    for (int i = 0; i < nb; ++i) maxdiag = std::max(maxdiag, a(i, i));
    int rank = 0;
    Real first_pivot = 0;
    Real last_pivot = 0;
    for (int col = 0; col < nb; ++col) {
      int best = col;
      for (int i = col + 1; i < nb; ++i)
        if (a(piv[i], piv[i]) - l.row(i).head(col).squaredNorm() >
            a(piv[best], piv[best]) - l.row(best).head(col).squaredNorm())
          best = i;
      std::swap(piv[col], piv[best]);
      MatR tmp = l.row(col);
      l.row(col) = l.row(best);
      l.row(best) = tmp;
      Real dj = a(piv[col], piv[col]) - l.row(col).head(col).squaredNorm();
      if (!(dj > static_cast<Real>(cfg_.drop_tol) * maxdiag)) break;
      if (col == 0) first_pivot = dj;
      last_pivot = dj;
      l(col, col) = std::sqrt(dj);
      for (int i = col + 1; i < nb; ++i) {
        Real v = a(piv[i], piv[col]) - l.row(i).head(col).dot(l.row(col).head(col));
        l(i, col) = v / l(col, col);
      }
      ++rank;
    }
    if (rank < 3)
      throw IllConditionedError("hartogs engine: Gram factorization rank collapsed");
    md.rank = rank;
    md.piv = piv;
    md.chol = l.topLeftCorner(rank, rank);
    ModeDiagnostics dg;
    dg.k = k;
    dg.rank = rank;
    dg.cond_estimate = static_cast<double>(first_pivot / last_pivot);
    dg.degree_reduced = rank < nb;
    diag_.push_back(dg);
  }
  modes_ = std::move(modes);
}

// Values (deriv = a) of d^a/dz^a of the centered monomials at z1.
CVector HartogsKernelEngine::basis_derivs(Complex z1, int /*order*/, int deriv) const {
  const int nb = cfg_.dmax + 1;
  const Complex c(cfg_.basis_center, 0.0);
  const double s = cfg_.basis_scale;
  CVector out = CVector::Zero(nb);
  Complex u = (z1 - c) / s;
  std::vector<Complex> up(nb);
  up[0] = 1.0;
  for (int j = 1; j < nb; ++j) up[j] = up[j - 1] * u;
  double sfac = std::pow(s, -deriv);
  for (int j = deriv; j < nb; ++j) {
    double fj = 1.0;
    for (int i = 0; i < deriv; ++i) fj *= (j - i);
    out[j] = fj * sfac * up[j - deriv];
  }
  return out;
}

namespace {

// x = L^{-1} P b over the accepted pivots.
Eigen::VectorXcd pivoted_solve(const Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>& l,
                               const std::vector<int>& piv, int rank,
                               const CVector& b) {
  Eigen::VectorXcd x(rank);
  std::vector<std::complex<long double>> acc(rank);
  for (int i = 0; i < rank; ++i) {
    std::complex<long double> v(b[piv[i]].real(), b[piv[i]].imag());
    for (int j = 0; j < i; ++j) v -= static_cast<long double>(l(i, j)) * acc[j];
    acc[i] = v / l(i, i);
    x[i] = Complex(static_cast<double>(acc[i].real()), static_cast<double>(acc[i].imag()));
  }
  return x;
}

}  // namespace

Complex HartogsKernelEngine::mode_kernel(int k, Complex z1, Complex w1) const {
  if (k < 0 || k > cfg_.kmax) throw DomainError("mode_kernel: mode index out of range");
  const Mode& md = (*modes_)[k];
  Eigen::VectorXcd xz = pivoted_solve(md.chol, md.piv, md.rank, basis_derivs(z1, 0, 0));
  Eigen::VectorXcd xw = pivoted_solve(md.chol, md.piv, md.rank, basis_derivs(w1, 0, 0));
  return xw.dot(xz);  // sum_i x_i(z) conj(x_i(w))
}

CMatrix HartogsKernelEngine::mode_kernel_jets(int k, Complex z1, int order) const {
  if (k < 0 || k > cfg_.kmax) throw DomainError("mode_kernel_jets: mode index out of range");
  const Mode& md = (*modes_)[k];
  std::vector<Eigen::VectorXcd> xs(order + 1);
  for (int a = 0; a <= order; ++a)
    xs[a] = pivoted_solve(md.chol, md.piv, md.rank, basis_derivs(z1, order, a));
  CMatrix jets(order + 1, order + 1);
  for (int a = 0; a <= order; ++a)
    for (int b = 0; b <= order; ++b) jets(a, b) = xs[b].dot(xs[a]);
  return jets;
}

HartogsJets HartogsKernelEngine::kernel_jets(const CVector& z) const {
  if (z.size() != 2) throw DomainError("hartogs engine: expects points in C^2");
  if (cfg_.zero_profile) {
    if (!(std::abs(z[0]) < domain_.box().r1 && z[0].real() < 0 &&
          std::abs(z[1]) < domain_.box().r2))
      throw DomainError("hartogs engine: point not inside the half-disc product");
  } else if (!domain_.contains(z)) {
    throw DomainError("hartogs engine: point not inside the domain");
  }
  const Complex z1 = z[0];
  const Complex z2 = z[1];
  const double az2 = std::abs(z2);
  const int kuse = az2 == 0.0 ? 2 : cfg_.kmax;

  Jet4 kappa_series(2);
  double last_mode_contrib = 0.0;
  double kappa0 = 0.0;
  std::vector<int> e(4, 0);
  for (int k = 0; k <= kuse; ++k) {
    int max_a2 = std::min(k, 4);
    CMatrix jk = mode_kernel_jets(k, z1, 4);
    double contrib = std::abs(jk(0, 0)) * std::pow(az2, 2 * k);
    if (k == kuse) last_mode_contrib = contrib;
    kappa0 += jk(0, 0).real() * std::pow(az2, 2 * k);
    for (int a2 = 0; a2 <= max_a2; ++a2)
      for (int b2 = 0; b2 <= max_a2; ++b2) {
        if (a2 + b2 > 4) continue;
        if (k > a2 && az2 == 0.0) continue;
        if (k > b2 && az2 == 0.0) continue;
        Complex zfac = binom(k, a2) * pow_int(z2, k - a2) * binom(k, b2) *
                       pow_int(std::conj(z2), k - b2);
        if (zfac == Complex(0, 0)) continue;
        for (int a1 = 0; a1 + a2 + b2 <= 4; ++a1)
          for (int b1 = 0; a1 + b1 + a2 + b2 <= 4; ++b1) {
            Complex coeff = jk(a1, b1) / (fact(a1) * fact(b1)) * zfac;
            e[0] = a1;
            e[1] = a2;
            e[2] = b1;
            e[3] = b2;
            kappa_series.add_monomial(e, coeff);
          }
      }
  }

  HartogsJets out;
  out.tail_rel = kappa0 > 0 ? last_mode_contrib / kappa0 : 0.0;
  out.truncation_warning = az2 > 0 && out.tail_rel > 1e-9;
  if (!(kappa0 > 0))
    throw IllConditionedError("hartogs engine: nonpositive kernel value");
  out.jets.kappa = kappa0;
  out.jets.log_kappa = kappa_series.log();
  return out;
}

double HartogsKernelEngine::kappa(const CVector& z) const { return kernel_jets(z).jets.kappa; }

KernelModel HartogsKernelEngine::model() const {
  auto self = std::make_shared<HartogsKernelEngine>(*this);
  return KernelModel(domain_, KernelSource::NumericalModeSum,
                     [self](const CVector& z) { return self->kernel_jets(z).jets; });
}

Eigen::MatrixXd HartogsKernelEngine::gram(int k) const {
  if (k < 0 || k > cfg_.kmax) throw DomainError("gram: mode index out of range");
  return (*modes_)[k].gram.cast<double>();
}

std::vector<std::pair<Complex, double>> HartogsKernelEngine::quadrature(int k) const {
  std::vector<double> gy_x, gy_w;
  gauss_legendre(cfg_.dmax + 2, gy_x, gy_w);
  const double r1 = domain_.box().r1;
  std::vector<std::pair<Complex, double>> out;
  for (size_t q = 0; q < qx_.size(); ++q) {
    double ycap = std::sqrt(std::max(0.0, r1 * r1 - qx_[q] * qx_[q]));
    double wk = mode_weight(k, qx_[q]) * qw_[q];
    for (size_t iy = 0; iy < gy_x.size(); ++iy)
      out.emplace_back(Complex(qx_[q], ycap * gy_x[iy]), wk * ycap * gy_w[iy]);
  }
  return out;
}

}  // namespace bml
