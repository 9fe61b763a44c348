#include "bml/kernels.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <numbers>

#include "bml/errors.hpp"

namespace bml {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Series of sum_{j in [lo, hi)} z_j zbar_j expanded around p.
Jet4 hermitian_square(int nu, const CVector& p, int lo, int hi) {
  Jet4 h(nu);
  std::vector<int> e(2 * nu, 0);
  for (int j = lo; j < hi; ++j) {
    Complex pj = p[j];
    std::fill(e.begin(), e.end(), 0);
    h.add_monomial(e, pj * std::conj(pj));
    e[j] = 1;
    h.add_monomial(e, std::conj(pj));
    e[j] = 0;
    e[nu + j] = 1;
    h.add_monomial(e, pj);
    e[j] = 1;
    h.add_monomial(e, 1.0);
  }
  return h;
}

// log kappa for the closed-form domains as a Jet4 around z.
KernelJets closed_form_jets(const ModelDomain& domain, const CVector& z) {
  const int nu = domain.ambient_dim();
  if (z.size() != nu) throw DomainError("kernel: point has wrong dimension");
  if (!domain.contains(z)) throw DomainError("kernel: point not inside the domain");
  Jet4 log_kappa(nu);
  switch (domain.kind()) {
    case DomainKind::UnitDisc: {
      Jet4 u = Jet4::constant(nu, 1.0) - hermitian_square(nu, z, 0, 1);
      log_kappa = Jet4::constant(nu, -std::log(kPi)) - u.log() * Complex(2.0);
      break;
    }
    case DomainKind::UnitBall: {
      Jet4 u = Jet4::constant(nu, 1.0) - hermitian_square(nu, z, 0, nu);
      double c = std::log(factorial(nu) / std::pow(kPi, nu));
      log_kappa = Jet4::constant(nu, c) - u.log() * Complex(nu + 1.0);
      break;
    }
    case DomainKind::ProductDiscBall: {
      const int n = domain.fiber_dim();
      Jet4 u1 = Jet4::constant(nu, 1.0) - hermitian_square(nu, z, 0, 1);
      Jet4 u2 = Jet4::constant(nu, 1.0) - hermitian_square(nu, z, 1, nu);
      double c = std::log(factorial(n) / std::pow(kPi, n + 1));
      log_kappa = Jet4::constant(nu, c) - u1.log() * Complex(2.0) - u2.log() * Complex(n + 1.0);
      break;
    }
    case DomainKind::HartogsFlat:
      throw KindError("kernel: no closed form for the Hartogs model; use the numerical engine");
  }
  KernelJets out{0.0, log_kappa};
  std::vector<int> zero(2 * nu, 0);
  out.kappa = std::exp(log_kappa.monomial(zero).real());
  return out;
}

}  // namespace

KernelModel::KernelModel(ModelDomain domain, KernelSource source, Evaluator evaluator)
    : domain_(std::move(domain)), source_(source), evaluator_(std::move(evaluator)) {}

KernelModel KernelModel::closed_form(const ModelDomain& domain) {
  if (domain.kind() == DomainKind::HartogsFlat)
    throw KindError("kernel: no closed form for the Hartogs model; use the numerical engine");
  return KernelModel(domain, KernelSource::ClosedForm,
                     [domain](const CVector& z) { return closed_form_jets(domain, z); });
}

KernelJets KernelModel::jets(const CVector& z) const { return evaluator_(z); }

Complex kernel_closed_form(const ModelDomain& domain, const CVector& z, const CVector& w) {
  const int nu = domain.ambient_dim();
  if (z.size() != nu || w.size() != nu) throw DomainError("kernel: point has wrong dimension");
  auto pairing = [&](int lo, int hi) {
    Complex s = 0;
    for (int j = lo; j < hi; ++j) s += z[j] * std::conj(w[j]);
    return s;
  };
  switch (domain.kind()) {
    case DomainKind::UnitDisc:
      return 1.0 / (kPi * std::pow(1.0 - pairing(0, 1), 2));
    case DomainKind::UnitBall:
      return factorial(nu) / (std::pow(kPi, nu) * std::pow(1.0 - pairing(0, nu), nu + 1));
    case DomainKind::ProductDiscBall: {
      const int n = domain.fiber_dim();
      return factorial(n) / (std::pow(kPi, n + 1) * std::pow(1.0 - pairing(0, 1), 2) *
                             std::pow(1.0 - pairing(1, nu), n + 1));
    }
    case DomainKind::HartogsFlat:
      throw KindError("kernel: no closed form for the Hartogs model; use the numerical engine");
  }
  throw KindError("kernel: unknown domain kind");
}

MetricReport metric_report(const KernelModel& km, const CVector& z, const CVector& xi) {
  const int nu = km.domain().ambient_dim();
  if (xi.size() != nu) throw DomainError("metric_report: xi has wrong dimension");
  KernelJets kj = km.jets(z);
  const Jet4& L = kj.log_kappa;

  auto d = [&](std::initializer_list<int> a_idx, std::initializer_list<int> b_idx) {
    std::vector<int> a(nu, 0), b(nu, 0);
    for (int i : a_idx) a[i] += 1;
    for (int i : b_idx) b[i] += 1;
    return L.deriv(a, b);
  };

  MetricReport rep;
  rep.kappa = kj.kappa;
  rep.G = CMatrix(nu, nu);
  for (int j = 0; j < nu; ++j)
    for (int k = 0; k < nu; ++k) rep.G(j, k) = d({j}, {k});

  Eigen::LLT<CMatrix> llt(rep.G);
  if (llt.info() != Eigen::Success)
    throw SingularMetricError("metric_report: Bergman metric not positive definite");
  rep.Ginv = llt.solve(CMatrix::Identity(nu, nu));
  rep.detG = 1.0;
  CMatrix chol = llt.matrixL();
  for (int j = 0; j < nu; ++j) rep.detG *= std::norm(chol(j, j));

  Complex b2 = 0;
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nu; ++j) b2 += rep.G(i, j) * xi[i] * std::conj(xi[j]);
  rep.B = std::sqrt(std::max(0.0, b2.real()));

  // R_{hbar j k lbar} = -d2_{k lbar} g_{j hbar}
  //                     + sum_{mu,nu} g^{nu mubar} d_k g_{j mubar} dbar_l g_{nu hbar}
  rep.curvature.assign(static_cast<size_t>(nu) * nu * nu * nu, Complex(0, 0));
  auto cidx = [nu](int h, int j, int k, int l) {
    return ((static_cast<size_t>(h) * nu + j) * nu + k) * nu + l;
  };
  for (int h = 0; h < nu; ++h)
    for (int j = 0; j < nu; ++j)
      for (int k = 0; k < nu; ++k)
        for (int l = 0; l < nu; ++l) {
          Complex val = -d({j, k}, {h, l});
          for (int mu = 0; mu < nu; ++mu)
            for (int nv = 0; nv < nu; ++nv)
              val += rep.Ginv(nv, mu) * d({j, k}, {mu}) * d({nv}, {h, l});
          rep.curvature[cidx(h, j, k, l)] = val;
        }

  if (!(xi.norm() > 0)) throw DomainError("metric_report: xi must be nonzero");
  CMatrix ric(nu, nu);  // ric(j,h) = sum_{k,l} g^{k lbar} R_{hbar j k lbar}
  for (int j = 0; j < nu; ++j)
    for (int h = 0; h < nu; ++h) {
      Complex acc = 0;
      for (int k = 0; k < nu; ++k)
        for (int l = 0; l < nu; ++l) acc += rep.Ginv(k, l) * rep.curvature[cidx(h, j, k, l)];
      ric(j, h) = acc;
    }
  Complex num = 0;
  for (int j = 0; j < nu; ++j)
    for (int h = 0; h < nu; ++h) num += ric(j, h) * xi[j] * std::conj(xi[h]);
  rep.ricci = num.real() / (rep.B * rep.B);

  Complex s = 0;
  for (int j = 0; j < nu; ++j)
    for (int h = 0; h < nu; ++h) s += rep.Ginv(j, h) * ric(j, h);
  rep.scalar = s.real();

  rep.J = rep.detG / rep.kappa;
  double fuks = (nu + 1.0) - rep.ricci;
  if (!(fuks > 0.0))
    throw RegimeError("metric_report: Ricci bound nu+1 violated; Kobayashi-Fuks undefined");
  rep.kobayashi_fuks = rep.B * std::sqrt(fuks);
  return rep;
}

double monge_ampere(double u, const CVector& grad, const CMatrix& hess) {
  const int nu = static_cast<int>(grad.size());
  if (hess.rows() != nu || hess.cols() != nu)
    throw DomainError("monge_ampere: Hessian has wrong shape");
  CMatrix bordered(nu + 1, nu + 1);
  bordered(0, 0) = u;
  for (int k = 0; k < nu; ++k) bordered(0, k + 1) = std::conj(grad[k]);  // u_kbar
  for (int j = 0; j < nu; ++j) bordered(j + 1, 0) = grad[j];             // u_j
  bordered.block(1, 1, nu, nu) = hess;
  Complex det = bordered.determinant();
  return ((nu % 2) ? -det : det).real();
}

double monge_ampere_of_kernel_root(const KernelModel& km, const CVector& z) {
  const int nu = km.domain().ambient_dim();
  KernelJets kj = km.jets(z);
  const Jet4& L = kj.log_kappa;
  auto d = [&](std::initializer_list<int> a_idx, std::initializer_list<int> b_idx) {
    std::vector<int> a(nu, 0), b(nu, 0);
    for (int i : a_idx) a[i] += 1;
    for (int i : b_idx) b[i] += 1;
    return L.deriv(a, b);
  };
  // u = exp(-L/(nu+1)); u_j = -u L_j/(nu+1);
  // u_{j kbar} = u [L_j L_kbar/(nu+1)^2 - L_{j kbar}/(nu+1)].
  const double w = 1.0 / (nu + 1.0);
  double u = std::pow(kj.kappa, -w);
  CVector grad(nu);
  CMatrix hess(nu, nu);
  for (int j = 0; j < nu; ++j) grad[j] = -u * w * d({j}, {});
  for (int j = 0; j < nu; ++j)
    for (int k = 0; k < nu; ++k)
      hess(j, k) = u * (w * w * d({j}, {}) * d({}, {k}) - w * d({j}, {k}));
  return monge_ampere(u, grad, hess);
}

double transform_under_biholomorphism(TransformQuantity q, double value_at_image,
                                      Complex det_jf, int nu) {
  double mod2 = std::norm(det_jf);
  switch (q) {
    case TransformQuantity::Lambda:
      return value_at_image * std::pow(mod2, nu + 1);
    case TransformQuantity::ExtremalI:
      return value_at_image * mod2;
    case TransformQuantity::ExtremalM:
      return value_at_image * std::pow(mod2, nu + 1);
    case TransformQuantity::ExtremalN:
      return value_at_image * std::pow(mod2, 2 * nu + 1);
    case TransformQuantity::J:
    case TransformQuantity::Ricci:
    case TransformQuantity::Scalar:
      return value_at_image;
  }
  throw DomainError("transform: unknown quantity");
}

}  // namespace bml
