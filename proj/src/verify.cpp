#include <chrono>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bml/errors.hpp"
#include "bml/extremal.hpp"
#include "bml/fd.hpp"
#include "bml/harness.hpp"
#include "bml/hartogs.hpp"
#include "bml/kobayashi.hpp"
#include "bml/oracles.hpp"

namespace bml {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

double product_j_target(int n) {
  return 2.0 * std::pow(kPi, n + 1) * std::pow(n + 1.0, n) / factorial(n);
}

struct Check {
  bool pass = true;
  double worst = 0;
  std::string note;
  void record(double err, double tol, const std::string& what) {
    worst = std::max(worst, err);
    if (!(err <= tol)) {
      pass = false;
      if (note.size() < 400)
        note += what + " err=" + format_g17(err) + " tol=" + format_g17(tol) + "; ";
    }
  }
};

double rel(double got, double want) {
  return std::abs(got - want) / std::max(1e-300, std::abs(want));
}

CVector random_xi(std::mt19937& rng, int nu) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector xi(nu);
  double nrm = 0;
  do {
    for (int j = 0; j < nu; ++j) xi[j] = Complex(u(rng), u(rng));
    nrm = xi.norm();
  } while (nrm < 0.1);
  return xi;
}

CVector random_point(std::mt19937& rng, int nu, double radius) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CVector z(nu);
  do {
    for (int j = 0; j < nu; ++j) z[j] = radius * Complex(u(rng), u(rng));
  } while (z.norm() >= radius);
  return z;
}

// ---- criterion 1: closed-form exactness (Lemma 2.3 + product Kobayashi) --
CriterionResult criterion_closed_form() {
  CriterionResult cr{1, "closed-form-exactness", false, "", 0};
  Check ck;
  std::mt19937 rng(20240811);
  for (int n = 1; n <= 4; ++n) {
    ModelDomain dom = ModelDomain::product_disc_ball(n);
    KernelModel km = KernelModel::closed_form(dom);
    CVector z0 = CVector::Zero(n + 1);
    for (int rep = 0; rep < 10; ++rep) {
      CVector xi = random_xi(rng, n + 1);
      MetricReport mr = metric_report(km, z0, xi);
      ck.record(rel(mr.J, product_j_target(n)), 1e-12, "J(n=" + std::to_string(n) + ")");
      ck.record(std::abs(mr.ricci + 1.0), 1e-12, "R(n=" + std::to_string(n) + ")");
      ck.record(rel(mr.scalar, -(n + 1.0)), 1e-12, "S(n=" + std::to_string(n) + ")");
      double mf_target = std::sqrt(n + 3.0) *
                         std::sqrt(2.0 * std::norm(xi[0]) + (n + 1.0) * xi.tail(n).squaredNorm());
      ck.record(rel(mr.kobayashi_fuks, mf_target), 1e-12, "MF(n=" + std::to_string(n) + ")");
      double mk_target = std::max(std::abs(xi[0]), xi.tail(n).norm());
      ck.record(std::abs(kobayashi_product(xi) - mk_target), 0.0, "MK(n=" + std::to_string(n) + ")");
    }
  }
  cr.pass = ck.pass;
  cr.details = ck.pass ? "Lemma 2.3 values and product Kobayashi formula exact to 1e-12, n=1..4"
                       : ck.note;
  return cr;
}

// ---- criterion 2: Monge-Ampere / Ramadanov ------------------------------
CriterionResult criterion_monge_ampere() {
  CriterionResult cr{2, "monge-ampere-ramadanov", false, "", 0};
  Check ck;
  std::mt19937 rng(20240812);
  // J(1 - |z|^2) = 1 at 20 ball points
  for (int nu : {2, 3}) {
    for (int rep = 0; rep < 10; ++rep) {
      CVector z = random_point(rng, nu, 0.8);
      double u = 1.0 - z.squaredNorm();
      CVector grad(nu);
      for (int j = 0; j < nu; ++j) grad[j] = -std::conj(z[j]);
      CMatrix hess = -CMatrix::Identity(nu, nu);
      ck.record(std::abs(monge_ampere(u, grad, hess) - 1.0), 1e-10,
                "MA(1-|z|^2) nu=" + std::to_string(nu));
    }
  }
  // J(kappa^{-1/(nu+1)}) = (nu+1)^{-nu} J_D on disc/ball/product
  std::vector<ModelDomain> doms;
  doms.push_back(ModelDomain::unit_disc());
  doms.push_back(ModelDomain::unit_ball(2));
  doms.push_back(ModelDomain::product_disc_ball(1));
  for (const auto& dom : doms) {
    KernelModel km = KernelModel::closed_form(dom);
    const int nu = dom.ambient_dim();
    for (int rep = 0; rep < 10; ++rep) {
      CVector z = random_point(rng, nu, 0.45);
      CVector xi = CVector::Zero(nu);
      xi[0] = 1;
      MetricReport mr = metric_report(km, z, xi);
      double lhs = monge_ampere_of_kernel_root(km, z);
      double rhs = std::pow(nu + 1.0, -nu) * mr.J;
      ck.record(rel(lhs, rhs), 1e-8, "Ramadanov nu=" + std::to_string(nu));
    }
  }
  cr.pass = ck.pass;
  cr.details = ck.pass ? "MA(1-|z|^2)=1 to 1e-10; Ramadanov identity to 1e-8 on disc/ball/product"
                       : ck.note;
  return cr;
}

// ---- criterion 3: extremal identities ------------------------------------
CriterionResult criterion_extremal() {
  CriterionResult cr{3, "extremal-identities", false, "", 0};
  Check ck;
  std::mt19937 rng(20240813);
  struct Case {
    ModelDomain dom;
    int degree;
  };
  std::vector<Case> cases;
  cases.push_back({ModelDomain::unit_disc(), 16});
  cases.push_back({ModelDomain::unit_ball(2), 14});
  cases.push_back({ModelDomain::unit_ball(3), 10});
  for (const auto& c : cases) {
    const int nu = c.dom.ambient_dim();
    KernelModel km = KernelModel::closed_form(c.dom);
    OrthonormalBasis basis = OrthonormalBasis::closed_form(c.dom, c.degree);
    std::vector<CVector> pts;
    pts.push_back(CVector::Zero(nu));
    for (int rep = 0; rep < 5; ++rep) pts.push_back(random_point(rng, nu, 0.35));
    for (const auto& z : pts) {
      CVector xi = random_xi(rng, nu);
      MetricReport mr = metric_report(km, z, xi);
      double lambda = estimate_lambda(basis, z).value;
      ck.record(rel(lambda / std::pow(mr.kappa, nu + 1), mr.J), 1e-6, "Prop2.1(1)");
      double ivalue = estimate_I(basis, mr, z, xi).value;
      double r_from_i = (nu + 1.0) - ivalue / (mr.B * mr.B * mr.kappa);
      ck.record(rel(r_from_i, mr.ricci), 1e-6, "Prop2.1(2)");
      double lvalue = estimate_L(basis, mr, z).value;
      double s_from_l = nu * (nu + 1.0) - lvalue / mr.kappa;
      ck.record(rel(s_from_l, mr.scalar), 1e-6, "Prop2.1(4)");
      double mvalue = estimate_M(basis, mr, z, xi).value;
      ck.record(rel(ivalue, mvalue / (std::pow(mr.kappa, nu) * mr.J)), 1e-6, "identity(M)");
    }
  }
  // transformation laws under 20 random unitaries on the ball (|det| = 1)
  {
    ModelDomain dom = ModelDomain::unit_ball(2);
    KernelModel km = KernelModel::closed_form(dom);
    OrthonormalBasis basis = OrthonormalBasis::closed_form(dom, 12);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int rep = 0; rep < 20; ++rep) {
      CMatrix a(2, 2);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) a(i, j) = Complex(u(rng), u(rng));
      Eigen::HouseholderQR<CMatrix> qr(a);
      CMatrix q = qr.householderQ();
      CVector z = random_point(rng, 2, 0.3);
      CVector xi = random_xi(rng, 2);
      CVector uz = q * z;
      CVector uxi = q * xi;
      Complex detq = q.determinant();
      MetricReport mr_z = metric_report(km, z, xi);
      MetricReport mr_uz = metric_report(km, uz, uxi);
      double lam_z = estimate_lambda(basis, z).value;
      double lam_uz = estimate_lambda(basis, uz).value;
      ck.record(rel(lam_z, transform_under_biholomorphism(TransformQuantity::Lambda, lam_uz,
                                                          detq, 2)),
                1e-8, "lambda unitary");
      double i_z = estimate_I(basis, mr_z, z, xi).value;
      double i_uz = estimate_I(basis, mr_uz, uz, uxi).value;
      ck.record(rel(i_z, transform_under_biholomorphism(TransformQuantity::ExtremalI, i_uz,
                                                        detq, 2)),
                1e-8, "I unitary");
      double m_z = estimate_M(basis, mr_z, z, xi).value;
      double m_uz = estimate_M(basis, mr_uz, uz, uxi).value;
      ck.record(rel(m_z, transform_under_biholomorphism(TransformQuantity::ExtremalM, m_uz,
                                                        detq, 2)),
                1e-8, "M unitary");
      double n_z = estimate_N(basis, mr_z, z).value;
      double n_uz = estimate_N(basis, mr_uz, uz).value;
      ck.record(rel(n_z, transform_under_biholomorphism(TransformQuantity::ExtremalN, n_uz,
                                                        detq, 2)),
                1e-8, "N unitary");
    }
  }
  cr.pass = ck.pass;
  cr.details = ck.pass ? "Prop 2.1 identities + identity (M) to 1e-6; unitary laws to 1e-8"
                       : ck.note;
  return cr;
}

// ---- criterion 4: numerical-kernel oracle ---------------------------------
CriterionResult criterion_hartogs_oracle() {
  CriterionResult cr{4, "numerical-kernel-oracle", false, "", 0};
  Check ck;
  ModelDomain dom = ModelDomain::hartogs_flat(Profile::exp_inverse(1), 1, {1.0, 1.0});
  EngineConfig cfg;
  cfg.zero_profile = true;
  cfg.dmax = 24;
  HartogsKernelEngine engine(dom, cfg);
  EngineConfig cfg20 = cfg;
  cfg20.dmax = 20;
  HartogsKernelEngine engine20(dom, cfg20);

  std::vector<CVector> pts;
  auto add = [&](Complex z1, Complex z2) {
    CVector z(2);
    z[0] = z1;
    z[1] = z2;
    pts.push_back(z);
  };
  add({-0.30, 0.00}, {0.10, 0.00});
  add({-0.40, 0.10}, {0.20, 0.00});
  add({-0.50, -0.15}, {-0.15, 0.10});
  add({-0.35, 0.20}, {0.05, -0.20});
  add({-0.25, -0.10}, {0.15, 0.15});
  add({-0.55, 0.05}, {-0.10, -0.10});
  add({-0.45, -0.25}, {0.25, 0.05});
  add({-0.60, 0.15}, {0.00, 0.18});
  add({-0.35, -0.05}, {-0.22, 0.00});
  add({-0.28, 0.12}, {0.12, -0.08});

  auto log_oracle = [&](const CVector& z) {
    return Complex(std::log(oracles::half_disc_product_kappa(z, 1.0)), 0.0);
  };
  for (const auto& z : pts) {
    HartogsJets hj = engine.kernel_jets(z);
    double oracle_kappa = oracles::half_disc_product_kappa(z, 1.0);
    ck.record(rel(hj.jets.kappa, oracle_kappa), 1e-6, "kappa oracle");
    // G entries vs FD of the oracle's log kappa
    std::vector<int> a(2, 0), b(2, 0);
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        std::fill(a.begin(), a.end(), 0);
        std::fill(b.begin(), b.end(), 0);
        a[j] = 1;
        b[k] = 1;
        Complex engine_g = hj.jets.log_kappa.deriv(a, b);
        Complex oracle_g = fd::jet(log_oracle, z, a, b, 0.02);
        ck.record(std::abs(engine_g - oracle_g) / std::max(1.0, std::abs(oracle_g)), 1e-5,
                  "G oracle");
      }
    // degree stability 20 -> 24
    double k20 = engine20.kernel_jets(z).jets.kappa;
    ck.record(rel(k20, hj.jets.kappa), 1e-7, "Dmax stability");
  }
  cr.pass = ck.pass;
  cr.details = ck.pass
                   ? "mode-sum kernel matches the conformal oracle: kappa 1e-6, G 1e-5, "
                     "Dmax 20->24 stable to 1e-7"
                   : ck.note;
  return cr;
}

// ---- criterion 5: frames / scaling diagnostics ----------------------------
CriterionResult criterion_frames_diagnostics() {
  CriterionResult cr{5, "frames-scaling-diagnostics", false, "", 0};
  Check ck;
  const double delta0 = 2.0;
  for (int m : {1, 2}) {
    ModelDomain dom = ModelDomain::hartogs_flat(Profile::exp_inverse(m), 1, {1.0, 1.0});
    const Profile& prof = dom.profile();
    for (bool slanted : {false, true}) {
      ConeCurve curve = slanted ? ConeCurve(1.0, 2.0, Eigen::VectorXd::Ones(1))
                                : ConeCurve::normal(1);
      std::vector<double> lphi, ldphi, p2ds;
      std::vector<NormalizationFrame> frames;
      for (int k = 1; k <= 10; ++k) {
        double t = std::exp(-20.0 * k);
        NormalizationFrame fr = build_frame(dom, curve, t);
        frames.push_back(fr);
        lphi.push_back(prof.value_log(fr.p2() * fr.p2()).log() - std::log(fr.d()));
        ldphi.push_back(prof.derivative_log(fr.p2() * fr.p2()).log() - std::log(fr.d()));
        p2ds.push_back(fr.p2() / fr.dstar());
      }
      std::string tag = "m=" + std::to_string(m) + (slanted ? " slanted" : " normal");
      for (size_t i = lphi.size() - 5; i + 1 < lphi.size(); ++i) {
        bool ok1 = lphi[i + 1] <= lphi[i] || (std::isinf(lphi[i]) && std::isinf(lphi[i + 1]));
        bool ok2 = ldphi[i + 1] <= ldphi[i] || (std::isinf(ldphi[i]) && std::isinf(ldphi[i + 1]));
        bool ok3 = p2ds[i + 1] <= p2ds[i];
        ck.record(ok1 ? 0.0 : 1.0, 0.5, "phi(p2^2)/d monotone " + tag);
        ck.record(ok2 ? 0.0 : 1.0, 0.5, "phi'(p2^2)/d monotone " + tag);
        ck.record(ok3 ? 0.0 : 1.0, 0.5, "p2/d* monotone " + tag);
      }
      for (double eps : {0.1, 0.3}) {
        double bound = std::pow(1.0 + eps, -1.0 / m) - 0.02;
        for (size_t i = frames.size() - 3; i < frames.size(); ++i) {
          ScaledRegion region = d1_d2_radii(frames[i], eps, delta0);
          double ratio = frames[i].dstar() / region.d2;
          ck.record(ratio >= bound ? 0.0 : bound - ratio, 1e-12,
                    "d*/d2 liminf " + tag + " eps=" + format_g17(eps));
          ck.record(region.d1 <= region.d2 ? 0.0 : region.d1 - region.d2, 1e-12,
                    "d1<=d2 " + tag);
        }
      }
    }
  }
  cr.pass = ck.pass;
  cr.details = ck.pass ? "Lemma 3.1 ratios monotone on last five grid points; "
                         "d*/d2^eps >= (1+eps)^{-1/m} - 0.02 on last three"
                       : ck.note;
  return cr;
}

// ---- criterion 6: inclusion certification ---------------------------------
CriterionResult criterion_certification() {
  CriterionResult cr{6, "inclusion-certification", false, "", 0};
  Check ck;
  const double delta0 = 2.0;
  ModelDomain dom = ModelDomain::hartogs_flat(Profile::exp_inverse(1), 1, {1.0, 1.0});
  ConeCurve curve = ConeCurve::normal(1);
  std::ostringstream t0s;
  for (double logd : {-60.0, -100.0}) {
    NormalizationFrame fr = build_frame(dom, curve, std::exp(logd));
    for (double eps : {0.1, 0.3})
      for (double delta : {0.05, 0.2}) {
        InclusionReport rep = certify_inclusions(fr, eps, delta, 10000, delta0);
        std::string tag = "ln d=" + format_g17(logd) + " eps=" + format_g17(eps) +
                          " delta=" + format_g17(delta);
        ck.record(1.0 - rep.frac_inner, 0.0, "frac_inner " + tag);
        ck.record(1.0 - rep.frac_outer, 0.0, "frac_outer " + tag);
        ck.record(rep.accepted_outer > 1000 ? 0.0 : 1.0, 0.5, "outer sample size " + tag);
      }
  }
  cr.pass = ck.pass;
  cr.details = ck.pass ? "Lemma 3.3 inclusions certified (both fractions 1.0, 1e4 samples) "
                         "at d in {e^-60, e^-100}, (eps,delta) in {0.1,0.3}x{0.05,0.2}"
                       : ck.note;
  return cr;
}

// ---- criterion 7: Theorem 1.5 bracket + Corollary 1.6 normalizer ----------
CriterionResult criterion_bracket() {
  CriterionResult cr{7, "theorem-1.5-bracket", false, "", 0};
  Check ck;
  const double delta0 = 2.0;
  ModelDomain dom = ModelDomain::hartogs_flat(Profile::exp_inverse(1), 1, {1.0, 1.0});
  const Profile& prof = dom.profile();
  ConeCurve curve = ConeCurve::normal(1);
  CVector e1 = CVector::Zero(2), e2 = CVector::Zero(2), mix = CVector::Zero(2);
  e1[0] = 1;
  e2[1] = 1;
  mix[0] = 0.6;
  mix[1] = 0.8;

  // containment on every certified grid row
  for (int k = 1; k <= 10; ++k) {
    double t = std::exp(-20.0 * k);
    NormalizationFrame fr = build_frame(dom, curve, t);
    for (double eps : {0.1, 0.3})
      for (double delta : {0.05, 0.2}) {
        InclusionReport rep = certify_inclusions(fr, eps, delta, 2000, delta0);
        if (!rep.passed) continue;
        ScaledRegion region = d1_d2_radii(fr, eps, delta0);
        for (const CVector& xi : {e1, e2, mix}) {
          KobayashiBracket br = squeeze_bracket(fr, region, delta, xi);
          bool contains = br.lower_ratio <= 1.0 && 1.0 <= br.upper_ratio;
          ck.record(contains ? 0.0 : 1.0, 0.5, "containment k=" + std::to_string(k));
        }
      }
  }

  // pinned interval at (0.1, 0.05), d = e^{-100}, and the tightening ladder
  struct Rung {
    double eps, delta, logd;
  };
  std::vector<Rung> ladder = {{0.3, 0.2, -60.0}, {0.2, 0.1, -80.0}, {0.1, 0.05, -100.0},
                              {0.05, 0.02, -160.0}};
  double prev_lo = 0.0, prev_hi = 1e300;
  std::ostringstream ladder_note;
  for (const Rung& rung : ladder) {
    NormalizationFrame fr = build_frame(dom, curve, std::exp(rung.logd));
    InclusionReport rep = certify_inclusions(fr, rung.eps, rung.delta, 4000, delta0);
    ck.record(rep.passed ? 0.0 : 1.0, 0.5, "ladder certification");
    ScaledRegion region = d1_d2_radii(fr, rung.eps, delta0);
    KobayashiBracket br = squeeze_bracket(fr, region, rung.delta, e1);
    ladder_note << "[" << format_g17(br.lower_ratio) << "," << format_g17(br.upper_ratio)
                << "] ";
    ck.record(br.lower_ratio >= prev_lo ? 0.0 : 1.0, 0.5, "ladder tightens (lower)");
    ck.record(br.upper_ratio <= prev_hi ? 0.0 : 1.0, 0.5, "ladder tightens (upper)");
    prev_lo = br.lower_ratio;
    prev_hi = br.upper_ratio;
    if (rung.eps == 0.1 && rung.delta == 0.05) {
      ck.record(br.lower_ratio >= 0.90 ? 0.0 : 0.90 - br.lower_ratio, 1e-12,
                "interval lower >= 0.90");
      ck.record(br.upper_ratio <= 1.06 ? 0.0 : br.upper_ratio - 1.06, 1e-12,
                "interval upper <= 1.06");
    }
  }

  // Corollary 1.6: normal-direction normalizer d* = sqrt(phi^{-1}(t))
  for (int k = 1; k <= 10; ++k) {
    double t = std::exp(-20.0 * k);
    NormalizationFrame fr = build_frame(dom, curve, t);
    double closed = std::sqrt(prof.inverse(t));
    ck.record(rel(fr.dstar(), closed), 1e-10, "Cor 1.6 normalizer");
  }
  cr.pass = ck.pass;
  cr.details = ck.pass ? "1 in bracket on all certified rows; ladder intervals " +
                             ladder_note.str() + "nested; (0.1,0.05,e^-100) within [0.90,1.06]; "
                             "d* = sqrt(phi^{-1}(t)) to 1e-10"
                       : ck.note;
  return cr;
}

// ---- criterion 8: honest substitution -------------------------------------
CriterionResult criterion_honest(bool full) {
  CriterionResult cr{8, "honest-substitution", false, "", 0};
  Check ck;
  // (b) degenerate product-domain sweep: all five targets exact at 0
  for (int n : {1, 2}) {
    RunConfig cfg;
    cfg.domain_kind = "product-disc-ball";
    cfg.fiber_dim = n;
    SweepResult res = run_sweep(cfg);
    for (const auto& row : res.rows) {
      if (!row.error.empty()) {
        ck.record(1.0, 0.5, "product sweep row error: " + row.error);
        continue;
      }
      ck.record(rel(row.J_ratio, 1.0), 1e-12, "product J_ratio");
      ck.record(std::abs(row.R_value + 1.0), 1e-12, "product R");
      ck.record(rel(row.S_value, -(n + 1.0)), 1e-12, "product S");
      ck.record(rel(row.MF_ratio, 1.0), 1e-12, "product MF_ratio");
      ck.record(rel(row.MK_lower_ratio, 1.0), 1e-12, "product MK lower");
      ck.record(rel(row.MK_upper_ratio, 1.0), 1e-12, "product MK upper");
    }
  }
  std::ostringstream trend;
  if (full) {
    // (c) kernel-regime trend of J_ratio toward 1 over d in {e^-6 .. e^-20}
    ModelDomain dom = ModelDomain::hartogs_flat(Profile::exp_inverse(1), 1, {1.0, 1.0});
    EngineConfig ecfg;
    ecfg.dmax = 24;
    ecfg.kmax = 4;
    HartogsKernelEngine engine(dom, ecfg);
    KernelModel km = engine.model();
    CVector xi = CVector::Zero(2);
    xi[0] = 1;
    std::vector<double> ratios;
    for (double logd : {-6.0, -10.0, -14.0, -20.0}) {
      CVector q = CVector::Zero(2);
      q[0] = -std::exp(logd);
      MetricReport mr = metric_report(km, q, xi);
      ratios.push_back(mr.J / product_j_target(1));
    }
    trend << "J_ratio over ln d {-6,-10,-14,-20}: ";
    for (double r : ratios) trend << format_g17(r) << " ";
    for (size_t i = ratios.size() - 3; i + 1 < ratios.size(); ++i) {
      double ei = std::abs(ratios[i] - 1.0), ej = std::abs(ratios[i + 1] - 1.0);
      bool ok = ej <= ei || std::abs(ratios[i + 1] - ratios[i]) <= 0.02;
      ck.record(ok ? 0.0 : 1.0, 0.5, "J_ratio drift last three");
    }
  }
  cr.pass = ck.pass;
  std::string statement =
      "Theorems 1.3-1.4 converge at logarithmic rates unreachable in double precision by "
      "direct kernel computation; accepted surrogates: squeeze brackets/trends, the exact "
      "degenerate product sweep, and the kernel-regime J_ratio drift. ";
  cr.details = statement + (full ? trend.str() : "(kernel trend runs at level=full)") +
               (ck.pass ? "" : (" FAIL: " + ck.note));
  return cr;
}

}  // namespace

VerifyReport verify_all(VerifyLevel level) {
  VerifyReport report;
  auto run = [&](auto&& fn) {
    auto start = std::chrono::steady_clock::now();
    CriterionResult cr = fn();
    cr.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.all_pass = report.all_pass && cr.pass;
    report.results.push_back(std::move(cr));
  };
  run(criterion_closed_form);
  run(criterion_monge_ampere);
  run(criterion_extremal);
  if (level == VerifyLevel::Full) run(criterion_hartogs_oracle);
  run(criterion_frames_diagnostics);
  run(criterion_certification);
  run(criterion_bracket);
  run([&] { return criterion_honest(level == VerifyLevel::Full); });
  return report;
}

}  // namespace bml
