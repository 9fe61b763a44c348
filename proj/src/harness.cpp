#include "bml/harness.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <thread>

#include <nlohmann/json.hpp>

#include "bml/errors.hpp"
#include "bml/hartogs.hpp"
#include "bml/kernels.hpp"

namespace bml {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;

double product_j_target(int n) {
  double nf = 1;
  for (int k = 2; k <= n; ++k) nf *= k;
  return 2.0 * std::pow(kPi, n + 1) * std::pow(n + 1.0, n) / nf;
}

// Deterministic chunked parallel map preserving index order.
template <typename Fn>
void parallel_for_indexed(int n, Fn&& fn) {
  unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (n < 4 || hw == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  int nthreads = static_cast<int>(std::min<unsigned>(hw, 8));
  std::vector<std::thread> pool;
  for (int tid = 0; tid < nthreads; ++tid) {
    pool.emplace_back([&, tid] {
      for (int i = tid; i < n; i += nthreads) fn(i);
    });
  }
  for (auto& th : pool) th.join();
}

const char* kCsvHeader =
    "regime,t,d,dstar,p2,A,epsilon,delta,xi_index,xi_normal,xi_tangent,"
    "kappa,detG,J,R,S,MF,J_ratio,R_value,S_value,MF_ratio,"
    "MK_center,MK_lower_ratio,MK_upper_ratio,loc_factor,radius_ratio,"
    "d1eps,d2eps,cap_d1,cap_d2,certified,dstar_closed_rel_err,"
    "log_phi_p2_over_d,log_dphi_p2_over_d,p2_over_dstar,error";

std::string cell(double v) { return std::isnan(v) ? std::string() : format_g17(v); }

std::string row_to_csv(const SweepRow& r) {
  std::string out;
  out += r.regime;
  for (double v : {r.t, r.d, r.dstar, r.p2, r.A, r.epsilon, r.delta})
    out += "," + cell(v);
  out += "," + std::to_string(r.xi_index);
  for (double v : {r.xi_normal, r.xi_tangent, r.kappa, r.detG, r.J, r.R, r.S, r.MF,
                   r.J_ratio, r.R_value, r.S_value, r.MF_ratio, r.MK_center,
                   r.MK_lower_ratio, r.MK_upper_ratio, r.loc_factor, r.radius_ratio,
                   r.d1eps, r.d2eps})
    out += "," + cell(v);
  out += "," + std::to_string(r.cap_d1) + "," + std::to_string(r.cap_d2) + "," +
         std::to_string(r.certified);
  for (double v : {r.dstar_closed_rel_err, r.log_phi_p2_over_d, r.log_dphi_p2_over_d,
                   r.p2_over_dstar})
    out += "," + cell(v);
  out += "," + r.error;
  return out;
}

std::vector<CVector> default_xis(int nu) {
  std::vector<CVector> xis;
  CVector e1 = CVector::Zero(nu);
  e1[0] = 1;
  CVector e2 = CVector::Zero(nu);
  e2[1] = 1;
  CVector mix = CVector::Zero(nu);
  mix[0] = 0.6;
  mix[1] = 0.8;
  xis.push_back(e1);
  xis.push_back(e2);
  xis.push_back(mix);
  return xis;
}

CVector pad_xi(const CVector& xi, int nu) {
  if (xi.size() == nu) return xi;
  if (xi.size() == 2 * nu) {
    CVector out(nu);
    for (int i = 0; i < nu; ++i) out[i] = Complex(xi[2 * i].real(), xi[2 * i + 1].real());
    return out;
  }
  throw ConfigError("sweep: xi vector has wrong dimension");
}

void product_sweep(const RunConfig& cfg, std::vector<SweepRow>& rows) {
  const ModelDomain domain = cfg.make_domain();
  const int nu = domain.ambient_dim();
  const int n = domain.fiber_dim();
  KernelModel km = KernelModel::closed_form(domain);
  std::vector<CVector> xis = cfg.sweep.xis;
  if (xis.empty()) xis = default_xis(nu);
  CVector z0 = CVector::Zero(nu);
  for (size_t xi_idx = 0; xi_idx < xis.size(); ++xi_idx) {
    SweepRow row;
    row.regime = "product";
    row.xi_index = static_cast<int>(xi_idx);
    try {
      CVector xi = pad_xi(xis[xi_idx], nu);
      MetricReport rep = metric_report(km, z0, xi);
      // degenerate frame of the already-scaled model: d = 1/2, d* = 1
      row.d = 0.5;
      row.dstar = 1.0;
      row.xi_normal = std::abs(xi[0]);
      row.xi_tangent = xi.tail(nu - 1).norm();
      row.kappa = rep.kappa;
      row.detG = rep.detG;
      row.J = rep.J;
      row.R = rep.ricci;
      row.S = rep.scalar;
      row.MF = rep.kobayashi_fuks;
      row.J_ratio = rep.J / product_j_target(n);
      row.R_value = rep.ricci;
      row.S_value = rep.scalar;
      double norm2 = row.xi_normal * row.xi_normal / (2.0 * row.d * row.d) +
                     (n + 1.0) * row.xi_tangent * row.xi_tangent / (row.dstar * row.dstar);
      row.MF_ratio = rep.kobayashi_fuks / (std::sqrt(norm2) * std::sqrt(n + 3.0));
      double mk = kobayashi_product(xi);
      row.MK_center = std::max(row.xi_normal / (2.0 * row.d), row.xi_tangent / row.dstar);
      row.MK_lower_ratio = mk / row.MK_center;
      row.MK_upper_ratio = mk / row.MK_center;
      row.loc_factor = 1.0;
      row.radius_ratio = 1.0;
      row.certified = 1;
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(row);
  }
}

struct HartogsRowTask {
  double log_d;
  double epsilon;
  double delta;
  int xi_index;
};

void hartogs_sweep(const RunConfig& cfg, std::vector<SweepRow>& rows) {
  const ModelDomain domain = cfg.make_domain();
  const int nu = domain.ambient_dim();
  const int n = domain.fiber_dim();
  const ConeCurve curve = cfg.make_curve();
  const Profile& prof = domain.profile();
  std::vector<CVector> xis = cfg.sweep.xis;
  if (xis.empty()) xis = default_xis(nu);

  bool want_kernel =
      std::find(cfg.sweep.quantities.begin(), cfg.sweep.quantities.end(), "kernel") !=
      cfg.sweep.quantities.end();
  std::shared_ptr<HartogsKernelEngine> engine;
  if (want_kernel && nu == 2)
    engine = std::make_shared<HartogsKernelEngine>(domain, cfg.engine);

  // frames are shared across (eps, delta, xi); build them once per t
  std::vector<std::optional<NormalizationFrame>> frames(cfg.sweep.log_d_grid.size());
  std::vector<std::string> frame_errors(cfg.sweep.log_d_grid.size());
  parallel_for_indexed(static_cast<int>(cfg.sweep.log_d_grid.size()), [&](int i) {
    try {
      frames[i].emplace(build_frame(domain, curve, std::exp(cfg.sweep.log_d_grid[i])));
    } catch (const Error& e) {
      frame_errors[i] = e.what();
    }
  });

  std::vector<HartogsRowTask> tasks;
  for (size_t ti = 0; ti < cfg.sweep.log_d_grid.size(); ++ti)
    for (double eps : cfg.sweep.epsilons)
      for (double delta : cfg.sweep.deltas)
        for (size_t xi_idx = 0; xi_idx < xis.size(); ++xi_idx)
          tasks.push_back({cfg.sweep.log_d_grid[ti], eps, delta, static_cast<int>(xi_idx)});

  rows.resize(tasks.size());
  parallel_for_indexed(static_cast<int>(tasks.size()), [&](int idx) {
    const HartogsRowTask& task = tasks[idx];
    SweepRow row;
    size_t ti = 0;
    while (cfg.sweep.log_d_grid[ti] != task.log_d) ++ti;
    row.t = std::exp(task.log_d);
    row.epsilon = task.epsilon;
    row.delta = task.delta;
    row.xi_index = task.xi_index;
    try {
      if (!frames[ti]) throw ConvergenceError(frame_errors[ti]);
      const NormalizationFrame& frame = *frames[ti];
      CVector xi = pad_xi(xis[task.xi_index], nu);
      row.d = frame.d();
      row.dstar = frame.dstar();
      row.p2 = frame.p2();
      row.A = frame.A();
      row.regime = "bracket";

      ScaledRegion region = d1_d2_radii(frame, task.epsilon, cfg.delta0);
      row.d1eps = region.d1;
      row.d2eps = region.d2;
      row.cap_d1 = region.d1_capped;
      row.cap_d2 = region.d2_capped;

      InclusionReport cert =
          certify_inclusions(frame, task.epsilon, task.delta, 2000, cfg.delta0);
      row.certified = cert.passed ? 1 : 0;

      KobayashiBracket br = squeeze_bracket(frame, region, task.delta, xi);
      row.xi_normal = br.norm_normal;
      row.xi_tangent = br.norm_tangent;
      row.MK_center = br.center;
      row.MK_lower_ratio = br.lower_ratio;
      row.MK_upper_ratio = br.upper_ratio;
      row.loc_factor = br.loc_factor;
      row.radius_ratio = br.radius_ratio;

      // Lemma 3.1 diagnostics (log space)
      row.log_phi_p2_over_d =
          prof.value_log(frame.p2() * frame.p2()).log() - std::log(frame.d());
      row.log_dphi_p2_over_d =
          prof.derivative_log(frame.p2() * frame.p2()).log() - std::log(frame.d());
      row.p2_over_dstar = frame.p2() / frame.dstar();

      if (curve.schedule() == ConeCurve::Schedule::Normal) {
        double closed = std::sqrt(prof.inverse(row.t));
        row.dstar_closed_rel_err = std::abs(frame.dstar() - closed) / closed;
      }

      if (engine && task.log_d >= cfg.sweep.kernel_regime_min_log_d) {
        row.regime = "kernel";
        KernelModel km = engine->model();
        MetricReport rep = metric_report(km, frame.q(), xi);
        row.kappa = rep.kappa;
        row.detG = rep.detG;
        row.J = rep.J;
        row.R = rep.ricci;
        row.S = rep.scalar;
        row.MF = rep.kobayashi_fuks;
        row.J_ratio = rep.J / product_j_target(n);
        row.R_value = rep.ricci;
        row.S_value = rep.scalar;
        double norm2 = br.norm_normal * br.norm_normal / (2.0 * row.d * row.d) +
                       (n + 1.0) * br.norm_tangent * br.norm_tangent /
                           (row.dstar * row.dstar);
        row.MF_ratio = rep.kobayashi_fuks / (std::sqrt(norm2) * std::sqrt(n + 3.0));
      }
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows[idx] = row;
  });
}

json trend_summary(const std::vector<SweepRow>& rows) {
  json out = json::object();
  // bracket containment and empirical t0 per (eps, delta)
  std::map<std::pair<double, double>, json> groups;
  for (const auto& r : rows) {
    if (std::isnan(r.epsilon)) continue;
    auto key = std::make_pair(r.epsilon, r.delta);
    auto& g = groups[key];
    if (g.is_null()) {
      g = json::object();
      g["epsilon"] = r.epsilon;
      g["delta"] = r.delta;
      g["containment_all_certified"] = true;
      g["t0_empirical"] = nullptr;
    }
    if (r.certified) {
      bool contains = r.MK_lower_ratio <= 1.0 && 1.0 <= r.MK_upper_ratio;
      if (!contains) g["containment_all_certified"] = false;
      if (g["t0_empirical"].is_null() || r.t > g["t0_empirical"].get<double>())
        g["t0_empirical"] = r.t;
    }
  }
  json garr = json::array();
  for (auto& [key, g] : groups) garr.push_back(g);
  out["bracket_groups"] = garr;

  // last-three J_ratio drift over kernel rows (first xi only)
  std::vector<double> jr;
  for (const auto& r : rows)
    if (r.regime == "kernel" && r.xi_index == 0 && !std::isnan(r.J_ratio))
      jr.push_back(r.J_ratio);
  if (jr.size() >= 3) {
    json drift = json::array();
    for (size_t i = jr.size() - 3; i < jr.size(); ++i) drift.push_back(jr[i]);
    out["J_ratio_last_three"] = drift;
  }
  return out;
}

}  // namespace

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

SweepResult run_sweep(const RunConfig& cfg) {
  SweepResult result;
  if (cfg.domain_kind == "product-disc-ball") {
    product_sweep(cfg, result.rows);
  } else if (cfg.domain_kind == "hartogs-flat") {
    if (cfg.sweep.log_d_grid.empty()) throw ConfigError("sweep: log_d_grid is empty");
    for (size_t i = 1; i < cfg.sweep.log_d_grid.size(); ++i)
      if (!(cfg.sweep.log_d_grid[i] < cfg.sweep.log_d_grid[i - 1]))
        throw ConfigError("sweep: t grid must be strictly decreasing");
    for (double e : cfg.sweep.epsilons)
      if (!(e > 0) || !(e < 1)) throw ConfigError("sweep: epsilon must be in (0,1)");
    for (double d : cfg.sweep.deltas)
      if (!(d > 0) || !(d < 1)) throw ConfigError("sweep: delta must be in (0,1)");
    hartogs_sweep(cfg, result.rows);
  } else {
    throw ConfigError("sweep: domain kind '" + cfg.domain_kind + "' is not sweepable");
  }

  std::string csv = kCsvHeader;
  csv += "\n";
  for (const auto& r : result.rows) {
    csv += row_to_csv(r);
    csv += "\n";
  }
  result.csv = csv;

  json summary;
  summary["domain"] = cfg.domain_kind;
  summary["m"] = cfg.m;
  summary["delta0"] = cfg.delta0;
  summary["box"] = {{"r1", cfg.box.r1}, {"r2", cfg.box.r2}};
  summary["rows"] = result.rows.size();
  summary["trends"] = trend_summary(result.rows);
  result.json_summary = summary.dump(2);

  if (!cfg.sweep.csv_path.empty()) {
    std::ofstream out(cfg.sweep.csv_path, std::ios::binary);
    out << result.csv;
  }
  if (!cfg.sweep.json_path.empty()) {
    std::ofstream out(cfg.sweep.json_path, std::ios::binary);
    out << result.json_summary << "\n";
  }
  return result;
}

CertifyResult run_certify(const RunConfig& cfg) {
  if (cfg.domain_kind != "hartogs-flat")
    throw ConfigError("certify: needs the hartogs-flat domain");
  const ModelDomain domain = cfg.make_domain();
  const ConeCurve curve = cfg.make_curve();

  struct Task {
    double log_d, eps, delta;
  };
  std::vector<Task> tasks;
  for (double ld : cfg.certify.log_d_grid)
    for (double eps : cfg.certify.epsilons)
      for (double delta : cfg.certify.deltas) tasks.push_back({ld, eps, delta});

  CertifyResult result;
  result.reports.resize(tasks.size());
  parallel_for_indexed(static_cast<int>(tasks.size()), [&](int i) {
    NormalizationFrame frame = build_frame(domain, curve, std::exp(tasks[i].log_d));
    result.reports[i] =
        certify_inclusions(frame, tasks[i].eps, tasks[i].delta, cfg.certify.samples, cfg.delta0);
  });

  json arr = json::array();
  std::map<std::pair<double, double>, double> t0;
  for (const auto& rep : result.reports) {
    json r;
    r["t"] = rep.t;
    r["d"] = rep.d;
    r["epsilon"] = rep.epsilon;
    r["delta"] = rep.delta;
    r["frac_inner"] = rep.frac_inner;
    r["frac_outer"] = rep.frac_outer;
    r["samples_inner"] = rep.samples_inner;
    r["samples_outer"] = rep.samples_outer;
    r["accepted_outer"] = rep.accepted_outer;
    r["cap_flags"] = {{"d1", rep.d1_capped}, {"d2", rep.d2_capped}};
    r["passed"] = rep.passed;
    r["outside_asymptotic_regime"] = rep.outside_asymptotic_regime;
    json cex = json::array();
    for (const auto& p : rep.counterexamples_inner) {
      json pt = json::array();
      for (int j = 0; j < p.size(); ++j) pt.push_back({p[j].real(), p[j].imag()});
      cex.push_back(pt);
    }
    r["counterexamples"] = cex;
    arr.push_back(r);
    if (rep.passed) {
      auto key = std::make_pair(rep.epsilon, rep.delta);
      auto it = t0.find(key);
      if (it == t0.end() || rep.t > it->second) t0[key] = rep.t;
    }
  }
  json out;
  out["reports"] = arr;
  json t0arr = json::array();
  for (auto& [key, tmax] : t0)
    t0arr.push_back({{"epsilon", key.first}, {"delta", key.second}, {"t0_empirical", tmax}});
  out["t0_empirical"] = t0arr;
  out["delta0"] = cfg.delta0;
  result.json = out.dump(2);

  if (!cfg.certify.json_path.empty()) {
    std::ofstream f(cfg.certify.json_path, std::ios::binary);
    f << result.json << "\n";
  }
  return result;
}

std::string VerifyReport::to_json() const {
  json arr = json::array();
  for (const auto& r : results) {
    arr.push_back({{"id", r.id},
                   {"name", r.name},
                   {"pass", r.pass},
                   {"details", r.details},
                   {"seconds", r.seconds}});
  }
  json out;
  out["criteria"] = arr;
  out["all_pass"] = all_pass;
  return out.dump(2);
}

}  // namespace bml
