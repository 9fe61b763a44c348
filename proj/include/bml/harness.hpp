#pragma once

#include <optional>
#include <string>

#include "bml/config.hpp"
#include "bml/frames.hpp"
#include "bml/kobayashi.hpp"

namespace bml {

// One sweep output row; NaN-valued fields print as empty CSV cells.
struct SweepRow {
  std::string regime;  // "bracket", "kernel" or "product"
  double t = nan(), d = nan(), dstar = nan(), p2 = nan(), A = nan();
  double epsilon = nan(), delta = nan();
  int xi_index = 0;
  double xi_normal = nan(), xi_tangent = nan();
  double kappa = nan(), detG = nan(), J = nan(), R = nan(), S = nan(), MF = nan();
  double J_ratio = nan(), R_value = nan(), S_value = nan(), MF_ratio = nan();
  double MK_center = nan(), MK_lower_ratio = nan(), MK_upper_ratio = nan();
  double loc_factor = nan(), radius_ratio = nan();
  double d1eps = nan(), d2eps = nan();
  int cap_d1 = 0, cap_d2 = 0, certified = 0;
  double dstar_closed_rel_err = nan();
  double log_phi_p2_over_d = nan(), log_dphi_p2_over_d = nan(), p2_over_dstar = nan();
  std::string error;

  static double nan() { return std::numeric_limits<double>::quiet_NaN(); }
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string csv;
  std::string json_summary;
};

// One row per (t, eps, delta, xi); deterministic given the configuration;
// row failures land in the error column, never abort the sweep.
SweepResult run_sweep(const RunConfig& cfg);

struct CertifyResult {
  std::vector<InclusionReport> reports;
  std::string json;
};

CertifyResult run_certify(const RunConfig& cfg);

// --- acceptance -----------------------------------------------------------

enum class VerifyLevel { Fast, Full };

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string details;
  double seconds = 0;
};

struct VerifyReport {
  std::vector<CriterionResult> results;
  bool all_pass = true;
  std::string to_json() const;
};

// Runs the acceptance criteria; Fast skips the mode-sum Gram suites.
VerifyReport verify_all(VerifyLevel level);

// frozen numeric formatting: 17 significant digits, '.' decimal
std::string format_g17(double v);

}  // namespace bml
