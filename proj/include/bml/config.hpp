#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "bml/geometry.hpp"
#include "bml/hartogs.hpp"

namespace bml {

// Minimal structured-text configuration: [section] headers with key = value
// lines, inline tables { k = v, ... }, arrays [a, b], strings, numbers,
// booleans. Enough for the run configurations this lab consumes.
class ConfigValue {
 public:
  using Array = std::vector<ConfigValue>;
  using Table = std::map<std::string, ConfigValue>;
  using Storage = std::variant<std::monostate, bool, double, std::string, Array, Table>;

  ConfigValue() = default;
  explicit ConfigValue(Storage s) : storage_(std::move(s)) {}

  bool is_table() const { return std::holds_alternative<Table>(storage_); }
  bool is_array() const { return std::holds_alternative<Array>(storage_); }
  bool has(const std::string& key) const;
  const ConfigValue& at(const std::string& key) const;

  bool as_bool() const;
  double as_double() const;
  int as_int() const;
  const std::string& as_string() const;
  const Array& as_array() const;
  const Table& as_table() const;

  double get_or(const std::string& key, double fallback) const;
  int get_or(const std::string& key, int fallback) const;
  bool get_or(const std::string& key, bool fallback) const;
  std::string get_or(const std::string& key, const std::string& fallback) const;

  Storage& storage() { return storage_; }

 private:
  Storage storage_;
};

ConfigValue parse_config(const std::string& text);
ConfigValue load_config_file(const std::string& path);

// Typed run configuration assembled from the parsed tree.
struct CurveSpec {
  double alpha = 1.0;
  double big_n = 2.0;
  std::vector<double> direction = {1.0};
  std::string schedule = "default";  // or "normal"
};

struct SweepSpec {
  std::vector<double> log_d_grid;       // natural logs of the d-grid
  std::vector<double> epsilons = {0.1};
  std::vector<double> deltas = {0.05};
  std::vector<CVector> xis;
  std::vector<std::string> quantities = {"J", "R", "S", "MF", "MK"};
  double kernel_regime_min_log_d = -20.0;  // engine used for ln d >= this
  std::string csv_path;
  std::string json_path;
};

struct CertifySpec {
  std::vector<double> log_d_grid = {-60.0};
  std::vector<double> epsilons = {0.1, 0.3};
  std::vector<double> deltas = {0.05, 0.2};
  int samples = 10000;
  std::string json_path;
};

struct RunConfig {
  std::string domain_kind = "hartogs-flat";
  int m = 1;
  int fiber_dim = 1;
  HartogsBox box;
  double delta0 = 2.0;
  CurveSpec curve;
  SweepSpec sweep;
  CertifySpec certify;
  EngineConfig engine;

  ModelDomain make_domain() const;
  ConeCurve make_curve() const;
};

RunConfig parse_run_config(const ConfigValue& root);
RunConfig load_run_config(const std::string& path);

}  // namespace bml
