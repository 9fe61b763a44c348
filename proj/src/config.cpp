#include "bml/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "bml/errors.hpp"

namespace bml {

bool ConfigValue::has(const std::string& key) const {
  return is_table() && as_table().count(key) > 0;
}

const ConfigValue& ConfigValue::at(const std::string& key) const {
  const auto& t = as_table();
  auto it = t.find(key);
  if (it == t.end()) throw ConfigError("config: missing key '" + key + "'");
  return it->second;
}

bool ConfigValue::as_bool() const {
  if (auto* b = std::get_if<bool>(&storage_)) return *b;
  throw ConfigError("config: expected a boolean");
}

double ConfigValue::as_double() const {
  if (auto* d = std::get_if<double>(&storage_)) return *d;
  throw ConfigError("config: expected a number");
}

int ConfigValue::as_int() const {
  double d = as_double();
  int i = static_cast<int>(d);
  if (d != i) throw ConfigError("config: expected an integer");
  return i;
}

const std::string& ConfigValue::as_string() const {
  if (auto* s = std::get_if<std::string>(&storage_)) return *s;
  throw ConfigError("config: expected a string");
}

const ConfigValue::Array& ConfigValue::as_array() const {
  if (auto* a = std::get_if<Array>(&storage_)) return *a;
  throw ConfigError("config: expected an array");
}

const ConfigValue::Table& ConfigValue::as_table() const {
  if (auto* t = std::get_if<Table>(&storage_)) return *t;
  throw ConfigError("config: expected a table");
}

double ConfigValue::get_or(const std::string& key, double fallback) const {
  return has(key) ? at(key).as_double() : fallback;
}
int ConfigValue::get_or(const std::string& key, int fallback) const {
  return has(key) ? at(key).as_int() : fallback;
}
bool ConfigValue::get_or(const std::string& key, bool fallback) const {
  return has(key) ? at(key).as_bool() : fallback;
}
std::string ConfigValue::get_or(const std::string& key, const std::string& fallback) const {
  return has(key) ? at(key).as_string() : fallback;
}

namespace {

struct Parser {
  const std::string& text;
  size_t pos = 0;

  explicit Parser(const std::string& t) : text(t) {}

  void skip_ws(bool newlines) {
    while (pos < text.size()) {
      char c = text[pos];
      if (c == '#') {
        while (pos < text.size() && text[pos] != '\n') ++pos;
      } else if (c == ' ' || c == '\t' || c == '\r' || (newlines && c == '\n')) {
        ++pos;
      } else {
        break;
      }
    }
  }

  bool eof() const { return pos >= text.size(); }
  char peek() const { return pos < text.size() ? text[pos] : '\0'; }

  void expect(char c) {
    if (peek() != c) throw ConfigError(std::string("config: expected '") + c + "'");
    ++pos;
  }

  std::string ident() {
    size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' ||
            text[pos] == '-' || text[pos] == '.'))
      ++pos;
    if (pos == start) throw ConfigError("config: expected an identifier");
    return text.substr(start, pos - start);
  }

  ConfigValue value() {
    skip_ws(false);
    char c = peek();
    if (c == '"') {
      ++pos;
      std::string s;
      while (!eof() && text[pos] != '"') s += text[pos++];
      expect('"');
      return ConfigValue(ConfigValue::Storage(s));
    }
    if (c == '[') {
      ++pos;
      ConfigValue::Array arr;
      skip_ws(true);
      while (peek() != ']') {
        arr.push_back(value());
        skip_ws(true);
        if (peek() == ',') {
          ++pos;
          skip_ws(true);
        }
      }
      expect(']');
      return ConfigValue(ConfigValue::Storage(arr));
    }
    if (c == '{') {
      ++pos;
      ConfigValue::Table tbl;
      skip_ws(true);
      while (peek() != '}') {
        std::string key = ident();
        skip_ws(false);
        expect('=');
        tbl[key] = value();
        skip_ws(true);
        if (peek() == ',') {
          ++pos;
          skip_ws(true);
        }
      }
      expect('}');
      return ConfigValue(ConfigValue::Storage(tbl));
    }
    if (text.compare(pos, 4, "true") == 0) {
      pos += 4;
      return ConfigValue(ConfigValue::Storage(true));
    }
    if (text.compare(pos, 5, "false") == 0) {
      pos += 5;
      return ConfigValue(ConfigValue::Storage(false));
    }
    size_t start = pos;
    while (pos < text.size() && (std::isdigit(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '+' || text[pos] == '-' || text[pos] == '.' ||
                                 text[pos] == 'e' || text[pos] == 'E'))
      ++pos;
    if (pos == start) throw ConfigError("config: cannot parse value");
    return ConfigValue(ConfigValue::Storage(std::stod(text.substr(start, pos - start))));
  }
};

ConfigValue::Table* descend(ConfigValue::Table& root, const std::string& dotted) {
  ConfigValue::Table* cur = &root;
  size_t start = 0;
  while (true) {
    size_t dot = dotted.find('.', start);
    std::string part = dotted.substr(start, dot == std::string::npos ? dot : dot - start);
    auto& slot = (*cur)[part];
    if (!slot.is_table()) slot = ConfigValue(ConfigValue::Storage(ConfigValue::Table{}));
    cur = &std::get<ConfigValue::Table>(slot.storage());
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  return cur;
}

}  // namespace

ConfigValue parse_config(const std::string& text) {
  Parser p(text);
  ConfigValue::Table root;
  ConfigValue::Table* current = &root;
  while (true) {
    p.skip_ws(true);
    if (p.eof()) break;
    if (p.peek() == '[') {
      ++p.pos;
      std::string name = p.ident();
      p.skip_ws(false);
      p.expect(']');
      current = descend(root, name);
      continue;
    }
    std::string key = p.ident();
    p.skip_ws(false);
    p.expect('=');
    (*current)[key] = p.value();
  }
  return ConfigValue(ConfigValue::Storage(root));
}

ConfigValue load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {

CVector parse_xi(const ConfigValue::Array& arr) {
  // length nu of reals, or 2*nu interleaved (re, im)
  CVector out;
  std::vector<double> vals;
  vals.reserve(arr.size());
  for (const auto& v : arr) vals.push_back(v.as_double());
  out = CVector::Zero(static_cast<int>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) out[static_cast<int>(i)] = vals[i];
  return out;
}

}  // namespace

RunConfig parse_run_config(const ConfigValue& root) {
  RunConfig rc;
  if (root.has("domain")) {
    const ConfigValue& d = root.at("domain");
    rc.domain_kind = d.get_or("kind", rc.domain_kind);
    rc.m = d.get_or("m", rc.m);
    rc.fiber_dim = d.get_or("n", rc.fiber_dim);
    rc.box.r1 = d.get_or("r1", rc.box.r1);
    rc.box.r2 = d.get_or("r2", rc.box.r2);
    rc.delta0 = d.get_or("delta0", rc.delta0);
  }
  if (root.has("profile")) {
    const ConfigValue& p = root.at("profile");
    std::string form = p.get_or("form", std::string("exp-inverse"));
    if (form != "exp-inverse")
      throw ConfigError("config: only the exp-inverse profile form is configurable");
    rc.m = p.get_or("m", rc.m);
  }
  if (root.has("curve")) {
    const ConfigValue& c = root.at("curve");
    rc.curve.alpha = c.get_or("alpha", rc.curve.alpha);
    rc.curve.big_n = c.get_or("bigN", rc.curve.big_n);
    rc.curve.schedule = c.get_or("schedule", rc.curve.schedule);
    if (c.has("direction")) {
      rc.curve.direction.clear();
      for (const auto& v : c.at("direction").as_array())
        rc.curve.direction.push_back(v.as_double());
    }
  }
  if (root.has("sweep")) {
    const ConfigValue& s = root.at("sweep");
    if (s.has("log_d_grid")) {
      rc.sweep.log_d_grid.clear();
      for (const auto& v : s.at("log_d_grid").as_array())
        rc.sweep.log_d_grid.push_back(v.as_double());
    }
    if (s.has("epsilons")) {
      rc.sweep.epsilons.clear();
      for (const auto& v : s.at("epsilons").as_array())
        rc.sweep.epsilons.push_back(v.as_double());
    }
    if (s.has("deltas")) {
      rc.sweep.deltas.clear();
      for (const auto& v : s.at("deltas").as_array()) rc.sweep.deltas.push_back(v.as_double());
    }
    if (s.has("xi")) {
      rc.sweep.xis.clear();
      for (const auto& v : s.at("xi").as_array()) rc.sweep.xis.push_back(parse_xi(v.as_array()));
    }
    if (s.has("quantities")) {
      rc.sweep.quantities.clear();
      for (const auto& v : s.at("quantities").as_array())
        rc.sweep.quantities.push_back(v.as_string());
    }
    rc.sweep.kernel_regime_min_log_d =
        s.get_or("kernel_regime_min_log_d", rc.sweep.kernel_regime_min_log_d);
    rc.sweep.csv_path = s.get_or("csv", rc.sweep.csv_path);
    rc.sweep.json_path = s.get_or("json", rc.sweep.json_path);
  }
  if (root.has("certify")) {
    const ConfigValue& c = root.at("certify");
    if (c.has("log_d_grid")) {
      rc.certify.log_d_grid.clear();
      for (const auto& v : c.at("log_d_grid").as_array())
        rc.certify.log_d_grid.push_back(v.as_double());
    }
    if (c.has("epsilons")) {
      rc.certify.epsilons.clear();
      for (const auto& v : c.at("epsilons").as_array())
        rc.certify.epsilons.push_back(v.as_double());
    }
    if (c.has("deltas")) {
      rc.certify.deltas.clear();
      for (const auto& v : c.at("deltas").as_array()) rc.certify.deltas.push_back(v.as_double());
    }
    rc.certify.samples = c.get_or("samples", rc.certify.samples);
    rc.certify.json_path = c.get_or("json", rc.certify.json_path);
  }
  if (root.has("engine")) {
    const ConfigValue& e = root.at("engine");
    rc.engine.dmax = e.get_or("dmax", rc.engine.dmax);
    rc.engine.kmax = e.get_or("kmax", rc.engine.kmax);
    rc.engine.quad_panels = e.get_or("quad_panels", rc.engine.quad_panels);
    rc.engine.quad_nodes = e.get_or("quad_nodes", rc.engine.quad_nodes);
    rc.engine.extended_precision = e.get_or("extended_precision", rc.engine.extended_precision);
    rc.engine.zero_profile = e.get_or("zero_profile", rc.engine.zero_profile);
    rc.engine.basis_center = e.get_or("basis_center", rc.engine.basis_center);
    rc.engine.basis_scale = e.get_or("basis_scale", rc.engine.basis_scale);
  }
  return rc;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(load_config_file(path));
}

ModelDomain RunConfig::make_domain() const {
  if (domain_kind == "hartogs-flat")
    return ModelDomain::hartogs_flat(Profile::exp_inverse(m), fiber_dim, box);
  if (domain_kind == "product-disc-ball") return ModelDomain::product_disc_ball(fiber_dim);
  if (domain_kind == "unit-disc") return ModelDomain::unit_disc();
  if (domain_kind == "unit-ball") return ModelDomain::unit_ball(fiber_dim);
  throw ConfigError("config: unknown domain kind '" + domain_kind + "'");
}

ConeCurve RunConfig::make_curve() const {
  Eigen::VectorXd dir(static_cast<int>(curve.direction.size()));
  for (size_t i = 0; i < curve.direction.size(); ++i) dir[static_cast<int>(i)] = curve.direction[i];
  if (curve.schedule == "normal") {
    return ConeCurve(curve.alpha, curve.big_n, Eigen::VectorXd::Zero(fiber_dim),
                     ConeCurve::Schedule::Normal);
  }
  if (curve.schedule != "default")
    throw ConfigError("config: curve schedule must be 'default' or 'normal'");
  if (dir.size() != fiber_dim) throw ConfigError("config: curve direction has wrong dimension");
  return ConeCurve(curve.alpha, curve.big_n, dir, ConeCurve::Schedule::Default);
}

}  // namespace bml
