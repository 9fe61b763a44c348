#include "bml/jets.hpp"

#include <array>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "bml/errors.hpp"

namespace bml {

namespace {
constexpr int kMaxDegree = 4;

uint64_t pack(std::span<const int> exps) {
  uint64_t key = 0;
  for (size_t i = 0; i < exps.size(); ++i) key |= static_cast<uint64_t>(exps[i]) << (4 * i);
  return key;
}
}  // namespace

struct Jet4::Table {
  int nvars = 0;
  std::vector<std::vector<int>> exps;
  std::unordered_map<uint64_t, int> index;
  std::vector<int> prod;  // M*M products, -1 when degree exceeds 4

  explicit Table(int nvars_in) : nvars(nvars_in) {
    std::vector<int> cur(nvars, 0);
    enumerate(cur, 0, 0);
    const int m = static_cast<int>(exps.size());
    for (int i = 0; i < m; ++i) index.emplace(pack(exps[i]), i);
    prod.assign(static_cast<size_t>(m) * m, -1);
    std::vector<int> sum(nvars);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        int deg = 0;
        for (int v = 0; v < nvars; ++v) {
          sum[v] = exps[i][v] + exps[j][v];
          deg += sum[v];
        }
        if (deg <= kMaxDegree) prod[static_cast<size_t>(i) * m + j] = index.at(pack(sum));
      }
    }
  }

  void enumerate(std::vector<int>& cur, int var, int deg) {
    if (var == nvars) {
      exps.push_back(cur);
      return;
    }
    for (int e = 0; e + deg <= kMaxDegree; ++e) {
      cur[var] = e;
      enumerate(cur, var + 1, deg + e);
    }
    cur[var] = 0;
  }
};

namespace {
std::map<int, std::unique_ptr<Jet4::Table>>& table_cache() {
  static std::map<int, std::unique_ptr<Jet4::Table>> cache;
  return cache;
}
std::mutex table_mutex;
}  // namespace

const Jet4::Table& Jet4::table() const {
  std::lock_guard<std::mutex> lock(table_mutex);
  auto& cache = table_cache();
  auto it = cache.find(2 * nu_);
  if (it == cache.end()) it = cache.emplace(2 * nu_, std::make_unique<Table>(2 * nu_)).first;
  return *it->second;
}

Jet4::Jet4(int nu) : nu_(nu) {
  if (nu < 1 || nu > 8) throw DomainError("jet: ambient dimension out of range");
  coeff_.assign(table().exps.size(), Complex(0, 0));
}

Jet4 Jet4::constant(int nu, Complex c) {
  Jet4 j(nu);
  j.coeff_[0] = c;  // index 0 is the all-zero exponent by enumeration order
  return j;
}

void Jet4::add_monomial(std::span<const int> exps, Complex c) {
  auto it = table().index.find(pack(exps));
  if (it == table().index.end()) throw DomainError("jet: exponent outside degree-4 table");
  coeff_[it->second] += c;
}

Complex Jet4::monomial(std::span<const int> exps) const {
  auto it = table().index.find(pack(exps));
  if (it == table().index.end()) throw DomainError("jet: exponent outside degree-4 table");
  return coeff_[it->second];
}

Jet4 Jet4::operator+(const Jet4& o) const {
  Jet4 out = *this;
  for (size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] += o.coeff_[i];
  return out;
}

Jet4 Jet4::operator-(const Jet4& o) const {
  Jet4 out = *this;
  for (size_t i = 0; i < coeff_.size(); ++i) out.coeff_[i] -= o.coeff_[i];
  return out;
}

Jet4& Jet4::operator+=(const Jet4& o) {
  for (size_t i = 0; i < coeff_.size(); ++i) coeff_[i] += o.coeff_[i];
  return *this;
}

Jet4 Jet4::operator*(Complex s) const {
  Jet4 out = *this;
  for (auto& c : out.coeff_) c *= s;
  return out;
}

Jet4 Jet4::operator*(const Jet4& o) const {
  const Table& tab = table();
  const int m = size();
  Jet4 out(nu_);
  for (int i = 0; i < m; ++i) {
    if (coeff_[i] == Complex(0, 0)) continue;
    const int* row = tab.prod.data() + static_cast<size_t>(i) * m;
    for (int j = 0; j < m; ++j) {
      if (row[j] < 0 || o.coeff_[j] == Complex(0, 0)) continue;
      out.coeff_[row[j]] += coeff_[i] * o.coeff_[j];
    }
  }
  return out;
}

Jet4 Jet4::log() const {
  Complex c0 = coeff_[0];
  if (std::abs(c0) == 0.0) throw DomainError("jet: log of series with zero constant term");
  Jet4 u = *this * (1.0 / c0);
  u.coeff_[0] = 0;
  Jet4 u2 = u * u;
  Jet4 u3 = u2 * u;
  Jet4 u4 = u3 * u;
  Jet4 out = u + (u2 * Complex(-0.5)) + (u3 * Complex(1.0 / 3.0)) + (u4 * Complex(-0.25));
  out.coeff_[0] = std::log(c0);
  return out;
}

Jet4 Jet4::exp() const {
  Complex c0 = coeff_[0];
  Jet4 u = *this;
  u.coeff_[0] = 0;
  Jet4 u2 = u * u;
  Jet4 u3 = u2 * u;
  Jet4 u4 = u3 * u;
  Jet4 out = u + (u2 * Complex(0.5)) + (u3 * Complex(1.0 / 6.0)) + (u4 * Complex(1.0 / 24.0));
  out.coeff_[0] += 1.0;
  return out * std::exp(c0);
}

Jet4 Jet4::pow(double alpha) const { return (log() * Complex(alpha)).exp(); }

Complex Jet4::deriv(std::span<const int> a, std::span<const int> b) const {
  if (static_cast<int>(a.size()) != nu_ || static_cast<int>(b.size()) != nu_)
    throw DomainError("jet: derivative multi-index has wrong length");
  std::vector<int> exps(2 * nu_);
  double fact = 1.0;
  for (int i = 0; i < nu_; ++i) {
    exps[i] = a[i];
    for (int k = 2; k <= a[i]; ++k) fact *= k;
  }
  for (int i = 0; i < nu_; ++i) {
    exps[nu_ + i] = b[i];
    for (int k = 2; k <= b[i]; ++k) fact *= k;
  }
  return monomial(exps) * fact;
}

}  // namespace bml
