#pragma once

#include <cmath>
#include <limits>

namespace bml {

// Nonnegative real carried as its natural log. Survives magnitudes far
// outside double range (phi(x) = exp(-1/x^m) reaches e^{-1e8} on sweep
// grids); zero is log = -inf.
class LogVal {
 public:
  LogVal() : lg_(-std::numeric_limits<double>::infinity()) {}

  static LogVal from_value(double v) {
    LogVal out;
    out.lg_ = v > 0 ? std::log(v) : -std::numeric_limits<double>::infinity();
    return out;
  }
  static LogVal from_log(double lg) {
    LogVal out;
    out.lg_ = lg;
    return out;
  }
  static LogVal zero() { return LogVal(); }
  static LogVal one() { return from_log(0.0); }

  double log() const { return lg_; }
  // exp(log); underflows to 0 / overflows to inf outside double range.
  double value() const { return std::exp(lg_); }

  bool is_zero() const { return std::isinf(lg_) && lg_ < 0; }
  bool underflows_double() const { return lg_ < -700.0; }
  bool overflows_double() const { return lg_ > 700.0; }

  LogVal operator*(LogVal o) const { return from_log(lg_ + o.lg_); }
  LogVal operator/(LogVal o) const { return from_log(lg_ - o.lg_); }
  LogVal pow(double e) const { return from_log(lg_ * e); }

  // log-sum-exp addition
  LogVal operator+(LogVal o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    double hi = lg_ > o.lg_ ? lg_ : o.lg_;
    double lo = lg_ > o.lg_ ? o.lg_ : lg_;
    return from_log(hi + std::log1p(std::exp(lo - hi)));
  }

  bool operator<(LogVal o) const { return lg_ < o.lg_; }
  bool operator>(LogVal o) const { return lg_ > o.lg_; }
  bool operator<=(LogVal o) const { return lg_ <= o.lg_; }
  bool operator>=(LogVal o) const { return lg_ >= o.lg_; }

 private:
  double lg_;
};

}  // namespace bml
