#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bml/errors.hpp"
#include "bml/profile.hpp"

using namespace bml;

namespace {

// independent bisection oracle for the inverse
double bisect_inverse(const Profile& p, double y, double hi) {
  double lo = 1e-12;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (p.value(mid) < y)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

// central finite difference of phi
double fd1(const Profile& p, double x, double h) {
  return (p.value(x - 2 * h) - 8 * p.value(x - h) + 8 * p.value(x + h) - p.value(x + 2 * h)) /
         (12 * h);
}

}  // namespace

TEST_CASE("exp-inverse evaluation") {
  Profile p1 = Profile::exp_inverse(1);
  CHECK(p1.value(0.0) == 0.0);
  CHECK(p1.value(-3.0) == 0.0);
  CHECK(p1.value(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  Profile p2 = Profile::exp_inverse(2);
  CHECK(p2.value(0.5) == doctest::Approx(std::exp(-4.0)).epsilon(1e-14));
}

TEST_CASE("derivatives match the closed forms and finite differences") {
  Profile p1 = Profile::exp_inverse(1);
  CHECK(p1.derivative(0.0, 1) == 0.0);
  CHECK(p1.derivative(-1.0, 3) == 0.0);
  // phi'(x) = x^{-2} e^{-1/x}: at x=1 equals e^{-1}
  CHECK(p1.derivative(1.0, 1) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  // phi''(x) = (x^{-4} - 2x^{-3}) e^{-1/x}: vanishes at x = 1/2
  CHECK(p1.derivative(0.5, 2) == doctest::Approx(0.0).epsilon(1e-20));
  for (double x : {0.05, 0.1, 0.2, 0.4, 0.7, 1.0}) {
    double fd = fd1(p1, x, 1e-3 * std::max(0.05, x));
    double an = p1.derivative(x, 1);
    CHECK(std::abs(fd - an) <= std::max(1e-8, 1e-6 * std::abs(an)));
  }
  Profile p2 = Profile::exp_inverse(2);
  for (double x : {0.3, 0.5, 0.8}) {
    double fd = fd1(p2, x, 1e-4);
    CHECK(std::abs(fd - p2.derivative(x, 1)) <= std::max(1e-8, 1e-6 * std::abs(fd)));
  }
}

TEST_CASE("inverse: closed form against the bisection oracle") {
  Profile p1 = Profile::exp_inverse(1);
  CHECK(p1.inverse(std::exp(-1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p1.inverse(std::exp(-10.0)) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(p1.inverse(std::exp(-10.0)) ==
        doctest::Approx(bisect_inverse(p1, std::exp(-10.0), 2.0)).epsilon(1e-10));
  Profile p2 = Profile::exp_inverse(2);
  CHECK(p2.inverse(std::exp(-100.0)) == doctest::Approx(0.1).epsilon(1e-13));
  CHECK(p2.inverse(std::exp(-100.0)) ==
        doctest::Approx(bisect_inverse(p2, std::exp(-100.0), 2.0)).epsilon(1e-10));
  CHECK_THROWS_AS(p1.inverse(0.0), DomainError);
  CHECK_THROWS_AS(p1.inverse(1.5), DomainError);
}

TEST_CASE("round trip inverse(value(x)) = x") {
  for (int m : {1, 2, 3}) {
    Profile p = Profile::exp_inverse(m);
    for (double x = 1e-3; x <= 0.9 * p.epsilon0(); x *= 1.7) {
      double y = p.value(x);
      if (y == 0.0) continue;  // below double underflow: inverse unavailable in linear space
      CHECK(p.inverse(y) == doctest::Approx(x).epsilon(1e-12));
    }
  }
}

TEST_CASE("scaling ratio dichotomy in log space") {
  Profile p1 = Profile::exp_inverse(1);
  // r = 0.01, x = 0.5: ratio = exp(1/r - 1/(rx)) = exp(-100)
  CHECK(p1.scaling_ratio(0.01, 0.5).log() == doctest::Approx(-100.0).epsilon(1e-12));
  CHECK(p1.scaling_ratio(0.01, 2.0).log() == doctest::Approx(50.0).epsilon(1e-12));
  CHECK(p1.scaling_ratio(0.37, 1.0).log() == doctest::Approx(0.0).epsilon(1e-14));
  // monotone decrease toward 0 for fixed x in (0,1) (Eq-dichotomy lower branch)
  for (int m : {1, 2}) {
    Profile p = Profile::exp_inverse(m);
    double prev = 0.0;
    bool first = true;
    for (double r : {0.2, 0.1, 0.05, 0.02, 0.01}) {
      double lg = p.scaling_ratio(r, 0.5).log();
      if (!first) CHECK(lg < prev);
      prev = lg;
      first = false;
    }
    // upper branch: growing without bound for x > 1
    prev = 0.0;
    first = true;
    for (double r : {0.2, 0.1, 0.05, 0.02, 0.01}) {
      double lg = p.scaling_ratio(r, 1.5).log();
      if (!first) CHECK(lg > prev);
      prev = lg;
      first = false;
    }
  }
}

TEST_CASE("vanishing order: -1/log(phi(x)) = x^m exactly") {
  for (int m : {1, 2, 4}) {
    Profile p = Profile::exp_inverse(m);
    for (double x : {0.05, 0.17, 0.33, 0.49}) {
      double lg = p.value_log(x).log();
      CHECK(-1.0 / lg == doctest::Approx(std::pow(x, m)).epsilon(1e-14));
    }
  }
}

TEST_CASE("faster-than-any-power vanishing on a sampled grid") {
  Profile p = Profile::exp_inverse(1);
  for (int k = 1; k <= 8; ++k) {
    double prev = 1e300;
    for (double x : {0.2, 0.1, 0.05, 0.02}) {
      double q = p.value(x) / std::pow(x, k);
      CHECK(q < prev);
      prev = q;
    }
  }
}

TEST_CASE("custom profiles: derivative requirements and underflow error") {
  CustomProfileSpec spec;
  spec.flatness_order = 1;
  spec.epsilon0 = 0.4;
  spec.value = [](double x) { return x > 0 ? std::exp(-1.0 / x) : 0.0; };
  spec.derivative[0] = [](double x) { return x > 0 ? std::exp(-1.0 / x) / (x * x) : 0.0; };
  spec.derivative[1] = [](double x) {
    return x > 0 ? (1.0 / (x * x * x * x) - 2.0 / (x * x * x)) * std::exp(-1.0 / x) : 0.0;
  };
  spec.derivative[2] = [](double) { return 0.0; };
  spec.derivative[3] = [](double) { return 0.0; };
  Profile p = Profile::custom(spec);
  CHECK(p.value(0.2) == doctest::Approx(std::exp(-5.0)).epsilon(1e-14));
  CHECK(p.inverse(std::exp(-5.0)) == doctest::Approx(0.2).epsilon(1e-9));
  // phi(r) underflows at r = 1e-3 (exp(-1000) == 0 in double)
  CHECK_THROWS_AS(p.scaling_ratio(1e-3, 0.5), DomainError);

  CustomProfileSpec missing = spec;
  missing.derivative[2] = nullptr;
  CHECK_THROWS_AS(Profile::custom(missing), ValidationError);
}

TEST_CASE("epsilon0 is the exact convexity radius") {
  Profile p1 = Profile::exp_inverse(1);
  CHECK(p1.epsilon0() == doctest::Approx(0.5).epsilon(1e-15));
  // phi'' > 0 strictly inside, negative beyond
  CHECK(p1.derivative(0.45, 2) > 0.0);
  CHECK(p1.derivative(0.55, 2) < 0.0);
  Profile p2 = Profile::exp_inverse(2);
  CHECK(p2.epsilon0() == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-15));
}
