#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace bml {

using Complex = std::complex<double>;

// Truncated Taylor expansion to total degree 4 in the 2*nu independent
// symbols (dz_1..dz_nu, dzbar_1..dzbar_nu) around an evaluation point.
// All diagonal kernel jets and curvature contractions are read off from
// these series; products drop terms above degree 4.
class Jet4 {
 public:
  explicit Jet4(int nu);
  static Jet4 constant(int nu, Complex c);

  int nu() const { return nu_; }
  int size() const { return static_cast<int>(coeff_.size()); }

  // exps lists exponents for (z_1..z_nu, zbar_1..zbar_nu); degree <= 4.
  void add_monomial(std::span<const int> exps, Complex c);
  Complex monomial(std::span<const int> exps) const;

  Jet4 operator+(const Jet4& o) const;
  Jet4 operator-(const Jet4& o) const;
  Jet4 operator*(const Jet4& o) const;
  Jet4& operator+=(const Jet4& o);
  Jet4 operator*(Complex s) const;

  Jet4 log() const;          // principal log; constant term must be nonzero
  Jet4 exp() const;
  Jet4 pow(double alpha) const;

  // Mixed derivative: d^{|a|} / dz^a  d^{|b|} / dzbar^b at the point.
  // a and b are multi-indices of length nu with |a| + |b| <= 4.
  Complex deriv(std::span<const int> a, std::span<const int> b) const;

 private:
  struct Table;
  const Table& table() const;

  int nu_ = 1;
  std::vector<Complex> coeff_;
};

}  // namespace bml
