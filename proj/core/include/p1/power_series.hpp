#pragma once

#include <cstddef>
#include <vector>

#include "p1/numeric.hpp"

namespace p1 {

/// Truncated formal series  sum_{m=0}^{M} a_m x^{-m}  with exact rational
/// coefficients. Every operation is exact through the truncation order of
/// the result, which is the smaller of the operands' orders.
class PowerSeries1x {
 public:
  PowerSeries1x() = default;
  /// Zero series through x^{-order}.
  explicit PowerSeries1x(int order);
  explicit PowerSeries1x(std::vector<Rational> coeffs);

  int order() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  /// Coefficient of x^{-m}; zero beyond the truncation order.
  Rational coeff(int m) const;
  Rational& operator[](int m) { return coeffs_.at(static_cast<std::size_t>(m)); }
  const Rational& operator[](int m) const { return coeffs_.at(static_cast<std::size_t>(m)); }

  PowerSeries1x truncated(int order) const;
  /// d/dx; x^{-m} -> -m x^{-m-1}.
  PowerSeries1x derivative() const;
  /// Multiplication by x^{-p}, p >= 0.
  PowerSeries1x times_inv_x(int p = 1) const;

  PowerSeries1x& operator+=(const PowerSeries1x& rhs);
  PowerSeries1x& operator-=(const PowerSeries1x& rhs);
  PowerSeries1x& operator*=(const Rational& s);

  friend PowerSeries1x operator+(PowerSeries1x a, const PowerSeries1x& b) { return a += b; }
  friend PowerSeries1x operator-(PowerSeries1x a, const PowerSeries1x& b) { return a -= b; }
  friend PowerSeries1x operator*(PowerSeries1x a, const Rational& s) { return a *= s; }
  friend PowerSeries1x operator*(const Rational& s, PowerSeries1x a) { return a *= s; }
  friend PowerSeries1x operator*(const PowerSeries1x& a, const PowerSeries1x& b);
  friend bool operator==(const PowerSeries1x& a, const PowerSeries1x& b) { return a.coeffs_ == b.coeffs_; }

  /// Partial sum through x^{-upto} at a complex point.
  Complex evaluate(const Complex& x, int upto) const;

 private:
  std::vector<Rational> coeffs_;
};

}  // namespace p1
