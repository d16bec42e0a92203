#pragma once

#include <string>
#include <utility>
#include <vector>

#include "p1/numeric.hpp"

namespace p1 {

/// Dense polynomial with exact rational coefficients, ascending powers.
/// The zero polynomial has no coefficients and degree -1.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coeffs);
  static Polynomial constant(const Rational& c);
  /// s^n
  static Polynomial monomial(int n, const Rational& c = 1);
  /// (s - r)^n
  static Polynomial power_of_linear(const Rational& r, int n);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(int i) const;
  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }

  Polynomial derivative() const;
  /// s p'(s)
  Polynomial euler() const;
  Polynomial monic() const;
  /// Multiplicity of s = r as a root.
  int multiplicity(const Rational& r) const;

  Rational evaluate(const Rational& s) const;
  Complex evaluate(const Complex& s) const;
  std::complex<double> evaluate(std::complex<double> s) const;

  /// All complex roots (Aberth iteration in double precision).
  std::vector<std::complex<double>> roots() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(Polynomial a, const Rational& s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

  /// Euclidean division: a = q b + r with deg r < deg b.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);
  /// Monic greatest common divisor (zero if both are zero).
  static Polynomial gcd(Polynomial a, Polynomial b);

  std::string to_string(const std::string& var = "s") const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace p1
