#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "p1/polynomial.hpp"

namespace p1 {

/// num(s)/den(s) over the rationals, kept canonical: gcd(num, den) = 1 and
/// den monic. Canonical form is unique, so equality is structural.
class RationalFnS {
 public:
  RationalFnS() : num_(), den_(Polynomial::constant(1)) {}
  RationalFnS(Polynomial num, Polynomial den);
  static RationalFnS from_polynomial(Polynomial p) { return RationalFnS(std::move(p), Polynomial::constant(1)); }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  /// d/ds
  RationalFnS derivative() const;
  /// s d/ds
  RationalFnS euler() const;

  Complex evaluate(const Complex& s) const;
  std::complex<double> evaluate(std::complex<double> s) const;
  /// Limit as s -> infinity; throws if the function grows.
  Rational value_at_infinity() const;

  /// Numerator and denominator scaled by one rational so both have coprime
  /// integer coefficients and the numerator's leading coefficient is
  /// positive; the value is unchanged.
  std::pair<std::vector<Rational>, std::vector<Rational>> primitive_form() const;

  RationalFnS& operator+=(const RationalFnS& o);
  RationalFnS& operator-=(const RationalFnS& o);
  RationalFnS& operator*=(const RationalFnS& o);
  RationalFnS& operator*=(const Rational& c);
  friend RationalFnS operator+(RationalFnS a, const RationalFnS& b) { return a += b; }
  friend RationalFnS operator-(RationalFnS a, const RationalFnS& b) { return a -= b; }
  friend RationalFnS operator*(RationalFnS a, const RationalFnS& b) { return a *= b; }
  friend RationalFnS operator*(RationalFnS a, const Rational& c) { return a *= c; }
  friend RationalFnS operator*(const Rational& c, RationalFnS a) { return a *= c; }
  friend RationalFnS operator/(const RationalFnS& a, const RationalFnS& b);
  friend bool operator==(const RationalFnS& a, const RationalFnS& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  std::string to_string() const;
  std::string to_latex() const;

 private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

}  // namespace p1
