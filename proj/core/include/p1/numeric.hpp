#pragma once

#include <complex>
#include <limits>
#include <string>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/float128.hpp>
#include <gmpxx.h>

namespace p1 {

/// Working precision of all trajectory computations: IEEE binary128
/// (113-bit mantissa, about 33 decimal digits).
using Real = boost::multiprecision::float128;
using Complex = std::complex<Real>;

/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = mpq_class;

inline const Real kPi = boost::math::constants::pi<Real>();
inline const Complex kI{Real(0), Real(1)};
inline constexpr int kRealDigits = std::numeric_limits<Real>::digits10;

/// Correctly rounded (to within one ulp) conversion of an exact rational.
Real to_real(const Rational& q);

inline double to_double(const Real& r) { return static_cast<double>(r); }
inline std::complex<double> to_double(const Complex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}
inline Complex to_complex(std::complex<double> z) { return {Real(z.real()), Real(z.imag())}; }

/// Decimal rendering with `digits` significant digits.
std::string to_string(const Real& r, int digits = kRealDigits);

Real parse_real(const std::string& text);

/// "p/q" (or "p" for integers), always in lowest terms.
std::string rational_to_string(const Rational& q);
Rational parse_rational(const std::string& text);

inline Real cabs(const Complex& z) { return std::abs(z); }

}  // namespace p1
