#include "p1/numeric.hpp"

#include <sstream>

#include "p1/error.hpp"

namespace p1 {

namespace {

// Exact conversion of a non-negative integer below 2^128.
Real small_mpz_to_real(const mpz_class& n) {
  mpz_class hi = n >> 64;
  mpz_class lo = n - (hi << 64);
  auto limb = [](const mpz_class& v) {
    // mpz_get_ui is 64 bits on LP64.
    return Real(static_cast<unsigned long long>(mpz_get_ui(v.get_mpz_t())));
  };
  return ldexp(limb(hi), 64) + limb(lo);
}

}  // namespace

Real to_real(const Rational& q) {
  if (sgn(q) == 0) return Real(0);
  mpz_class num = abs(q.get_num());
  const mpz_class& den = q.get_den();
  const long bits_num = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2));
  const long bits_den = static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  // Scale so the integer quotient carries 120 significant bits.
  const long shift = 120 - (bits_num - bits_den);
  mpz_class quotient;
  if (shift >= 0) {
    mpz_class scaled = num << static_cast<unsigned long>(shift);
    mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    mpz_class scaled = den << static_cast<unsigned long>(-shift);
    mpz_fdiv_q(quotient.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  Real r = ldexp(small_mpz_to_real(quotient), static_cast<int>(-shift));
  return sgn(q) < 0 ? -r : r;
}

std::string to_string(const Real& r, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << r;
  return os.str();
}

Real parse_real(const std::string& text) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw DomainError("not a real number: '" + text + "'");
  }
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) throw DomainError("not a rational: '" + text + "'");
  q.canonicalize();
  return q;
}

}  // namespace p1
