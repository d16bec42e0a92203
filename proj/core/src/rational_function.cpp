#include "p1/rational_function.hpp"

#include <sstream>

#include "p1/error.hpp"

namespace p1 {

RationalFnS::RationalFnS(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  canonicalize();
}

void RationalFnS::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial::constant(1);
    return;
  }
  const Polynomial g = Polynomial::gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = Polynomial::divmod(num_, g).first;
    den_ = Polynomial::divmod(den_, g).first;
  }
  const Rational lead = den_.leading();
  num_ *= Rational(1) / lead;
  den_ *= Rational(1) / lead;
}

RationalFnS RationalFnS::derivative() const {
  return RationalFnS(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFnS RationalFnS::euler() const {
  return RationalFnS(num_.euler() * den_ - num_ * den_.euler(), den_ * den_);
}

Complex RationalFnS::evaluate(const Complex& s) const { return num_.evaluate(s) / den_.evaluate(s); }

std::complex<double> RationalFnS::evaluate(std::complex<double> s) const {
  return num_.evaluate(s) / den_.evaluate(s);
}

Rational RationalFnS::value_at_infinity() const {
  if (num_.degree() > den_.degree()) throw DomainError("rational function grows at infinity");
  if (num_.degree() < den_.degree()) return 0;
  return num_.leading() / den_.leading();
}

std::pair<std::vector<Rational>, std::vector<Rational>> RationalFnS::primitive_form() const {
  // Scale by lcm of denominators / gcd of numerators over both polynomials.
  mpz_class l = 1, g = 0;
  for (const auto* p : {&num_, &den_}) {
    for (const auto& q : p->coeffs()) {
      if (sgn(q) == 0) continue;
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
    }
  }
  for (const auto* p : {&num_, &den_}) {
    for (const auto& q : p->coeffs()) {
      if (sgn(q) == 0) continue;
      mpz_class v = q.get_num() * (l / q.get_den());
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    }
  }
  Rational scale(l, g == 0 ? mpz_class(1) : g);
  scale.canonicalize();
  if (sgn(num_.leading()) < 0) scale = -scale;
  auto scaled = [&](const Polynomial& p) {
    std::vector<Rational> v;
    for (const auto& q : p.coeffs()) {
      Rational r = q * scale;
      r.canonicalize();
      v.push_back(r);
    }
    return v;
  };
  return {scaled(num_), scaled(den_)};
}

RationalFnS& RationalFnS::operator+=(const RationalFnS& o) {
  if (den_ == o.den_) {
    num_ += o.num_;
  } else {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RationalFnS& RationalFnS::operator-=(const RationalFnS& o) {
  if (den_ == o.den_) {
    num_ -= o.num_;
  } else {
    num_ = num_ * o.den_ - o.num_ * den_;
    den_ = den_ * o.den_;
  }
  canonicalize();
  return *this;
}

RationalFnS& RationalFnS::operator*=(const RationalFnS& o) {
  num_ = num_ * o.num_;
  den_ = den_ * o.den_;
  canonicalize();
  return *this;
}

RationalFnS& RationalFnS::operator*=(const Rational& c) {
  num_ *= c;
  canonicalize();
  return *this;
}

RationalFnS operator/(const RationalFnS& a, const RationalFnS& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return RationalFnS(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFnS::to_string() const {
  if (den_.degree() == 0) return "(" + num_.to_string() + ")";
  return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

namespace {

std::string latex_poly(const std::vector<Rational>& c) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) {
    if (sgn(c[i]) == 0) continue;
    Rational mag = abs(c[i]);
    os << (sgn(c[i]) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const bool unit = (mag == 1) && i > 0;
    if (!unit) {
      if (mag.get_den() == 1) os << mag.get_num().get_str();
      else os << "\\frac{" << mag.get_num().get_str() << "}{" << mag.get_den().get_str() << "}";
    }
    if (i > 0) os << "s" << (i > 1 ? "^{" + std::to_string(i) + "}" : "");
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace

std::string RationalFnS::to_latex() const {
  auto [n, d] = primitive_form();
  if (d.size() == 1 && d[0] == 1) return latex_poly(n);
  // Positive leading coefficient in the denominator; the sign goes in front.
  std::string sign;
  if (sgn(d.back()) < 0) {
    for (auto& c : d) c = -c;
    sign = "-";
  }
  return sign + "\\frac{" + latex_poly(n) + "}{" + latex_poly(d) + "}";
}

}  // namespace p1
