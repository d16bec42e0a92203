#include "p1/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "p1/error.hpp"

namespace p1 {

Polynomial::Polynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  for (auto& q : c_) q.canonicalize();
  trim();
}

void Polynomial::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

Polynomial Polynomial::constant(const Rational& c) { return Polynomial(std::vector<Rational>{c}); }

Polynomial Polynomial::monomial(int n, const Rational& c) {
  std::vector<Rational> v(static_cast<std::size_t>(n) + 1, Rational(0));
  v.back() = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::power_of_linear(const Rational& r, int n) {
  Polynomial out = constant(1);
  const Polynomial lin(std::vector<Rational>{-r, Rational(1)});
  for (int i = 0; i < n; ++i) out = out * lin;
  return out;
}

Rational Polynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return Rational(0);
  return c_[static_cast<std::size_t>(i)];
}

Polynomial Polynomial::derivative() const {
  std::vector<Rational> v;
  for (int i = 1; i <= degree(); ++i) v.push_back(Rational(i) * c_[i]);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::euler() const {
  std::vector<Rational> v(c_.size(), Rational(0));
  for (int i = 1; i <= degree(); ++i) v[i] = Rational(i) * c_[i];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  Polynomial out = *this;
  out *= Rational(1) / leading();
  return out;
}

int Polynomial::multiplicity(const Rational& r) const {
  if (is_zero()) throw DomainError("multiplicity of a root of the zero polynomial");
  const Polynomial lin(std::vector<Rational>{-r, Rational(1)});
  Polynomial p = *this;
  int n = 0;
  for (;;) {
    auto [q, rem] = divmod(p, lin);
    if (!rem.is_zero()) return n;
    p = std::move(q);
    ++n;
  }
}

Rational Polynomial::evaluate(const Rational& s) const {
  Rational acc = 0;
  for (int i = degree(); i >= 0; --i) acc = acc * s + c_[i];
  return acc;
}

Complex Polynomial::evaluate(const Complex& s) const {
  Complex acc(0);
  for (int i = degree(); i >= 0; --i) acc = acc * s + to_real(c_[i]);
  return acc;
}

std::complex<double> Polynomial::evaluate(std::complex<double> s) const {
  std::complex<double> acc(0);
  for (int i = degree(); i >= 0; --i) acc = acc * s + c_[i].get_d();
  return acc;
}

std::vector<std::complex<double>> Polynomial::roots() const {
  using cd = std::complex<double>;
  const int n = degree();
  if (n < 1) return {};
  std::vector<cd> a(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) a[i] = c_[i].get_d() / c_[n].get_d();
  // Cauchy bound for the initial circle.
  double radius = 0;
  for (int i = 0; i < n; ++i) radius = std::max(radius, std::abs(a[i]));
  radius = 1 + radius;
  std::vector<cd> z(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) z[i] = std::polar(0.5 * radius, 2 * M_PI * (i + 0.25) / n);
  auto eval = [&](cd s, cd& dp) {
    cd p = 1;
    dp = 0;
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * s + p;
      p = p * s + a[i];
    }
    return p;
  };
  for (int it = 0; it < 500; ++it) {
    double move = 0;
    for (int i = 0; i < n; ++i) {
      cd dp;
      const cd p = eval(z[i], dp);
      if (p == cd(0)) continue;
      const cd ratio = p / dp;
      cd sum = 0;
      for (int j = 0; j < n; ++j)
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      const cd step = ratio / (1.0 - ratio * sum);
      z[i] -= step;
      move = std::max(move, std::abs(step) / (1 + std::abs(z[i])));
    }
    if (move < 1e-15) break;
  }
  return z;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Rational(0));
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (sgn(s) == 0) {
    c_.clear();
    return *this;
  }
  for (auto& q : c_) q *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Rational> v(a.c_.size() + b.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
  }
  return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw DomainError("polynomial division by zero");
  std::vector<Rational> r = a.c_;
  const int db = b.degree();
  const int dq = a.degree() - db;
  if (dq < 0) return {Polynomial(), a};
  std::vector<Rational> q(static_cast<std::size_t>(dq) + 1, Rational(0));
  const Rational lead = b.leading();
  for (int i = dq; i >= 0; --i) {
    const Rational f = r[i + db] / lead;
    if (sgn(f) == 0) continue;
    q[i] = f;
    for (int j = 0; j <= db; ++j) r[i + j] -= f * b.c_[j];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
  while (!b.is_zero()) {
    Polynomial r = divmod(a, b).second;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rational& q = c_[i];
    if (sgn(q) == 0) continue;
    Rational mag = abs(q);
    os << (sgn(q) < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    const bool unit = (mag == 1);
    if (!unit || i == 0) os << rational_to_string(mag);
    if (i > 0) {
      if (!unit) os << "*";
      os << var;
      if (i > 1) os << "^" << i;
    }
    first = false;
  }
  return os.str();
}

}  // namespace p1
