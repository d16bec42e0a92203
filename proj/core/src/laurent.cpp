#include "p1/laurent.hpp"

#include <algorithm>

#include "p1/error.hpp"

namespace p1 {

LaurentExpansion::LaurentExpansion(const Complex& zt, const Complex& c4, int N) : zt_(zt), N_(N) {
  if (N < 4) throw DomainError("Laurent order must be at least 4");
  c_.assign(static_cast<std::size_t>(N) + 3, Complex(0));
  auto c = [&](int k) -> Complex& { return c_[static_cast<std::size_t>(k + 2)]; };
  c(-2) = 1;
  c(2) = -zt / Real(10);
  c(3) = Real(-1) / 6;
  c(4) = c4;
  for (int k = 3; k + 2 <= N; ++k) {
    Complex acc(0);
    for (int m = 0; m < k - m; ++m) acc += c(m) * c(k - m);
    acc *= Real(2);
    if (k % 2 == 0) acc += c(k / 2) * c(k / 2);
    c(k + 2) = Real(6) * acc / Real((k + 1) * (k + 2) - 12);
  }
}

Real LaurentExpansion::growth_rho() const {
  Real rho = 0;
  for (int i = 0; i <= 4; ++i) {
    const Real a = Real(3) * std::abs(coeff(i)) / Real(i + 1);
    if (a > 0) rho = std::max(rho, pow(a, Real(1) / Real(i + 2)));
  }
  // All free data vanish only in the degenerate case; any positive rho works.
  return rho > 0 ? rho : Real(1);
}

int LaurentExpansion::growth_violation() const {
  const Real rho = growth_rho();
  int bad = -1;
  for (int k = 0; k <= N_; ++k) {
    const Real bound = Real(k + 1) * pow(rho, k + 2) / 3;
    if (std::abs(coeff(k)) > bound * (1 + Real(1e-25))) bad = k;
  }
  return bad;
}

Complex LaurentExpansion::y(const Complex& z) const {
  const Complex w = z - zt_;
  Complex acc(0);
  for (int k = N_; k >= 2; --k) acc = acc * w + coeff(k);
  return acc * w * w + Real(1) / (w * w);
}

Complex LaurentExpansion::yp(const Complex& z) const {
  const Complex w = z - zt_;
  Complex acc(0);
  for (int k = N_; k >= 2; --k) acc = acc * w + Real(k) * coeff(k);
  return acc * w + Real(-2) / (w * w * w);
}

Complex LaurentExpansion::antiderivative(const Complex& z) const {
  const Complex w = z - zt_;
  Complex acc(0);
  for (int k = N_; k >= 2; --k) acc = acc * w + coeff(k) / Real(k + 1);
  return acc * w * w * w - Real(1) / w;
}

LaurentExpansion laurent_from_pole(const Complex& zt, const Complex& c4, int N) {
  return LaurentExpansion(zt, c4, N);
}

}  // namespace p1
