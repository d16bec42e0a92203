#include "p1/power_series.hpp"

#include <algorithm>
#include <utility>

#include "p1/error.hpp"

namespace p1 {

PowerSeries1x::PowerSeries1x(int order) {
  if (order < 0) throw DomainError("series order must be non-negative");
  coeffs_.assign(static_cast<std::size_t>(order) + 1, Rational(0));
}

PowerSeries1x::PowerSeries1x(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("series needs at least one coefficient");
}

Rational PowerSeries1x::coeff(int m) const {
  if (m < 0 || m > order()) return Rational(0);
  return coeffs_[static_cast<std::size_t>(m)];
}

PowerSeries1x PowerSeries1x::truncated(int new_order) const {
  PowerSeries1x out(new_order);
  for (int m = 0; m <= std::min(new_order, order()); ++m) out[m] = coeffs_[static_cast<std::size_t>(m)];
  return out;
}

PowerSeries1x PowerSeries1x::derivative() const {
  PowerSeries1x out(order());
  for (int m = 1; m <= order(); ++m) out[m] = -(m - 1) * coeff(m - 1);
  return out;
}

PowerSeries1x PowerSeries1x::times_inv_x(int p) const {
  PowerSeries1x out(order());
  for (int m = p; m <= order(); ++m) out[m] = coeff(m - p);
  return out;
}

PowerSeries1x& PowerSeries1x::operator+=(const PowerSeries1x& rhs) {
  const int n = std::min(order(), rhs.order());
  coeffs_.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) coeffs_[static_cast<std::size_t>(m)] += rhs[m];
  return *this;
}

PowerSeries1x& PowerSeries1x::operator-=(const PowerSeries1x& rhs) {
  const int n = std::min(order(), rhs.order());
  coeffs_.resize(static_cast<std::size_t>(n) + 1);
  for (int m = 0; m <= n; ++m) coeffs_[static_cast<std::size_t>(m)] -= rhs[m];
  return *this;
}

PowerSeries1x& PowerSeries1x::operator*=(const Rational& s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

PowerSeries1x operator*(const PowerSeries1x& a, const PowerSeries1x& b) {
  const int n = std::min(a.order(), b.order());
  PowerSeries1x out(n);
  for (int i = 0; i <= n; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (int j = 0; i + j <= n; ++j) {
      if (sgn(b[j]) != 0) out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

Complex PowerSeries1x::evaluate(const Complex& x, int upto) const {
  const Complex inv = Real(1) / x;
  Complex sum(0);
  for (int m = std::min(upto, order()); m >= 0; --m) sum = sum * inv + to_real(coeff(m));
  return sum;
}

}  // namespace p1
