#pragma once

#include <vector>

#include "p1/numeric.hpp"
#include "p1/p1_taylor.hpp"

namespace p1 {

/// y = sum_{k>=-2} c_k (z - zt)^k about a double pole zt of y'' = 6y^2 + z:
/// c_{-2} = 1, c_{-1} = c_0 = c_1 = 0, c_2 = -zt/10, c_3 = -1/6, c_4 free,
/// [(k+1)(k+2) - 12] c_{k+2} = 6 sum_{m=0}^{k} c_m c_{k-m} + zt [k=0] + [k=1].
class LaurentExpansion {
 public:
  LaurentExpansion(const Complex& zt, const Complex& c4, int N);

  const Complex& pole() const { return zt_; }
  const Complex& c4() const { return c_[6]; }
  int order() const { return N_; }
  /// c_k for -2 <= k <= N.
  const Complex& coeff(int k) const { return c_.at(static_cast<std::size_t>(k + 2)); }

  /// rho with |c_k| <= (k+1) rho^{k+2} / 3; the induction closes for k >= 5
  /// once the inequality holds for k <= 4, so rho is fixed by c_0..c_4.
  Real growth_rho() const;
  /// Largest k <= N violating the growth inequality, or -1.
  int growth_violation() const;
  /// Radius inside which the series is certified to converge: 1 / rho.
  Real certified_radius() const { return 1 / growth_rho(); }

  Complex y(const Complex& z) const;
  Complex yp(const Complex& z) const;
  /// Antiderivative -1/w + sum_{k>=2} c_k w^{k+1}/(k+1), w = z - zt. Single
  /// valued because c_{-1} = 0.
  Complex antiderivative(const Complex& z) const;

 private:
  Complex zt_;
  int N_;
  std::vector<Complex> c_;
};

LaurentExpansion laurent_from_pole(const Complex& zt, const Complex& c4, int N);

}  // namespace p1
