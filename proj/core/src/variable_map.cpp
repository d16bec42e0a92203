#include "p1/variable_map.hpp"

#include "p1/error.hpp"

namespace p1::varmap {
namespace {

Complex checked_w(const Complex& z) {
  if (z == Complex(0)) throw DomainError("z = 0 has no image under the normal-form map");
  if (z.imag() == 0 && z.real() > 0) throw BranchCutError("z on the positive real axis (branch cut)");
  return Real(-24) * z;
}

Complex cpow(const Complex& b, const Real& e) { return std::exp(e * std::log(b)); }

}  // namespace

Complex x_from_z(const Complex& z) { return cpow(checked_w(z), Real(5) / 4) / Real(30); }

Complex z_from_x(const Complex& x) {
  if (x == Complex(0)) throw DomainError("x = 0 has no preimage");
  return -cpow(Real(30) * x, Real(4) / 5) / Real(24);
}

Complex dx_dz(const Complex& x) { return -cpow(Real(30) * x, Real(1) / 5); }

NormalPoint to_normal(const P1Point& p) {
  const Complex w = checked_w(p.z);
  const Complex lw = std::log(w);
  const Complex x = std::exp(Real(5) / 4 * lw) / Real(30);
  const Complex w_m12 = std::exp(Real(-1) / 2 * lw);
  const Complex w_m14 = std::exp(Real(-1) / 4 * lw);
  const Complex x2 = x * x;
  const Complex h = Real(-1) + Real(4) / (Real(25) * x2) + Real(12) * w_m12 * p.y;
  const Complex hp = Real(-8) / (Real(25) * x2 * x) +
                     Real(12) * w_m12 * (Real(-2) / (Real(5) * x) * p.y - w_m14 * p.yp);
  return {x, h, hp};
}

P1Point to_p1(const NormalPoint& n) {
  if (n.x == Complex(0)) throw DomainError("x = 0 has no preimage");
  const Complex lx = std::log(Real(30) * n.x);
  const Complex w_12 = std::exp(Real(2) / 5 * lx);
  const Complex w_14 = std::exp(Real(1) / 5 * lx);
  const Complex z = -std::exp(Real(4) / 5 * lx) / Real(24);
  const Complex x2 = n.x * n.x;
  const Complex g = w_12 / Real(12);
  const Complex bracket = Real(1) - Real(4) / (Real(25) * x2) + n.h;
  const Complex y = g * bracket;
  const Complex dydx = g * Real(2) / (Real(5) * n.x) * bracket + g * (Real(8) / (Real(25) * x2 * n.x) + n.hp);
  return {z, y, -w_14 * dydx};
}

Complex defining_residual(const P1Point& p, const NormalPoint& n) {
  const Complex i_sqrt = Real(-12) * std::exp(Real(-2) / 5 * std::log(Real(30) * n.x));
  return i_sqrt * p.y + Real(1) - Real(4) / (Real(25) * n.x * n.x) + n.h;
}

}  // namespace p1::varmap
