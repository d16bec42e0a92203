#pragma once

#include "p1/numeric.hpp"

namespace p1 {

/// Point of the P1 equation y'' = 6y^2 + z.
struct P1Point {
  Complex z, y, yp;
};

/// Point of the normal form h'' + h'/x - h - h^2/2 - 392/(625 x^4) = 0.
struct NormalPoint {
  Complex x, h, hp;
};

/// Change of variables 30x = (-24z)^{5/4} on the principal branch of
/// w = -24z, arg w in (-pi, pi]; the negative real z axis maps onto x > 0.
///
/// Forward maps need z != 0 and z off the positive real axis. The inverse
/// uses principal powers of 30x, so a forward/inverse round trip is exact
/// for |arg(-24z)| < 4pi/5 (equivalently |arg x| < pi).
namespace varmap {

Complex x_from_z(const Complex& z);
Complex z_from_x(const Complex& x);

/// dx/dz = -(30x)^{1/5} at the image of z.
Complex dx_dz(const Complex& x);

NormalPoint to_normal(const P1Point& p);
P1Point to_p1(const NormalPoint& n);

/// Residual of i sqrt(6/z) y + 1 - 4/(25x^2) + h with the branch of
/// i sqrt(6/z) that is continuous across the negative real z axis.
Complex defining_residual(const P1Point& p, const NormalPoint& n);

}  // namespace varmap
}  // namespace p1
