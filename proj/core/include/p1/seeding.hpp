#pragma once

#include "p1/normal_form.hpp"
#include "p1/transseries.hpp"

namespace p1 {

struct TransseriesValue {
  Complex h{0}, hp{0};
  Real error = 0;        ///< sum of the smallest (omitted) terms over all levels
  int levels_used = 0;
};

/// Optimally truncated transseries
///   sum_k C^k x^{-k/2} e^{-kx} sum_m c_{km} x^{-m}
/// at complex x: each inner series stops before its smallest term.
/// Levels are added until they drop below 1e-40 relative or the table ends.
TransseriesValue eval_transseries(const Complex& C, const Complex& x, const TransseriesTable& table);

/// Exponential-level sum excluding level 0.
TransseriesValue eval_transseries_levels(const Complex& C, const Complex& x, const TransseriesTable& table,
                                         int k_min = 1);

struct Seed {
  NormalState state;
  Real error = 0;
};

/// Initial data h(x_seed), h'(x_seed) from the truncated transseries.
/// Requires |C| e^{-x_seed} x_seed^{-1/2} < 1/24.
Seed seed_at_infinity(const Complex& C, const Real& x_seed, const TransseriesTable& table);

}  // namespace p1

namespace p1 {

/// Solves sum_{k>=1} C'^k x^{-k/2} e^{-kx} h_k(x) = h - h_0(x) for C' by
/// Newton's method, with the optimally truncated series on both sides.
/// At x far out along an antistokes direction this reads off the constant
/// multiplying x^{-1/2} e^{-x}.
Complex transseries_constant(const Complex& x, const Complex& h, const TransseriesTable& table);

struct AntistokesLimit {
  Complex plus;   ///< constant read off at x = +iY
  Complex minus;  ///< constant read off at x = -iY
  Real spread = 0;  ///< change between the two outermost read-off heights
};

/// Seeds h(x; C) at x_seed, continues along the arc |x| = x_seed to the
/// imaginary axis and up to x = +-iY, and reads off the exponential
/// constant there (at Y and at Y - 10 for the spread).
AntistokesLimit antistokes_limits(const Complex& C, const Real& x_seed, const Real& Y,
                                  const TransseriesTable& table);

/// Seeding with constant C from the optimally truncated series gives the
/// solution whose antistokes constants are C + delta +- S/2, delta real and
/// dependent on x_seed. delta is the average of the two read-offs at C = 0
/// (Y = x_seed + 20), cached per (x_seed, K, M).
Real seeding_offset(const Real& x_seed, const TransseriesTable& table);

/// Seed of the solution with antistokes constants exactly C +- S/2, i.e. with
/// h_0 the balanced resummation: seed_at_infinity(C - delta(x_seed)).
Seed seed_balanced(const Complex& C, const Real& x_seed, const TransseriesTable& table);

}  // namespace p1
