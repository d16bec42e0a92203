#pragma once

#include <vector>

#include "p1/numeric.hpp"
#include "p1/p1_taylor.hpp"
#include "p1/variable_map.hpp"

namespace p1 {

struct NormalState {
  Complex x, h, hp;
};

/// One accepted step: Taylor coefficients of h about x0, valid for
/// |x - x0| <= |dx|.
struct NormalSegment {
  Complex x0;
  Complex dx;
  std::vector<Complex> a;

  Complex h(const Complex& x) const;
  Complex hp(const Complex& x) const;
};

struct NormalTrajectory {
  std::vector<NormalState> states;
  std::vector<NormalSegment> segments;
  std::vector<std::size_t> waypoint_index;
  /// Integral of y dz along the path in P1 variables, parallel to states.
  std::vector<Complex> I;
  Complex E0{0};
  bool blew_up = false;
  Real max_drift = 0;

  const NormalState& back() const { return states.back(); }
  /// Dense evaluation on a segment containing x (nearest segment start).
  NormalState eval(const Complex& x) const;
  /// P1 state at index i, carrying the accumulated integral and E0.
  P1State p1_state(std::size_t i) const;
};

/// Taylor coefficients a_0..a_N of h about state.x.
std::vector<Complex> taylor_coeffs_normal(const NormalState& s, int N,
                                          const Real& quartic = Real(-392) / 625);

/// Integrates the normal form along the polyline start.x -> path[0] -> ...
/// The step is safety * min(R_z |dx/dz|, |x|), where R_z is the analyticity
/// bound of the mapped P1 state. The energy functional is monitored in P1
/// variables with I accumulated by Gauss-Legendre quadrature on each step.
NormalTrajectory integrate_normal(const NormalState& start, const std::vector<Complex>& path,
                                  const StepControl& ctl = {});

inline NormalPoint to_point(const NormalState& s) { return {s.x, s.h, s.hp}; }
inline NormalState to_state(const NormalPoint& p) { return {p.x, p.h, p.hp}; }

}  // namespace p1
