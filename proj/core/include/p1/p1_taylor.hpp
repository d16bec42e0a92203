#pragma once

#include <cstddef>
#include <vector>

#include "p1/numeric.hpp"

namespace p1 {

/// State of y'' = 6y^2 + z together with I = integral of y dz along the
/// traversed path and the energy constant E of the trajectory.
struct P1State {
  Complex z, y, yp;
  Complex I{0};
  Complex E{0};
};

/// (y')^2 - 4y^3 - 2zy + 2I; constant along exact solutions.
Complex energy(const Complex& z, const Complex& y, const Complex& yp, const Complex& I);

/// State with E set from the other fields.
P1State make_p1_state(const Complex& z, const Complex& y, const Complex& yp, const Complex& I = Complex(0));

struct StepControl {
  int digits = 32;              ///< target relative accuracy 10^{-digits} per step
  Real safety = Real(1) / 4;    ///< step <= safety * radius_bound
  int max_order = 90;
  Real blowup = Real(1e6);      ///< |y| above this ends the trajectory
  Real max_step = Real(1) / 2;
  Real min_step = Real(1e-25);
  Real drift_tol = Real(1e-10);
  bool enforce_drift = true;    ///< throw EnergyDriftError when exceeded
};

/// Taylor coefficients c_0..c_N of y about state.z.
std::vector<Complex> taylor_coeffs_regular(const P1State& state, int N);

/// Lower bound on the radius of analyticity at the state:
/// 1 / max{|y|^{1/2}, |y'/2|^{1/3}, |y^2 + z/6|^{1/4}}; +inf if all vanish.
Real radius_bound(const P1State& state);
Real radius_bound(const Complex& z, const Complex& y, const Complex& yp);

struct P1Step {
  P1State end;
  Complex moment_increment;  ///< integral of z y dz over the step
  int order_used = 0;
  Real error_estimate = 0;   ///< magnitude of the last retained terms
};

/// One Taylor step of (complex) length h; the accuracy target is reached by
/// raising the order, and the step is rejected (ConvergenceError) if it is not.
P1Step taylor_step(const P1State& s, const Complex& h, const StepControl& ctl);

struct P1Trajectory {
  std::vector<P1State> states;
  std::vector<Complex> moments;             ///< integral of z y dz, parallel to states
  std::vector<std::size_t> waypoint_index;  ///< state index reached at each waypoint
  std::vector<Real> step_radius;            ///< radius_bound at the start of each step
  bool blew_up = false;                     ///< stopped because |y| crossed the threshold
  Complex blowup_z{0};                      ///< where the rejected step would have ended
  Real max_drift = 0;

  const P1State& back() const { return states.back(); }
};

/// Integrates along the polyline start.z -> path[0] -> path[1] -> ...
/// Steps never exceed safety * radius_bound. If |y| would exceed the
/// blow-up threshold the trajectory stops at the last regular state.
P1Trajectory integrate_path(const P1State& start, const std::vector<Complex>& path, const StepControl& ctl = {});

/// Drift |E(state) - E| / (1 + |E|).
Real energy_drift(const P1State& s);

}  // namespace p1
