#include "p1/p1_taylor.hpp"

#include <algorithm>
#include <limits>

#include "p1/error.hpp"

namespace p1 {

Complex energy(const Complex& z, const Complex& y, const Complex& yp, const Complex& I) {
  return yp * yp - Real(4) * y * y * y - Real(2) * z * y + Real(2) * I;
}

P1State make_p1_state(const Complex& z, const Complex& y, const Complex& yp, const Complex& I) {
  return {z, y, yp, I, energy(z, y, yp, I)};
}

Real energy_drift(const P1State& s) {
  return std::abs(energy(s.z, s.y, s.yp, s.I) - s.E) / (1 + std::abs(s.E));
}

std::vector<Complex> taylor_coeffs_regular(const P1State& state, int N) {
  std::vector<Complex> c(static_cast<std::size_t>(std::max(N, 1)) + 1, Complex(0));
  c[0] = state.y;
  c[1] = state.yp;
  // (k+1)(k+2) c_{k+2} = 6 sum_{m<=k} c_m c_{k-m} + z0 [k=0] + [k=1]
  for (int k = 0; k + 2 <= N; ++k) {
    Complex acc(0);
    for (int m = 0; m < k - m; ++m) acc += c[m] * c[k - m];
    acc *= Real(2);
    if (k % 2 == 0) acc += c[k / 2] * c[k / 2];
    acc *= Real(6);
    if (k == 0) acc += state.z;
    if (k == 1) acc += Real(1);
    c[k + 2] = acc / Real((k + 1) * (k + 2));
  }
  c.resize(static_cast<std::size_t>(N) + 1);
  return c;
}

Real radius_bound(const Complex& z, const Complex& y, const Complex& yp) {
  using std::pow;
  using std::sqrt;
  const Real a = sqrt(std::abs(y));
  const Real b = boost::multiprecision::cbrt(std::abs(yp) / 2);
  const Real c = sqrt(sqrt(std::abs(y * y + z / Real(6))));
  const Real m = std::max({a, b, c});
  if (m == 0) return std::numeric_limits<Real>::infinity();
  return 1 / m;
}

Real radius_bound(const P1State& state) { return radius_bound(state.z, state.y, state.yp); }

P1Step taylor_step(const P1State& s, const Complex& h, const StepControl& ctl) {
  const Real tol = pow(Real(10), -ctl.digits);
  std::vector<Complex> c;
  c.reserve(static_cast<std::size_t>(ctl.max_order) + 3);
  c.push_back(s.y);
  c.push_back(s.yp);
  const Real ah = std::abs(h);
  // Powers of h are folded in: d_k = c_k h^k keeps the recursion well scaled.
  std::vector<Complex> d{s.y, s.yp * h};
  const Complex h2 = h * h;
  int order = 1;
  bool converged = false;
  Real err = 0;
  for (int k = 0; k + 2 <= ctl.max_order; ++k) {
    Complex acc(0);
    for (int m = 0; m < k - m; ++m) acc += d[m] * d[k - m];
    acc *= Real(2);
    if (k % 2 == 0) acc += d[k / 2] * d[k / 2];
    acc *= Real(6);
    if (k == 0) acc += s.z;
    if (k == 1) acc += h;  // z0 [k=0] and [k=1] terms carry h^0 and h^1 scaling
    d.push_back(acc * h2 / Real((k + 1) * (k + 2)));
    order = k + 2;
    if (order >= 8) {
      const Real scale = std::max({Real(1), std::abs(s.y), std::abs(s.yp) * ah});
      // Several trailing terms: the series can be lacunary (e.g. y = z^3/6 + O(z^8)).
      Real tail = 0;
      for (int j = order - 5; j <= order; ++j) tail += std::abs(d[j]);
      tail *= order;
      if (tail <= tol * scale) {
        err = tail;
        converged = true;
        break;
      }
      err = tail / scale;
    }
  }
  if (!converged) throw ConvergenceError("Taylor series did not reach the target accuracy");
  P1Step out;
  out.order_used = order;
  out.error_estimate = err;
  Complex y(0), yp(0), dI(0), dJ(0);
  for (int k = order; k >= 0; --k) {
    y += d[k];
    if (k > 0) yp += Real(k) * d[k];
    dI += d[k] / Real(k + 1);
    dJ += d[k] * (s.z / Real(k + 1) + h / Real(k + 2));
  }
  out.end.z = s.z + h;
  out.end.y = y;
  out.end.yp = yp / h;
  out.end.I = s.I + dI * h;
  out.end.E = s.E;
  out.moment_increment = dJ * h;
  return out;
}

P1Trajectory integrate_path(const P1State& start, const std::vector<Complex>& path, const StepControl& ctl) {
  P1Trajectory tr;
  tr.states.push_back(start);
  tr.moments.push_back(Complex(0));
  if (std::abs(start.y) > ctl.blowup) throw DomainError("integration must start at a regular point");
  P1State cur = start;
  Complex mom(0);
  for (const Complex& target : path) {
    for (;;) {
      const Complex rem = target - cur.z;
      const Real dist = std::abs(rem);
      // Waypoints equal up to rounding: snap instead of taking a tiny step.
      if (dist <= Real(1e-28) * (1 + std::abs(cur.z))) {
        cur.z = target;
        break;
      }
      const Real R = radius_bound(cur);
      Real len = std::min({ctl.safety * R, ctl.max_step, dist});
      for (;;) {
        if (len < ctl.min_step) {
          // Step underflow: only a nearby singularity can force this.
          tr.blew_up = true;
          tr.blowup_z = cur.z + rem / dist * len;
          return tr;
        }
        const Complex h = (len == dist) ? rem : rem / dist * len;
        P1Step st;
        try {
          st = taylor_step(cur, h, ctl);
        } catch (const ConvergenceError&) {
          len /= 2;
          continue;
        }
        if (std::abs(st.end.y) > ctl.blowup) {
          tr.blew_up = true;
          tr.blowup_z = st.end.z;
          return tr;
        }
        const Real drift = energy_drift(st.end);
        tr.max_drift = std::max(tr.max_drift, drift);
        if (ctl.enforce_drift && drift > ctl.drift_tol) {
          throw EnergyDriftError("energy drift " + to_string(drift, 6) + " at z = " +
                                 to_string(st.end.z.real(), 12) + " + " + to_string(st.end.z.imag(), 12) + "i");
        }
        tr.step_radius.push_back(R);
        cur = st.end;
        if (len == dist) cur.z = target;
        mom += st.moment_increment;
        tr.states.push_back(cur);
        tr.moments.push_back(mom);
        break;
      }
    }
    tr.waypoint_index.push_back(tr.states.size() - 1);
  }
  return tr;
}

}  // namespace p1
