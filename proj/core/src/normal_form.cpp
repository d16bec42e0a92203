#include "p1/normal_form.hpp"

#include <algorithm>

#include <boost/math/quadrature/gauss.hpp>

#include "p1/error.hpp"

namespace p1 {

Complex NormalSegment::h(const Complex& x) const {
  const Complex t = x - x0;
  Complex acc(0);
  for (std::size_t k = a.size(); k-- > 0;) acc = acc * t + a[k];
  return acc;
}

Complex NormalSegment::hp(const Complex& x) const {
  const Complex t = x - x0;
  Complex acc(0);
  for (std::size_t k = a.size(); k-- > 1;) acc = acc * t + Real(static_cast<int>(k)) * a[k];
  return acc;
}

NormalState NormalTrajectory::eval(const Complex& x) const {
  if (segments.empty()) throw DomainError("empty trajectory");
  const NormalSegment* best = nullptr;
  Real best_ratio = 0;
  for (const auto& s : segments) {
    const Real r = std::abs(x - s.x0) / std::abs(s.dx);
    if (best == nullptr || r < best_ratio) {
      best = &s;
      best_ratio = r;
    }
  }
  if (best_ratio > Real(1.0001)) throw DomainError("point outside the integrated region");
  return {x, best->h(x), best->hp(x)};
}

P1State NormalTrajectory::p1_state(std::size_t i) const {
  const P1Point p = varmap::to_p1(to_point(states.at(i)));
  P1State s{p.z, p.y, p.yp, I.at(i), E0};
  return s;
}

std::vector<Complex> taylor_coeffs_normal(const NormalState& s, int N, const Real& quartic) {
  // x h'' + h' - x (h + h^2/2) + q x^{-3} = 0 about x0:
  //   x0 (k+1)(k+2) a_{k+2} = x0 P_k + P_{k-1} - (k+1)^2 a_{k+1}
  //                           - q (-1)^k (k+1)(k+2)/2 x0^{-3-k},
  //   P_k = a_k + 1/2 sum a_j a_{k-j}.
  std::vector<Complex> a(static_cast<std::size_t>(std::max(N, 1)) + 1, Complex(0));
  std::vector<Complex> P;
  a[0] = s.h;
  a[1] = s.hp;
  const Complex x0 = s.x;
  const Complex inv = Real(1) / x0;
  Complex xp = inv * inv * inv;  // x0^{-3-k}
  auto Pk = [&](int k) {
    Complex acc(0);
    for (int j = 0; j < k - j; ++j) acc += a[j] * a[k - j];
    acc *= Real(2);
    if (k % 2 == 0) acc += a[k / 2] * a[k / 2];
    return a[k] + acc / Real(2);
  };
  for (int k = 0; k + 2 <= N; ++k) {
    P.push_back(Pk(k));
    Complex rhs = x0 * P[k] - Real((k + 1) * (k + 1)) * a[k + 1];
    if (k >= 1) rhs += P[k - 1];
    const Real sign = (k % 2 == 0) ? Real(1) : Real(-1);
    rhs -= quartic * sign * Real((k + 1) * (k + 2)) / Real(2) * xp;
    a[k + 2] = rhs / (x0 * Real((k + 1) * (k + 2)));
    xp *= inv;
  }
  a.resize(static_cast<std::size_t>(N) + 1);
  return a;
}

namespace {

struct NormalStepResult {
  NormalSegment seg;
  NormalState end;
  bool ok = false;
};

NormalStepResult normal_step(const NormalState& s, const Complex& dx, const StepControl& ctl) {
  const Real tol = pow(Real(10), -ctl.digits);
  NormalStepResult r;
  const Real adx = std::abs(dx);
  // Grow the order until the scaled tail is below tolerance.
  for (int N = 24; N <= ctl.max_order; N += 16) {
    std::vector<Complex> a = taylor_coeffs_normal(s, N);
    const Real scale = std::max({Real(1), std::abs(s.h), std::abs(s.hp) * adx});
    Real tail = 0;
    for (int j = N - 5; j <= N; ++j) tail += std::abs(a[j]) * pow(adx, j);
    if (tail * N <= tol * scale) {
      r.seg = {s.x, dx, std::move(a)};
      const Complex x1 = s.x + dx;
      r.end = {x1, r.seg.h(x1), r.seg.hp(x1)};
      r.ok = true;
      return r;
    }
  }
  return r;
}

// Integral of y dz over the segment, y and dz/dx from the variable map.
Complex segment_integral(const NormalSegment& seg) {
  using Quad = boost::math::quadrature::gauss<Real, 20>;
  const Complex half = seg.dx / Real(2);
  const Complex mid = seg.x0 + half;
  Complex acc(0);
  const auto& abscissa = Quad::abscissa();
  const auto& weights = Quad::weights();
  auto f = [&](const Real& t) {
    const Complex x = mid + half * t;
    const P1Point p = varmap::to_p1({x, seg.h(x), seg.hp(x)});
    return p.y / varmap::dx_dz(x);
  };
  for (std::size_t i = 0; i < abscissa.size(); ++i) {
    if (abscissa[i] == 0) {
      acc += weights[i] * f(Real(0));
    } else {
      acc += weights[i] * (f(abscissa[i]) + f(-abscissa[i]));
    }
  }
  return acc * half;
}

}  // namespace

NormalTrajectory integrate_normal(const NormalState& start, const std::vector<Complex>& path,
                                  const StepControl& ctl) {
  if (start.x == Complex(0)) throw DomainError("normal-form integration cannot start at x = 0");
  {
    Complex a = start.x;
    for (const Complex& b : path) {
      // Distance from 0 to the leg a -> b.
      const Complex d = b - a;
      const Real dd = std::norm(d);
      Real t = dd > 0 ? -(a.real() * d.real() + a.imag() * d.imag()) / dd : Real(0);
      t = std::clamp(t, Real(0), Real(1));
      if (std::abs(a + t * d) < Real(1e-8) * (1 + std::abs(a) + std::abs(b))) {
        throw DomainError("normal-form path passes through x = 0");
      }
      a = b;
    }
  }
  NormalTrajectory tr;
  tr.states.push_back(start);
  tr.I.push_back(Complex(0));
  {
    const P1Point p = varmap::to_p1(to_point(start));
    tr.E0 = energy(p.z, p.y, p.yp, Complex(0));
  }
  NormalState cur = start;
  Complex I(0);
  for (const Complex& target : path) {
    for (;;) {
      const Complex rem = target - cur.x;
      const Real dist = std::abs(rem);
      // Waypoints equal up to rounding: snap instead of taking a tiny step.
      if (dist <= Real(1e-28) * (1 + std::abs(cur.x))) {
        cur.x = target;
        break;
      }
      const P1Point p = varmap::to_p1(to_point(cur));
      if (std::abs(p.y) > ctl.blowup) {
        tr.blew_up = true;
        return tr;
      }
      const Real Rz = radius_bound(p.z, p.y, p.yp);
      const Real Rx = std::min(Rz * std::abs(varmap::dx_dz(cur.x)), std::abs(cur.x));
      Real len = std::min({ctl.safety * Rx, ctl.max_step, dist});
      NormalStepResult st;
      for (;;) {
        if (len < ctl.min_step) {
          tr.blew_up = true;
          return tr;
        }
        const Complex dx = (len == dist) ? rem : rem / dist * len;
        // The segment must not come near x = 0.
        if (std::abs(cur.x + dx) < std::abs(cur.x) / 4) {
          throw DomainError("normal-form path passes too close to x = 0");
        }
        st = normal_step(cur, dx, ctl);
        if (st.ok) break;
        len /= 2;
      }
      if (len == dist) st.end.x = target;
      I += segment_integral(st.seg);
      cur = st.end;
      tr.segments.push_back(std::move(st.seg));
      tr.states.push_back(cur);
      tr.I.push_back(I);
      const P1Point q = varmap::to_p1(to_point(cur));
      const Real drift = std::abs(energy(q.z, q.y, q.yp, I) - tr.E0) / (1 + std::abs(tr.E0));
      tr.max_drift = std::max(tr.max_drift, drift);
      if (ctl.enforce_drift && drift > ctl.drift_tol) {
        throw EnergyDriftError("normal-form energy drift " + to_string(drift, 6));
      }
    }
    tr.waypoint_index.push_back(tr.states.size() - 1);
  }
  return tr;
}

}  // namespace p1
