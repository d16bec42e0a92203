#include "p1/poles.hpp"

#include <algorithm>
#include <cmath>

#include "p1/error.hpp"
#include "p1/seeding.hpp"
#include "p1/variable_map.hpp"

namespace p1 {

namespace {

nlohmann::json cjson(const Complex& z) { return {to_double(z.real()), to_double(z.imag())}; }
Complex cfrom(const nlohmann::json& j) { return {Real(j.at(0).get<double>()), Real(j.at(1).get<double>())}; }

}  // namespace

nlohmann::json pole_to_json(const PoleRecord& r) {
  return {{"z", cjson(r.z)}, {"x", cjson(r.x)},   {"c4", cjson(r.c4)},
          {"order", r.order}, {"err", to_double(r.err)}, {"C", cjson(r.C)}};
}

PoleRecord pole_from_json(const nlohmann::json& j) {
  PoleRecord r;
  r.z = cfrom(j.at("z"));
  r.x = cfrom(j.at("x"));
  r.c4 = cfrom(j.at("c4"));
  r.order = j.at("order").get<int>();
  r.err = Real(j.at("err").get<double>());
  r.C = cfrom(j.at("C"));
  return r;
}

std::pair<Complex, Complex> pole_from_state(const P1State& s, const Complex& zt_guess, const Complex& c4_guess,
                                            int laurent_order) {
  Complex zt = zt_guess, c4 = c4_guess;
  auto F = [&](const Complex& a, const Complex& b, Complex& f1, Complex& f2) {
    const LaurentExpansion L(a, b, laurent_order);
    const Complex w = s.z - a;
    // Scale so both equations are O(1) near the pole.
    f1 = (L.y(s.z) - s.y) * w * w;
    f2 = (L.yp(s.z) - s.yp) * w * w * w;
  };
  for (int it = 0; it < 60; ++it) {
    Complex f1, f2;
    F(zt, c4, f1, f2);
    const Real scale = std::abs(s.z - zt);
    const Real hz = Real(1e-16) * std::max(scale, Real(1e-30));
    const Real hc = Real(1e-16) * std::max(Real(1), std::abs(c4));
    Complex a1, a2, b1, b2;
    F(zt + hz, c4, a1, a2);
    F(zt, c4 + hc, b1, b2);
    const Complex j11 = (a1 - f1) / hz, j21 = (a2 - f2) / hz;
    const Complex j12 = (b1 - f1) / hc, j22 = (b2 - f2) / hc;
    const Complex det = j11 * j22 - j12 * j21;
    if (det == Complex(0)) throw SingularityError("singular Jacobian in the pole fit");
    const Complex dz = (f1 * j22 - f2 * j12) / det;
    const Complex dc = (j11 * f2 - j21 * f1) / det;
    zt -= dz;
    c4 -= dc;
    if (std::abs(dz) < Real(1e-30) * (1 + std::abs(zt)) && std::abs(dc) < Real(1e-24) * (1 + std::abs(c4))) break;
  }
  Complex f1, f2;
  F(zt, c4, f1, f2);
  if (!(std::abs(f1) + std::abs(f2) < Real(1e-20))) {
    throw SingularityError("state does not fit the double-pole model");
  }
  return {zt, c4};
}

PoleRecord locate_pole(const P1Trajectory& tr, const LocateOptions& opt) {
  std::vector<std::size_t> window;
  for (std::size_t i = tr.states.size(); i-- > 0;) {
    const Real a = std::abs(tr.states[i].y);
    if (a > opt.y_hi) continue;
    if (a < opt.y_lo) break;
    window.push_back(i);
  }
  if (window.size() < 3) throw SingularityError("fewer than 3 trailing states in the pole-fit window");
  // Estimates from each state, starting nearest the pole.
  std::vector<std::pair<Complex, Complex>> est;
  Complex zt_g, c4_g(0);
  {
    const P1State& s = tr.states[window.front()];
    zt_g = s.z + Real(2) * s.y / s.yp;
  }
  for (std::size_t i : window) {
    const P1State& s = tr.states[i];
    auto e = pole_from_state(s, zt_g, c4_g, opt.laurent_order);
    est.push_back(e);
    zt_g = e.first;
    c4_g = e.second;
  }
  // Report the estimate from the state with |y| closest to the geometric
  // middle of the window; the spread is the uncertainty.
  const Real target = sqrt(opt.y_lo * opt.y_hi);
  std::size_t best = 0;
  Real best_d = -1;
  for (std::size_t k = 0; k < window.size(); ++k) {
    const Real d = abs(log(std::abs(tr.states[window[k]].y) / target));
    if (best_d < 0 || d < best_d) {
      best = k;
      best_d = d;
    }
  }
  PoleRecord r;
  r.z = est[best].first;
  r.c4 = est[best].second;
  Real spread = 0, spread_c4 = 0;
  for (const auto& e : est) {
    spread = std::max(spread, std::abs(e.first - r.z));
    spread_c4 = std::max(spread_c4, std::abs(e.second - r.c4));
  }
  if (spread > opt.model_tol * (1 + std::abs(r.z)) || spread_c4 > opt.model_tol * 1e3 * (1 + std::abs(r.c4))) {
    throw SingularityError("unexpected singularity type: pole estimates disagree across the fit window");
  }
  r.err = std::max(spread, Real(1e-30) * (1 + std::abs(r.z)));
  r.anchor = tr.states[window[best]];
  r.window = static_cast<int>(window.size());
  try {
    r.x = varmap::x_from_z(r.z);
  } catch (const DomainError&) {
    r.x = Complex(0);
  }
  return r;
}

P1State cross_pole(const PoleRecord& rec, const Complex& exit, int laurent_order) {
  const LaurentExpansion L(rec.z, rec.c4, laurent_order);
  const Real R = L.certified_radius();
  if (exit == rec.z) throw DomainError("exit point coincides with the pole");
  if (!(std::abs(exit - rec.z) < R)) throw DomainError("exit point outside the certified Laurent radius");
  if (!(std::abs(rec.anchor.z - rec.z) < R)) throw DomainError("anchor outside the certified Laurent radius");
  P1State s;
  s.z = exit;
  s.y = L.y(exit);
  s.yp = L.yp(exit);
  s.I = rec.anchor.I + L.antiderivative(exit) - L.antiderivative(rec.anchor.z);
  s.E = rec.anchor.E;
  return s;
}

PoleCertificate certify_pole(const PoleRecord& rec, Real radius, int M) {
  const LaurentExpansion L(rec.z, rec.c4, 120);
  if (radius <= 0) radius = L.certified_radius() / 2;
  PoleCertificate cert;
  cert.radius = radius;
  std::vector<Complex> path;
  const Complex dir = (rec.anchor.z - rec.z) / std::abs(rec.anchor.z - rec.z);
  path.push_back(rec.z + radius * dir);
  for (int j = 1; j <= M; ++j) {
    const Real th = 2 * kPi * j / M;
    path.push_back(rec.z + radius * dir * Complex(cos(th), sin(th)));
  }
  StepControl ctl;
  const P1Trajectory tr = integrate_path(rec.anchor, path, ctl);
  if (tr.blew_up) throw SingularityError("certification circle met a singularity");
  cert.max_drift = tr.max_drift;
  const std::size_t i0 = tr.waypoint_index[0];
  const std::size_t i1 = tr.waypoint_index[static_cast<std::size_t>(M)];
  const Complex dI = tr.states[i1].I - tr.states[i0].I;
  const Complex dJ = tr.moments[i1] - tr.moments[i0];
  cert.loop_y = dI;
  cert.loop_wy = dJ - rec.z * dI;
  // c_k = (1/M) sum_j y_j (r dir e^{i th_j})^{-k}
  for (int k = -2; k <= 6; ++k) {
    Complex acc(0);
    for (int j = 1; j <= M; ++j) {
      const Complex w = tr.states[tr.waypoint_index[static_cast<std::size_t>(j)]].z - rec.z;
      acc += tr.states[tr.waypoint_index[static_cast<std::size_t>(j)]].y * pow(w, -k);
    }
    cert.laurent.push_back(acc / Real(M));
  }
  const Real two_pi = 2 * kPi;
  const bool loops = std::abs(cert.loop_y) < Real(1e-8) &&
                     std::abs(cert.loop_wy - Complex(0, two_pi)) < Real(1e-6) * two_pi;
  const bool structure = std::abs(cert.laurent[1]) < Real(1e-8) && std::abs(cert.laurent[2]) < Real(1e-8) &&
                         std::abs(cert.laurent[3]) < Real(1e-8) &&
                         std::abs(cert.laurent[4] + rec.z / Real(10)) < Real(1e-6) &&
                         std::abs(cert.laurent[5] + Real(1) / 6) < Real(1e-6);
  cert.pass = loops && structure;
  return cert;
}

Real seed_point_for(const Complex& C, const Real& x_min) {
  // Margin: |C| e^{-x} x^{-1/2} <= 1e-6.
  Real x = x_min;
  while (std::abs(C) * exp(-x) / sqrt(x) > Real(1e-6)) x += 1;
  return x;
}

P1State p1_seed(const Complex& C, const Real& x_seed, const TransseriesTable& table) {
  const Seed sd = seed_balanced(C, x_seed, table);
  const P1Point p = varmap::to_p1(to_point(sd.state));
  return make_p1_state(p.z, p.y, p.yp);
}

RealPoleSearch first_real_pole(const Real& C, const Real& C0, const Real& A, const TransseriesTable& table,
                               const PoleSearchOptions& opt) {
  RealPoleSearch out;
  out.guaranteed = C > C0;
  const Real xs = seed_point_for(Complex(C), opt.x_seed);
  const P1State s0 = p1_seed(Complex(C), xs, table);
  const Complex zA = varmap::z_from_x(Complex(A));
  const P1Trajectory tr = integrate_path(s0, {Complex(zA.real(), 0)}, opt.ctl);
  if (!tr.blew_up) {
    out.x_reached = A;
    return out;
  }
  PoleRecord r = locate_pole(tr, opt.locate);
  r.C = Complex(C);
  r.provenance = "real-axis search, C = " + to_string(C, 20);
  r.drift = tr.max_drift;
  out.x_reached = r.x.real();
  out.pole = r;
  return out;
}

std::vector<Complex> z_polyline(const Complex& a, const Complex& b, int pieces) {
  std::vector<Complex> out;
  for (int i = 1; i <= pieces; ++i) out.push_back(varmap::z_from_x(a + (b - a) * Real(i) / Real(pieces)));
  return out;
}

PoleRecord hunt_pole(const Complex& C, const Complex& x_target, const TransseriesTable& table,
                     const PoleSearchOptions& opt) {
  const Real xs = seed_point_for(C, opt.x_seed);
  P1State cur = p1_seed(C, xs, table);
  std::vector<Complex> path;
  const Complex corner(x_target.real() + 3, x_target.imag());
  for (const auto& z : z_polyline(Complex(xs), Complex(corner.real(), 0), 16)) path.push_back(z);
  for (const auto& z : z_polyline(Complex(corner.real(), 0), corner, 32)) path.push_back(z);
  for (const auto& z : z_polyline(corner, x_target, 32)) path.push_back(z);
  P1Trajectory tr = integrate_path(cur, path, opt.ctl);
  for (int round = 0; round < 40 && !tr.blew_up; ++round) {
    cur = tr.back();
    Complex guess = cur.z + Real(2) * cur.y / cur.yp;
    if (std::abs(cur.y) > 10) {
      try {
        guess = pole_from_state(cur, guess, Complex(0), opt.locate.laurent_order).first;
      } catch (const SingularityError&) {
      }
    }
    // Aim slightly past the estimate so the approach does not stall.
    const Complex target = guess + (guess - cur.z) * Real(1e-3);
    P1Trajectory next = integrate_path(cur, {target}, opt.ctl);
    // Concatenate so the fit window sees the approach.
    next.states.erase(next.states.begin());
    for (auto& s : next.states) tr.states.push_back(s);
    tr.blew_up = next.blew_up;
    tr.max_drift = std::max(tr.max_drift, next.max_drift);
  }
  if (!tr.blew_up) throw ConvergenceError("pole hunt did not reach the blow-up threshold");
  PoleRecord r = locate_pole(tr, opt.locate);
  r.C = C;
  r.provenance = "complex hunt";
  r.drift = tr.max_drift;
  return r;
}

Complex count_poles_in_rect(const Complex& C, Real x0, Real x1, Real y0, Real y1, const TransseriesTable& table,
                            const PoleSearchOptions& opt, Real* max_drift) {
  const Real xs = seed_point_for(C, opt.x_seed);
  const P1State s0 = p1_seed(C, xs, table);
  std::vector<Complex> path = z_polyline(Complex(xs), Complex(x1, 0), 16);
  for (const auto& z : z_polyline(Complex(x1, 0), Complex(x1, y0), 16)) path.push_back(z);
  const std::size_t loop_start = path.size() - 1;
  const Complex corners[] = {Complex(x1, y0), Complex(x1, y1), Complex(x0, y1), Complex(x0, y0), Complex(x1, y0)};
  for (int c = 0; c < 4; ++c) {
    for (const auto& z : z_polyline(corners[c], corners[c + 1], 64)) path.push_back(z);
  }
  const P1Trajectory tr = integrate_path(s0, path, opt.ctl);
  if (tr.blew_up) throw SingularityError("pole on the counting contour");
  if (max_drift) *max_drift = tr.max_drift;
  const Complex dJ = tr.moments[tr.waypoint_index.back()] - tr.moments[tr.waypoint_index[loop_start]];
  return dJ / (Real(2) * kPi * kI);
}

}  // namespace p1
