#include "p1/seeding.hpp"

#include <map>
#include <mutex>
#include <string>
#include <tuple>

#include "p1/error.hpp"

namespace p1 {
namespace {

struct LevelSum {
  Complex v{0}, dv{0};
  Real err = 0;
};

// sum_m c_m x^{-m} and its x-derivative contribution, stopped before the
// smallest nonzero term. `shift` is k/2 so the derivative of the prefactor
// x^{-k/2-m} e^{-kx} is folded in as (-k - (k/2+m)/x).
LevelSum level_sum(const std::vector<Real>& c, const Complex& x, int k) {
  LevelSum out;
  const Complex inv = Real(1) / x;
  const Real ax_inv = std::abs(inv);
  const int M = static_cast<int>(c.size()) - 1;
  // Locate the smallest nonzero term.
  int stop = M + 1;
  Real smallest = -1;
  Real p = 1;
  for (int m = 0; m <= M; ++m, p *= ax_inv) {
    if (c[m] == 0) continue;
    const Real t = abs(c[m]) * p;
    if (smallest < 0 || t < smallest) {
      smallest = t;
      stop = m;
    }
  }
  out.err = smallest < 0 ? Real(0) : smallest;
  if (stop == M + 1 || stop == M) {
    // Terms still decreasing at the end of the table: keep them all; the
    // last term is the error proxy.
    stop = M + 1;
  }
  Complex xm(1);
  const Real half_k = Real(k) / 2;
  for (int m = 0; m < stop; ++m, xm *= inv) {
    if (c[m] == 0) continue;
    const Complex t = c[m] * xm;
    out.v += t;
    out.dv += t * (Real(-k) - (half_k + m) * inv);
  }
  return out;
}

}  // namespace

TransseriesValue eval_transseries_levels(const Complex& C, const Complex& x, const TransseriesTable& table,
                                         int k_min) {
  TransseriesValue out;
  const auto& c = table.real_entries();
  if (x == Complex(0)) throw DomainError("transseries evaluated at x = 0");
  const Complex xi = C * std::exp(-x - std::log(x) / Real(2));  // C x^{-1/2} e^{-x}
  Complex xik(1);
  for (int k = 1; k < k_min; ++k) xik *= xi;
  Real scale = 0;
  for (int k = k_min; k <= table.K(); ++k) {
    if (k > 0) xik *= xi;
    if (k > 0 && xik == Complex(0)) break;
    const LevelSum s = level_sum(c[k], x, k);
    out.h += xik * s.v;
    out.hp += xik * s.dv;
    out.error += std::abs(xik) * s.err;
    out.levels_used = k;
    scale = std::max(scale, std::abs(out.h));
    if (k >= 1 && std::abs(xik) * std::abs(s.v) < Real(1e-40) * std::max(scale, Real(1e-300))) break;
  }
  return out;
}

TransseriesValue eval_transseries(const Complex& C, const Complex& x, const TransseriesTable& table) {
  TransseriesValue lvl0 = eval_transseries_levels(Complex(0), x, table, 0);
  if (C == Complex(0)) return lvl0;
  const TransseriesValue rest = eval_transseries_levels(C, x, table, 1);
  lvl0.h += rest.h;
  lvl0.hp += rest.hp;
  lvl0.error += rest.error;
  lvl0.levels_used = rest.levels_used;
  return lvl0;
}

Seed seed_at_infinity(const Complex& C, const Real& x_seed, const TransseriesTable& table) {
  if (!(x_seed > 0)) throw DomainError("x_seed must be positive");
  const Real xi = std::abs(C) * exp(-x_seed) / sqrt(x_seed);
  if (!(xi < Real(1) / 24)) throw DomainError("x_seed too small for |C|: |C| e^{-x} x^{-1/2} >= 1/24");
  const TransseriesValue v = eval_transseries(C, Complex(x_seed), table);
  return {{Complex(x_seed), v.h, v.hp}, v.error};
}

}  // namespace p1

namespace p1 {

Complex transseries_constant(const Complex& x, const Complex& h, const TransseriesTable& table) {
  const auto& c = table.real_entries();
  const TransseriesValue base = eval_transseries(Complex(0), x, table);
  const Complex target = h - base.h;
  const Complex xi = std::exp(-x - std::log(x) / Real(2));
  // Level sums do not depend on C'; evaluate them once.
  std::vector<Complex> lv;
  lv.reserve(static_cast<std::size_t>(table.K()));
  {
    const Complex inv = Real(1) / x;
    for (int k = 1; k <= table.K(); ++k) {
      // Optimal truncation of level k at this x.
      const auto& row = c[k];
      int stop = static_cast<int>(row.size());
      Real smallest = -1;
      Real p = 1;
      for (int m = 0; m < static_cast<int>(row.size()); ++m, p /= std::abs(x)) {
        if (row[m] == 0) continue;
        const Real t = abs(row[m]) * p;
        if (smallest < 0 || t < smallest) {
          smallest = t;
          stop = m;
        }
      }
      if (stop >= static_cast<int>(row.size()) - 1) stop = static_cast<int>(row.size());
      Complex v(0), xm(1);
      for (int m = 0; m < stop; ++m, xm *= inv) v += row[m] * xm;
      lv.push_back(v);
    }
  }
  Complex Cp = target / (xi * lv[0]);
  for (int it = 0; it < 60; ++it) {
    Complex f(0), df(0), xik(1), xik1(1);
    for (int k = 1; k <= table.K(); ++k) {
      xik1 = xik;  // (C' xi)^{k-1}
      xik *= Cp * xi;
      f += xik * lv[k - 1];
      df += Real(k) * xik1 * xi * lv[k - 1];
      if (std::abs(xik) < Real(1e-45)) break;
    }
    const Complex step = (f - target) / df;
    Cp -= step;
    if (std::abs(step) < Real(1e-30) * (1 + std::abs(Cp))) break;
  }
  return Cp;
}

AntistokesLimit antistokes_limits(const Complex& C, const Real& x_seed, const Real& Y,
                                  const TransseriesTable& table) {
  if (!(Y > x_seed)) throw DomainError("read-off height must exceed the seed point");
  const Seed sd = seed_at_infinity(C, x_seed, table);
  StepControl ctl;
  ctl.max_step = 2;
  AntistokesLimit out;
  for (int sign : {1, -1}) {
    std::vector<Complex> path;
    constexpr int kArc = 64;
    for (int i = 1; i <= kArc; ++i) {
      const Real th = sign * kPi / 2 * i / kArc;
      path.push_back(x_seed * Complex(cos(th), sin(th)));
    }
    path.push_back(Complex(0, sign * (Y - 10)));
    path.push_back(Complex(0, sign * Y));
    const NormalTrajectory tr = integrate_normal(sd.state, path, ctl);
    const auto& lo = tr.states[tr.waypoint_index[kArc]];
    const auto& hi = tr.states[tr.waypoint_index[kArc + 1]];
    const Complex c_lo = transseries_constant(lo.x, lo.h, table);
    const Complex c_hi = transseries_constant(hi.x, hi.h, table);
    (sign > 0 ? out.plus : out.minus) = c_hi;
    out.spread = std::max(out.spread, std::abs(c_hi - c_lo));
  }
  return out;
}

Real seeding_offset(const Real& x_seed, const TransseriesTable& table) {
  using Key = std::tuple<std::string, int, int>;
  static std::mutex mu;
  static std::map<Key, Real> cache;
  const Key key{to_string(x_seed), table.K(), table.M()};
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const AntistokesLimit L = antistokes_limits(Complex(0), x_seed, x_seed + 20, table);
  const Real delta = ((L.plus + L.minus) / Real(2)).real();
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, delta);
  return delta;
}

Seed seed_balanced(const Complex& C, const Real& x_seed, const TransseriesTable& table) {
  return seed_at_infinity(C - seeding_offset(x_seed, table), x_seed, table);
}

}  // namespace p1
