#include "p1/matching.hpp"

#include <sstream>

#include "p1/error.hpp"
#include "p1/transseries.hpp"

namespace p1 {

Complex MatchingPoint::v() const {
  if (C == Complex(0)) throw DomainError("matching variable needs C != 0");
  if (x == Complex(0)) throw DomainError("matching variable needs x != 0");
  return x + std::log(x) / Real(2) - std::log(C / Real(12));
}

namespace {

constexpr int kTrailingZeros = 8;

// Column m of the table as a series in u = 1/s:  sum_k c_{km} 12^k u^k.
// Finds the least b such that (1-u)^b S(u) is a polynomial of degree d with
// at least kTrailingZeros verified vanishing coefficients beyond d.
bool resum_column(const std::vector<Rational>& S, RationalFnS& out) {
  const int K = static_cast<int>(S.size()) - 1;
  for (int b = 0; b + kTrailingZeros <= K; ++b) {
    std::vector<Rational> T = S;
    for (int r = 0; r < b; ++r) {
      for (int i = K; i >= 1; --i) T[i] -= T[i - 1];
    }
    int d = K;
    while (d >= 0 && sgn(T[d]) == 0) --d;
    if (K - d < kTrailingZeros) continue;
    // N(u)/(1-u)^b with u = 1/s  ->  s^{b-d} Ntilde(s) / (s-1)^b.
    std::vector<Rational> rev(static_cast<std::size_t>(std::max(d, 0)) + 1, Rational(0));
    for (int i = 0; i <= d; ++i) rev[d - i] = T[i];
    Polynomial num(rev);
    Polynomial den = Polynomial::power_of_linear(1, b);
    if (b >= d) num = num * Polynomial::monomial(b - d);
    else den = den * Polynomial::monomial(d - b);
    out = RationalFnS(num, den);
    return true;
  }
  return false;
}

}  // namespace

RationalFnS gm_residual(const std::vector<RationalFnS>& G, int m, const Rational& quartic) {
  if (m < 0 || m >= static_cast<int>(G.size())) throw DomainError("gm_residual: order out of range");
  // With D = s d/ds the coefficient of x^{-m} after inserting sum x^{-m} G_m(s) is
  //   D^2 G_m - G_m - 1/2 sum_{i+j=m} G_i G_j + D^2 G_{m-1} + (3-2m) D G_{m-1}
  //   + 1/4 D^2 G_{m-2} - (m-2) D G_{m-2} + (m-2)^2 G_{m-2} + q [m == 4].
  auto D = [](const RationalFnS& f) { return f.euler(); };
  RationalFnS r = D(D(G[m])) - G[m];
  RationalFnS quad;
  for (int i = 0; i <= m; ++i) quad += G[i] * G[m - i];
  r -= quad * Rational(1, 2);
  if (m >= 1) {
    const RationalFnS d1 = D(G[m - 1]);
    r += D(d1) + d1 * Rational(3 - 2 * m);
  }
  if (m >= 2) {
    const RationalFnS d1 = D(G[m - 2]);
    r += D(d1) * Rational(1, 4) - d1 * Rational(m - 2) + G[m - 2] * Rational((m - 2) * (m - 2));
  }
  if (m == 4) r += RationalFnS::from_polynomial(Polynomial::constant(quartic));
  return r;
}

std::vector<GmInfo> compute_Gm(int m_max, const Rational& quartic) {
  if (m_max < 0) throw DomainError("compute_Gm needs m_max >= 0");
  constexpr int kLevelCap = 160;
  int K = 4 * m_max + 20;
  std::vector<GmInfo> out;
  std::vector<RationalFnS> G;
  TransseriesTable table = compute_transseries_table(K, m_max, quartic);
  for (int m = 0; m <= m_max; ++m) {
    RationalFnS g;
    for (;;) {
      std::vector<Rational> S(static_cast<std::size_t>(K) + 1);
      Rational p12 = 1;
      for (int k = 0; k <= K; ++k) {
        S[k] = table.entry(k, m) * p12;
        p12 *= 12;
      }
      if (resum_column(S, g)) break;
      if (K >= kLevelCap) {
        throw ConvergenceError("no rational G_" + std::to_string(m) + " found with " +
                               std::to_string(K) + " exponential levels");
      }
      K = std::min(kLevelCap, 2 * K);
      table = compute_transseries_table(K, m_max, quartic);
    }
    G.push_back(g);
    if (!gm_residual(G, m, quartic).is_zero()) {
      throw ConvergenceError("resummed G_" + std::to_string(m) + " fails the order-" + std::to_string(m) +
                             " equation");
    }
    GmInfo info;
    info.m = m;
    info.G = g;
    info.pole_order_at_one = g.den().multiplicity(1);
    info.pole_order_at_zero = g.den().multiplicity(0);
    info.levels_used = K;
    out.push_back(std::move(info));
  }
  return out;
}

nlohmann::json gm_to_json(const GmInfo& g) {
  const auto [pn, pd] = g.G.primitive_form();
  return {{"m", g.m},
          {"num", rationals_to_json(g.G.num().coeffs())},
          {"den", rationals_to_json(g.G.den().coeffs())},
          {"num_int", rationals_to_json(pn)},
          {"den_int", rationals_to_json(pd)},
          {"pole_order_at_1", g.pole_order_at_one},
          {"pole_order_at_0", g.pole_order_at_zero}};
}

MatchedValue eval_matched(const MatchingPoint& p, const std::vector<GmInfo>& G, int m_max,
                          const MatchingOptions& opt) {
  if (m_max < 0 || m_max >= static_cast<int>(G.size())) throw DomainError("eval_matched: m_max out of range");
  const Complex s = p.s();
  if (std::abs(s - Real(1)) < opt.pole_margin) {
    throw DomainError("matching point within the pole margin of s = 1");
  }
  MatchedValue out;
  out.value = Complex(0);
  const Complex inv_x = Real(1) / p.x;
  Complex xm(1);
  Real prev = 0;
  for (int m = 0; m <= m_max; ++m) {
    const Complex term = xm * G[m].G.evaluate(s);
    const Real mag = std::abs(term);
    if (m > 0 && prev > 0 && mag > opt.ratio_threshold * prev && out.first_violation < 0) {
      out.asymptotic = false;
      out.first_violation = m;
    }
    out.value += term;
    out.last_term = mag;
    prev = mag;
    xm *= inv_x;
  }
  return out;
}

ArrayRoot pole_array_root(const Complex& C, int k) {
  if (std::abs(C) <= 12) throw DomainError("pole_array needs |C| > 12");
  const Complex L = std::log(C / Real(12)) + Real(2 * k) * kPi * kI;
  Complex x = L - std::log(L) / Real(2);
  if (x.real() <= 0) x = Complex(1, x.imag());
  std::ostringstream trace;
  const Real tol = Real(1e-12);
  for (int it = 0; it < 100; ++it) {
    const Complex f = x + std::log(x) / Real(2) - L;
    trace << " " << to_string(x.real(), 12) << "+" << to_string(x.imag(), 12) << "i";
    const Complex step = f / (Real(1) + Real(1) / (Real(2) * x));
    x -= step;
    if (std::abs(step) < Real(1e-30) * (1 + std::abs(x))) break;
  }
  const Real res = std::abs(x + std::log(x) / Real(2) - L);
  if (!(res < tol)) throw ConvergenceError("pole_array Newton failed; iterates:" + trace.str());
  return {k, x, res};
}

std::vector<ArrayRoot> pole_array(const Complex& C, int N) {
  if (N < 0) throw DomainError("pole_array needs N >= 0");
  std::vector<ArrayRoot> out;
  for (int k = -N; k <= N; ++k) out.push_back(pole_array_root(C, k));
  return out;
}

}  // namespace p1
