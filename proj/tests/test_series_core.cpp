#include <gtest/gtest.h>

#include <random>

#include "p1/error.hpp"
#include "p1/transseries.hpp"
#include "p1/variable_map.hpp"

using namespace p1;

namespace {

Rational R(const char* s) { return parse_rational(s); }

// Residual of level k of the transseries in the normal form, as a series
// in 1/x. With g_k = sum_m c_km x^{-m} and beta = (k-1)/2 the level-k
// equation reads
//   g'' - 2(k + beta/x) g' + [(k + beta/x)^2 + beta/x^2 + 1/(4x^2) - 1 - h_0] g
//     = (1/2) sum_{0<j<k} g_j g_{k-j},
// and level 0 is h'' + h'/x - h - h^2/2 + q/x^4 = 0 with q the x^{-4}
// coefficient of h_0.
PowerSeries1x level_residual(const TransseriesTable& t, int k, const Rational& q) {
  const PowerSeries1x h0 = t.series(0);
  const int M = t.M();
  if (k == 0) {
    PowerSeries1x quartic(M);
    if (M >= 4) quartic[4] = q;
    return h0.derivative().derivative() + h0.derivative().times_inv_x() - h0 - Rational(1, 2) * (h0 * h0) + quartic;
  }
  const PowerSeries1x g = t.series(k);
  const Rational beta(k - 1, 2);
  PowerSeries1x coef(M);  // (k + beta/x)^2 + beta/x^2 + 1/(4x^2) - 1
  coef[0] = Rational(k * k - 1);
  if (M >= 1) coef[1] = 2 * k * beta;
  if (M >= 2) coef[2] = beta * beta + beta + Rational(1, 4);
  PowerSeries1x lhs = g.derivative().derivative() - Rational(2 * k) * g.derivative() -
                      Rational(2) * beta * g.derivative().times_inv_x() + coef * g - h0 * g;
  PowerSeries1x rhs(M);
  for (int j = 1; j < k; ++j) rhs += Rational(1, 2) * (t.series(j) * t.series(k - j));
  return lhs - rhs;
}

}  // namespace

TEST(H0Series, GoldenCoefficients) {
  const PowerSeries1x h = compute_h0_series(8);
  EXPECT_EQ(h[4], R("-392/625"));
  EXPECT_EQ(h[6], R("-6272/625"));
  EXPECT_EQ(h[8], R("-141196832/390625"));
  EXPECT_EQ(compute_h0_series(5)[5], Rational(0));
}

TEST(H0Series, TenthOrder) { EXPECT_EQ(compute_h0_series(10)[10], R("-9039055872/390625")); }

TEST(H0Series, OnlyEvenOrdersFromFour) {
  const PowerSeries1x h = compute_h0_series(60);
  for (int m = 0; m <= 60; ++m) {
    if (m < 4 || m % 2 == 1) EXPECT_EQ(h[m], Rational(0)) << m;
    else EXPECT_NE(h[m], Rational(0)) << m;
  }
}

TEST(H0Series, RejectsOrderBelowFour) { EXPECT_THROW(compute_h0_series(3), DomainError); }

TEST(TransseriesTable, LeadingEntries) {
  EXPECT_EQ(compute_transseries_table(1, 0).entry(1, 0), Rational(1));
  EXPECT_EQ(compute_transseries_table(2, 0).entry(2, 0), Rational(1, 6));
  EXPECT_EQ(compute_transseries_table(3, 0).entry(3, 0), Rational(1, 48));
}

TEST(TransseriesTable, FirstLevelCorrections) {
  // Values from an independent symbolic substitution of the first level.
  const auto t = compute_transseries_table(3, 3);
  EXPECT_EQ(t.entry(1, 1), R("-1/8"));
  EXPECT_EQ(t.entry(1, 2), R("9/128"));
  EXPECT_EQ(t.entry(1, 3), R("-341329/1920000"));
  EXPECT_EQ(t.entry(2, 1), R("-11/72"));
  EXPECT_EQ(t.entry(2, 2), R("53/192"));
  EXPECT_EQ(t.entry(3, 1), R("-43/1152"));
}

TEST(TransseriesTable, LimitValuesExact) {
  const auto t = compute_transseries_table(40, 2);
  for (int k = 1; k <= 40; ++k) {
    Rational expect(k);
    for (int i = 1; i < k; ++i) expect /= 12;
    EXPECT_EQ(t.entry(k, 0), expect) << k;
  }
}

TEST(TransseriesTable, RowZeroIsH0) {
  const auto t = compute_transseries_table(2, 20);
  EXPECT_EQ(t.series(0), compute_h0_series(20));
}

TEST(TransseriesTable, ResidualVanishesThroughTruncation) {
  const Rational q = quartic_forcing();
  const auto t = compute_transseries_table(4, 14, q);
  for (int k = 0; k <= 4; ++k) {
    const PowerSeries1x r = level_residual(t, k, q);
    for (int m = 0; m <= r.order(); ++m) EXPECT_EQ(r[m], Rational(0)) << "k=" << k << " m=" << m;
  }
}

TEST(TransseriesTable, PerturbedForcingStillSolvable) {
  const Rational q = quartic_forcing() + Rational(1, 1000);
  const auto t = compute_transseries_table(3, 10, q);
  EXPECT_EQ(t.entry(0, 4), q);
  EXPECT_NE(t.entry(0, 4), quartic_forcing());
  for (int k = 0; k <= 3; ++k) {
    const PowerSeries1x r = level_residual(t, k, q);
    for (int m = 0; m <= r.order(); ++m) EXPECT_EQ(r[m], Rational(0));
  }
}

TEST(TransseriesTable, JsonRoundTrip) {
  const auto t = compute_transseries_table(3, 6);
  const auto j = t.to_json();
  EXPECT_EQ(j["kind"], "transseries_table");
  EXPECT_EQ(TransseriesTable::from_json(j), t);
  EXPECT_EQ(TransseriesTable::from_json(nlohmann::json::parse(j.dump())), t);
}

TEST(PowerSeries, MultiplicationCommutativeAssociative) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 30);
  auto random_series = [&] {
    std::vector<Rational> c(12);
    for (auto& v : c) {
      v = Rational(num(rng), den(rng));
      v.canonicalize();
    }
    return PowerSeries1x(c);
  };
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_series(), b = random_series(), c = random_series();
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ((a + b).derivative(), a.derivative() + b.derivative());
  }
}

TEST(PowerSeries, DerivativeAndShift) {
  // d/dx x^{-2} = -2 x^{-3}
  PowerSeries1x p(5);
  p[2] = 1;
  const auto d = p.derivative();
  EXPECT_EQ(d[3], Rational(-2));
  EXPECT_EQ(p.times_inv_x(2)[4], Rational(1));
}

TEST(VariableMap, RoundTrip) {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-5, 5);
  for (int i = 0; i < 200; ++i) {
    const Complex z(Real(u(rng)), Real(u(rng)));
    if (abs(arg(Real(-24) * z)) >= 4 * kPi / 5 - Real(1e-3)) continue;
    const P1Point p{z, Complex(Real(u(rng)), Real(u(rng))), Complex(Real(u(rng)), Real(u(rng)))};
    const P1Point back = varmap::to_p1(varmap::to_normal(p));
    EXPECT_LT(to_double(cabs(back.z - p.z) / cabs(p.z)), 1e-12);
    EXPECT_LT(to_double(cabs(back.y - p.y) / (1 + cabs(p.y))), 1e-12);
    EXPECT_LT(to_double(cabs(back.yp - p.yp) / (1 + cabs(p.yp))), 1e-12);
  }
}

TEST(VariableMap, UnitXImage) {
  const Complex z = varmap::z_from_x(Complex(1));
  const Real expect = -pow(Real(30), Real(4) / 5) / 24;
  EXPECT_LT(to_double(cabs(z - Complex(expect))), 1e-30);
}

TEST(VariableMap, PositiveXIsNegativeZ) {
  const Complex z = varmap::z_from_x(Complex(7));
  EXPECT_LT(z.real(), 0);
  EXPECT_LT(to_double(abs(z.imag())), 1e-30);
}

TEST(VariableMap, DefiningRelation) {
  const P1Point p{Complex(-2, Real(0.5)), Complex(Real(0.3), -1), Complex(2, 1)};
  const NormalPoint n = varmap::to_normal(p);
  EXPECT_LT(to_double(cabs(varmap::defining_residual(p, n))), 1e-12);
}

TEST(VariableMap, Errors) {
  EXPECT_THROW(varmap::to_normal({Complex(0), Complex(1), Complex(0)}), DomainError);
  EXPECT_THROW(varmap::to_normal({Complex(2), Complex(1), Complex(0)}), BranchCutError);
}
