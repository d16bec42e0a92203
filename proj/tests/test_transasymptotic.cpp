#include <gtest/gtest.h>

#include "p1/error.hpp"
#include "p1/matching.hpp"
#include "p1/transseries.hpp"

using namespace p1;

namespace {

const std::vector<GmInfo>& gms() {
  static const std::vector<GmInfo> g = compute_Gm(6);
  return g;
}

Polynomial poly(std::initializer_list<Rational> c) { return Polynomial(std::vector<Rational>(c)); }

}  // namespace

TEST(Gm, ZerothClosedForm) {
  const RationalFnS expect(poly({0, 12}), poly({1, -2, 1}));
  EXPECT_EQ(gms()[0].G, expect);
}

TEST(Gm, FirstClosedForm) {
  // -(15s^3 + 175s^2 + 30s - 2) / (10 s (s-1)^3)
  const RationalFnS expect(-poly({-2, 30, 175, 15}), Polynomial::monomial(1, 10) * Polynomial::power_of_linear(1, 3));
  EXPECT_EQ(gms()[1].G, expect);
}

TEST(Gm, TNormalization) {
  // t (t - 1/12)^{-2} with t = s/12, as an exact rational function of s.
  const Polynomial t = poly({0, Rational(1, 12)});
  const Polynomial tm = poly({Rational(-1, 12), Rational(1, 12)});
  EXPECT_EQ(RationalFnS(t, tm * tm), gms()[0].G);
}

TEST(Gm, ResidualVanishesExactly) {
  std::vector<RationalFnS> G;
  for (const auto& g : gms()) G.push_back(g.G);
  for (int m = 0; m <= 6; ++m) EXPECT_TRUE(gm_residual(G, m).is_zero()) << m;
}

TEST(Gm, PolesOnlyAtZeroAndOne) {
  for (const auto& g : gms()) {
    const Polynomial& d = g.G.den();
    EXPECT_EQ(d.multiplicity(0) + d.multiplicity(1), d.degree()) << g.m;
    EXPECT_EQ(g.pole_order_at_one, g.m + 2);
    EXPECT_EQ(g.pole_order_at_zero, g.m);
  }
}

TEST(Gm, ValueAtInfinityIsH0Coefficient) {
  // Column m of the table at s -> infinity keeps only the level-0 term c_{0m}.
  const auto t = compute_transseries_table(1, 6);
  for (const auto& g : gms()) EXPECT_EQ(g.G.value_at_infinity(), t.entry(0, g.m)) << g.m;
  EXPECT_EQ(gms()[4].G.value_at_infinity(), Rational(-392, 625));
}

TEST(Gm, LargeSLimit) {
  const Complex s(Real(1e12));
  EXPECT_NEAR(to_double((s * gms()[0].G.evaluate(s)).real()), 12.0, 1e-9);
}

TEST(Gm, JsonSchema) {
  const auto j = gm_to_json(gms()[1]);
  EXPECT_EQ(j["m"], 1);
  EXPECT_EQ(j["num_int"], nlohmann::json({"-2", "30", "175", "15"}));
  EXPECT_TRUE(j.contains("num"));
  EXPECT_TRUE(j.contains("den"));
}

TEST(Matching, SIsExpV) {
  const MatchingPoint p{Complex(Real(3.5), Real(0.7)), Complex(Real(100), Real(20))};
  const Complex direct = Real(12) * exp(p.x) * sqrt(p.x) / p.C;
  EXPECT_LT(to_double(cabs(p.s() - direct) / cabs(direct)), 1e-30);
}

TEST(Matching, LeadingTermValues) {
  // x with s = 2 and s = 3 for C = 12 e: v = ln s.
  for (const auto& [s, expect] : {std::pair{2, 24.0}, std::pair{3, 9.0}}) {
    const Complex C = Real(12) * exp(Real(1));
    const Complex L = log(C / Real(12)) + log(Real(s));
    Complex x = L;
    for (int i = 0; i < 60; ++i) x -= (x + log(x) / Real(2) - L) / (Real(1) + Real(1) / (Real(2) * x));
    const MatchedValue v = eval_matched({x, C}, gms(), 0);
    EXPECT_NEAR(to_double(v.value.real()), expect, 1e-25);
  }
}

TEST(Matching, TwoTruncationsAgree) {
  // s = 2 at x = 20.
  const Real x = 20;
  const MatchingPoint p{Complex(x), Complex(Real(6) * exp(x) * sqrt(x))};
  ASSERT_LT(to_double(cabs(p.s() - Real(2))), 1e-25);
  const MatchedValue a = eval_matched(p, gms(), 4), b = eval_matched(p, gms(), 6);
  EXPECT_GT(to_double(a.last_term), 0);
  EXPECT_LE(to_double(cabs(a.value - b.value)), to_double(a.last_term));
}

TEST(Matching, PoleProximity) {
  // s = 1 exactly: C = 12 e^x sqrt(x).
  const Complex x(5);
  const Complex C = Real(12) * exp(x) * sqrt(x);
  EXPECT_THROW(eval_matched({x, C}, gms(), 1), DomainError);
}

TEST(PoleArray, ConstructedRoots) {
  EXPECT_LT(to_double(cabs(pole_array_root(Complex(Real(12) * exp(Real(1))), 0).x - Complex(1))), 1e-30);
  const Real C10 = Real(12) * exp(Real(10)) * sqrt(Real(10));
  EXPECT_LT(to_double(cabs(pole_array_root(Complex(C10), 0).x - Complex(10))), 1e-30);
}

TEST(PoleArray, MillionFirstRoot) {
  // Independent 40-digit root of x + ln(x)/2 = ln(C/12) + 2 pi i.
  const Complex expect(parse_real("10.09850931930751403652015078098335503453"),
                       parse_real("6.014599017507171940255115363213619569111"));
  const ArrayRoot r = pole_array_root(Complex(Real(1e6)), 1);
  EXPECT_LT(to_double(cabs(r.x - expect)), 1e-28);
  EXPECT_LT(to_double(r.residual), 1e-12);
  const auto arr = pole_array(Complex(Real(1e6)), 2);
  ASSERT_EQ(arr.size(), 5u);
  EXPECT_LT(to_double(cabs(arr[1].x - conj(expect))), 1e-28);
}

TEST(PoleArray, MonotoneInC) {
  double prev = 0;
  for (double C = 40; C < 1e8; C *= 3) {
    const double x = to_double(pole_array_root(Complex(Real(C)), 0).x.real());
    EXPECT_GT(x, prev);
    prev = x;
  }
}

TEST(PoleArray, RequiresLargeC) { EXPECT_THROW(pole_array(Complex(5), 1), DomainError); }
