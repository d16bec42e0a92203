#include <gtest/gtest.h>

#include <random>

#include "p1/error.hpp"
#include "p1/laurent.hpp"
#include "p1/poles.hpp"
#include "p1/predictor.hpp"
#include "support.hpp"

using namespace p1;
using p1::testing::table40;

namespace {

double dist(const Complex& a, const Complex& b) { return to_double(cabs(a - b)); }

// States on a ray into the pole with |y| from about 1e2 to 1e6.
P1Trajectory synthetic_approach(const LaurentExpansion& L, const Complex& dir) {
  P1Trajectory tr;
  for (Real r = Real(0.1); r > Real(9e-4); r *= Real(0.85)) {
    const Complex z = L.pole() + r * dir;
    tr.states.push_back(make_p1_state(z, L.y(z), L.yp(z), L.antiderivative(z)));
  }
  tr.blew_up = true;
  return tr;
}

const RealPoleSearch& million_pole() {
  static const RealPoleSearch r = first_real_pole(Real(1e6), Real(compute_C0(5)), Real(5), table40());
  return r;
}

}  // namespace

TEST(Laurent, StructuralCoefficients) {
  const LaurentExpansion L(Complex(0), Complex(Real(0.7)), 12);
  EXPECT_EQ(L.coeff(-2), Complex(1));
  EXPECT_EQ(L.coeff(-1), Complex(0));
  EXPECT_EQ(L.coeff(0), Complex(0));
  EXPECT_EQ(L.coeff(1), Complex(0));
  EXPECT_EQ(L.coeff(2), Complex(0));
  EXPECT_LT(dist(L.coeff(3), Complex(Real(-1) / 6)), 1e-33);
}

TEST(Laurent, FifthVanishes) {
  const LaurentExpansion L(Complex(Real(1.3), Real(-0.4)), Complex(Real(0.2), Real(0.5)), 10);
  EXPECT_LT(dist(L.coeff(5), Complex(0)), 1e-33);
  EXPECT_LT(dist(L.coeff(2), -L.pole() / Real(10)), 1e-33);
}

TEST(Laurent, SixthAtUnitPole) {
  // k = 4: 18 c_6 = 6 (2 c_{-2} c_4 + 2 c_2 c_0 ... ) reduces to c_6 = 1/300 for zt = 1, c4 = 0.
  const LaurentExpansion L(Complex(1), Complex(0), 6);
  EXPECT_LT(dist(L.coeff(6), Complex(Real(1) / 300)), 1e-33);
}

TEST(Laurent, GrowthCertificateToForty) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int i = 0; i < 20; ++i) {
    const LaurentExpansion L(Complex(Real(u(rng)), Real(u(rng))), Complex(Real(u(rng)), Real(u(rng))), 40);
    EXPECT_EQ(L.growth_violation(), -1);
  }
  EXPECT_THROW(LaurentExpansion(Complex(0), Complex(0), 3), DomainError);
}

TEST(Laurent, ResidueFree) {
  // Contour integral of y over a circle is zero: the antiderivative is single valued.
  const LaurentExpansion L(Complex(0), Complex(Real(0.3)), 40);
  const int M = 256;
  Complex loop(0);
  for (int j = 0; j < M; ++j) {
    const Complex z = Real(0.2) * std::exp(kI * (Real(2) * kPi * Real(j) / Real(M)));
    loop += L.y(z) * (kI * z) * (Real(2) * kPi / Real(M));
  }
  EXPECT_LT(to_double(cabs(loop)), 1e-10);
}

TEST(LocatePole, RecoversSyntheticPoles) {
  std::mt19937 rng(20240601);
  std::uniform_real_distribution<double> mod(1, 3), ang(0, 2 * 3.141592653589793), unit(0, 1);
  double worst_z = 0, worst_c4 = 0;
  for (int i = 0; i < 100; ++i) {
    const Complex zt = std::polar(Real(mod(rng)), Real(ang(rng)));
    const Complex c4 = std::polar(Real(std::sqrt(unit(rng))), Real(ang(rng)));
    const LaurentExpansion L(zt, c4, 100);
    const PoleRecord r = locate_pole(synthetic_approach(L, std::polar(Real(1), Real(ang(rng)))));
    worst_z = std::max(worst_z, dist(r.z, zt));
    worst_c4 = std::max(worst_c4, dist(r.c4, c4));
    EXPECT_EQ(r.order, 2);
  }
  EXPECT_LT(worst_z, 1e-9);
  EXPECT_LT(worst_c4, 1e-6);
}

TEST(LocatePole, RejectsSimplePole) {
  P1Trajectory tr;
  for (Real r = Real(0.01); r > Real(1e-6); r *= Real(0.7)) {
    const Complex z(r);
    tr.states.push_back(make_p1_state(z, Real(1) / z, Real(-1) / (z * z)));
  }
  tr.blew_up = true;
  EXPECT_THROW(locate_pole(tr), SingularityError);
}

TEST(PoleRecord, JsonRoundTrip) {
  PoleRecord r;
  r.z = Complex(Real(-4.25), Real(0.5));
  r.x = Complex(Real(10.5), Real(-0.25));
  r.c4 = Complex(Real(0.125), 0);
  r.err = Real(1e-20);
  r.C = Complex(Real(1e6));
  const auto j = pole_to_json(r);
  EXPECT_EQ(j["order"], 2);
  const PoleRecord b = pole_from_json(nlohmann::json::parse(j.dump()));
  EXPECT_EQ(to_double(b.z.real()), -4.25);
  EXPECT_EQ(to_double(b.c4.real()), 0.125);
  EXPECT_EQ(pole_to_json(b), j);
}

TEST(FirstRealPole, MillionInsideBracketAndCertified) {
  const RealPoleSearch& r = million_pole();
  ASSERT_TRUE(r.pole.has_value());
  EXPECT_TRUE(r.guaranteed);
  const PolePrediction p = predict({1e6, 0.0}, nullptr, 5);
  const double x = to_double(r.pole->x.real());
  EXPECT_GE(x, p.x_lo);
  EXPECT_LE(x, p.x_hi);
  EXPECT_GT(to_double(r.pole->err), 0);
  const PoleCertificate cert = certify_pole(*r.pole);
  EXPECT_TRUE(cert.pass);
  EXPECT_LT(to_double(cabs(cert.loop_y)), 1e-10);
  EXPECT_LT(to_double(cabs(cert.laurent[1])), 1e-8);  // c_{-1}
  EXPECT_LT(to_double(cabs(cert.laurent[2])), 1e-8);  // c_0
  EXPECT_LT(to_double(cabs(cert.laurent[3])), 1e-8);  // c_1
}

TEST(FirstRealPole, TwiceC0) {
  const double C0 = compute_C0(5);
  const RealPoleSearch r = first_real_pole(Real(2 * C0), Real(C0), Real(5), table40());
  ASSERT_TRUE(r.pole.has_value());
  const PolePrediction p = predict({2 * C0, 0.0}, nullptr, 5);
  const double x = to_double(r.pole->x.real());
  EXPECT_GE(x, p.x_lo);
  EXPECT_LE(x, p.x_hi);
  EXPECT_EQ(r.pole->order, 2);
}

TEST(FirstRealPole, BelowC0NoPoleAboveA) {
  const RealPoleSearch r = first_real_pole(Real(1000), Real(compute_C0(5)), Real(5), table40());
  EXPECT_FALSE(r.guaranteed);
  EXPECT_FALSE(r.pole.has_value());
}

TEST(FirstRealPole, MonotoneInC) {
  const double C0 = compute_C0(5);
  double prev = 0;
  for (double C : {1.5 * C0, 5 * C0, 30 * C0}) {
    const RealPoleSearch r = first_real_pole(Real(C), Real(C0), Real(5), table40());
    ASSERT_TRUE(r.pole.has_value());
    EXPECT_GT(to_double(r.pole->x.real()), prev);
    prev = to_double(r.pole->x.real());
  }
}

TEST(CrossPole, RoundTripAroundSemicircle) {
  const PoleRecord& rec = *million_pole().pole;
  const P1State& entry = rec.anchor;
  const Complex d = entry.z - rec.z;
  const P1State exit = cross_pole(rec, rec.z - d);
  // Back to the entry point along a half circle around the pole.
  std::vector<Complex> arc;
  for (int j = 1; j <= 16; ++j) arc.push_back(rec.z - d * std::exp(kI * (kPi * Real(j) / Real(16))));
  const P1Trajectory back = integrate_path(exit, arc);
  ASSERT_FALSE(back.blew_up);
  const double scale = 1 + to_double(cabs(entry.y));
  EXPECT_LT(dist(back.back().y, entry.y) / scale, 1e-8);
  EXPECT_LT(dist(back.back().yp, entry.yp) / (1 + to_double(cabs(entry.yp))), 1e-8);
  EXPECT_LT(dist(back.back().I, entry.I) / (1 + to_double(cabs(entry.I))), 1e-8);
}

TEST(CrossPole, ReCrossRestoresState) {
  const PoleRecord& rec = *million_pole().pole;
  const Complex d = rec.anchor.z - rec.z;
  const P1State there = cross_pole(rec, rec.z - d);
  PoleRecord mirrored = rec;
  mirrored.anchor = there;
  const P1State again = cross_pole(mirrored, rec.anchor.z);
  EXPECT_LT(dist(again.y, rec.anchor.y) / (1 + to_double(cabs(rec.anchor.y))), 1e-8);
  EXPECT_LT(dist(again.I, rec.anchor.I) / (1 + to_double(cabs(rec.anchor.I))), 1e-8);
}

TEST(CrossPole, OutsideCertifiedRadius) {
  const PoleRecord& rec = *million_pole().pole;
  EXPECT_THROW(cross_pole(rec, rec.z + Complex(100)), DomainError);
}

TEST(LocatePole, TwoApproachDirectionsAgree) {
  const PoleRecord& rec = *million_pole().pole;
  // Approach along the imaginary direction: start from a state beside the pole.
  const P1Trajectory side = integrate_path(rec.anchor, {rec.z + Complex(0, Real(0.3))});
  ASSERT_FALSE(side.blew_up);
  const P1Trajectory in = integrate_path(side.back(), {rec.z - Complex(0, Real(0.01))});
  ASSERT_TRUE(in.blew_up);
  const PoleRecord r2 = locate_pole(in);
  const double tol = 2 * std::max(to_double(rec.err), to_double(r2.err));
  EXPECT_LT(dist(r2.z, rec.z), std::max(tol, 1e-26));
}

TEST(FirstRealPole, IndependentOfSeedPoint) {
  PoleSearchOptions near, far;
  near.x_seed = 26;
  far.x_seed = 34;
  const RealPoleSearch a = first_real_pole(Real(1e6), Real(0), Real(5), table40(), near);
  const RealPoleSearch b = first_real_pole(Real(1e6), Real(0), Real(5), table40(), far);
  ASSERT_TRUE(a.pole && b.pole);
  EXPECT_LT(to_double(cabs(a.pole->x - b.pole->x)), 1e-11);
}

