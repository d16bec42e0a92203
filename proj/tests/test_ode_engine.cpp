#include <gtest/gtest.h>

#include <sstream>

#include "p1/error.hpp"
#include "p1/h0_fixture.hpp"
#include "p1/normal_form.hpp"
#include "p1/p1_taylor.hpp"
#include "p1/seeding.hpp"
#include "p1/trajectory_io.hpp"
#include "p1/variable_map.hpp"
#include "support.hpp"

using namespace p1;

namespace {

const TransseriesTable& table() {
  static const TransseriesTable t = compute_transseries_table(6, 80);
  return t;
}

double dist(const Complex& a, const Complex& b) { return to_double(cabs(a - b)); }

}  // namespace

TEST(TaylorCoeffs, ZeroState) {
  const auto c = taylor_coeffs_regular(make_p1_state(Complex(0), Complex(0), Complex(0)), 6);
  EXPECT_EQ(c[2], Complex(0));
  EXPECT_LT(dist(c[3], Complex(Real(1) / 6)), 1e-33);
}

TEST(TaylorCoeffs, SecondCoefficient) {
  const Complex z(Real(0.3), Real(-1.2)), y(Real(0.7), Real(0.4));
  const auto c = taylor_coeffs_regular(make_p1_state(z, y, Complex(2)), 4);
  EXPECT_LT(dist(c[2], Real(3) * y * y + z / Real(2)), 1e-32);
}

TEST(TaylorCoeffs, FourthCoefficientAtUnitState) {
  // y'''' = 12 y'^2 + 12 y y'' = 72 at (y, y', z) = (1, 0, 0).
  const auto c = taylor_coeffs_regular(make_p1_state(Complex(0), Complex(1), Complex(0)), 4);
  EXPECT_LT(dist(c[4], Complex(3)), 1e-32);
}

TEST(RadiusBound, Examples) {
  EXPECT_EQ(to_double(radius_bound(Complex(0), Complex(1), Complex(0))), 1.0);
  EXPECT_NEAR(to_double(radius_bound(Complex(0), Complex(0), Complex(2))), 1.0, 1e-30);
  EXPECT_NEAR(to_double(radius_bound(Complex(6), Complex(0), Complex(0))), 1.0, 1e-30);
  EXPECT_TRUE(isinf(radius_bound(Complex(0), Complex(0), Complex(0))));
}

TEST(Integrate, ValueAtOneFromRest) {
  // Independent 40-digit Taylor-ODE solution.
  const Real expect = parse_real("0.1696814409079446108504883246611852000507");
  const P1Trajectory tr = integrate_path(make_p1_state(Complex(0), Complex(0), Complex(0)), {Complex(1)});
  ASSERT_FALSE(tr.blew_up);
  EXPECT_LT(dist(tr.back().y, Complex(expect)), 1e-28);
  EXPECT_LT(to_double(tr.max_drift), 1e-10);
}

TEST(Integrate, ReversalRecoversStart) {
  const P1State s0 = make_p1_state(Complex(Real(-1)), Complex(Real(0.2), Real(0.1)), Complex(Real(-0.3)));
  const P1Trajectory there = integrate_path(s0, {Complex(Real(1), Real(1.5))});
  const P1Trajectory back = integrate_path(there.back(), {s0.z});
  EXPECT_LT(dist(back.back().y, s0.y), 1e-25);
  EXPECT_LT(dist(back.back().yp, s0.yp), 1e-25);
  EXPECT_LT(dist(back.back().I, s0.I), 1e-25);
}

TEST(Integrate, EnergyOnLongPath) {
  const P1State s0 = make_p1_state(Complex(Real(-3)), Complex(Real(0.6)), Complex(Real(0.1), Real(0.2)));
  std::vector<Complex> path;
  for (int i = 1; i <= 10; ++i) path.emplace_back(Real(-3) - Real(i) * Real(0.5), Real(i % 2 == 0 ? 2 : -2));
  const P1Trajectory tr = integrate_path(s0, path);
  ASSERT_FALSE(tr.blew_up);
  for (const auto& s : tr.states) EXPECT_LT(to_double(energy_drift(s)), 1e-10);
}

TEST(Integrate, StepsWithinSafetyRadius) {
  StepControl ctl;
  const P1Trajectory tr = integrate_path(make_p1_state(Complex(-2), Complex(Real(0.5)), Complex(0)), {Complex(Real(-6), Real(1))}, ctl);
  ASSERT_EQ(tr.step_radius.size() + 1, tr.states.size());
  for (std::size_t i = 0; i + 1 < tr.states.size(); ++i) {
    const Real step = cabs(tr.states[i + 1].z - tr.states[i].z);
    EXPECT_LE(to_double(step), to_double(ctl.safety * tr.step_radius[i]) * (1 + 1e-20));
  }
}

TEST(Integrate, TaylorMatchesDividedDifferences) {
  const P1State s0 = make_p1_state(Complex(Real(-1.5)), Complex(Real(0.4), Real(-0.2)), Complex(Real(0.3)));
  const auto c = taylor_coeffs_regular(s0, 4);
  const Real h = Real(1) / 10000;
  std::vector<Complex> y;
  for (int j = -2; j <= 2; ++j) {
    y.push_back(j == 0 ? s0.y : integrate_path(s0, {s0.z + Real(j) * h}).back().y);
  }
  // Central differences: y'' and y''''.
  const Complex d2 = (y[3] - Real(2) * y[2] + y[1]) / (h * h);
  const Complex d3 = (y[4] - Real(2) * y[3] + Real(2) * y[1] - y[0]) / (Real(2) * h * h * h);
  const Complex d4 = (y[4] - Real(4) * y[3] + Real(6) * y[2] - Real(4) * y[1] + y[0]) / (h * h * h * h);
  EXPECT_LT(dist(d2 / Real(2), c[2]), 1e-6);
  EXPECT_LT(dist(d3 / Real(6), c[3]), 1e-6);
  EXPECT_LT(dist(d4 / Real(24), c[4]), 1e-5);
}

TEST(Integrate, BlowUpIsReported) {
  // From rest the real solution reaches a pole on the positive axis.
  const P1Trajectory tr = integrate_path(make_p1_state(Complex(0), Complex(1), Complex(0)), {Complex(5)});
  EXPECT_TRUE(tr.blew_up);
  EXPECT_GT(to_double(cabs(tr.back().y)), 1e2);
}

TEST(NormalForm, AgreesWithMappedP1) {
  const Seed sd = seed_at_infinity(Complex(0), Real(30), table());
  const NormalTrajectory nt = integrate_normal(sd.state, {Complex(15)});
  const P1Point p = varmap::to_p1(to_point(sd.state));
  const P1Trajectory pt = integrate_path(make_p1_state(p.z, p.y, p.yp), {varmap::z_from_x(Complex(15))});
  const NormalPoint n = varmap::to_normal({pt.back().z, pt.back().y, pt.back().yp});
  EXPECT_LT(dist(n.h, nt.back().h), 1e-9);
  EXPECT_LT(dist(n.hp, nt.back().hp), 1e-9);
}

TEST(NormalForm, EnvelopeOnSeededSolution) {
  const Seed sd = seed_at_infinity(Complex(0), Real(30), table());
  const NormalTrajectory nt = integrate_normal(sd.state, {Complex(15)});
  const Real c4 = Real(-392) / 625;
  for (Real x = 15; x <= 30; x += Real(1) / 4) {
    const Real v = nt.eval(Complex(x)).h.real() * pow(x, 4);
    EXPECT_GT(to_double(v), -1 * (1 + 1e-3));
    EXPECT_LT(to_double(v), to_double(c4) * (1 - 1e-3));
  }
}

TEST(NormalForm, ThrowsNearOrigin) {
  const Seed sd = seed_at_infinity(Complex(0), Real(30), table());
  EXPECT_THROW(integrate_normal(sd.state, {Complex(Real(-1))}), DomainError);
}

TEST(Seeding, ZeroCIsTruncatedH0) {
  const Seed sd = seed_at_infinity(Complex(0), Real(30), table());
  const TransseriesValue v = eval_transseries(Complex(0), Complex(30), table());
  EXPECT_EQ(sd.state.h, v.h);
  EXPECT_LT(to_double(cabs(sd.state.h)), 1e-5);
  EXPECT_LT(to_double(cabs(seed_at_infinity(Complex(0), Real(25), table()).state.h)), 1e-5);
}

TEST(Seeding, FirstExponentialTerm) {
  const Real x = 30;
  const Complex d = seed_at_infinity(Complex(1), x, table()).state.h - seed_at_infinity(Complex(0), x, table()).state.h;
  const Real lead = exp(-x) / sqrt(x);
  EXPECT_NEAR(to_double(d.real() / lead), 1 - 1.0 / (8 * 30), 2e-3);
}

TEST(Seeding, LinearAtLeadingOrder) {
  const auto h = [&](int C) { return seed_at_infinity(Complex(C), Real(30), table()).state.h; };
  const Complex a = h(2) - h(1), b = h(1) - h(0);
  EXPECT_LT(to_double(cabs(a - b) / cabs(b)), 1e-6);
}

TEST(Seeding, TwoSeedPointsAgree) {
  const Seed s25 = seed_at_infinity(Complex(0), Real(25), table());
  const Seed s30 = seed_at_infinity(Complex(0), Real(30), table());
  const NormalState a = integrate_normal(s25.state, {Complex(15)}).back();
  const NormalState b = integrate_normal(s30.state, {Complex(15)}).back();
  // The seeding ambiguity e^{-x_seed} grows like e^{x_seed - x} inward.
  const Real bound = (s25.error * exp(Real(10)) + s30.error * exp(Real(15))) * 10;
  EXPECT_LT(to_double(cabs(a.h - b.h)), to_double(bound));
}

TEST(Seeding, RejectsLargeC) { EXPECT_THROW(seed_at_infinity(Complex(Real(1e15)), Real(30), table()), DomainError); }

TEST(TrajectoryIO, CsvAndCheckpoint) {
  const P1Trajectory tr = integrate_path(make_p1_state(Complex(0), Complex(0), Complex(0)), {Complex(1), Complex(1, 1)});
  std::ostringstream csv;
  write_trajectory_csv(tr, csv);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "re(z),im(z),re(y),im(y),re(y'),im(y'),|E-drift|");
  std::stringstream bin;
  save_trajectory(tr, bin);
  EXPECT_EQ(bin.str().substr(0, 7), "P1TRAJ1");
  const P1Trajectory back = load_trajectory(bin);
  ASSERT_EQ(back.states.size(), tr.states.size());
  EXPECT_EQ(back.states.back().y, tr.states.back().y);
  EXPECT_EQ(back.waypoint_index, tr.waypoint_index);
  std::stringstream junk("not a checkpoint");
  EXPECT_THROW(load_trajectory(junk), DomainError);
}

TEST(Seeding, BalancedSeedReadsOffC) {
  // Average of the imaginary-axis constants equals C; their difference is S.
  const Real delta = seeding_offset(Real(30), p1::testing::table40());
  EXPECT_GT(to_double(delta), 0.01);
  const AntistokesLimit L = antistokes_limits(Complex(Real(3)) - delta, Real(30), Real(50), p1::testing::table40());
  EXPECT_LT(to_double(cabs((L.plus + L.minus) / Real(2) - Real(3))), 1e-12);
  EXPECT_NEAR(to_double(((L.plus - L.minus) / Real(2)).imag()), -0.309019361618552, 1e-12);
}

TEST(Seeding, OffsetDependsOnSeedPoint) {
  const Real a = seeding_offset(Real(26), p1::testing::table40()), b = seeding_offset(Real(34), p1::testing::table40());
  EXPECT_GT(to_double(abs(a - b)), 1e-3);
  // Balanced seeds at the two points describe one solution. The seed error
  // excites the e^{x} mode, which decays inward, so compare well inside.
  const NormalTrajectory ta = integrate_normal(seed_balanced(Complex(Real(100)), Real(26), p1::testing::table40()).state, {Complex(15)});
  const NormalTrajectory tb = integrate_normal(seed_balanced(Complex(Real(100)), Real(34), p1::testing::table40()).state, {Complex(15)});
  EXPECT_LT(dist(ta.back().h, tb.back().h) / to_double(cabs(ta.back().h)), 1e-12);
}

