#include "p1/h0_fixture.hpp"

#include <algorithm>

#include "p1/error.hpp"

namespace p1 {

H0Fixture::H0Fixture(const H0FixtureOptions& opt) : opt_(opt) {
  if (!(opt_.x_min < opt_.x_seed && opt_.x_seed <= opt_.x_max)) throw DomainError("bad h0 fixture range");
  table_ = compute_transseries_table(opt_.K, opt_.M);
  const Seed sd = seed_balanced(Complex(0), opt_.x_seed, table_);
  seed_error_ = sd.error;
  inward_ = integrate_normal(sd.state, {Complex(opt_.x_min)});
  if (inward_.blew_up) throw SingularityError("h0 fixture hit a singularity above x_min");
  if (opt_.x_max > opt_.x_seed) outward_ = integrate_normal(sd.state, {Complex(opt_.x_max)});
}

const NormalSegment& H0Fixture::segment(const Real& x) const {
  if (x < opt_.x_min || x > opt_.x_max) throw DomainError("h0 fixture evaluated outside its range");
  const auto& segs = (x <= opt_.x_seed) ? inward_.segments : outward_.segments;
  // Segments run monotonically away from x_seed.
  for (const auto& s : segs) {
    const Real a = s.x0.real();
    const Real b = (s.x0 + s.dx).real();
    if (x >= std::min(a, b) && x <= std::max(a, b)) return s;
  }
  throw DomainError("h0 fixture segment lookup failed");
}

Real H0Fixture::h(const Real& x) const { return segment(x).h(Complex(x)).real(); }
Real H0Fixture::hp(const Real& x) const { return segment(x).hp(Complex(x)).real(); }

Real H0Fixture::envelope_start() const {
  const Real c4 = Real(-392) / 625;
  Real last_good = opt_.x_max;
  for (Real x = opt_.x_max; x >= opt_.x_min; x -= Real(1) / 100) {
    const Real v = h(x) * pow(x, 4);
    if (!(v > -1 && v < c4)) return last_good;
    last_good = x;
  }
  return last_good;
}

bool H0Fixture::envelope_holds(const Real& A) const {
  const Real c4 = Real(-392) / 625;
  for (Real x = opt_.x_max; x >= A; x -= Real(1) / 1000) {
    const Real v = h(x) * pow(x, 4);
    if (!(v > -1 && v < c4)) return false;
  }
  return true;
}

const H0Fixture& default_h0_fixture() {
  static const H0Fixture fixture;
  return fixture;
}

}  // namespace p1
