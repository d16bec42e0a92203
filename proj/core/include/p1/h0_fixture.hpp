#pragma once

#include <memory>

#include "p1/seeding.hpp"

namespace p1 {

struct H0FixtureOptions {
  Real x_seed = 30;
  Real x_min = 2;     ///< inward end of the integration
  Real x_max = 40;    ///< outward end
  int K = 20;
  int M = 80;
};

/// Reference decaying solution h_0: seeded with C = 0 at x_seed (balanced
/// seeding, so h_0 is the balanced resummation) and integrated along the real axis to
/// [x_min, x_max]. Evaluation uses the dense Taylor segments.
class H0Fixture {
 public:
  explicit H0Fixture(const H0FixtureOptions& opt = {});

  const H0FixtureOptions& options() const { return opt_; }
  const TransseriesTable& table() const { return table_; }
  Real seed_error() const { return seed_error_; }

  Real h(const Real& x) const;
  Real hp(const Real& x) const;

  /// Smallest x0 >= x_min (on a 0.01 grid, scanning inward from x_max)
  /// such that -x^{-4} < h_0(x) < c_4 x^{-4} for all x in [x0, x_max].
  Real envelope_start() const;
  /// True if the envelope holds on [A, x_max] on a 0.001 grid.
  bool envelope_holds(const Real& A) const;

 private:
  const NormalSegment& segment(const Real& x) const;
  H0FixtureOptions opt_;
  TransseriesTable table_;
  Real seed_error_ = 0;
  NormalTrajectory inward_, outward_;
};

/// Shared fixture built with default options.
const H0Fixture& default_h0_fixture();

}  // namespace p1
