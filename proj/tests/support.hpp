#pragma once

// Shared expensive objects for the test binaries.

#include "p1/h0_fixture.hpp"
#include "p1/predictor.hpp"
#include "p1/transseries.hpp"

namespace p1::testing {

inline const TransseriesTable& table40() {
  static const TransseriesTable t = [] {
    TransseriesTable x = compute_transseries_table(40, 60);
    x.real_entries();
    return x;
  }();
  return t;
}

inline const HkSet& hk40() {
  static const HkSet s = build_hk(40, build_basis(BasisOptions{}, default_h0_fixture(), table40()), table40());
  return s;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace p1::testing
