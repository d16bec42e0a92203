#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "p1/numeric.hpp"
#include "p1/power_series.hpp"

namespace p1 {

/// Coefficient of the x^{-4} forcing in the normal form.
inline Rational quartic_forcing() { return Rational(-392, 625); }

/// Formal decaying solution  sum c_m x^{-m}  of
///   h'' + h'/x - h - h^2/2 + q x^{-4} = 0,   q = `quartic`,
/// through x^{-M}.
PowerSeries1x compute_h0_series(int M, const Rational& quartic = quartic_forcing());

/// Coefficients c_{km}, 0 <= k <= K, 0 <= m <= M, of the transseries
///   h = sum_k C^k x^{-k/2} e^{-kx} sum_m c_{km} x^{-m},   c_{10} = 1.
class TransseriesTable {
 public:
  TransseriesTable() = default;
  TransseriesTable(int K, int M, std::vector<std::vector<Rational>> entries);

  int K() const { return K_; }
  int M() const { return M_; }
  const Rational& entry(int k, int m) const;
  const std::vector<Rational>& row(int k) const;
  PowerSeries1x series(int k) const { return PowerSeries1x(row(k)); }

  /// Floating copy of the table, built on first use.
  const std::vector<std::vector<Real>>& real_entries() const;

  nlohmann::json to_json() const;
  static TransseriesTable from_json(const nlohmann::json& j);

  friend bool operator==(const TransseriesTable& a, const TransseriesTable& b) {
    return a.K_ == b.K_ && a.M_ == b.M_ && a.entries_ == b.entries_;
  }

 private:
  int K_ = 0;
  int M_ = 0;
  std::vector<std::vector<Rational>> entries_;
  mutable std::vector<std::vector<Real>> real_;
};

TransseriesTable compute_transseries_table(int K, int M, const Rational& quartic = quartic_forcing());

/// JSON array of "p/q" strings.
nlohmann::json rationals_to_json(const std::vector<Rational>& v);
std::vector<Rational> rationals_from_json(const nlohmann::json& j);

}  // namespace p1
