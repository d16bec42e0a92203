#pragma once

#include <vector>

#include <json.hpp>

#include "p1/numeric.hpp"
#include "p1/rational_function.hpp"

namespace p1 {

/// Point of the two-scale representation  h ~ sum_m x^{-m} G_m(s).
struct MatchingPoint {
  Complex x;
  Complex C;

  /// v = x + ln(x)/2 - ln(C/12), principal logarithms.
  Complex v() const;
  /// s = 12 e^x x^{1/2} / C = e^v.
  Complex s() const { return std::exp(v()); }
};

struct GmInfo {
  int m = 0;
  RationalFnS G;
  int pole_order_at_one = 0;  ///< multiplicity of s = 1 in the denominator
  int pole_order_at_zero = 0;
  int levels_used = 0;        ///< exponential levels of the table needed
};

/// Exact G_0..G_{m_max}. Each G_m is resummed from column m of the
/// transseries table (as a rational function of s with poles only at
/// s = 0 and s = 1), then checked by exact substitution into the
/// s-equation at that order. Table depth grows on demand up to a cap.
std::vector<GmInfo> compute_Gm(int m_max, const Rational& quartic = Rational(-392, 625));

/// Residual of the order-m equation in s for the supplied G_0..G_m;
/// identically zero for the true matching functions.
RationalFnS gm_residual(const std::vector<RationalFnS>& G, int m,
                        const Rational& quartic = Rational(-392, 625));

nlohmann::json gm_to_json(const GmInfo& g);

struct MatchedValue {
  Complex value;
  Real last_term = 0;        ///< |x^{-m_max} G_{m_max}(s)|
  bool asymptotic = true;    ///< false if some term ratio exceeded the threshold
  int first_violation = -1;  ///< first m with |term_m| > ratio * |term_{m-1}|
};

struct MatchingOptions {
  Real pole_margin = Real(1) / 1000;
  Real ratio_threshold = Real(1) / 2;
};

/// sum_{m <= m_max} x^{-m} G_m(s). Throws DomainError if |s - 1| < margin.
MatchedValue eval_matched(const MatchingPoint& p, const std::vector<GmInfo>& G, int m_max,
                          const MatchingOptions& opt = {});

struct ArrayRoot {
  int k;
  Complex x;
  Real residual;
};

/// Roots of x + ln(x)/2 = ln(C/12) + 2 k pi i for k = -N..N (complex Newton,
/// principal logarithms). Requires |C| > 12.
std::vector<ArrayRoot> pole_array(const Complex& C, int N);
ArrayRoot pole_array_root(const Complex& C, int k);

}  // namespace p1
