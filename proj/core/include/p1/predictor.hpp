#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "p1/h0_fixture.hpp"
#include "p1/transseries.hpp"

namespace p1 {

/// Piecewise spectral grid on [A, x_max]: cell edges with Chebyshev-type
/// clustering, Chebyshev-Lobatto nodes inside each cell.
class CellGrid {
 public:
  CellGrid(double A, double x_max, int edges, int nodes_per_cell);

  int cells() const { return static_cast<int>(edges_.size()) - 1; }
  int n() const { return n_; }
  double A() const { return edges_.front(); }
  double x_max() const { return edges_.back(); }
  const std::vector<double>& edges() const { return edges_; }
  /// Node j of cell c (j = 0 is the left edge, j = n-1 the right edge).
  double node(int c, int j) const { return x_[static_cast<std::size_t>(c * n_ + j)]; }
  std::size_t index(int c, int j) const { return static_cast<std::size_t>(c * n_ + j); }
  std::size_t size() const { return x_.size(); }
  const std::vector<double>& nodes() const { return x_; }
  /// Index of the cell edge j as a node (left node of cell j, or the last node).
  std::size_t edge_index(int j) const;

  /// Integral of g from node j to the right edge of cell c.
  double integrate_to_right(int c, int j, const double* g) const;
  /// Derivative at node j of the cell interpolant of g.
  double differentiate(int c, int j, const double* g) const;
  /// Barycentric interpolation of nodal values `v` at x.
  double interpolate(const std::vector<double>& v, double x) const;
  int cell_of(double x) const;

 private:
  std::vector<double> edges_, x_;
  int n_;
  std::vector<double> tau_, bw_;  // reference nodes on [-1, 1], barycentric weights
  std::vector<double> Q_;         // Q_[i*n+j] = int_{tau_i}^{1} l_j
  std::vector<double> D_;         // D_[i*n+j] = l_j'(tau_i)
};

struct BasisOptions {
  double A = 5;
  double x_max = 40;
  int edges = 2048;
  int nodes_per_cell = 10;
};

/// y_- = e^{-x} f_-, y_+ = e^{x} f_+ for y'' = (1 + h_0 - 1/(4x^2)) y.
/// f_- solves the contraction f = 1 - J f; f_+ = 2 f_- phi with
/// phi' = f_-^{-2} - 2 phi, phi(A) = 0, which fixes W = 2.
struct HomogeneousBasis {
  CellGrid grid;
  std::vector<double> h0, q;       ///< h_0 and q = 1/(4x^2) - h_0 at the nodes
  std::vector<double> fm, fmp;     ///< f_- and f_-' (from the integral representation)
  std::vector<double> fp, fpp;     ///< f_+ and f_+'
  int picard_iterations = 0;
  double picard_residual = 0;
  double wronskian_max_error = 0;  ///< max |W - 2|, y_+' from the integral form of the ODE
  double min_fm = 0, max_fm = 0;
  bool u_positive = true;          ///< spot check of u(t, s) > 0 for t > s
  double J_norm_estimate = 0;      ///< sup_x J(1)(x) on the grid

  double y_minus(double x) const;
  double y_plus(double x) const;
};

HomogeneousBasis build_basis(const BasisOptions& opt, const H0Fixture& h0, const TransseriesTable& table);

/// (1/(8 x0)) (1 + 1/(3 x0^2)): the operator-norm bound for J at x0.
double J_norm_bound(double x0);

struct HkGrid {
  int k = 0;
  std::vector<double> h;       ///< h_k at the grid nodes
  int upper_violations = 0;    ///< h_k >= k/12^{k-1} or h_k <= 0
  int lower_violations = 0;    ///< below (1 - 1/(8x)) (1 - 9/(4x))^{(k-1)/2} k/12^{k-1}
  int monotone_violations = 0; ///< F_k increasing between consecutive nodes
  /// h_k(3 x_max / 4) minus the 1/x corrections of the optimally truncated
  /// level-k series: an estimate of lim h_k from a single grid value.
  double limit_tail_corrected = 0;
};

struct HkSet {
  HomogeneousBasis basis;
  std::vector<HkGrid> levels;  ///< levels[k-1] is h_k
  int k_max() const { return static_cast<int>(levels.size()); }
  double h(int k, double x) const;
};

HkSet build_hk(int k_max, HomogeneousBasis basis, const TransseriesTable& table);

/// 12 min_{t >= A} sqrt(t) e^t / (1 - 9/(4t)).
double compute_C0(double A);
/// Minimizer of ln(12 sqrt(t) e^t / (1 - 9/(4t))) over t > 9/4.
double C0_interior_minimizer();

struct LimsupEstimate {
  double mu = 0;            ///< extrapolated limit of (h_{k+1}/h_k) k/(k+1)
  bool converged = false;
  std::vector<double> extrapolants;
};

/// Limit of h_k(x)^{1/k} (equivalently of the normalized ratios) from
/// levels k <= k_max, by Neville-Richardson extrapolation in 1/k.
LimsupEstimate limsup_estimate(const HkSet& set, double x, double agree_tol = 1e-6);

struct PolePrediction {
  std::complex<double> C;
  double A = 0;
  double C0 = 0;
  bool guaranteed = false;   ///< C real and C > C_0
  double x_lo = 0;           ///< root of x + ln(x)/2 - ln(1 - 9/(4x)) = ln(C/12)
  double x_hi = 0;           ///< root of x + ln(x)/2 = ln(C/12)
  double x_asym = 0;         ///< ln(C/12) - ln(ln(C/12))/2
  std::optional<double> x_lim;
  std::string x_lim_diagnostic;
  std::vector<std::pair<int, std::complex<double>>> array;  ///< complex case
};

nlohmann::json prediction_to_json(const PolePrediction& p);

/// Real-case bracket, asymptotic estimate and limsup estimate. With
/// karray >= 0 also returns the complex pole array for k in [-karray, karray].
PolePrediction predict(std::complex<double> C, const HkSet* set, double A, int karray = -1);

/// Root of x + ln(x)/2 = L (Newton with bisection safeguard).
double bracket_upper(double L);
/// Root of x + ln(x)/2 - ln(1 - 9/(4x)) = L on the increasing branch.
double bracket_lower(double L);

struct DivergenceScan {
  std::optional<double> x_div;
  /// Finite-k bias of the ratio test, ln(1 + 1/k): ratios of coefficients
  /// growing like k mu^k exceed mu by the factor (k+1)/k.
  double uncertainty = 0;
  double ratio_at_A = 0;
  int k_used = 0;
};

/// Smallest x where C F_{k+1}/F_k (k = k_max - 1) drops below 1.
DivergenceScan divergence_scan(double C, const HkSet& set);

}  // namespace p1
