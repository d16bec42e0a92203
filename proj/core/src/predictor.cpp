#include "p1/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss.hpp>

#include "p1/error.hpp"
#include "p1/matching.hpp"

namespace p1 {

namespace {

constexpr double kPiD = std::numbers::pi;

// Optimally truncated sum of sum_m c_m t^{-m} (and its t-derivative).
struct SeriesValue {
  double v = 0, dv = 0;
};

SeriesValue series_value(const std::vector<Real>& c, double t) {
  const int M = static_cast<int>(c.size()) - 1;
  std::vector<double> term(static_cast<std::size_t>(M + 1));
  int stop = M + 1;
  double best = INFINITY;
  for (int m = 0; m <= M; ++m) {
    term[static_cast<std::size_t>(m)] = to_double(c[static_cast<std::size_t>(m)]) * std::pow(t, -m);
  }
  for (int m = 1; m <= M; ++m) {
    const double a = std::abs(term[static_cast<std::size_t>(m)]);
    if (a == 0) continue;
    if (a < best) {
      best = a;
      stop = m;
    }
  }
  // Include the terms before the smallest one.
  SeriesValue out;
  const int upto = (stop > M) ? M : stop - 1;
  for (int m = 0; m <= upto; ++m) {
    out.v += term[static_cast<std::size_t>(m)];
    out.dv += -m * term[static_cast<std::size_t>(m)] / t;
  }
  return out;
}

// Coefficients of f_+ = f_-(-x) as a formal series.
std::vector<Real> alternate_signs(std::vector<Real> r) {
  for (std::size_t m = 1; m < r.size(); m += 2) r[m] = -r[m];
  return r;
}

}  // namespace

// ---------------------------------------------------------------- CellGrid

CellGrid::CellGrid(double A, double x_max, int edges, int nodes_per_cell) : n_(nodes_per_cell) {
  if (!(A > 0 && x_max > A) || edges < 2 || nodes_per_cell < 3) throw DomainError("bad cell grid");
  edges_.resize(static_cast<std::size_t>(edges));
  for (int j = 0; j < edges; ++j) {
    const double t = 0.5 * (1 - std::cos(kPiD * j / (edges - 1)));
    edges_[static_cast<std::size_t>(j)] = A + (x_max - A) * t;
  }
  edges_.front() = A;
  edges_.back() = x_max;

  tau_.resize(static_cast<std::size_t>(n_));
  bw_.resize(static_cast<std::size_t>(n_));
  for (int j = 0; j < n_; ++j) {
    tau_[static_cast<std::size_t>(j)] = -std::cos(kPiD * j / (n_ - 1));
    double w = (j % 2 == 0) ? 1.0 : -1.0;
    if (j == 0 || j == n_ - 1) w *= 0.5;
    bw_[static_cast<std::size_t>(j)] = w;
  }
  tau_.front() = -1;
  tau_.back() = 1;

  auto lagrange = [&](int j, double t) {
    double num = 0, den = 0;
    for (int i = 0; i < n_; ++i) {
      const double d = t - tau_[static_cast<std::size_t>(i)];
      if (d == 0) return i == j ? 1.0 : 0.0;
      const double w = bw_[static_cast<std::size_t>(i)] / d;
      den += w;
      if (i == j) num = w;
    }
    return num / den;
  };
  Q_.assign(static_cast<std::size_t>(n_ * n_), 0);
  using GL = boost::math::quadrature::gauss<double, 20>;
  for (int i = 0; i < n_; ++i) {
    const double a = tau_[static_cast<std::size_t>(i)];
    if (a == 1) continue;
    for (int j = 0; j < n_; ++j) {
      Q_[static_cast<std::size_t>(i * n_ + j)] = GL::integrate([&](double t) { return lagrange(j, t); }, a, 1.0);
    }
  }
  D_.assign(static_cast<std::size_t>(n_ * n_), 0);
  for (int i = 0; i < n_; ++i) {
    double diag = 0;
    for (int j = 0; j < n_; ++j) {
      if (i == j) continue;
      const double v = (bw_[static_cast<std::size_t>(j)] / bw_[static_cast<std::size_t>(i)]) /
                       (tau_[static_cast<std::size_t>(i)] - tau_[static_cast<std::size_t>(j)]);
      D_[static_cast<std::size_t>(i * n_ + j)] = v;
      diag -= v;
    }
    D_[static_cast<std::size_t>(i * n_ + i)] = diag;
  }

  x_.resize(static_cast<std::size_t>(cells() * n_));
  for (int c = 0; c < cells(); ++c) {
    const double a = edges_[static_cast<std::size_t>(c)], b = edges_[static_cast<std::size_t>(c + 1)];
    for (int j = 0; j < n_; ++j) {
      x_[index(c, j)] = 0.5 * (a + b) + 0.5 * (b - a) * tau_[static_cast<std::size_t>(j)];
    }
    x_[index(c, 0)] = a;
    x_[index(c, n_ - 1)] = b;
  }
}

std::size_t CellGrid::edge_index(int j) const {
  if (j < cells()) return index(j, 0);
  return index(cells() - 1, n_ - 1);
}

double CellGrid::integrate_to_right(int c, int j, const double* g) const {
  const double h = 0.5 * (edges_[static_cast<std::size_t>(c + 1)] - edges_[static_cast<std::size_t>(c)]);
  double s = 0;
  for (int i = 0; i < n_; ++i) s += Q_[static_cast<std::size_t>(j * n_ + i)] * g[i];
  return h * s;
}

double CellGrid::differentiate(int c, int j, const double* g) const {
  const double h = 0.5 * (edges_[static_cast<std::size_t>(c + 1)] - edges_[static_cast<std::size_t>(c)]);
  double s = 0;
  for (int i = 0; i < n_; ++i) s += D_[static_cast<std::size_t>(j * n_ + i)] * g[i];
  return s / h;
}

int CellGrid::cell_of(double x) const {
  if (x < A() || x > x_max()) throw DomainError("point outside the predictor grid");
  auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  int c = static_cast<int>(it - edges_.begin()) - 1;
  return std::clamp(c, 0, cells() - 1);
}

double CellGrid::interpolate(const std::vector<double>& v, double x) const {
  const int c = cell_of(x);
  const double a = edges_[static_cast<std::size_t>(c)], b = edges_[static_cast<std::size_t>(c + 1)];
  const double t = (2 * x - a - b) / (b - a);
  double num = 0, den = 0;
  for (int j = 0; j < n_; ++j) {
    const double d = t - tau_[static_cast<std::size_t>(j)];
    if (d == 0) return v[index(c, j)];
    const double w = bw_[static_cast<std::size_t>(j)] / d;
    num += w * v[index(c, j)];
    den += w;
  }
  return num / den;
}

// ---------------------------------------------------------------- basis

double HomogeneousBasis::y_minus(double x) const { return std::exp(-x) * grid.interpolate(fm, x); }
double HomogeneousBasis::y_plus(double x) const { return std::exp(x) * grid.interpolate(fp, x); }

double J_norm_bound(double x0) { return (1 / (8 * x0)) * (1 + 1 / (3 * x0 * x0)); }

namespace {

// I(x) = int_x^inf e^{-a(t-x)} g(t) dt on the grid, given I(x_max).
void right_weighted_integral(const CellGrid& G, double a, const std::vector<double>& g, double tail,
                             std::vector<double>& out) {
  const int n = G.n();
  out.assign(G.size(), 0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double right = tail;
  for (int c = G.cells() - 1; c >= 0; --c) {
    const double b = G.edges()[static_cast<std::size_t>(c + 1)];
    for (int j = 0; j < n; ++j) {
      const double t = G.node(c, j);
      w[static_cast<std::size_t>(j)] = std::exp(a * (b - t)) * g[G.index(c, j)];
    }
    for (int j = 0; j < n; ++j) {
      const double x = G.node(c, j);
      out[G.index(c, j)] = std::exp(-a * (b - x)) * (G.integrate_to_right(c, j, w.data()) + right);
    }
    right = out[G.index(c, 0)];
  }
}

// L(x) = e^{-a(x-A)} L(A) + int_A^x e^{-a(x-t)} g(t) dt, marched outward.
void left_weighted_integral(const CellGrid& G, double a, const std::vector<double>& g, double start,
                            std::vector<double>& out) {
  const int n = G.n();
  out.assign(G.size(), 0);
  std::vector<double> w(static_cast<std::size_t>(n));
  double left = start;
  for (int c = 0; c < G.cells(); ++c) {
    const double l = G.edges()[static_cast<std::size_t>(c)];
    for (int j = 0; j < n; ++j) w[static_cast<std::size_t>(j)] = std::exp(a * (G.node(c, j) - l)) * g[G.index(c, j)];
    const double whole = G.integrate_to_right(c, 0, w.data());
    for (int j = 0; j < n; ++j) {
      const double part = whole - G.integrate_to_right(c, j, w.data());
      out[G.index(c, j)] = std::exp(-a * (G.node(c, j) - l)) * (left + part);
    }
    left = out[G.index(c, n - 1)];
  }
}

}  // namespace

HomogeneousBasis build_basis(const BasisOptions& opt, const H0Fixture& fix, const TransseriesTable& table) {
  if (table.K() < 1) throw DomainError("basis needs the first transseries level");
  HomogeneousBasis B{CellGrid(opt.A, opt.x_max, opt.edges, opt.nodes_per_cell), {}, {}, {}, {}, {}, {}};
  const CellGrid& G = B.grid;
  const std::size_t N = G.size();
  B.h0.resize(N);
  B.q.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double x = G.nodes()[i];
    B.h0[i] = to_double(fix.h(Real(x)));
    B.q[i] = 1 / (4 * x * x) - B.h0[i];
  }

  // Tail at x_max from the first-level series: f(X), f'(X).
  const auto& rows = table.real_entries();
  const double X = opt.x_max;
  const SeriesValue tailf = series_value(rows[1], X);
  const double Ib_tail = tailf.dv;
  const double Ia_tail = 2 * (1 - tailf.v) + Ib_tail;

  // f = 1 - (1/2) int q f + (1/2) int e^{-2(s-x)} q f, f' = int e^{-2(s-x)} q f.
  B.fm.assign(N, 1.0);
  std::vector<double> g(N), Ia, Ib, next(N);
  for (int it = 0; it < 200; ++it) {
    for (std::size_t i = 0; i < N; ++i) g[i] = B.q[i] * B.fm[i];
    right_weighted_integral(G, 0.0, g, Ia_tail, Ia);
    right_weighted_integral(G, 2.0, g, Ib_tail, Ib);
    double diff = 0;
    for (std::size_t i = 0; i < N; ++i) {
      next[i] = 1 - 0.5 * Ia[i] + 0.5 * Ib[i];
      diff = std::max(diff, std::abs(next[i] - B.fm[i]));
    }
    B.fm = next;
    B.fmp = Ib;
    B.picard_iterations = it + 1;
    B.picard_residual = diff;
    if (diff < 1e-16) break;
  }
  if (B.picard_residual > 1e-13) throw ConvergenceError("Picard iteration for f_- did not converge");

  // J(1)(x) = (1/2) int q - (1/2) int e^{-2(s-x)} q: an estimate of the operator norm.
  {
    std::vector<double> Ja, Jb;
    // Tails of q beyond x_max are O(x^{-2}); use the asymptotic 1/(4x^2) - c4/x^4 closed form.
    const double c4 = to_double(rows[0][4]);
    const double qa_tail = 1 / (4 * X) - c4 / (3 * X * X * X);
    const double qb_tail = 1 / (8 * X * X);
    right_weighted_integral(G, 0.0, B.q, qa_tail, Ja);
    right_weighted_integral(G, 2.0, B.q, qb_tail, Jb);
    B.J_norm_estimate = 0;
    for (std::size_t i = 0; i < N; ++i) B.J_norm_estimate = std::max(B.J_norm_estimate, std::abs(0.5 * (Ja[i] - Jb[i])));
  }

  // phi(x) = int_A^x e^{-2(x-t)} f^{-2}(t) dt.
  std::vector<double> phi, inv_f2(N);
  for (std::size_t i = 0; i < N; ++i) inv_f2[i] = 1 / (B.fm[i] * B.fm[i]);
  left_weighted_integral(G, 2.0, inv_f2, 0.0, phi);
  B.fp.resize(N);
  B.fpp.resize(N);
  for (std::size_t i = 0; i < N; ++i) {
    const double f = B.fm[i];
    B.fp[i] = 2 * f * phi[i];
    B.fpp[i] = 2 * B.fmp[i] * phi[i] + 2 / f - 4 * f * phi[i];
  }

  // Wronskian without the closed-form derivatives: e^{-x} y_+' from the
  // integral form of y'' = (1 - q) y started at A, and f_-' from the integral equation.
  {
    std::vector<double> g(N), yplus_p;
    for (std::size_t i = 0; i < N; ++i) g[i] = (1 - B.q[i]) * B.fp[i];
    left_weighted_integral(G, 1.0, g, 2 / B.fm.front(), yplus_p);
    B.wronskian_max_error = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double W = B.fm[i] * yplus_p[i] - (B.fmp[i] - B.fm[i]) * B.fp[i];
      B.wronskian_max_error = std::max(B.wronskian_max_error, std::abs(W - 2));
    }
  }
  B.min_fm = *std::min_element(B.fm.begin(), B.fm.end());
  B.max_fm = *std::max_element(B.fm.begin(), B.fm.end());

  // u(t, s) = y_+(t) y_-(s) - y_-(t) y_+(s) > 0 for t > s, on pairs of cell edges.
  B.u_positive = true;
  const int E = G.cells() + 1;
  for (int a = 0; a < E; a += 37) {
    for (int b = a + 1; b < E; b += 53) {
      const std::size_t is = G.edge_index(a), it = G.edge_index(b);
      const double s = G.nodes()[is], t = G.nodes()[it];
      const double u = std::exp(t - s) * B.fp[it] * B.fm[is] - std::exp(s - t) * B.fm[it] * B.fp[is];
      if (!(u > 0)) B.u_positive = false;
    }
  }
  return B;
}

// ---------------------------------------------------------------- h_k

double HkSet::h(int k, double x) const {
  if (k < 1 || k > k_max()) throw DomainError("level outside the computed range");
  return basis.grid.interpolate(levels[static_cast<std::size_t>(k - 1)].h, x);
}

namespace {

void certify_level(const CellGrid& G, HkGrid& L) {
  const int k = L.k;
  const double lim = k * std::pow(12.0, -(k - 1));
  L.upper_violations = L.lower_violations = L.monotone_violations = 0;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const double x = G.nodes()[i];
    const double h = L.h[i];
    if (!(h > 0 && h < lim)) ++L.upper_violations;
    const double lower = (1 - 1 / (8 * x)) * std::pow(1 - 9 / (4 * x), 0.5 * (k - 1)) * lim;
    if (!(h >= lower)) ++L.lower_violations;
  }
  double prev = INFINITY;
  for (std::size_t i = 0; i < G.size(); ++i) {
    const double x = G.nodes()[i];
    // log F_k, to avoid underflow of e^{-kx}
    const double F = -0.5 * k * std::log(x) - k * x + std::log(L.h[i]);
    if (i > 0 && G.nodes()[i] > G.nodes()[i - 1] && !(F < prev)) ++L.monotone_violations;
    prev = F;
  }
}

}  // namespace

HkSet build_hk(int k_max, HomogeneousBasis basis, const TransseriesTable& table) {
  if (k_max < 1) throw DomainError("k_max must be positive");
  if (table.K() < k_max) throw DomainError("transseries table has fewer levels than k_max");
  HkSet S{std::move(basis), {}};
  const CellGrid& G = S.basis.grid;
  const std::size_t N = G.size();
  const double X = G.x_max();
  const auto& rows = table.real_entries();
  const std::vector<Real> plus_row = alternate_signs(rows[1]);

  S.levels.resize(static_cast<std::size_t>(k_max));
  S.levels[0].k = 1;
  S.levels[0].h = S.basis.fm;
  certify_level(G, S.levels[0]);
  // At x_max the values are fixed by the series tails, so the check point
  // sits inside the grid where h_k comes from the quadrature.
  const double xc = 0.75 * X;
  auto tail_corrected = [&](HkGrid& L) {
    const std::vector<Real>& row = rows[static_cast<std::size_t>(L.k)];
    L.limit_tail_corrected = G.interpolate(L.h, xc) - (series_value(row, xc).v - to_double(row[0]));
  };
  tail_corrected(S.levels[0]);

  std::vector<double> Sk(N), g1(N), g2(N), I1, I2;
  for (int k = 2; k <= k_max; ++k) {
    for (std::size_t i = 0; i < N; ++i) {
      double s = 0;
      for (int j = 1; j < k; ++j) s += S.levels[static_cast<std::size_t>(j - 1)].h[i] * S.levels[static_cast<std::size_t>(k - j - 1)].h[i];
      Sk[i] = s;
    }
    const double alpha = 0.5 * (k - 1);
    // Weights (x/t)^alpha are split as (x/X)^alpha (X/t)^alpha; integrate with (X/t)^alpha.
    for (std::size_t i = 0; i < N; ++i) {
      const double t = G.nodes()[i];
      const double w = std::pow(X / t, alpha);
      g1[i] = w * S.basis.fp[i] * Sk[i];
      g2[i] = w * S.basis.fm[i] * Sk[i];
    }
    // Tails beyond X from the series of the lower levels.
    auto tail = [&](double a, bool plus) {
      boost::math::quadrature::exp_sinh<double> es;
      auto f = [&](double tau) {
        const double t = X + tau;
        double s = 0;
        for (int j = 1; j < k; ++j) s += series_value(rows[static_cast<std::size_t>(j)], t).v * series_value(rows[static_cast<std::size_t>(k - j)], t).v;
        const double b = plus ? series_value(plus_row, t).v : series_value(rows[1], t).v;
        return std::pow(X / t, alpha) * std::exp(-a * tau) * b * s;
      };
      return es.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    };
    right_weighted_integral(G, k - 1.0, g1, tail(k - 1.0, true), I1);
    right_weighted_integral(G, k + 1.0, g2, tail(k + 1.0, false), I2);
    HkGrid L;
    L.k = k;
    L.h.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
      const double x = G.nodes()[i];
      const double back = std::pow(x / X, alpha);
      L.h[i] = 0.25 * back * (S.basis.fm[i] * I1[i] - S.basis.fp[i] * I2[i]);
    }
    certify_level(G, L);
    tail_corrected(L);
    S.levels[static_cast<std::size_t>(k - 1)] = std::move(L);
  }
  return S;
}

// ---------------------------------------------------------------- C0, bracket

namespace {
double log_c0_objective(double t) { return 0.5 * std::log(t) + t - std::log(1 - 9 / (4 * t)); }
}  // namespace

double C0_interior_minimizer() {
  // 1/(2t) + 1 = 9/(t(4t - 9))  <=>  8t^2 - 14t - 27 = 0.
  return (7 + std::sqrt(265.0)) / 8;
}

double compute_C0(double A) {
  if (!(A > 2.25)) throw DomainError("A must exceed 9/4");
  const double t = std::max(A, C0_interior_minimizer());
  return 12 * std::exp(log_c0_objective(t));
}

double bracket_upper(double L) {
  double lo = 1e-12, hi = std::max(2.0, L + 2);
  auto f = [&](double x) { return x + 0.5 * std::log(x) - L; };
  if (f(lo) > 0) throw DomainError("bracket equation has no positive root");
  double x = std::max(1.0, L);
  for (int i = 0; i < 200; ++i) {
    const double fx = f(x);
    if (fx > 0) hi = x; else lo = x;
    double xn = x - fx / (1 + 0.5 / x);
    if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= 1e-15 * std::abs(x)) return xn;
    x = xn;
  }
  return x;
}

double bracket_lower(double L) {
  const double tstar = C0_interior_minimizer();
  auto f = [&](double x) { return log_c0_objective(x) - L; };
  if (f(tstar) > 0) throw DomainError("C is below the minimum of the bracket function");
  double lo = tstar, hi = tstar + 1;
  while (f(hi) < 0) hi = tstar + 2 * (hi - tstar);
  for (int i = 0; i < 300; ++i) {
    const double m = 0.5 * (lo + hi);
    if (f(m) < 0) lo = m; else hi = m;
    if (hi - lo <= 1e-15 * hi) break;
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------- limsup

LimsupEstimate limsup_estimate(const HkSet& set, double x, double agree_tol) {
  LimsupEstimate out;
  const int K = set.k_max();
  if (K < 6) throw DomainError("too few levels for the limsup estimate");
  std::vector<double> h(static_cast<std::size_t>(K + 1));
  for (int k = 1; k <= K; ++k) h[static_cast<std::size_t>(k)] = set.h(k, x);
  // r_k = (h_{k+1}/h_k) k/(k+1), k = K-m .. K-1.
  const int m = std::min(12, K - 2);
  std::vector<double> t, r;
  for (int k = K - m; k <= K - 1; ++k) {
    t.push_back(1.0 / k);
    r.push_back(h[static_cast<std::size_t>(k + 1)] / h[static_cast<std::size_t>(k)] * k / (k + 1.0));
  }
  // Neville tableau at t = 0 using the last j+1 points, j = 0..m-1.
  for (int j = 0; j < static_cast<int>(r.size()); ++j) {
    const int first = static_cast<int>(r.size()) - 1 - j;
    std::vector<double> P(r.begin() + first, r.end());
    std::vector<double> T(t.begin() + first, t.end());
    for (int level = 1; level < static_cast<int>(P.size()); ++level) {
      for (int i = 0; i + level < static_cast<int>(T.size()) + 0 && i < static_cast<int>(P.size()) - level; ++i) {
        P[static_cast<std::size_t>(i)] = (T[static_cast<std::size_t>(i + level)] * P[static_cast<std::size_t>(i)] -
                                          T[static_cast<std::size_t>(i)] * P[static_cast<std::size_t>(i + 1)]) /
                                         (T[static_cast<std::size_t>(i + level)] - T[static_cast<std::size_t>(i)]);
      }
    }
    out.extrapolants.push_back(P[0]);
  }
  const auto& e = out.extrapolants;
  for (std::size_t i = 2; i < e.size(); ++i) {
    const double a = e[i - 2], b = e[i - 1], c = e[i];
    if (std::abs(a - c) <= agree_tol * std::abs(c) && std::abs(b - c) <= agree_tol * std::abs(c)) {
      out.mu = c;
      out.converged = true;
      return out;
    }
  }
  out.mu = e.empty() ? 0 : e.back();
  return out;
}

// ---------------------------------------------------------------- predict

PolePrediction predict(std::complex<double> C, const HkSet* set, double A, int karray) {
  PolePrediction p;
  p.C = C;
  p.A = A;
  p.C0 = compute_C0(A);
  const bool real = C.imag() == 0 && C.real() > 0;
  if (karray >= 0) {
    if (!(std::abs(C) > 12)) throw DomainError("|C| must exceed 12 for the pole array");
    for (const auto& r : pole_array(Complex(Real(C.real()), Real(C.imag())), karray)) p.array.emplace_back(r.k, to_double(r.x));
  }
  if (!real) {
    p.guaranteed = false;
    p.x_lim_diagnostic = "complex C: real bracket not applicable";
    return p;
  }
  const double c = C.real();
  if (!(c > 12)) throw DomainError("C must exceed 12");
  const double L = std::log(c / 12);
  p.guaranteed = c > p.C0;
  p.x_hi = bracket_upper(L);
  p.x_lo = (L >= log_c0_objective(C0_interior_minimizer())) ? bracket_lower(L) : NAN;
  p.x_asym = L - 0.5 * std::log(L);

  if (!set) {
    p.x_lim_diagnostic = "no h_k grid";
    return p;
  }
  const CellGrid& G = set->basis.grid;
  auto F = [&](double x, bool& ok) {
    const LimsupEstimate e = limsup_estimate(*set, x);
    ok = e.converged && e.mu > 0;
    return x + 0.5 * std::log(x) - std::log(e.mu) - std::log(c);
  };
  bool oka = false, okb = false;
  double a = G.A(), b = G.x_max();
  double fa = F(a, oka), fb = F(b, okb);
  if (!(fa < 0 && fb > 0)) {
    p.x_lim_diagnostic = fa >= 0 ? "x_lim below the grid start A" : "x_lim beyond the grid end";
    return p;
  }
  bool ok = oka && okb;
  for (int i = 0; i < 100 && b - a > 1e-13 * b; ++i) {
    const double m = 0.5 * (a + b);
    bool okm = false;
    const double fm = F(m, okm);
    ok = ok && okm;
    if (fm < 0) a = m; else b = m;
  }
  p.x_lim = 0.5 * (a + b);
  p.x_lim_diagnostic = ok ? "converged" : "Richardson extrapolants did not agree to 1e-6";
  return p;
}

nlohmann::json prediction_to_json(const PolePrediction& p) {
  nlohmann::json j;
  j["C"] = {p.C.real(), p.C.imag()};
  j["A"] = p.A;
  j["C0"] = p.C0;
  j["guaranteed"] = p.guaranteed;
  if (p.C.imag() == 0) {
    j["x_lo"] = std::isnan(p.x_lo) ? nlohmann::json(nullptr) : nlohmann::json(p.x_lo);
    j["x_hi"] = p.x_hi;
    j["x_asym"] = p.x_asym;
    j["x_lim"] = p.x_lim ? nlohmann::json(*p.x_lim) : nlohmann::json(nullptr);
    j["x_lim_diagnostic"] = p.x_lim_diagnostic;
  }
  if (!p.guaranteed) j["status"] = "unguaranteed";
  if (!p.array.empty()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [k, x] : p.array) arr.push_back({{"k", k}, {"x", {x.real(), x.imag()}}});
    j["array"] = arr;
  }
  return j;
}

DivergenceScan divergence_scan(double C, const HkSet& set) {
  DivergenceScan out;
  const int K = set.k_max();
  if (K < 2) throw DomainError("divergence scan needs two levels");
  const int k = K - 1;
  out.k_used = k;
  out.uncertainty = std::log1p(1.0 / k);
  auto logratio = [&](double x) {
    return std::log(C) - 0.5 * std::log(x) - x + std::log(set.h(k + 1, x)) - std::log(set.h(k, x));
  };
  const CellGrid& G = set.basis.grid;
  double a = G.A(), b = G.x_max();
  out.ratio_at_A = std::exp(logratio(a));
  if (logratio(a) < 0) return out;  // converges on the whole grid
  if (logratio(b) > 0) return out;  // diverges beyond the grid
  for (int i = 0; i < 200 && b - a > 1e-13 * b; ++i) {
    const double m = 0.5 * (a + b);
    if (logratio(m) > 0) a = m; else b = m;
  }
  out.x_div = 0.5 * (a + b);
  return out;
}

}  // namespace p1
