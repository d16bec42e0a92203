#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "p1/laurent.hpp"
#include "p1/normal_form.hpp"
#include "p1/p1_taylor.hpp"
#include "p1/transseries.hpp"

namespace p1 {

struct PoleRecord {
  Complex z{0};        ///< pole in P1 coordinates
  Complex x{0};        ///< image in normal-form coordinates
  Complex c4{0};
  int order = 2;
  Real err = 0;        ///< location uncertainty (spread over the fit window)
  Complex C{0};        ///< transseries constant of the solution
  std::string provenance;
  P1State anchor;      ///< regular state near the pole the record was fitted from
  int window = 0;      ///< number of states in the fit window
  Real drift = 0;      ///< max relative energy drift of the search trajectory
};

nlohmann::json pole_to_json(const PoleRecord& r);
PoleRecord pole_from_json(const nlohmann::json& j);

struct LocateOptions {
  Real y_lo = Real(1e2);  ///< fit window |y| in [y_lo, y_hi]
  Real y_hi = Real(1e6);
  int laurent_order = 100;
  Real model_tol = Real(1e-6);  ///< max relative spread of the per-state estimates
};

/// Fits (zt, c4) of the double-pole Laurent model to the trailing states
/// of a trajectory: for each state in the window the pair (y, y') is
/// matched exactly by Newton's method, and the estimates must agree.
PoleRecord locate_pole(const P1Trajectory& tr, const LocateOptions& opt = {});

/// Solves the Laurent model for (zt, c4) given one regular state.
std::pair<Complex, Complex> pole_from_state(const P1State& s, const Complex& zt_guess, const Complex& c4_guess,
                                            int laurent_order = 100);

/// State at `exit` from the Laurent series of the record; the integral of
/// y is continued from the anchor through the antiderivative of the series.
P1State cross_pole(const PoleRecord& rec, const Complex& exit, int laurent_order = 120);

struct PoleCertificate {
  Complex loop_y{0};   ///< contour integral of y dz
  Complex loop_wy{0};  ///< contour integral of (z - zt) y dz
  std::vector<Complex> laurent;  ///< c_{-2}..c_6 from the DFT on the circle
  Real radius = 0;
  Real max_drift = 0;
  bool pass = false;
};

/// Integrates from the anchor to a circle of radius `radius` about the pole
/// and once around it (M sample points).
PoleCertificate certify_pole(const PoleRecord& rec, Real radius = 0, int M = 128);

struct PoleSearchOptions {
  Real x_seed = 30;
  StepControl ctl;
  LocateOptions locate;
};

/// Initial data of h(.; C) (balanced seeding) mapped to P1 variables at x_seed.
P1State p1_seed(const Complex& C, const Real& x_seed, const TransseriesTable& table);
/// Smallest x_seed >= x_min at which seeding h(.; C) is allowed with margin.
Real seed_point_for(const Complex& C, const Real& x_min = 30);

struct RealPoleSearch {
  bool guaranteed = false;        ///< C > C_0
  std::optional<PoleRecord> pole;
  Real x_reached = 0;             ///< inward end of the integration
};

/// Integrates h(.; C) inward along the real axis from x_seed to A (in P1
/// variables) and locates the first pole. For C <= C_0 the search still
/// runs but the outcome is marked unguaranteed.
RealPoleSearch first_real_pole(const Real& C, const Real& C0, const Real& A, const TransseriesTable& table,
                               const PoleSearchOptions& opt = {});

/// Homes in on a pole of h(.; C) near x_target: integrate along
/// x_seed -> Re(x_target)+3 + i Im(x_target) -> x_target and repeatedly
/// toward the Laurent estimate of the pole until the blow-up threshold.
PoleRecord hunt_pole(const Complex& C, const Complex& x_target, const TransseriesTable& table,
                     const PoleSearchOptions& opt = {});

/// (1/2 pi i) times the contour integral of z y dz around the image of the
/// rectangle [x0, x1] x [y0, y1] in the x-plane: the number of poles inside.
Complex count_poles_in_rect(const Complex& C, Real x0, Real x1, Real y0, Real y1, const TransseriesTable& table,
                            const PoleSearchOptions& opt = {}, Real* max_drift = nullptr);

/// z-plane polyline through the images of points on the x-segment a -> b.
std::vector<Complex> z_polyline(const Complex& a, const Complex& b, int pieces = 32);

}  // namespace p1
