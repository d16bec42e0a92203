#include "p1/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "p1/error.hpp"
#include "p1/matching.hpp"

namespace p1::cli {

using nlohmann::json;

Session::Session(RunConfig cfg) : cfg_(std::move(cfg)) { validate(cfg_); }
Session::~Session() = default;

const TransseriesTable& Session::table() {
  if (!table_) {
    table_ = compute_transseries_table(cfg_.K, cfg_.M);
    table_->real_entries();
  }
  return *table_;
}

const H0Fixture& Session::fixture() {
  if (!fixture_) {
    if (cfg_.x_max == 40) {
      fixture_ = &default_h0_fixture();
    } else {
      H0FixtureOptions o;
      o.x_max = std::max(Real(cfg_.x_max), o.x_seed);
      own_fixture_ = std::make_unique<H0Fixture>(o);
      fixture_ = own_fixture_.get();
    }
  }
  return *fixture_;
}

const HkSet& Session::hk() {
  if (!hk_) {
    BasisOptions bo;
    bo.A = cfg_.A;
    bo.x_max = cfg_.x_max;
    bo.edges = cfg_.grid_edges;
    hk_ = std::make_unique<HkSet>(build_hk(cfg_.k_max, build_basis(bo, fixture(), table()), table()));
  }
  return *hk_;
}

PoleSearchOptions Session::search_options() const {
  PoleSearchOptions o;
  o.x_seed = cfg_.x_seed;
  o.ctl.digits = cfg_.digits;
  o.ctl.drift_tol = cfg_.drift_tol;
  return o;
}

int cmd_coeffs(Session&, int order, std::ostream& out) {
  const PowerSeries1x h0 = compute_h0_series(order);
  json j;
  j["kind"] = "h0_series";
  j["order"] = order;
  j["coeffs"] = rationals_to_json(h0.coeffs());
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_table(Session&, int K, int M, std::ostream& out) {
  out << compute_transseries_table(K, M).to_json().dump(2) << "\n";
  return kOk;
}

int cmd_gm(Session& s, int m_max, std::ostream& out) {
  const auto gs = compute_Gm(m_max);
  if (s.config().format == "latex") {
    for (const auto& g : gs) out << "G_{" << g.m << "}(s) = " << g.G.to_latex() << "\n";
    return kOk;
  }
  json arr = json::array();
  for (const auto& g : gs) arr.push_back(gm_to_json(g));
  out << arr.dump(2) << "\n";
  return kOk;
}

int cmd_predict(Session& s, std::complex<double> C, int karray, std::ostream& out) {
  const bool real = C.imag() == 0 && C.real() > 12;
  const HkSet* set = real ? &s.hk() : nullptr;
  const PolePrediction p = predict(C, set, s.config().A, karray);
  json j = prediction_to_json(p);
  if (real) {
    const DivergenceScan d = divergence_scan(C.real(), *set);
    j["x_div"] = d.x_div ? json(*d.x_div) : json(nullptr);
    j["x_div_uncertainty"] = d.uncertainty;
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_find(Session& s, const Complex& C, const std::optional<Complex>& x_target, std::ostream& out) {
  const PoleSearchOptions opt = s.search_options();
  json j;
  if (x_target) {
    j = pole_to_json(hunt_pole(C, *x_target, s.table(), opt));
  } else {
    if (C.imag() != 0) throw DomainError("the real-axis search needs a real C; pass a target x for complex C");
    const RealPoleSearch r = first_real_pole(C.real(), Real(s.C0()), Real(s.config().A), s.table(), opt);
    if (!r.pole) {
      j["status"] = r.guaranteed ? "no pole found above A" : "no pole guaranteed on the positive real axis";
      j["x_reached"] = to_double(r.x_reached);
    } else {
      j = pole_to_json(*r.pole);
      if (!r.guaranteed) j["status"] = "unguaranteed";
    }
  }
  out << j.dump(2) << "\n";
  return kOk;
}

int cmd_verify(Session& s, const Real& C, std::ostream& out) {
  const PolePrediction p = predict({to_double(C), 0.0}, &s.hk(), s.config().A);
  const RealPoleSearch r = first_real_pole(C, Real(s.C0()), Real(s.config().A), s.table(), s.search_options());
  json j;
  j["prediction"] = prediction_to_json(p);
  {
    std::ostringstream hi;
    hi << std::setprecision(17) << p.x_hi;
    j["x_hi_text"] = hi.str();
  }
  bool pass = false;
  if (r.pole) {
    const PoleCertificate cert = certify_pole(*r.pole);
    const double x = to_double(r.pole->x.real());
    const double slack = std::max(s.config().bracket_tol, to_double(r.pole->err));
    const bool inside = !std::isnan(p.x_lo) && x >= p.x_lo - slack && x <= p.x_hi + slack;
    j["pole"] = pole_to_json(*r.pole);
    j["inside_bracket"] = inside;
    j["certificate"] = {{"loop_y", to_double(cabs(cert.loop_y))},
                        {"loop_wy_minus_2pi_i", to_double(cabs(cert.loop_wy - Real(2) * kPi * kI))},
                        {"pass", cert.pass}};
    pass = inside && cert.pass && r.guaranteed;
  } else {
    j["pole"] = nullptr;
    j["x_reached"] = to_double(r.x_reached);
  }
  j["guaranteed"] = r.guaranteed;
  j["pass"] = pass;
  out << j.dump(2) << "\n";
  return pass ? kOk : kVerificationFailed;
}

namespace {

struct SweepRow {
  double C = 0, x_lo = 0, x_asym = 0, x_hi = 0;
  std::optional<double> x_lim, x_found;
  double err = 0;
};

std::string cell(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream o;
  o << std::setprecision(15) << *v;
  return o.str();
}

}  // namespace

int cmd_sweep(Session& s, double Cmin, double Cmax, int steps, std::ostream& out) {
  out << "C,x_lo,x_asym,x_lim,x_hi,x_found,err\n";
  if (steps <= 0 || !(Cmin <= Cmax)) return kOk;
  if (!(Cmin > 12)) throw DomainError("Cmin must exceed 12");
  std::vector<double> Cs;
  for (int i = 0; i < steps; ++i) {
    const double t = steps == 1 ? 0.0 : static_cast<double>(i) / (steps - 1);
    Cs.push_back(std::exp(std::log(Cmin) + t * (std::log(Cmax) - std::log(Cmin))));
  }
  const HkSet& set = s.hk();
  const TransseriesTable& table = s.table();
  const PoleSearchOptions opt = s.search_options();
  const double A = s.config().A, C0 = s.C0();
  auto work = [&](double C) {
    SweepRow row;
    row.C = C;
    const PolePrediction p = predict({C, 0.0}, &set, A);
    row.x_lo = p.x_lo;
    row.x_hi = p.x_hi;
    row.x_asym = p.x_asym;
    row.x_lim = p.x_lim;
    const RealPoleSearch r = first_real_pole(Real(C), Real(C0), Real(A), table, opt);
    if (r.pole) {
      row.x_found = to_double(r.pole->x.real());
      row.err = to_double(r.pole->err);
    }
    return row;
  };
  unsigned threads = s.config().threads > 0 ? static_cast<unsigned>(s.config().threads)
                                            : std::max(1u, std::thread::hardware_concurrency());
  std::vector<SweepRow> rows(Cs.size());
  for (std::size_t start = 0; start < Cs.size(); start += threads) {
    std::vector<std::future<SweepRow>> batch;
    for (std::size_t i = start; i < std::min(Cs.size(), start + threads); ++i) {
      batch.push_back(std::async(std::launch::async, work, Cs[i]));
    }
    for (std::size_t i = 0; i < batch.size(); ++i) rows[start + i] = batch[i].get();
  }
  for (const auto& r : rows) {
    out << cell(r.C) << "," << cell(r.x_lo) << "," << cell(r.x_asym) << "," << cell(r.x_lim) << ","
        << cell(r.x_hi) << "," << cell(r.x_found) << "," << cell(r.err) << "\n";
  }
  return kOk;
}

int run_guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace p1::cli
