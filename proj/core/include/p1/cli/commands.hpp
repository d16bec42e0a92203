#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>

#include "p1/cli/config.hpp"
#include "p1/h0_fixture.hpp"
#include "p1/poles.hpp"
#include "p1/predictor.hpp"

namespace p1::cli {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalidInput = 2, kVerificationFailed = 3 };

/// Shared, lazily built data for one configuration. Not thread-safe while
/// building; the built objects are read-only.
class Session {
 public:
  explicit Session(RunConfig cfg);
  ~Session();

  const RunConfig& config() const { return cfg_; }
  const TransseriesTable& table();
  const H0Fixture& fixture();
  const HkSet& hk();
  PoleSearchOptions search_options() const;
  double C0() const { return compute_C0(cfg_.A); }

 private:
  RunConfig cfg_;
  std::optional<TransseriesTable> table_;
  std::unique_ptr<H0Fixture> own_fixture_;
  const H0Fixture* fixture_ = nullptr;
  std::unique_ptr<HkSet> hk_;
};

int cmd_coeffs(Session& s, int order, std::ostream& out);
int cmd_table(Session& s, int K, int M, std::ostream& out);
int cmd_gm(Session& s, int m_max, std::ostream& out);
/// karray < 0: no complex array.
int cmd_predict(Session& s, std::complex<double> C, int karray, std::ostream& out);
/// Without a target: first pole on the positive real axis; with a target:
/// the pole nearest to it.
int cmd_find(Session& s, const Complex& C, const std::optional<Complex>& x_target, std::ostream& out);
int cmd_verify(Session& s, const Real& C, std::ostream& out);
int cmd_sweep(Session& s, double Cmin, double Cmax, int steps, std::ostream& out);

/// Runs `body`, mapping DomainError (including branch-cut errors) to exit code 2 and other
/// exceptions to 1, with the message on `err`.
int run_guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace p1::cli
