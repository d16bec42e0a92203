// p1pole: transseries data, pole prediction and pole verification for P1.

#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "p1/cli/commands.hpp"
#include "p1/cli/expr.hpp"
#include "p1/error.hpp"

using namespace p1;
using namespace p1::cli;

namespace {

// Flag values that override the config file only when given.
struct Overrides {
  std::optional<int> digits, K, M, k_max, threads, grid_edges;
  std::optional<double> A, x_seed, x_max, drift_tol, bracket_tol;
  std::optional<std::string> output, format;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* app, Overrides& o, std::string& config_path) {
  app->add_option("--config", config_path, "Flat key = value config file");
  app->add_option("--digits", o.digits, "Taylor step accuracy in decimal digits");
  app->add_option("--levels", o.K, "Transseries levels K");
  app->add_option("--orders", o.M, "Orders per transseries level M");
  app->add_option("--k-max", o.k_max, "Predictor levels");
  app->add_option("--A", o.A, "Left end of the predictor range");
  app->add_option("--x-seed", o.x_seed, "Seeding point");
  app->add_option("--x-max", o.x_max, "Right end of the predictor grid");
  app->add_option("--drift-tol", o.drift_tol, "Energy drift tolerance");
  app->add_option("--bracket-tol", o.bracket_tol, "Slack on the bracket");
  app->add_option("--grid-edges", o.grid_edges, "Predictor grid size");
  app->add_option("--threads", o.threads, "Worker threads (0: all cores)");
  app->add_option("--seed", o.seed, "Seed for randomized checks");
  app->add_option("-o,--output", o.output, "Output file (default stdout)");
}

RunConfig assemble(const Overrides& o, const std::string& config_path) {
  RunConfig c;
  if (!config_path.empty()) load_config_file(c, config_path);
  if (o.digits) c.digits = *o.digits;
  if (o.K) c.K = *o.K;
  if (o.M) c.M = *o.M;
  if (o.k_max) c.k_max = *o.k_max;
  if (o.A) c.A = *o.A;
  if (o.x_seed) c.x_seed = *o.x_seed;
  if (o.x_max) c.x_max = *o.x_max;
  if (o.drift_tol) c.drift_tol = *o.drift_tol;
  if (o.bracket_tol) c.bracket_tol = *o.bracket_tol;
  if (o.grid_edges) c.grid_edges = *o.grid_edges;
  if (o.threads) c.threads = *o.threads;
  if (o.seed) c.seed = *o.seed;
  if (o.output) c.output = *o.output;
  if (o.format) c.format = *o.format;
  return c;
}

Real read_C(const std::optional<std::string>& C, const std::optional<std::string>& C_expr) {
  if (C && C_expr) throw DomainError("give either --C or --C-expr");
  if (C_expr) return eval_expr(*C_expr);
  if (C) return parse_real(*C);
  throw DomainError("--C or --C-expr is required");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Painleve I transseries, pole prediction and verification"};
  app.require_subcommand(1);
  Overrides o;
  std::string config_path;

  int order = 8, tK = 3, tM = 0, gm_max = 1, karray = 2, steps = 10;
  double Cmin = 1e4, Cmax = 1e6, C_im = 0;
  std::optional<std::string> C_text, C_expr;
  std::optional<double> x_re, x_im;
  bool complex_array = false;

  auto* coeffs = app.add_subcommand("coeffs", "Coefficients of the decaying series h_0");
  coeffs->add_option("--order", order, "Highest order")->check(CLI::Range(4, 100000));
  auto* table = app.add_subcommand("table", "Transseries coefficient table c_{km}");
  table->add_option("--K", tK, "Levels")->check(CLI::NonNegativeNumber);
  table->add_option("--M", tM, "Orders")->check(CLI::NonNegativeNumber);
  auto* gm = app.add_subcommand("gm", "Resummed functions G_m(s)");
  gm->add_option("--max", gm_max, "Highest m")->check(CLI::NonNegativeNumber);
  gm->add_option("--format", o.format, "json or latex");
  auto* pred = app.add_subcommand("predict", "Predict pole locations for C");
  auto* find = app.add_subcommand("find", "Locate a pole by integration");
  auto* verify = app.add_subcommand("verify", "Locate the first real pole and check it against the bracket");
  for (auto* sc : {pred, find, verify}) {
    sc->add_option("--C", C_text, "Transseries constant (decimal)");
    sc->add_option("--C-expr", C_expr, "Transseries constant as an expression, e.g. 12*exp(10)*sqrt(10)");
  }
  for (auto* sc : {pred, find}) sc->add_option("--C-im", C_im, "Imaginary part of C");
  pred->add_flag("--complex", complex_array, "Also return the complex pole array");
  pred->add_option("--karray", karray, "Array half-width N: k in [-N, N]")->check(CLI::NonNegativeNumber);
  find->add_option("--x-re", x_re, "Real part of a target x (complex search)");
  find->add_option("--x-im", x_im, "Imaginary part of a target x");
  auto* sweep = app.add_subcommand("sweep", "CSV of predictions and located poles over a log-spaced C range");
  sweep->add_option("--Cmin", Cmin);
  sweep->add_option("--Cmax", Cmax);
  sweep->add_option("--steps", steps)->check(CLI::NonNegativeNumber);
  for (auto* sc : {coeffs, table, gm, pred, find, verify, sweep}) add_common(sc, o, config_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalidInput;
  }

  return run_guarded(
      [&]() -> int {
        Session s(assemble(o, config_path));
        std::ofstream file;
        std::ostream* out = &std::cout;
        if (!s.config().output.empty()) {
          file.open(s.config().output);
          if (!file) throw DomainError("cannot open output " + s.config().output);
          out = &file;
        }
        if (*coeffs) return cmd_coeffs(s, order, *out);
        if (*table) return cmd_table(s, tK, tM, *out);
        if (*gm) return cmd_gm(s, gm_max, *out);
        if (*pred) {
          const Real C = read_C(C_text, C_expr);
          return cmd_predict(s, {to_double(C), C_im}, complex_array ? karray : -1, *out);
        }
        if (*find) {
          const Complex C(read_C(C_text, C_expr), Real(C_im));
          std::optional<Complex> target;
          if (x_re || x_im) target = Complex(Real(x_re.value_or(0)), Real(x_im.value_or(0)));
          return cmd_find(s, C, target, *out);
        }
        if (*verify) return cmd_verify(s, read_C(C_text, C_expr), *out);
        if (*sweep) return cmd_sweep(s, Cmin, Cmax, steps, *out);
        return kInvalidInput;
      },
      std::cerr);
}
