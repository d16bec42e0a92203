#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "p1/cli/commands.hpp"
#include "p1/cli/config.hpp"
#include "p1/cli/expr.hpp"
#include "p1/error.hpp"

using namespace p1;
using namespace p1::cli;
using nlohmann::json;

namespace {

struct ToolRun {
  int code = -1;
  std::string out;
};

ToolRun run_tool(const std::string& args) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto path = dir / ("p1pole_test_" + std::to_string(::getpid()) + ".out");
  const std::string cmd = std::string(P1POLE_EXE) + " " + args + " > " + path.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  ToolRun r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  std::filesystem::remove(path);
  return r;
}

}  // namespace

TEST(Config, Defaults) {
  RunConfig c;
  EXPECT_EQ(c.digits, 32);
  EXPECT_EQ(c.K, 40);
  EXPECT_EQ(c.format, "json");
  EXPECT_NO_THROW(validate(c));
}

TEST(Config, ParsesKeyValueLines) {
  RunConfig c;
  std::istringstream in("# comment\n\nK = 12\n  A=6.5  # trailing\nformat = latex\nseed = 7\n");
  load_config(c, in);
  EXPECT_EQ(c.K, 12);
  EXPECT_DOUBLE_EQ(c.A, 6.5);
  EXPECT_EQ(c.format, "latex");
  EXPECT_EQ(c.seed, 7u);
}

TEST(Config, RejectsUnknownAndMalformed) {
  RunConfig c;
  EXPECT_THROW(apply_setting(c, "levels_of_doom", "3"), DomainError);
  EXPECT_THROW(apply_setting(c, "K", "twelve"), DomainError);
  EXPECT_THROW(apply_setting(c, "A", "5x"), DomainError);
  std::istringstream in("K 12\n");
  EXPECT_THROW(load_config(c, in), DomainError);
}

TEST(Config, ValidateRanges) {
  auto bad = [](auto mutate) {
    RunConfig c;
    mutate(c);
    EXPECT_THROW(validate(c), DomainError);
  };
  bad([](RunConfig& c) { c.digits = 40; });
  bad([](RunConfig& c) { c.M = 2; });
  bad([](RunConfig& c) { c.k_max = 50; });
  bad([](RunConfig& c) { c.A = 2; });
  bad([](RunConfig& c) { c.drift_tol = 0; });
  bad([](RunConfig& c) { c.format = "xml"; });
  bad([](RunConfig& c) { c.x_max = 4; });
}

TEST(Config, DumpRoundTrip) {
  RunConfig c;
  c.K = 17;
  c.A = 6.25;
  c.output = "out.json";
  RunConfig d;
  std::istringstream in(dump_config(c));
  load_config(d, in);
  EXPECT_EQ(d.K, 17);
  EXPECT_DOUBLE_EQ(d.A, 6.25);
  EXPECT_EQ(d.output, "out.json");
}

TEST(Expr, Arithmetic) {
  EXPECT_EQ(eval_expr("1+2*3"), Real(7));
  EXPECT_EQ(eval_expr("-(2-5)/3"), Real(1));
  EXPECT_EQ(eval_expr("1e6"), Real(1000000));
  const Real c = eval_expr("12*exp(10)*sqrt(10)");
  EXPECT_LT(abs(c - 12 * exp(Real(10)) * sqrt(Real(10))), Real(1e-28) * c);
  EXPECT_LT(abs(eval_expr("ln(e)") - 1), Real(1e-32));
  EXPECT_LT(abs(eval_expr("pi") - kPi), Real(1e-32));
}

TEST(Expr, Errors) {
  for (const char* s : {"", "1+", "(1", "foo(2)", "1/0", "sqrt(-1)", "ln(0)", "2 3"}) {
    EXPECT_THROW(eval_expr(s), DomainError) << s;
  }
}

TEST(Commands, CoeffsJson) {
  Session s(RunConfig{});
  std::ostringstream out;
  ASSERT_EQ(cmd_coeffs(s, 8, out), kOk);
  const json j = json::parse(out.str());
  EXPECT_EQ(j["kind"], "h0_series");
  EXPECT_EQ(j["order"], 8);
  EXPECT_EQ(j["coeffs"].size(), 9u);
  EXPECT_EQ(j["coeffs"][4], "-392/625");
}

TEST(Commands, TableRoundTrip) {
  Session s(RunConfig{});
  std::ostringstream out;
  ASSERT_EQ(cmd_table(s, 3, 5, out), kOk);
  const TransseriesTable t = TransseriesTable::from_json(json::parse(out.str()));
  EXPECT_EQ(t, compute_transseries_table(3, 5));
}

TEST(Commands, GmLatex) {
  RunConfig c;
  c.format = "latex";
  Session s(c);
  std::ostringstream out;
  ASSERT_EQ(cmd_gm(s, 1, out), kOk);
  EXPECT_NE(out.str().find("G_{1}(s) = "), std::string::npos);
}

TEST(Commands, PredictBracketOnly) {
  Session s(RunConfig{});
  std::ostringstream out;
  ASSERT_EQ(cmd_predict(s, {1e6, 0}, -1, out), kOk);
  const json j = json::parse(out.str());
  EXPECT_LT(j["x_lo"].get<double>(), j["x_hi"].get<double>());
  EXPECT_TRUE(j.contains("x_lim"));
  EXPECT_TRUE(j.contains("x_div"));
}

TEST(Commands, GuardMapsErrors) {
  std::ostringstream err;
  EXPECT_EQ(run_guarded([]() -> int { throw DomainError("x"); }, err), kInvalidInput);
  EXPECT_EQ(run_guarded([]() -> int { throw std::runtime_error("y"); }, err), kInternal);
  EXPECT_EQ(run_guarded([] { return kOk; }, err), kOk);
}

TEST(Tool, CoeffsMatchesExample) {
  const ToolRun r = run_tool("coeffs --order 4");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["coeffs"], json({"0", "0", "0", "0", "-392/625"}));
}

TEST(Tool, InvalidInputExitCodes) {
  EXPECT_EQ(run_tool("predict --C 5").code, 2);
  EXPECT_EQ(run_tool("predict --C-expr 'sqrt(-4)'").code, 2);
  EXPECT_EQ(run_tool("coeffs --order 3").code, 2);
  EXPECT_EQ(run_tool("no-such-command").code, 2);
  EXPECT_EQ(run_tool("predict --C 1e6 --digits 90").code, 2);
}

TEST(Tool, ConfigFileAndFlagPrecedence) {
  const auto path = std::filesystem::temp_directory_path() / "p1pole_test.cfg";
  {
    std::ofstream f(path);
    f << "A = 6\nbracket_tol = 1e-6\n";
  }
  const ToolRun from_file = run_tool("predict --C 1e6 --config " + path.string());
  ASSERT_EQ(from_file.code, 0);
  EXPECT_DOUBLE_EQ(json::parse(from_file.out)["A"].get<double>(), 6.0);
  const ToolRun flag = run_tool("predict --C 1e6 --A 7 --config " + path.string());
  ASSERT_EQ(flag.code, 0);
  EXPECT_DOUBLE_EQ(json::parse(flag.out)["A"].get<double>(), 7.0);
  std::filesystem::remove(path);
}

TEST(Tool, EmptySweepPrintsHeader) {
  const ToolRun r = run_tool("sweep --Cmin 1e6 --Cmax 1e4 --steps 3");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "C,x_lo,x_asym,x_lim,x_hi,x_found,err\n");
}

TEST(Tool, VerifyConstructedConstant) {
  const ToolRun r = run_tool("verify --C-expr '12*exp(10)*sqrt(10)'");
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_TRUE(j["inside_bracket"].get<bool>());
  EXPECT_EQ(j["x_hi_text"], "10");
  EXPECT_LT(j["certificate"]["loop_y"].get<double>(), 1e-20);
}
