#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <string>
#include <sys/wait.h>

#include "dyadic/error.hpp"
#include "dyadic/experiments.hpp"
#include "dyadic/json_io.hpp"
#include "dyadic/lerner.hpp"

using namespace dyadic;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(DYADIC_SHARP_BIN) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe)) r.out += buf.data();
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dyadic_cli_" + name)).string();
}

}  // namespace

TEST_CASE("sweep rows") {
  SweepOptions o;
  o.alphas = {0.0, 0.5, 0.75, 0.875, 0.9375};
  o.depth = 8;
  o.maximal_trials = 4;
  const SweepResult r = run_sweep(o);
  REQUIRE(r.rows.size() == 5);
  CHECK(*r.rows[0].a2_constant == 1.0);
  CHECK(std::fabs(*r.rows[0].op_norm - std::numbers::sqrt2) <= 1e-8);
  CHECK(std::fabs(*r.rows[0].ratio - std::numbers::sqrt2) <= 1e-8);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const SweepRow& row = r.rows[i];
    CHECK(row.alpha == o.alphas[i]);
    CHECK(*row.ratio == *row.op_norm / *row.a2_constant);
    CHECK(*row.a2_constant >= 1.0);
    CHECK(*row.crosscheck_difference <= 1e-6);
    CHECK(row.lp_probe->lower_ratio <= *row.op_norm * (1 + 1e-9));
    if (i > 0) CHECK(*row.a2_constant > *r.rows[i - 1].a2_constant);
  }
  const std::string csv = sweep_csv(r);
  CHECK(csv.rfind("alpha,depth,a2_constant,op_norm,ratio,maximal_lb,lp_p,lp_lower_ratio,runtime_ms\n", 0) == 0);
  CHECK(csv == sweep_csv(run_sweep(o)));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
}

TEST_CASE("sweep input validation and error rows") {
  SweepOptions o;
  o.alphas = {1.5};
  CHECK_THROWS_AS(run_sweep(o), Error);
  o.alphas = {0.0};
  o.depth = 15;
  CHECK_THROWS_AS(run_sweep(o), Error);
  SweepResult failed;
  SweepRow row;
  row.alpha = 0.5;
  row.depth = 6;
  row.error = "NoConvergence";
  failed.rows.push_back(row);
  CHECK(sweep_csv(failed).find("0.5,6,,ERROR:NoConvergence,,,,,") != std::string::npos);
}

TEST_CASE("slope fit") {
  std::vector<SweepRow> rows(3);
  rows[0].a2_constant = 1.0;  // excluded: below 2
  rows[0].op_norm = 100.0;
  rows[1].a2_constant = 2.0;
  rows[1].op_norm = 3.0;
  rows[2].a2_constant = 8.0;
  rows[2].op_norm = 12.0;
  CHECK(*loglog_slope(rows) == doctest::Approx(1.0));
  rows.pop_back();
  CHECK(!loglog_slope(rows).has_value());
}

TEST_CASE("lp probe") {
  const LpProbe flat = lp_lower_probe(0.0, 2.0, 8);
  CHECK(flat.lower_ratio <= std::numbers::sqrt2 + 1e-12);
  CHECK(flat.ap_constant == 1.0);
  const LpProbe a = lp_lower_probe(0.5, 3.0, 10);
  const LpProbe b = lp_lower_probe(0.9, 3.0, 10);
  CHECK(b.ap_constant > a.ap_constant);
  CHECK(b.lower_ratio > a.lower_ratio);
  CHECK_THROWS_AS(lp_lower_probe(0.5, 1.0, 8), Error);
}

TEST_CASE("hilbert comparison") {
  const HilbertComparison coarse = hilbert_compare(0.25, 0.75, 4, 1, 7, 1);
  const HilbertComparison fine = hilbert_compare(0.25, 0.75, 64, 4, 7, 1);
  CHECK(fine.relative_error < coarse.relative_error);
  CHECK(fine.cells_compared > 0);
  CHECK_THROWS_AS(hilbert_compare(0.5, 0.25, 1, 1, 6, 1), Error);
}

TEST_CASE("command line: exit codes and formats") {
  CHECK(run("--help").code == 0);
  CHECK(run("").code == 1);
  CHECK(run("a2 --alpha 2 --depth 4").code == 1);
  CHECK(run("a2 --alpha 0.5 --depth 4 --p 1").code == 1);
  CHECK(run("norm --alpha 0 --depth 13 --method dense").code == 1);
  CHECK(run("bogus").code == 1);

  const Run a2 = run("a2 --alpha 0.5 --depth 6");
  CHECK(a2.code == 0);
  const json report = json::parse(a2.out);
  CHECK(report["constant"].get<double>() >= 1.0);
  CHECK(report["witness"].size() == 2);

  const Run norm = run("norm --alpha 0 --depth 6 --method dense");
  CHECK(norm.code == 0);
  CHECK(json::parse(norm.out)["value"].get<double>() == doctest::Approx(std::numbers::sqrt2));

  const Run csv = run("gen-weight --kind power --alpha 0.5 --depth 2 --format csv");
  CHECK(csv.code == 0);
  CHECK(csv.out.rfind("cell,left,value\n", 0) == 0);

  const std::string f = temp_path("f.json");
  const Run gen = run("gen-weight --kind random --depth 5 --seed 3 --out " + f);
  CHECK(gen.code == 0);
  const Run applied = run("shift-apply --spec hd --function " + f);
  CHECK(applied.code == 0);
  CHECK(json::parse(applied.out)["depth"] == 5);

  const Run verify = run("lerner-verify --function " + f);
  CHECK(verify.code == 0);
  const json v = json::parse(verify.out);
  CHECK(v["verification"]["passed"] == true);

  // A tampered decomposition is rejected with a computation-failure exit: the
  // generation-2 cube has lost its generation-1 parent.
  std::vector<double> cells(64, 0.0);
  cells[0] = 100;
  for (int i = 1; i < 8; ++i) cells[i] = 1;
  const std::string sf = temp_path("plateau.json");
  const std::string df = temp_path("tampered.json");
  std::ofstream(sf) << to_json(StepFunction(6, cells)).dump();
  std::ofstream(df) << json{{"root", {0, 0}}, {"generations", {json::array(), {{6, 0}}}}}.dump();
  CHECK(run("lerner-verify --function " + sf + " --decomposition " + df).code == 2);
  std::ofstream(df) << "{not json";
  CHECK(run("lerner-verify --function " + sf + " --decomposition " + df).code == 1);

  const Run dom = run("domination --depth 6 --seed 2");
  CHECK(dom.code == 0);
  CHECK(json::parse(dom.out)["empirical_constant"].get<double>() > 0);

  const Run probe = run("lp-probe --alpha 0.5 --p 3 --depth 8");
  CHECK(probe.code == 0);
  CHECK(json::parse(probe.out).contains("ap_constant"));

  const Run hc = run("hilbert-compare --a 0.25 --b 0.75 --shifts 4 --dilations 1 --depth 6");
  CHECK(hc.code == 0);
  CHECK(json::parse(hc.out).contains("fitted_scalar"));
  CHECK(run("a2 --alpha 0.5 --format csv").code == 1);
}

TEST_CASE("command line: sweep output is byte-stable across thread counts") {
  const std::string args = "sweep --alphas 0,0.5,0.9 --depth 7 --seed 9 --maximal-trials 4";
  const std::string cmd1 = "env DYADIC_SHARP_THREADS=1 ";
  const std::string cmd4 = "env DYADIC_SHARP_THREADS=4 ";
  auto run_env = [&](const std::string& env) {
    const std::string c = env + DYADIC_SHARP_BIN + " " + args + " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(c.c_str(), "r");
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe)) out += buf.data();
    pclose(pipe);
    return out;
  };
  const std::string one = run_env(cmd1);
  const std::string four = run_env(cmd4);
  CHECK(!one.empty());
  CHECK(one == four);
  CHECK(std::count(one.begin(), one.end(), '\n') == 4);
  CHECK(run("sweep --alphas 0,1.2 --depth 6").code == 1);
}

TEST_CASE("command line: selftest") {
  CHECK(run("selftest").code == 0);
  const Run tampered = run("selftest --inject-tampered --format json");
  CHECK(tampered.code == 3);
  const json j = json::parse(tampered.out);
  CHECK(j["passed"] == false);
  bool named = false;
  for (const auto& s : j["suites"])
    if (!s["passed"].get<bool>()) named = s["detail"].get<std::string>().rfind("nesting", 0) == 0;
  CHECK(named);
}
