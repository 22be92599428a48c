#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "subfrac/config.hpp"
#include "subfrac/errors.hpp"
#include "subfrac/experiments.hpp"

using namespace subfrac;

namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& leaf) {
  const fs::path p = fs::temp_directory_path() / "subfrac_experiments" / leaf;
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

ExperimentConfig with_out(const std::string& text, const fs::path& out) {
  ExperimentConfig cfg = parse_config_text(text + "\nout = " + out.string() + "\n");
  return cfg;
}

}  // namespace

TEST_CASE("mc-vs-pde experiment writes its artifact set and reproduces bytes") {
  const fs::path out = scratch("mcpde");
  const std::string text =
      "kind = mc-vs-pde\nmodel = eigen\nfamily = stable\nbeta = 0.5\na = 1\nk = 0\n"
      "n_samples = 2000\nseed = 12\nt_grid = 0.5, 1.0\ndt = 2e-3\n";
  const ValidationReport report = run_experiment(with_out(text, out));
  CHECK(report.kind == "mc-vs-pde");
  CHECK(report.pass());
  CHECK(report.checks.size() == 2);
  CHECK(fs::exists(out / "report.json"));
  CHECK(fs::exists(out / "results.csv"));
  CHECK(fs::exists(out / "plot.svg"));
  CHECK(report.summary().find("PASS") != std::string::npos);

  const std::string first = slurp(out / "results.csv");
  const fs::path out2 = scratch("mcpde2");
  run_experiment(with_out(text, out2));
  CHECK(slurp(out2 / "results.csv") == first);

  // a different seed must actually change the sampled column
  const fs::path out3 = scratch("mcpde3");
  ExperimentConfig other = with_out(text, out3);
  other.seed = 13;
  run_experiment(other);
  CHECK(slurp(out3 / "results.csv") != first);

  const std::string json = slurp(out / "report.json");
  CHECK(json.find("\"schema_version\"") != std::string::npos);
  CHECK(json.find("\"kind\": \"mc-vs-pde\"") != std::string::npos);
  fs::remove_all(out.parent_path());
}

TEST_CASE("reduction experiment passes and records bit comparisons") {
  const fs::path out = scratch("reduction");
  const std::string text =
      "kind = reduction-a0\nfamily = stable\nbeta = 0.5\na = 0\nk = 0\n"
      "n_samples = 500\nseed = 4\nt_grid = 0.25, 0.5\ndt = 5e-3\n";
  const ValidationReport report = run_experiment(with_out(text, out));
  CHECK(report.pass());
  const std::string csv = slurp(out / "results.csv");
  CHECK(csv.find("bit_equal") != std::string::npos);
  fs::remove_all(out.parent_path());
}

TEST_CASE("convergence experiment sees first-order decay") {
  const fs::path out = scratch("convergence");
  const std::string text =
      "kind = convergence\nfamily = stable\nbeta = 0.5\na = 0\nk = 0\ntheta = 0.5\n"
      "dt_levels = 4e-3, 2e-3, 1e-3\n";
  const ValidationReport report = run_experiment(with_out(text, out));
  CHECK(report.pass());
  CHECK(slurp(out / "results.csv").find("ratio") != std::string::npos);
  fs::remove_all(out.parent_path());
}

TEST_CASE("experiments reject invalid configs before touching the disk") {
  const fs::path out = scratch("rejected");
  CHECK_THROWS_AS(run_experiment(with_out("kind = mc-vs-pde\nn_samples = 10\n", out)),
                  ConfigError);
  CHECK_FALSE(fs::exists(out));
  fs::remove_all(out.parent_path());
}

TEST_CASE("sweep lays out cells and a byte-stable summary") {
  const fs::path out = scratch("sweep");
  const std::string text =
      "kind = mc-vs-pde\nmodel = eigen\nfamily = stable\nbeta = 0.5\nk = 0\n"
      "n_samples = 1000\nseed = 12\nt_grid = 0.5\ndt = 2e-3\n"
      "sweep.a = 0.5, 1\nsweep.theta = 0.25, 0.5\n";
  const ValidationReport report = run_sweep(with_out(text, out));
  CHECK(report.pass());
  CHECK(report.checks.size() == 4);  // one record per cell
  for (const std::string cell : {"cell-000", "cell-001", "cell-002", "cell-003"}) {
    CHECK(fs::exists(out / cell / "report.json"));
    CHECK(fs::exists(out / cell / "results.csv"));
  }
  CHECK(fs::exists(out / "report.json"));
  const std::string summary = slurp(out / "summary.csv");
  CHECK(summary.find("cell,") == 0);
  // map order: a varies slowest, theta fastest
  CHECK(summary.find("cell-000,0.5,0.25") != std::string::npos);
  CHECK(summary.find("cell-003,1,0.5") != std::string::npos);

  const fs::path out2 = scratch("sweep2");
  run_sweep(with_out(text, out2));
  CHECK(slurp(out2 / "summary.csv") == summary);
  fs::remove_all(out.parent_path());
}

TEST_CASE("sweep requires at least one parameter") {
  const fs::path out = scratch("sweep-empty");
  CHECK_THROWS_AS(run_sweep(with_out("kind = mc-vs-pde\n", out)), ConfigError);
  fs::remove_all(out.parent_path());
}

TEST_CASE("ValidationReport verdict logic") {
  ValidationReport r;
  r.kind = "demo";
  CHECK_FALSE(r.pass());  // no checks, nothing demonstrated
  r.checks.push_back({"alpha", 1.0, 1.0, 0.1, true, 0.0});
  CHECK(r.pass());
  r.checks.push_back({"beta", 2.0, 1.0, 0.1, false, 0.0});
  CHECK_FALSE(r.pass());
  const std::string s = r.summary();
  CHECK(s.find("FAIL  beta") != std::string::npos);
  CHECK(s.find("pass  alpha") != std::string::npos);
}
