#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "mrfcd/cli.hpp"
#include "mrfcd/io.hpp"

namespace fs = std::filesystem;
using namespace mrfcd;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    auto d = fs::temp_directory_path() / "mrfcd_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

Result cli(const std::string& args) {
  const auto out = scratch() / "stdout.txt";
  const auto err = scratch() / "stderr.txt";
  const std::string cmd = std::string("\"") + MRFCD_CLI_PATH + "\" " + args + " >\"" + out.string() + "\" 2>\"" +
                          err.string() + "\"";
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, read_file(out), read_file(err)};
}

}  // namespace

TEST_CASE("bound prints a JSON report") {
  const auto r = cli("bound --kind ising-easy --p 100 --alpha 0.3 --delta 0.5");
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  const auto report = bound_report_from_json(j);
  CHECK(report.n_threshold == sample_threshold(ThresholdKind::ising_easy, {100, 0, 0.3, 0, 0}, 0.5));
  CHECK(j["params"]["p"] == 100);
}

TEST_CASE("usage and validation errors exit with 2") {
  auto r = cli("");
  CHECK(r.code == 2);
  CHECK(r.err.find("Usage") != std::string::npos);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("bound --kind ising-easy --p 10 --alpha 0.5 --delta 3").code == 2);
  r = cli("bound --kind ising-clique --p 10 --d 4 --beta 0.5");
  CHECK(r.code == 2);
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(cli("simulate --kind gaussian-single-edge --p 4 --gamma 0.7 --n 3 --trials 100").code == 2);
  CHECK(cli("verify --suite nope").code == 2);
}

TEST_CASE("verify runs every suite") {
  const auto r = cli("verify --suite all");
  CHECK(r.code == 0);
  for (const char* name : {"lemma1-chain", "lemma2", "appendix-sandwich", "det-identities", "chi2-oracles", "footnote-039"})
    CHECK(r.out.find(std::string("PASS ") + name) != std::string::npos);
  CHECK(cli("verify --suite det-identities").code == 0);
}

TEST_CASE("simulate writes a deterministic CSV") {
  const auto a = scratch() / "a.csv";
  const auto b = scratch() / "b.csv";
  const std::string base = "simulate --kind ising-clique --p 10 --d 4 --beta 0.9 --n 20 --trials 2000 --seed 42";
  REQUIRE(cli(base + " --threads 1 --out " + a.string()).code == 0);
  REQUIRE(cli(base + " --threads 3 --out " + b.string()).code == 0);
  CHECK(read_file(a) == read_file(b));
  const auto reports = risk_reports_from_csv(read_file(a));
  REQUIRE(reports.size() == 1);
  CHECK(reports[0].n == 20);
  CHECK(reports[0].params.r == 2);
}

TEST_CASE("sweep writes raw and smoothed curves in several formats") {
  const auto out = scratch() / "sweep.csv";
  const auto r = cli("sweep --kind ising-single-edge --p 4 --alpha 0.8 --n-list 0,2,5 --trials 500 --seed 3 --format csv,svg,json --out " +
                     out.string());
  REQUIRE(r.code == 0);
  CHECK(risk_reports_from_csv(read_file(out)).size() == 3);
  CHECK(risk_reports_from_csv(read_file(scratch() / "sweep.smoothed.csv")).size() == 3);
  CHECK(read_file(scratch() / "sweep.svg").find("<svg") != std::string::npos);
  CHECK(Json::parse(read_file(scratch() / "sweep.json"))["raw"].size() == 3);

  const auto svg = scratch() / "plot.svg";
  REQUIRE(cli("plot --in " + out.string() + " --out " + svg.string()).code == 0);
  const auto first = read_file(svg);
  REQUIRE(cli("plot --in " + out.string() + " --out " + svg.string()).code == 0);
  CHECK(read_file(svg) == first);
}

TEST_CASE("config file with flag overrides") {
  const auto cfg = scratch() / "cfg.json";
  write_file_atomic(cfg, R"({"command": "bound", "kind": "ising-easy", "p": 10, "alpha": 0.5, "delta": 0.5})");
  auto r = cli("bound --config " + cfg.string());
  REQUIRE(r.code == 0);
  CHECK(bound_report_from_json(Json::parse(r.out)).params.p == 10);
  r = cli("bound --config " + cfg.string() + " --p 20");
  REQUIRE(r.code == 0);
  const auto report = bound_report_from_json(Json::parse(r.out));
  CHECK(report.params.p == 20);
  CHECK(report.params.alpha == 0.5);
}

TEST_CASE("plot a bound report") {
  const auto json = scratch() / "bound.json";
  REQUIRE(cli("bound --kind gaussian --p 50 --gamma 0.3 --out " + json.string()).code == 0);
  const auto svg = scratch() / "bound.svg";
  REQUIRE(cli("plot --in " + json.string() + " --out " + svg.string()).code == 0);
  CHECK(read_file(svg).find("</svg>") != std::string::npos);
}

TEST_CASE("library entry point maps errors to exit codes") {
  ExperimentConfig cfg;
  cfg.command = "bound";
  cfg.kind = "ising-easy";
  cfg.p = 10;
  cfg.alpha = 0.5;
  std::ostringstream out, err;
  CHECK(run(cfg, out, err) == kExitOk);
  CHECK(Json::parse(out.str())["params"]["n"] == 19);
  cfg.kind = "nope";
  CHECK(run(cfg, out, err) == kExitValidation);
  ExperimentConfig plot;
  plot.command = "plot";
  plot.input = (scratch() / "does-not-exist.csv").string();
  plot.out = (scratch() / "x.svg").string();
  CHECK(run(plot, out, err) != kExitOk);
}
