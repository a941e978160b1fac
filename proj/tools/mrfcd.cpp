// mrfcd: sample-size lower bounds and risk simulation for structural change
// detection in Ising and Gaussian Markov random fields.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "mrfcd/cli.hpp"
#include "mrfcd/error.hpp"
#include "mrfcd/io.hpp"

namespace {

struct Flags {
  std::string config;
  std::string kind;
  int p = 0;
  int d = 0;
  double alpha = 0, beta = 0, gamma = 0, lambda = 0, delta = 0.5;
  std::string mode;
  long n = 0;
  std::vector<long> n_list;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  unsigned threads = 0;
  std::string out;
  std::vector<std::string> formats;
  std::string suite;
  std::string input;
};

// Options shared by several subcommands; only flags actually given override
// values loaded from --config.
void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its values");
  cmd->add_option("--out", f.out, "output path (default: stdout)");
  cmd->add_option("--format", f.formats, "output formats: json, csv, svg")->delimiter(',');
  cmd->add_option("--threads", f.threads, "worker threads (default: MRFCD_THREADS or all cores)");
}

void add_model(CLI::App* cmd, Flags& f) {
  cmd->add_option("--kind", f.kind, "bound kind or ensemble kind");
  cmd->add_option("--p", f.p, "number of nodes");
  cmd->add_option("--d", f.d, "maximum degree / clique degree");
  cmd->add_option("--alpha", f.alpha, "minimum edge weight");
  cmd->add_option("--beta", f.beta, "maximum edge weight");
  cmd->add_option("--gamma", f.gamma, "normalized Gaussian edge weight");
  cmd->add_option("--lambda", f.lambda, "ensemble edge weight (overrides alpha/beta/gamma)");
}

mrfcd::ExperimentConfig assemble(const CLI::App& app, const CLI::App* cmd, const Flags& f) {
  (void)app;
  mrfcd::ExperimentConfig cfg;
  if (cmd->count("--config")) cfg = mrfcd::config_from_json(mrfcd::Json::parse(mrfcd::read_file(f.config)));
  cfg.command = cmd->get_name();
  auto given = [cmd](const char* name) {
    try {
      return cmd->get_option(name)->count() > 0;
    } catch (const CLI::OptionNotFound&) {
      return false;
    }
  };
  if (given("--kind")) cfg.kind = f.kind;
  if (given("--p")) cfg.p = f.p;
  if (given("--d")) cfg.d = f.d;
  if (given("--alpha")) cfg.alpha = f.alpha;
  if (given("--beta")) cfg.beta = f.beta;
  if (given("--gamma")) cfg.gamma = f.gamma;
  if (given("--lambda")) cfg.lambda = f.lambda;
  if (given("--delta")) cfg.delta = f.delta;
  if (given("--mode")) cfg.mode = f.mode;
  if (given("--n")) cfg.n = f.n;
  if (given("--n-list")) cfg.n_list = f.n_list;
  if (given("--trials")) cfg.trials = f.trials;
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--threads")) cfg.threads = f.threads;
  if (given("--out")) cfg.out = f.out;
  if (given("--format")) cfg.formats = f.formats;
  if (given("--suite")) cfg.suite = f.suite;
  if (given("--in")) cfg.input = f.input;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower bounds and risk simulation for structural change detection in Markov random fields"};
  app.require_subcommand(1);
  Flags f;

  auto* bound = app.add_subcommand("bound", "evaluate a sample-size threshold and its chi-square risk bound");
  add_common(bound, f);
  add_model(bound, f);
  bound->add_option("--delta", f.delta, "reliability level in [0, 1]");
  bound->add_option("--mode", f.mode, "change-detection or structure-learning");
  bound->add_option("--n", f.n, "evaluate chi2 at this n (default: floor of the threshold)");

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo risk of the likelihood-ratio test at one n");
  add_common(simulate, f);
  add_model(simulate, f);
  simulate->add_option("--n", f.n, "samples per dataset");
  simulate->add_option("--trials", f.trials, "datasets per hypothesis");
  simulate->add_option("--seed", f.seed, "master seed");

  auto* sweep = app.add_subcommand("sweep", "risk vs n over a list of sample sizes");
  add_common(sweep, f);
  add_model(sweep, f);
  sweep->add_option("--n-list", f.n_list, "comma-separated sample sizes")->delimiter(',');
  sweep->add_option("--trials", f.trials, "datasets per hypothesis");
  sweep->add_option("--seed", f.seed, "master seed");

  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  add_common(verify, f);
  verify->add_option("--suite", f.suite, "suite name or 'all'");

  auto* plot = app.add_subcommand("plot", "render a risk CSV or bound JSON as SVG");
  add_common(plot, f);
  plot->add_option("--in", f.input, "risk CSV or bound-report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return mrfcd::kExitValidation;
  }

  for (auto* cmd : {bound, simulate, sweep, verify, plot}) {
    if (!cmd->parsed()) continue;
    try {
      const auto cfg = assemble(app, cmd, f);
      return mrfcd::run(cfg, std::cout, std::cerr);
    } catch (const mrfcd::ValidationError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return mrfcd::kExitValidation;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return mrfcd::kExitValidation;
    }
  }
  return mrfcd::kExitValidation;
}
