#include "mrfcd/config.hpp"

#include <algorithm>

#include "mrfcd/error.hpp"

namespace mrfcd {
namespace {

const std::vector<std::string> kCommands{"bound", "simulate", "sweep", "verify", "plot"};
const std::vector<std::string> kFormats{"json", "csv", "svg"};

template <class T>
void put_optional(Json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <class T>
std::optional<T> get_optional(const Json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

Json to_json(const ExperimentConfig& cfg) {
  Json j{{"command", cfg.command}, {"kind", cfg.kind},     {"p", cfg.p},           {"d", cfg.d},
         {"delta", cfg.delta},     {"mode", cfg.mode},     {"n_list", cfg.n_list}, {"trials", cfg.trials},
         {"seed", cfg.seed},       {"threads", cfg.threads}, {"out", cfg.out},     {"formats", cfg.formats},
         {"suite", cfg.suite},     {"input", cfg.input}};
  put_optional(j, "alpha", cfg.alpha);
  put_optional(j, "beta", cfg.beta);
  put_optional(j, "gamma", cfg.gamma);
  put_optional(j, "lambda", cfg.lambda);
  put_optional(j, "n", cfg.n);
  return j;
}

ExperimentConfig config_from_json(const Json& j) {
  try {
    require(j.is_object(), "config must be a JSON object");
    ExperimentConfig cfg;
    cfg.command = j.value("command", cfg.command);
    cfg.kind = j.value("kind", cfg.kind);
    cfg.p = j.value("p", cfg.p);
    cfg.d = j.value("d", cfg.d);
    cfg.alpha = get_optional<double>(j, "alpha");
    cfg.beta = get_optional<double>(j, "beta");
    cfg.gamma = get_optional<double>(j, "gamma");
    cfg.lambda = get_optional<double>(j, "lambda");
    cfg.delta = j.value("delta", cfg.delta);
    cfg.mode = j.value("mode", cfg.mode);
    cfg.n = get_optional<long>(j, "n");
    cfg.n_list = j.value("n_list", cfg.n_list);
    cfg.trials = j.value("trials", cfg.trials);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.out = j.value("out", cfg.out);
    cfg.formats = j.value("formats", cfg.formats);
    cfg.suite = j.value("suite", cfg.suite);
    cfg.input = j.value("input", cfg.input);
    return cfg;
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed config JSON: ") + ex.what());
  }
}

double ensemble_lambda(const ExperimentConfig& cfg) {
  if (cfg.lambda) return *cfg.lambda;
  const EnsembleKind kind = ensemble_kind_from_string(cfg.kind);
  std::optional<double> v;
  switch (kind) {
    case EnsembleKind::ising_single_edge: v = cfg.alpha; break;
    case EnsembleKind::ising_clique: v = cfg.beta; break;
    case EnsembleKind::gaussian_single_edge: v = cfg.gamma; break;
    default: break;
  }
  if (!v) throw ValidationError("ensemble '" + cfg.kind + "' needs an edge weight (--lambda, or --alpha / --beta / --gamma)");
  return *v;
}

ChangeEnsemble build_ensemble(const ExperimentConfig& cfg) {
  const EnsembleKind kind = ensemble_kind_from_string(cfg.kind);
  const double lambda = ensemble_lambda(cfg);
  switch (kind) {
    case EnsembleKind::ising_single_edge: return ising_single_edge_ensemble(cfg.p, lambda);
    case EnsembleKind::ising_clique: return ising_clique_ensemble(cfg.p, cfg.d, lambda);
    case EnsembleKind::gaussian_single_edge: return gaussian_single_edge_ensemble(cfg.p, lambda);
    default: throw ValidationError("the CLI builds ising-single-edge, ising-clique and gaussian-single-edge ensembles");
  }
}

ThresholdParams threshold_params(const ExperimentConfig& cfg) {
  return {cfg.p, cfg.d, cfg.alpha.value_or(0.0), cfg.beta.value_or(0.0), cfg.gamma.value_or(0.0)};
}

void validate(const ExperimentConfig& cfg) {
  require(std::find(kCommands.begin(), kCommands.end(), cfg.command) != kCommands.end(),
          "unknown command '" + cfg.command + "'");
  for (const auto& f : cfg.formats)
    require(std::find(kFormats.begin(), kFormats.end(), f) != kFormats.end(), "unknown output format '" + f + "'");

  if (cfg.command == "bound") {
    const ThresholdKind kind = threshold_kind_from_string(cfg.kind);
    if (kind == ThresholdKind::ising_easy) require(cfg.alpha.has_value(), "ising-easy needs --alpha");
    if (kind == ThresholdKind::ising_clique) require(cfg.beta.has_value(), "ising-clique needs --beta");
    if (kind == ThresholdKind::gaussian) require(cfg.gamma.has_value(), "gaussian needs --gamma");
    // Evaluating the threshold runs every gate and costs nothing.
    (void)sample_threshold(kind, threshold_params(cfg), cfg.delta, reliability_mode_from_string(cfg.mode));
    if (cfg.n) require(*cfg.n >= 0, "--n must be nonnegative");
  } else if (cfg.command == "simulate" || cfg.command == "sweep") {
    require(cfg.trials >= 100, "--trials must be at least 100");
    if (cfg.command == "simulate") {
      require(cfg.n.has_value() && *cfg.n >= 0, "simulate needs --n >= 0");
    } else {
      require(!cfg.n_list.empty(), "sweep needs --n-list");
      for (long n : cfg.n_list) require(n >= 0, "--n-list entries must be nonnegative");
    }
    (void)build_ensemble(cfg);
  } else if (cfg.command == "verify") {
    require(!cfg.suite.empty(), "verify needs --suite");
  } else if (cfg.command == "plot") {
    require(!cfg.input.empty(), "plot needs --in");
    require(!cfg.out.empty(), "plot needs --out");
  }
}

}  // namespace mrfcd
