#include "mrfcd/cli.hpp"

#include <filesystem>

#include "mrfcd/error.hpp"
#include "mrfcd/io.hpp"
#include "mrfcd/plot.hpp"
#include "mrfcd/risk.hpp"
#include "mrfcd/verify.hpp"

namespace mrfcd {
namespace {

std::vector<std::string> formats_or(const ExperimentConfig& cfg, const std::string& fallback) {
  return cfg.formats.empty() ? std::vector<std::string>{fallback} : cfg.formats;
}

// With several formats the --out extension is replaced per format.
std::filesystem::path path_for(const ExperimentConfig& cfg, const std::string& format, std::size_t format_count) {
  std::filesystem::path path(cfg.out);
  if (format_count > 1) path.replace_extension(format);
  return path;
}

void emit(const ExperimentConfig& cfg, const std::vector<std::string>& formats,
          const std::function<std::string(const std::string&)>& render, std::ostream& out) {
  if (cfg.out.empty()) {
    out << render(formats.front());
    return;
  }
  for (const auto& f : formats) write_file_atomic(path_for(cfg, f, formats.size()), render(f));
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

int run_bound(const ExperimentConfig& cfg, std::ostream& out) {
  const BoundReport report = evaluate_bound(threshold_kind_from_string(cfg.kind), threshold_params(cfg), cfg.delta,
                                            reliability_mode_from_string(cfg.mode), cfg.n);
  emit(cfg, formats_or(cfg, "json"),
       [&](const std::string& f) {
         if (f == "csv") return bound_csv({report});
         if (f == "svg") return bound_plot_svg({report});
         return json_text(to_json(report));
       },
       out);
  return kExitOk;
}

int run_simulate(const ExperimentConfig& cfg, std::ostream& out) {
  const ChangeEnsemble e = build_ensemble(cfg);
  const RiskReport report = simulate_risk(e, *cfg.n, cfg.trials, cfg.seed, cfg.threads);
  emit(cfg, formats_or(cfg, "csv"),
       [&](const std::string& f) {
         if (f == "json") return json_text(to_json(report));
         if (f == "svg") return risk_plot_svg({report});
         return risk_reports_to_csv({report});
       },
       out);
  return kExitOk;
}

int run_sweep(const ExperimentConfig& cfg, std::ostream& out) {
  const ChangeEnsemble e = build_ensemble(cfg);
  const RiskSweep sweep = risk_vs_n_sweep(e, cfg.n_list, cfg.trials, cfg.seed, cfg.threads);
  const auto formats = formats_or(cfg, "csv");
  emit(cfg, formats,
       [&](const std::string& f) {
         if (f == "json") {
           Json j{{"raw", Json::array()}, {"smoothed", Json::array()}};
           for (const auto& r : sweep.raw) j["raw"].push_back(to_json(r));
           for (const auto& r : sweep.smoothed) j["smoothed"].push_back(to_json(r));
           return json_text(j);
         }
         if (f == "svg") return risk_plot_svg(sweep.raw);
         return risk_reports_to_csv(sweep.raw);
       },
       out);
  if (!cfg.out.empty() && std::find(formats.begin(), formats.end(), "csv") != formats.end()) {
    auto smoothed = path_for(cfg, "csv", formats.size());
    smoothed.replace_extension(".smoothed.csv");
    write_file_atomic(smoothed, risk_reports_to_csv(sweep.smoothed));
  }
  return kExitOk;
}

int run_verify_command(const ExperimentConfig& cfg, std::ostream& out) {
  bool all_passed = true;
  for (const auto& r : run_verify(cfg.suite)) {
    out << (r.passed() ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks, " << r.failures
        << " failures)";
    if (!r.passed() && !r.first_failure.empty()) out << ": " << r.first_failure;
    out << "\n";
    all_passed = all_passed && r.passed();
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

int run_plot(const ExperimentConfig& cfg) {
  const std::string text = read_file(cfg.input);
  const std::string ext = std::filesystem::path(cfg.input).extension().string();
  std::string svg;
  if (ext == ".json") {
    const Json j = Json::parse(text);
    std::vector<BoundReport> reports;
    if (j.is_array()) {
      for (const auto& item : j) reports.push_back(bound_report_from_json(item));
    } else {
      reports.push_back(bound_report_from_json(j));
    }
    svg = bound_plot_svg(reports);
  } else {
    svg = risk_plot_svg(risk_reports_from_csv(text));
  }
  write_file_atomic(cfg.out, svg);
  return kExitOk;
}

}  // namespace

std::string bound_csv(const std::vector<BoundReport>& reports) {
  std::string csv = "kind,p,d,alpha,beta,gamma,delta,mode,n,chi2,risk_lower_bound,n_threshold\n";
  for (const auto& r : reports) {
    csv += to_string(r.kind) + ',' + std::to_string(r.params.p) + ',' + std::to_string(r.params.d) + ',' +
           format_real(r.params.alpha) + ',' + format_real(r.params.beta) + ',' + format_real(r.params.gamma) + ',' +
           format_real(r.delta) + ',' + to_string(r.mode) + ',' + std::to_string(r.n) + ',' + format_real(r.chi2) +
           ',' + format_real(r.risk_lower_bound_floored()) + ',' + format_real(r.n_threshold) + '\n';
  }
  return csv;
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    validate(cfg);
    if (cfg.command == "bound") return run_bound(cfg, out);
    if (cfg.command == "simulate") return run_simulate(cfg, out);
    if (cfg.command == "sweep") return run_sweep(cfg, out);
    if (cfg.command == "verify") return run_verify_command(cfg, out);
    return run_plot(cfg);
  } catch (const ValidationError& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const Json::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& ex) {
    err << "runtime error: " << ex.what() << "\n";
    return kExitRuntime;
  }
}

}  // namespace mrfcd
