#include "mrfcd/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "mrfcd/error.hpp"
#include "mrfcd/logmath.hpp"

namespace mrfcd {
namespace {

// JSON has no infinities; they travel as the strings "inf" / "-inf".
Json real_to_json(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

double real_from_json(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (j.is_string()) return parse_real(j.get<std::string>());
  return j.get<double>();
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

Json params_to_json(const EnsembleParams& prm) {
  return {{"p", prm.p}, {"d", prm.d}, {"lambda", prm.lambda}, {"r", prm.r}};
}

EnsembleParams params_from_json(const Json& j) {
  return {j.at("p").get<int>(), j.value("d", 0), j.value("lambda", 0.0), j.value("r", 0)};
}

}  // namespace

Json to_json(const IsingModel& model) {
  Json edges = Json::array();
  for (const Edge& e : model.edges()) edges.push_back({e.i + 1, e.j + 1, e.weight});
  return {{"p", model.p()}, {"edges", std::move(edges)}};
}

Json to_json(const GaussianModel& model) {
  Json values = Json::array();
  for (int i = 0; i < model.p(); ++i)
    for (int j = 0; j < model.p(); ++j) values.push_back(model.precision()(i, j));
  return {{"p", model.p()}, {"precision", std::move(values)}};
}

IsingModel ising_model_from_json(const Json& j) {
  try {
    const int p = j.at("p").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      require(e.is_array() && e.size() == 3, "edge entries must be [i, j, w]");
      const int a = e[0].get<int>(), b = e[1].get<int>();
      require(a >= 1 && a <= p && b >= 1 && b <= p, "edge index out of range [1:p]");
      edges.push_back({a - 1, b - 1, e[2].get<double>()});
    }
    return {p, std::move(edges)};
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed Ising model JSON: ") + ex.what());
  }
}

GaussianModel gaussian_model_from_json(const Json& j) {
  try {
    const int p = j.at("p").get<int>();
    const auto& values = j.at("precision");
    require(p >= 1 && values.size() == static_cast<std::size_t>(p) * p, "precision must hold p*p entries");
    Eigen::MatrixXd a(p, p);
    for (int i = 0; i < p; ++i)
      for (int k = 0; k < p; ++k) a(i, k) = values[static_cast<std::size_t>(i * p + k)].get<double>();
    return GaussianModel(std::move(a));
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed Gaussian model JSON: ") + ex.what());
  }
}

Json to_json(const ChangeEnsemble& e) {
  Json j{{"kind", to_string(e.kind)}, {"params", params_to_json(e.params)}};
  std::visit(
      [&j](const auto& fam) {
        j["null_model"] = to_json(fam.null_model);
        Json alts = Json::array();
        for (const auto& q : fam.alternatives) alts.push_back(to_json(q));
        j["alternatives"] = std::move(alts);
      },
      e.family);
  if (!e.clipped_pairs.empty()) {
    Json cut = Json::array();
    for (const auto& pr : e.clipped_pairs) cut.push_back({pr.i + 1, pr.j + 1});
    j["clipped_pairs"] = std::move(cut);
  }
  return j;
}

ChangeEnsemble ensemble_from_json(const Json& j) {
  try {
    const EnsembleKind kind = ensemble_kind_from_string(j.at("kind").get<std::string>());
    const EnsembleParams prm = params_from_json(j.at("params"));
    ChangeEnsemble e;
    if (kind == EnsembleKind::gaussian_single_edge || kind == EnsembleKind::gaussian_custom) {
      std::vector<GaussianModel> alts;
      for (const auto& q : j.at("alternatives")) alts.push_back(gaussian_model_from_json(q));
      e = custom_ensemble(gaussian_model_from_json(j.at("null_model")), std::move(alts));
    } else {
      std::vector<IsingModel> alts;
      for (const auto& q : j.at("alternatives")) alts.push_back(ising_model_from_json(q));
      e = custom_ensemble(ising_model_from_json(j.at("null_model")), std::move(alts));
    }
    e.kind = kind;
    e.params = prm;
    if (j.contains("clipped_pairs"))
      for (const auto& pr : j.at("clipped_pairs")) e.clipped_pairs.push_back(node_pair(pr[0].get<int>() - 1, pr[1].get<int>() - 1));
    require(kind != EnsembleKind::ising_clique || e.clipped_pairs.size() == e.size(),
            "ising-clique ensembles need one clipped pair per alternative");
    return e;
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed ensemble JSON: ") + ex.what());
  }
}

Json to_json(const BoundReport& r) {
  return {{"kind", to_string(r.kind)},
          {"params",
           {{"p", r.params.p},
            {"d", r.params.d},
            {"alpha", r.params.alpha},
            {"beta", r.params.beta},
            {"gamma", r.params.gamma},
            {"lambda", r.lambda},
            {"delta", r.delta},
            {"n", r.n}}},
          {"mode", to_string(r.mode)},
          {"chi2", real_to_json(r.chi2)},
          {"risk_lower_bound", real_to_json(r.risk_lower_bound_floored())},
          {"risk_lower_bound_raw", real_to_json(r.risk_lower_bound)},
          {"n_threshold", real_to_json(r.n_threshold)}};
}

BoundReport bound_report_from_json(const Json& j) {
  try {
    BoundReport r;
    r.kind = threshold_kind_from_string(j.at("kind").get<std::string>());
    const auto& prm = j.at("params");
    r.params = {prm.at("p").get<int>(), prm.at("d").get<int>(), prm.at("alpha").get<double>(),
                prm.at("beta").get<double>(), prm.at("gamma").get<double>()};
    r.lambda = prm.at("lambda").get<double>();
    r.delta = prm.at("delta").get<double>();
    r.n = prm.at("n").get<long>();
    r.mode = reliability_mode_from_string(j.at("mode").get<std::string>());
    r.chi2 = real_from_json(j.at("chi2"));
    r.risk_lower_bound = real_from_json(j.at("risk_lower_bound_raw"));
    r.n_threshold = real_from_json(j.at("n_threshold"));
    return r;
  } catch (const Json::exception& ex) {
    throw ValidationError(std::string("malformed bound report JSON: ") + ex.what());
  }
}

Json to_json(const RiskReport& r, bool include_curve) {
  Json j{{"kind", to_string(r.kind)},
         {"params", params_to_json(r.params)},
         {"n", r.n},
         {"trials", r.trials},
         {"seed", r.seed},
         {"empirical_optimal_risk", r.risk},
         {"mc_std_error", r.std_error},
         {"theoretical_lower_bound", real_to_json(r.lower_bound)},
         {"threshold_at_optimum", real_to_json(r.log_tau_opt)},
         {"caveat", "threshold optimized on the evaluation draws; optimum biased low by O(sqrt(log(trials)/trials))"}};
  if (include_curve) {
    Json curve = Json::array();
    for (const auto& pt : r.curve) curve.push_back({real_to_json(pt.log_tau), pt.type1, pt.type2});
    j["curve"] = std::move(curve);
  }
  return j;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& text) {
  if (text == "inf" || text == "+inf") return kInf;
  if (text == "-inf") return kNegInf;
  if (text == "nan") return std::numeric_limits<double>::quiet_NaN();
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  require(!text.empty() && end == text.c_str() + text.size(), "cannot parse real '" + text + "'");
  return v;
}

std::string samples_to_csv(const SampleSet& xs) {
  std::string out;
  for (std::size_t t = 0; t < xs.n(); ++t) {
    for (std::size_t k = 0; k < xs.p(); ++k) {
      if (k) out += ',';
      out += xs.kind() == ValueKind::spin ? (xs.at(t, k) > 0 ? "1" : "-1") : format_real(xs.at(t, k));
    }
    out += '\n';
  }
  return out;
}

SampleSet samples_from_csv(const std::string& text, ValueKind kind) {
  std::vector<double> data;
  std::size_t n = 0, p = 0;
  for (const auto& line : lines_of(text)) {
    const auto fields = split(line, ',');
    if (n == 0) p = fields.size();
    require(fields.size() == p, "ragged sample CSV");
    for (const auto& f : fields) data.push_back(parse_real(f));
    ++n;
  }
  return {n, p, kind, std::move(data)};
}

std::string risk_csv_row(const RiskReport& r) {
  std::string row = to_string(r.kind);
  row += ',' + std::to_string(r.params.p) + ',' + std::to_string(r.params.d) + ',' + format_real(r.params.lambda);
  row += ',' + std::to_string(r.n) + ',' + std::to_string(r.trials) + ',' + std::to_string(r.seed);
  row += ',' + format_real(r.risk) + ',' + format_real(r.std_error) + ',' + format_real(r.lower_bound);
  row += ',' + format_real(r.log_tau_opt);
  return row;
}

std::string risk_reports_to_csv(const std::vector<RiskReport>& reports) {
  std::string out = std::string(kRiskCsvHeader) + '\n';
  for (const auto& r : reports) out += risk_csv_row(r) + '\n';
  return out;
}

std::vector<RiskReport> risk_reports_from_csv(const std::string& text) {
  const auto lines = lines_of(text);
  require(!lines.empty() && lines.front() == kRiskCsvHeader, "risk CSV must start with the header " +
                                                                 std::string(kRiskCsvHeader));
  std::vector<RiskReport> out;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto f = split(lines[k], ',');
    require(f.size() == 11, "risk CSV rows need 11 fields");
    RiskReport r;
    r.kind = ensemble_kind_from_string(f[0]);
    r.params.p = std::stoi(f[1]);
    r.params.d = std::stoi(f[2]);
    r.params.lambda = parse_real(f[3]);
    if (r.kind == EnsembleKind::ising_clique && r.params.d > 0) r.params.r = r.params.p / (r.params.d + 1);
    r.n = std::stol(f[4]);
    r.trials = std::stoull(f[5]);
    r.seed = std::stoull(f[6]);
    r.risk = parse_real(f[7]);
    r.std_error = parse_real(f[8]);
    r.lower_bound = parse_real(f[9]);
    r.log_tau_opt = parse_real(f[10]);
    out.push_back(std::move(r));
  }
  return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << contents;
    if (!out.flush()) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace mrfcd
