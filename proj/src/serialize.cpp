#include "hlmlp/serialize.hpp"

#include <fstream>
#include <sstream>

#include "hlmlp/errors.hpp"
#include "hlmlp/version.hpp"

namespace hlmlp {

Json to_json(const DataSplit& split) {
  return Json{{"seed", split.seed},
              {"fraction", split.fraction},
              {"train_indices", split.train_indices},
              {"test_indices", split.test_indices}};
}

DataSplit split_from_json(const Json& j) {
  DataSplit s;
  s.seed = j.at("seed").get<std::uint64_t>();
  s.fraction = j.at("fraction").get<double>();
  s.train_indices = j.at("train_indices").get<std::vector<std::size_t>>();
  s.test_indices = j.at("test_indices").get<std::vector<std::size_t>>();
  return s;
}

Json to_json(const Scaler& scaler) {
  return Json{{"feature_min", scaler.feature_min()},
              {"feature_max", scaler.feature_max()},
              {"target_min", scaler.target_min()},
              {"target_max", scaler.target_max()}};
}

Scaler scaler_from_json(const Json& j) {
  return Scaler(j.at("feature_min").get<std::array<double, 8>>(),
                j.at("feature_max").get<std::array<double, 8>>(),
                j.at("target_min").get<double>(), j.at("target_max").get<double>());
}

Json to_json(const TrainedModel& model) {
  Json j;
  j["format"] = "hlmlp-model";
  j["version"] = kVersion;
  j["topology"] = {{"inputs", model.params.topology.inputs},
                   {"hidden", model.params.topology.hidden}};
  j["weights"] = encode(model.params);
  j["scaler"] = to_json(model.scaler);
  j["provenance"] = {{"algorithm", model.provenance.algorithm},
                     {"seed", model.provenance.seed},
                     {"training_mse", model.provenance.training_mse},
                     {"config", model.provenance.config}};
  return j;
}

TrainedModel model_from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != "hlmlp-model") {
    throw DataError("not a model file (missing format tag)");
  }
  TrainedModel m;
  Topology topo{j.at("topology").at("inputs").get<int>(),
                j.at("topology").at("hidden").get<int>()};
  m.params = decode(j.at("weights").get<WeightVector>(), topo);
  m.scaler = scaler_from_json(j.at("scaler"));
  const Json& p = j.at("provenance");
  m.provenance.algorithm = p.at("algorithm").get<std::string>();
  m.provenance.seed = p.at("seed").get<std::uint64_t>();
  m.provenance.training_mse = p.at("training_mse").get<double>();
  m.provenance.config = p.value("config", "");
  return m;
}

Json to_json(const TrainResult& result) {
  return Json{{"best_vector", result.best_vector},
              {"best_objective", result.best_objective},
              {"curve", result.curve},
              {"evaluations", result.evaluations},
              {"wall_time", result.wall_time}};
}

TrainResult train_result_from_json(const Json& j) {
  TrainResult r;
  r.best_vector = j.at("best_vector").get<WeightVector>();
  r.best_objective = j.at("best_objective").get<double>();
  r.curve = j.at("curve").get<std::vector<double>>();
  r.evaluations = j.at("evaluations").get<std::uint64_t>();
  r.wall_time = j.at("wall_time").get<double>();
  return r;
}

Json to_json(const MetricReport& report) {
  return Json{{"phase", phase_name(report.phase)}, {"rmse", report.rmse}, {"mae", report.mae},
              {"r2", report.r2},                   {"mape", report.mape}, {"n", report.n}};
}

MetricReport metric_report_from_json(const Json& j) {
  MetricReport r;
  r.phase = j.at("phase").get<std::string>() == "training" ? Phase::Training : Phase::Testing;
  r.rmse = j.at("rmse").get<double>();
  r.mae = j.at("mae").get<double>();
  r.r2 = j.at("r2").get<double>();
  r.mape = j.at("mape").get<double>();
  r.n = j.at("n").get<std::size_t>();
  return r;
}

namespace {

Json rank_rows_json(const std::vector<RankRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"model", r.name},
                   {"rmse_score", r.rmse_score},
                   {"mae_score", r.mae_score},
                   {"r2_score", r.r2_score},
                   {"overall_score", r.overall_score},
                   {"rank", r.rank}});
  }
  return arr;
}

}  // namespace

Json to_json(const RankTable& table) {
  return Json{{"training", rank_rows_json(table.training)},
              {"testing", rank_rows_json(table.testing)}};
}

Json to_json(const AlgorithmParams& p) {
  return Json{
      {"alo",
       {{"w_exponents", p.alo.w_exponents}, {"w_thresholds", p.alo.w_thresholds}}},
      {"bbo",
       {{"immigration_max", p.bbo.immigration_max},
        {"emigration_max", p.bbo.emigration_max},
        {"mutation_prob", p.bbo.mutation_prob},
        {"mutation_sigma_frac", p.bbo.mutation_sigma_frac},
        {"elites", p.bbo.elites}}},
      {"da",
       {{"inertia_start", p.da.inertia_start},
        {"inertia_end", p.da.inertia_end},
        {"levy_exponent", p.da.levy_exponent}}},
      {"es",
       {{"initial_sigma_frac", p.es.initial_sigma_frac},
        {"learning_rate", p.es.learning_rate}}},
      {"iwo",
       {{"seeds_min", p.iwo.seeds_min},
        {"seeds_max", p.iwo.seeds_max},
        {"modulation_exponent", p.iwo.modulation_exponent},
        {"sigma_init_frac", p.iwo.sigma_init_frac},
        {"sigma_final_frac", p.iwo.sigma_final_frac}}},
      {"lca",
       {{"approach", p.lca.approach},
        {"retreat", p.lca.retreat},
        {"change_prob", p.lca.change_prob}}}};
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw DataError("cannot write file: " + path.string());
  out << text;
  if (!out) throw DataError("write failed: " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open file: " + path.string());
  std::ostringstream oss;
  oss << in.rdbuf();
  return oss.str();
}

void write_json(const std::filesystem::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

Json read_json(const std::filesystem::path& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError("bad JSON in " + path.string() + ": " + e.what());
  }
}

std::string curve_csv(std::span<const double> curve) {
  std::ostringstream oss;
  oss << "iteration,best_mse\n";
  oss.precision(17);
  for (std::size_t i = 0; i < curve.size(); ++i) oss << i << ',' << curve[i] << '\n';
  return oss.str();
}

namespace {

std::string fixed4(double v) {
  std::ostringstream oss;
  oss.setf(std::ios::fixed);
  oss.precision(4);
  oss << v;
  return oss.str();
}

}  // namespace

std::string metrics_csv(std::span<const ModelMetrics> models) {
  std::ostringstream oss;
  oss << "model,train_rmse,train_mae,train_r2,train_mape,test_rmse,test_mae,test_r2,test_mape\n";
  for (const auto& m : models) {
    oss << m.name << ',' << fixed4(m.training.rmse) << ',' << fixed4(m.training.mae) << ','
        << fixed4(m.training.r2) << ',' << fixed4(m.training.mape) << ',' << fixed4(m.testing.rmse)
        << ',' << fixed4(m.testing.mae) << ',' << fixed4(m.testing.r2) << ','
        << fixed4(m.testing.mape) << '\n';
  }
  return oss.str();
}

std::string rank_csv(const RankTable& table) {
  std::ostringstream oss;
  oss << "model,train_rmse_score,train_mae_score,train_r2_score,train_overall_score,train_rank,"
         "test_rmse_score,test_mae_score,test_r2_score,test_overall_score,test_rank\n";
  for (std::size_t i = 0; i < table.training.size(); ++i) {
    const RankRow& tr = table.training[i];
    const RankRow& te = table.testing[i];
    oss << tr.name << ',' << tr.rmse_score << ',' << tr.mae_score << ',' << tr.r2_score << ','
        << tr.overall_score << ',' << tr.rank << ',' << te.rmse_score << ',' << te.mae_score << ','
        << te.r2_score << ',' << te.overall_score << ',' << te.rank << '\n';
  }
  return oss.str();
}

AlgorithmParams load_knobs(const std::filesystem::path& path, AlgorithmParams defaults) {
  AlgorithmParams p = defaults;
  std::istringstream in(read_text(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (eq == std::string::npos) {
      throw DataError("knob file line " + std::to_string(line_no) + ": expected key = value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    double v = 0.0;
    try {
      v = std::stod(value);
    } catch (...) {
      throw DataError("knob file line " + std::to_string(line_no) + ": bad value '" + value + "'");
    }
    if (key == "alo.w_exponents" || key == "alo.w_thresholds") {
      std::array<double, 5> arr{};
      std::istringstream list(value);
      std::string item;
      std::size_t k = 0;
      while (std::getline(list, item, ';') && k < arr.size()) arr[k++] = std::stod(item);
      if (k != arr.size()) {
        throw DataError("knob file line " + std::to_string(line_no) + ": " + key +
                        " needs 5 values separated by ';'");
      }
      (key == "alo.w_exponents" ? p.alo.w_exponents : p.alo.w_thresholds) = arr;
      continue;
    }
    if (key == "bbo.immigration_max") p.bbo.immigration_max = v;
    else if (key == "bbo.emigration_max") p.bbo.emigration_max = v;
    else if (key == "bbo.mutation_prob") p.bbo.mutation_prob = v;
    else if (key == "bbo.mutation_sigma_frac") p.bbo.mutation_sigma_frac = v;
    else if (key == "bbo.elites") p.bbo.elites = static_cast<int>(v);
    else if (key == "da.inertia_start") p.da.inertia_start = v;
    else if (key == "da.inertia_end") p.da.inertia_end = v;
    else if (key == "da.levy_exponent") p.da.levy_exponent = v;
    else if (key == "es.initial_sigma_frac") p.es.initial_sigma_frac = v;
    else if (key == "es.learning_rate") p.es.learning_rate = v;
    else if (key == "iwo.seeds_min") p.iwo.seeds_min = static_cast<int>(v);
    else if (key == "iwo.seeds_max") p.iwo.seeds_max = static_cast<int>(v);
    else if (key == "iwo.modulation_exponent") p.iwo.modulation_exponent = v;
    else if (key == "iwo.sigma_init_frac") p.iwo.sigma_init_frac = v;
    else if (key == "iwo.sigma_final_frac") p.iwo.sigma_final_frac = v;
    else if (key == "lca.approach") p.lca.approach = v;
    else if (key == "lca.retreat") p.lca.retreat = v;
    else if (key == "lca.change_prob") p.lca.change_prob = v;
    else throw DataError("knob file line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  return p;
}

}  // namespace hlmlp
