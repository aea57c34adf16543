#include "hlmlp/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <thread>

#include "hlmlp/errors.hpp"
#include "hlmlp/version.hpp"

namespace hlmlp {

MetricReport evaluate_model(const TrainedModel& model, const Dataset& dataset,
                            std::span<const std::size_t> indices, Phase phase) {
  std::vector<double> observed;
  std::vector<double> predicted;
  observed.reserve(indices.size());
  predicted.reserve(indices.size());
  for (std::size_t idx : indices) {
    observed.push_back(dataset.samples[idx].heating_load);
    predicted.push_back(predict(model, dataset.samples[idx]));
  }
  return evaluate_predictions(phase, observed, predicted);
}

ExperimentResult run_experiment(const ExperimentConfig& config) {
  return run_experiment(config, load_csv(config.data_path));
}

ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset) {
  ExperimentResult out;
  out.dataset_checksum = dataset.checksum;
  out.split = split(dataset, config.train_fraction, config.split_seed);
  const Scaler scaler = fit_scaler(dataset, out.split.train_indices);
  const ScaledTable table = make_scaled_table(dataset, out.split.train_indices, scaler);

  out.train_result = train_mlp(config.algorithm, config.train, table, config.topology);

  out.model.params = decode(out.train_result.best_vector, config.topology);
  out.model.scaler = scaler;
  out.model.provenance.algorithm = algorithm_name(config.algorithm);
  out.model.provenance.seed = config.train.seed;
  out.model.provenance.training_mse = out.train_result.best_objective;
  out.model.provenance.config = to_json(config.train.params).dump();

  out.train_metrics = evaluate_model(out.model, dataset, out.split.train_indices, Phase::Training);
  out.test_metrics = evaluate_model(out.model, dataset, out.split.test_indices, Phase::Testing);
  return out;
}

Json to_json(const SweepPlan& plan) {
  std::vector<std::string> names;
  names.reserve(plan.algorithms.size());
  for (Algorithm a : plan.algorithms) names.emplace_back(algorithm_name(a));
  return Json{{"algorithms", names},
              {"population_sizes", plan.population_sizes},
              {"iterations", plan.iterations},
              {"seeds", plan.seeds},
              {"split_seed", plan.split_seed},
              {"train_fraction", plan.train_fraction},
              {"bounds", {plan.bound_low, plan.bound_high}},
              {"data", plan.data_path.string()},
              {"topology", {{"inputs", plan.topology.inputs}, {"hidden", plan.topology.hidden}}},
              {"params", to_json(plan.params)}};
}

namespace {

AlgorithmParams params_from_json(const Json& j) {
  AlgorithmParams p;
  if (j.contains("alo")) {
    p.alo.w_exponents = j["alo"].value("w_exponents", p.alo.w_exponents);
    p.alo.w_thresholds = j["alo"].value("w_thresholds", p.alo.w_thresholds);
  }
  if (j.contains("bbo")) {
    const Json& b = j["bbo"];
    p.bbo.immigration_max = b.value("immigration_max", p.bbo.immigration_max);
    p.bbo.emigration_max = b.value("emigration_max", p.bbo.emigration_max);
    p.bbo.mutation_prob = b.value("mutation_prob", p.bbo.mutation_prob);
    p.bbo.mutation_sigma_frac = b.value("mutation_sigma_frac", p.bbo.mutation_sigma_frac);
    p.bbo.elites = b.value("elites", p.bbo.elites);
  }
  if (j.contains("da")) {
    const Json& d = j["da"];
    p.da.inertia_start = d.value("inertia_start", p.da.inertia_start);
    p.da.inertia_end = d.value("inertia_end", p.da.inertia_end);
    p.da.levy_exponent = d.value("levy_exponent", p.da.levy_exponent);
  }
  if (j.contains("es")) {
    const Json& e = j["es"];
    p.es.initial_sigma_frac = e.value("initial_sigma_frac", p.es.initial_sigma_frac);
    p.es.learning_rate = e.value("learning_rate", p.es.learning_rate);
  }
  if (j.contains("iwo")) {
    const Json& w = j["iwo"];
    p.iwo.seeds_min = w.value("seeds_min", p.iwo.seeds_min);
    p.iwo.seeds_max = w.value("seeds_max", p.iwo.seeds_max);
    p.iwo.modulation_exponent = w.value("modulation_exponent", p.iwo.modulation_exponent);
    p.iwo.sigma_init_frac = w.value("sigma_init_frac", p.iwo.sigma_init_frac);
    p.iwo.sigma_final_frac = w.value("sigma_final_frac", p.iwo.sigma_final_frac);
  }
  if (j.contains("lca")) {
    const Json& l = j["lca"];
    p.lca.approach = l.value("approach", p.lca.approach);
    p.lca.retreat = l.value("retreat", p.lca.retreat);
    p.lca.change_prob = l.value("change_prob", p.lca.change_prob);
  }
  return p;
}

}  // namespace

SweepPlan plan_from_json(const Json& j) {
  SweepPlan plan;
  if (j.contains("algorithms")) {
    plan.algorithms.clear();
    for (const auto& name : j["algorithms"]) {
      plan.algorithms.push_back(algorithm_from_name(name.get<std::string>()));
    }
  }
  plan.population_sizes = j.value("population_sizes", plan.population_sizes);
  plan.iterations = j.value("iterations", plan.iterations);
  plan.seeds = j.value("seeds", plan.seeds);
  plan.split_seed = j.value("split_seed", plan.split_seed);
  plan.train_fraction = j.value("train_fraction", plan.train_fraction);
  if (j.contains("bounds")) {
    plan.bound_low = j["bounds"].at(0).get<double>();
    plan.bound_high = j["bounds"].at(1).get<double>();
  }
  if (j.contains("data")) plan.data_path = j["data"].get<std::string>();
  if (j.contains("topology")) {
    plan.topology.inputs = j["topology"].value("inputs", plan.topology.inputs);
    plan.topology.hidden = j["topology"].value("hidden", plan.topology.hidden);
  }
  if (j.contains("params")) plan.params = params_from_json(j["params"]);
  if (plan.algorithms.empty()) throw DataError("sweep plan: algorithm list is empty");
  if (plan.population_sizes.empty()) throw DataError("sweep plan: population size list is empty");
  for (int p : plan.population_sizes) {
    if (p < 2) throw DataError("sweep plan: population sizes must be at least 2");
  }
  if (plan.seeds.empty()) throw DataError("sweep plan: seed list is empty");
  return plan;
}

Json to_json(const SweepCellResult& cell) {
  return Json{{"algorithm", algorithm_name(cell.algorithm)},
              {"population_size", cell.population_size},
              {"seed", cell.seed},
              {"ok", cell.ok},
              {"error", cell.error},
              {"final_mse", cell.final_mse},
              {"evaluations", cell.evaluations},
              {"wall_time", cell.wall_time},
              {"curve", cell.curve},
              {"best_vector", cell.best_vector},
              {"train_metrics", to_json(cell.train_metrics)},
              {"test_metrics", to_json(cell.test_metrics)}};
}

SweepCellResult cell_from_json(const Json& j) {
  SweepCellResult c;
  c.algorithm = algorithm_from_name(j.at("algorithm").get<std::string>());
  c.population_size = j.at("population_size").get<int>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.ok = j.at("ok").get<bool>();
  c.error = j.at("error").get<std::string>();
  c.final_mse = j.at("final_mse").get<double>();
  c.evaluations = j.at("evaluations").get<std::uint64_t>();
  c.wall_time = j.at("wall_time").get<double>();
  c.curve = j.at("curve").get<std::vector<double>>();
  c.best_vector = j.at("best_vector").get<WeightVector>();
  c.train_metrics = metric_report_from_json(j.at("train_metrics"));
  c.test_metrics = metric_report_from_json(j.at("test_metrics"));
  return c;
}

Json to_json(const SweepReport& report) {
  Json cells = Json::array();
  for (const auto& c : report.cells) cells.push_back(to_json(c));
  Json best = Json::object();
  for (const auto& [a, p] : report.best_population) best[algorithm_name(a)] = p;
  return Json{{"version", kVersion},
              {"plan", to_json(report.plan)},
              {"dataset_checksum", report.dataset_checksum},
              {"cells", cells},
              {"best_population", best}};
}

namespace {

std::string cell_file_name(const SweepCellResult& cell) {
  return std::string(algorithm_name(cell.algorithm)) + "-p" +
         std::to_string(cell.population_size) + "-s" + std::to_string(cell.seed) + ".json";
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

SweepReport run_sweep(const SweepPlan& plan, const std::filesystem::path& out_dir, int workers) {
  if (plan.algorithms.empty() || plan.population_sizes.empty() || plan.seeds.empty()) {
    throw UsageError("sweep plan has an empty algorithm, size or seed list");
  }
  const Dataset dataset = load_csv(plan.data_path);
  const DataSplit data_split = split(dataset, plan.train_fraction, plan.split_seed);
  const Scaler scaler = fit_scaler(dataset, data_split.train_indices);
  const ScaledTable table = make_scaled_table(dataset, data_split.train_indices, scaler);

  SweepReport report;
  report.plan = plan;
  report.dataset_checksum = dataset.checksum;
  for (Algorithm a : plan.algorithms) {
    for (int pop : plan.population_sizes) {
      for (std::uint64_t seed : plan.seeds) {
        SweepCellResult cell;
        cell.algorithm = a;
        cell.population_size = pop;
        cell.seed = seed;
        report.cells.push_back(std::move(cell));
      }
    }
  }

  const std::filesystem::path cells_dir = out_dir / "cells";
  std::filesystem::create_directories(cells_dir);

  auto run_cell = [&](SweepCellResult& cell) {
    const std::filesystem::path file = cells_dir / cell_file_name(cell);
    if (std::filesystem::exists(file)) {
      try {
        cell = cell_from_json(read_json(file));
        return;  // resumed, not recomputed
      } catch (const std::exception&) {
        // unreadable cache entry, recompute below
      }
    }
    try {
      TrainConfig config;
      config.population_size = cell.population_size;
      config.iterations = plan.iterations;
      config.bounds = Bounds::box(static_cast<std::size_t>(plan.topology.weight_count()),
                                  plan.bound_low, plan.bound_high);
      config.seed = cell.seed;
      config.params = plan.params;
      TrainResult r = train_mlp(cell.algorithm, config, table, plan.topology);

      TrainedModel model;
      model.params = decode(r.best_vector, plan.topology);
      model.scaler = scaler;
      cell.final_mse = r.best_objective;
      cell.evaluations = r.evaluations;
      cell.wall_time = r.wall_time;
      cell.curve = std::move(r.curve);
      cell.best_vector = std::move(r.best_vector);
      cell.train_metrics = evaluate_model(model, dataset, data_split.train_indices, Phase::Training);
      cell.test_metrics = evaluate_model(model, dataset, data_split.test_indices, Phase::Testing);
      cell.ok = true;
    } catch (const std::exception& e) {
      cell.ok = false;
      cell.error = e.what();
      return;  // failures stay in the report but are retried on rerun
    }
    write_json(file, to_json(cell));
  };

  const int thread_count = std::max(1, workers);
  if (thread_count == 1) {
    for (auto& cell : report.cells) run_cell(cell);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int w = 0; w < thread_count; ++w) {
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= report.cells.size()) break;
          run_cell(report.cells[i]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  for (Algorithm a : plan.algorithms) {
    int best_size = 0;
    double best_mse = std::numeric_limits<double>::infinity();
    for (int pop : plan.population_sizes) {
      std::vector<double> finals;
      for (const auto& cell : report.cells) {
        if (cell.algorithm == a && cell.population_size == pop && cell.ok) {
          finals.push_back(cell.final_mse);
        }
      }
      if (finals.empty()) continue;
      const double m = median(std::move(finals));
      if (m < best_mse || (m == best_mse && pop < best_size)) {
        best_mse = m;
        best_size = pop;
      }
    }
    report.best_population.emplace_back(a, best_size);
  }

  write_json(out_dir / "sweep_report.json", to_json(report));
  return report;
}

std::vector<TimingRow> time_algorithms(const SweepReport& report) {
  std::vector<TimingRow> rows;
  for (Algorithm a : report.plan.algorithms) {
    for (int pop : report.plan.population_sizes) {
      std::vector<double> times;
      std::vector<double> evals;
      for (const auto& cell : report.cells) {
        if (cell.algorithm == a && cell.population_size == pop && cell.ok) {
          times.push_back(cell.wall_time);
          evals.push_back(static_cast<double>(cell.evaluations));
        }
      }
      if (times.empty()) continue;
      TimingRow row;
      row.algorithm = a;
      row.population_size = pop;
      row.median_wall_time = median(std::move(times));
      row.median_evaluations = static_cast<std::uint64_t>(median(std::move(evals)));
      rows.push_back(row);
    }
  }
  return rows;
}

std::string timing_csv(std::span<const TimingRow> rows) {
  std::string out = "algorithm,population_size,median_wall_time_s,median_evaluations\n";
  for (const auto& r : rows) {
    char line[128];
    std::snprintf(line, sizeof(line), "%s,%d,%.6f,%llu\n", algorithm_name(r.algorithm),
                  r.population_size, r.median_wall_time,
                  static_cast<unsigned long long>(r.median_evaluations));
    out += line;
  }
  return out;
}

RankTable rank_models(std::span<const ModelMetrics> models) { return score_models(models); }

Json to_json(const RunReport& report) {
  Json models = Json::array();
  for (const auto& m : report.models) models.push_back(to_json(m));
  Json metrics = Json::array();
  for (const auto& m : report.metrics) {
    metrics.push_back(Json{{"model", m.name},
                           {"training", to_json(m.training)},
                           {"testing", to_json(m.testing)}});
  }
  Json j{{"version", report.version},
         {"data", report.data_path},
         {"dataset_checksum", report.dataset_checksum},
         {"split", to_json(report.split)},
         {"models", models},
         {"metrics", metrics},
         {"wall_times", report.wall_times}};
  if (report.ranks.has_value()) j["ranks"] = to_json(*report.ranks);
  return j;
}

RunReport run_report_from_json(const Json& j) {
  RunReport r;
  r.version = j.at("version").get<std::string>();
  r.data_path = j.at("data").get<std::string>();
  r.dataset_checksum = j.at("dataset_checksum").get<std::uint64_t>();
  r.split = split_from_json(j.at("split"));
  for (const auto& m : j.at("models")) r.models.push_back(model_from_json(m));
  for (const auto& m : j.at("metrics")) {
    ModelMetrics mm;
    mm.name = m.at("model").get<std::string>();
    mm.training = metric_report_from_json(m.at("training"));
    mm.testing = metric_report_from_json(m.at("testing"));
    r.metrics.push_back(std::move(mm));
  }
  r.wall_times = j.value("wall_times", std::vector<double>{});
  return r;
}

double replay_deviation(const RunReport& report, const Dataset& dataset) {
  if (dataset.checksum != report.dataset_checksum) {
    throw DataError("replay: dataset checksum does not match the report");
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < report.models.size(); ++i) {
    const MetricReport train =
        evaluate_model(report.models[i], dataset, report.split.train_indices, Phase::Training);
    const MetricReport test =
        evaluate_model(report.models[i], dataset, report.split.test_indices, Phase::Testing);
    const ModelMetrics& stored = report.metrics[i];
    for (double d : {train.rmse - stored.training.rmse, train.mae - stored.training.mae,
                     train.r2 - stored.training.r2, train.mape - stored.training.mape,
                     test.rmse - stored.testing.rmse, test.mae - stored.testing.mae,
                     test.r2 - stored.testing.r2, test.mape - stored.testing.mape}) {
      worst = std::max(worst, std::abs(d));
    }
  }
  return worst;
}

}  // namespace hlmlp
