// Command-line front end: train single models, run population sweeps,
// evaluate/rank stored models and predict heating loads.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hlmlp/errors.hpp"
#include "hlmlp/harness.hpp"
#include "hlmlp/lm.hpp"
#include "hlmlp/version.hpp"

namespace fs = std::filesystem;
using namespace hlmlp;

namespace {

struct CommonOpts {
  std::string data = "data/enb2012.csv";
  std::uint64_t split_seed = kDefaultSplitSeed;
  double fraction = kDefaultTrainFraction;
  std::string format = "json";
};

void add_data_flags(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--data", opts.data, "dataset CSV (X1..X8,Y1[,Y2])")->capture_default_str();
  cmd->add_option("--split-seed", opts.split_seed, "train/test split seed")->capture_default_str();
  cmd->add_option("--fraction", opts.fraction, "training fraction")->capture_default_str();
}

Sample sample_from_features(const std::vector<double>& f) {
  Sample s;
  s.relative_compactness = f[0];
  s.surface_area = f[1];
  s.wall_area = f[2];
  s.roof_area = f[3];
  s.overall_height = f[4];
  s.orientation = static_cast<int>(f[5]);
  s.glazing_area = f[6];
  s.glazing_area_distribution = static_cast<int>(f[7]);
  if (f[5] != std::round(f[5]) || s.orientation < 2 || s.orientation > 5) {
    throw DataError("orientation must be an integer in [2, 5]");
  }
  if (f[7] != std::round(f[7]) || s.glazing_area_distribution < 0 ||
      s.glazing_area_distribution > 5) {
    throw DataError("glazing area distribution must be an integer in [0, 5]");
  }
  if (s.glazing_area < 0.0 || s.glazing_area > 0.4) {
    throw DataError("glazing area must be in [0, 0.4]");
  }
  for (int k = 0; k < 5; ++k) {
    if (!(f[static_cast<std::size_t>(k)] > 0.0)) {
      throw DataError(std::string(kFeatureNames[static_cast<std::size_t>(k)]) + " must be > 0");
    }
  }
  return s;
}

int cmd_train(const CommonOpts& opts, const std::string& algo_name, int pop, int iters,
              const std::vector<std::uint64_t>& seeds, const std::vector<double>& bounds,
              const std::string& knobs_file, const std::string& out_dir) {
  const Algorithm algorithm = algorithm_from_name(algo_name);
  const Topology topology;
  AlgorithmParams params;
  if (!knobs_file.empty()) params = load_knobs(knobs_file);

  const Dataset dataset = load_csv(opts.data);
  RunReport report;
  report.version = kVersion;
  report.data_path = opts.data;
  report.dataset_checksum = dataset.checksum;

  for (std::uint64_t seed : seeds) {
    ExperimentConfig config;
    config.data_path = opts.data;
    config.algorithm = algorithm;
    config.split_seed = opts.split_seed;
    config.train_fraction = opts.fraction;
    config.topology = topology;
    config.train.population_size = pop;
    config.train.iterations = iters;
    config.train.seed = seed;
    config.train.bounds =
        Bounds::box(static_cast<std::size_t>(topology.weight_count()), bounds[0], bounds[1]);
    config.train.params = params;

    const ExperimentResult result = run_experiment(config, dataset);
    report.split = result.split;
    ModelMetrics mm;
    mm.name = model_label(algorithm) + "/s" + std::to_string(seed);
    mm.training = result.train_metrics;
    mm.testing = result.test_metrics;
    report.metrics.push_back(mm);
    report.models.push_back(result.model);
    report.wall_times.push_back(result.train_result.wall_time);

    const std::string stem =
        std::string(algorithm_name(algorithm)) + "-s" + std::to_string(seed);
    write_json(fs::path(out_dir) / (stem + "-model.json"), to_json(result.model));
    write_json(fs::path(out_dir) / (stem + "-result.json"), to_json(result.train_result));
    write_text(fs::path(out_dir) / (stem + "-curve.csv"), curve_csv(result.train_result.curve));
    std::printf("%s seed=%llu train_mse=%.6f test_rmse=%.4f test_r2=%.4f (%.1fs)\n",
                model_label(algorithm).c_str(), static_cast<unsigned long long>(seed),
                result.train_result.best_objective, result.test_metrics.rmse,
                result.test_metrics.r2, result.train_result.wall_time);
  }

  write_json(fs::path(out_dir) / "report.json", to_json(report));
  write_json(fs::path(out_dir) / "split.json", to_json(report.split));
  write_text(fs::path(out_dir) / "metrics.csv", metrics_csv(report.metrics));
  return 0;
}

int cmd_train_lm(const CommonOpts& opts, int max_epochs, std::uint64_t seed,
                 const std::string& out_dir) {
  const Dataset dataset = load_csv(opts.data);
  const DataSplit data_split = split(dataset, opts.fraction, opts.split_seed);
  const Scaler scaler = fit_scaler(dataset, data_split.train_indices);
  const ScaledTable table = make_scaled_table(dataset, data_split.train_indices, scaler);
  const Topology topology;

  Rng rng(seed);
  WeightVector init(static_cast<std::size_t>(topology.weight_count()));
  for (auto& w : init) w = rng.uniform(-0.5, 0.5);
  LmConfig config;
  config.max_epochs = max_epochs;
  const LmTrainResult lm = lm_train(init, config, table, topology);

  TrainedModel model;
  model.params = decode(lm.result.best_vector, topology);
  model.scaler = scaler;
  model.provenance.algorithm = "lm";
  model.provenance.seed = seed;
  model.provenance.training_mse =
      lm.result.best_objective / static_cast<double>(table.rows);

  const MetricReport train_m =
      evaluate_model(model, dataset, data_split.train_indices, Phase::Training);
  const MetricReport test_m =
      evaluate_model(model, dataset, data_split.test_indices, Phase::Testing);

  write_json(fs::path(out_dir) / "lm-model.json", to_json(model));
  write_json(fs::path(out_dir) / "lm-result.json", to_json(lm.result));
  write_text(fs::path(out_dir) / "lm-curve.csv", curve_csv(lm.result.curve));
  std::printf("LM %s epochs=%zu train_rmse=%.4f train_r2=%.4f test_rmse=%.4f test_r2=%.4f\n",
              lm_status_name(lm.status), lm.result.curve.size(), train_m.rmse, train_m.r2,
              test_m.rmse, test_m.r2);
  return 0;
}

int cmd_sweep(const std::string& plan_file, const std::string& out_dir, int workers, bool timing) {
  const SweepPlan plan = plan_from_json(read_json(plan_file));
  const SweepReport report = run_sweep(plan, out_dir, workers);
  std::size_t failed = 0;
  for (const auto& c : report.cells) failed += c.ok ? 0 : 1;
  std::printf("sweep: %zu cells, %zu failed\n", report.cells.size(), failed);
  for (const auto& [a, p] : report.best_population) {
    std::printf("best population for %s: %d\n", algorithm_name(a), p);
  }
  if (timing) {
    const auto rows = time_algorithms(report);
    write_text(fs::path(out_dir) / "timing.csv", timing_csv(rows));
    std::printf("wrote %s\n", (fs::path(out_dir) / "timing.csv").string().c_str());
  }
  return failed == 0 ? 0 : 3;
}

int cmd_evaluate(const CommonOpts& opts, const std::string& model_file,
                 const std::string& split_file, const std::string& out_file) {
  const TrainedModel model = model_from_json(read_json(model_file));
  const Dataset dataset = load_csv(opts.data);
  DataSplit data_split;
  if (!split_file.empty()) {
    data_split = split_from_json(read_json(split_file));
  } else {
    data_split = split(dataset, opts.fraction, opts.split_seed);
  }
  ModelMetrics mm;
  mm.name = model.provenance.algorithm;
  mm.training = evaluate_model(model, dataset, data_split.train_indices, Phase::Training);
  mm.testing = evaluate_model(model, dataset, data_split.test_indices, Phase::Testing);

  std::string text;
  if (opts.format == "csv") {
    text = metrics_csv(std::span<const ModelMetrics>(&mm, 1));
  } else {
    text = Json{{"model", mm.name},
                {"training", to_json(mm.training)},
                {"testing", to_json(mm.testing)}}
               .dump(2) +
           "\n";
  }
  if (out_file.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text(out_file, text);
  }
  return 0;
}

int cmd_rank(const std::string& reports_file, const std::string& out_file,
             const std::string& format) {
  const Json j = read_json(reports_file);
  std::vector<ModelMetrics> models;
  for (const auto& m : j) {
    ModelMetrics mm;
    mm.name = m.at("model").get<std::string>();
    mm.training = metric_report_from_json(m.at("training"));
    mm.testing = metric_report_from_json(m.at("testing"));
    models.push_back(std::move(mm));
  }
  const RankTable table = rank_models(models);
  const std::string text = format == "json" ? to_json(table).dump(2) + "\n" : rank_csv(table);
  if (out_file.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    write_text(out_file, text);
  }
  return 0;
}

int cmd_predict(const std::string& model_file, const std::vector<double>& features) {
  const TrainedModel model = model_from_json(read_json(model_file));
  const Sample sample = sample_from_features(features);
  std::printf("%.4f\n", predict(model, sample));
  return 0;
}

int cmd_reference(const CommonOpts& opts, bool fit_on_train, const std::string& out_file) {
  const Dataset dataset = load_csv(opts.data);
  Scaler scaler;
  if (fit_on_train) {
    const DataSplit data_split = split(dataset, opts.fraction, opts.split_seed);
    scaler = fit_scaler(dataset, data_split.train_indices);
  } else {
    scaler = fit_scaler(dataset);
  }
  const TrainedModel model = reference_bbo_predictor(scaler);
  write_json(out_file, to_json(model));
  std::printf("wrote %s\n", out_file.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heating-load MLP trainer: six population-based optimizers plus an LM baseline"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  CommonOpts opts;

  auto* train = app.add_subcommand("train", "train one model per seed and write reports");
  std::string algo = "bbo";
  int pop = 50;
  int iters = 1000;
  std::vector<std::uint64_t> seeds = {1};
  std::vector<double> bounds = {kDefaultBoundLow, kDefaultBoundHigh};
  std::string knobs;
  std::string out_dir = "runs";
  add_data_flags(train, opts);
  train->add_option("--algo", algo, "alo|bbo|da|es|iwo|lca|lm")->capture_default_str();
  train->add_option("--pop", pop, "population size")->capture_default_str();
  train->add_option("--iters", iters, "iterations (lm: max epochs)")->capture_default_str();
  train->add_option("--seed", seeds, "training seed, repeatable")->capture_default_str();
  train->add_option("--bounds", bounds, "weight box low high")->expected(2);
  train->add_option("--knobs", knobs, "key-value algorithm parameter file");
  train->add_option("--out", out_dir, "output directory")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "run a population-size sweep from a plan file");
  std::string plan_file;
  std::string sweep_out = "sweep";
  int workers = 1;
  sweep->add_option("--plan", plan_file, "sweep plan JSON")->required();
  sweep->add_option("--out", sweep_out, "output directory (cells cached here)")
      ->capture_default_str();
  sweep->add_option("--workers", workers, "parallel cells")->capture_default_str();

  auto* time_cmd = app.add_subcommand("time", "run a plan and write the timing table");
  std::string time_plan;
  std::string time_out = "sweep";
  int time_workers = 1;
  time_cmd->add_option("--plan", time_plan, "sweep plan JSON")->required();
  time_cmd->add_option("--out", time_out, "output directory")->capture_default_str();
  time_cmd->add_option("--workers", time_workers, "parallel cells")->capture_default_str();

  auto* evaluate = app.add_subcommand("evaluate", "recompute metrics for a stored model");
  std::string model_file;
  std::string split_file;
  std::string eval_out;
  add_data_flags(evaluate, opts);
  evaluate->add_option("--model", model_file, "model JSON")->required();
  evaluate->add_option("--split", split_file, "split JSON (default: regenerate from seed)");
  evaluate->add_option("--out", eval_out, "write instead of printing");
  evaluate->add_option("--format", opts.format, "json|csv")->capture_default_str();

  auto* rank = app.add_subcommand("rank", "score models into the ranking table");
  std::string reports_file;
  std::string rank_out;
  std::string rank_format = "csv";
  rank->add_option("--reports", reports_file, "JSON array of per-model metrics")->required();
  rank->add_option("--out", rank_out, "write instead of printing");
  rank->add_option("--format", rank_format, "csv|json")->capture_default_str();

  auto* predict_cmd = app.add_subcommand("predict", "predict heating load for one building");
  std::string predict_model;
  std::vector<double> features;
  predict_cmd->add_option("--model", predict_model, "model JSON")->required();
  predict_cmd->add_option("features", features, "RC SA WA RA OH orientation GA GAD")
      ->expected(8);

  auto* reference = app.add_subcommand("reference", "emit the published best-model file");
  bool fit_on_train = false;
  std::string ref_out = "reference-model.json";
  add_data_flags(reference, opts);
  reference->add_flag("--fit-on-train", fit_on_train, "fit the scaler on the training split only");
  reference->add_option("--out", ref_out, "output model JSON")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (train->parsed()) {
      if (algo == "lm") return cmd_train_lm(opts, iters, seeds.at(0), out_dir);
      return cmd_train(opts, algo, pop, iters, seeds, bounds, knobs, out_dir);
    }
    if (sweep->parsed()) return cmd_sweep(plan_file, sweep_out, workers, false);
    if (time_cmd->parsed()) return cmd_sweep(time_plan, time_out, time_workers, true);
    if (evaluate->parsed()) return cmd_evaluate(opts, model_file, split_file, eval_out);
    if (rank->parsed()) return cmd_rank(reports_file, rank_out, rank_format);
    if (predict_cmd->parsed()) return cmd_predict(predict_model, features);
    if (reference->parsed()) return cmd_reference(opts, fit_on_train, ref_out);
    return 1;
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "usage error: %s\n", e.what());
    return 1;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "run failed: %s\n", e.what());
    return 3;
  }
}
