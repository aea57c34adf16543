#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hlmlp/dataset.hpp"
#include "hlmlp/metrics.hpp"
#include "hlmlp/model.hpp"
#include "hlmlp/optimizer.hpp"
#include "hlmlp/serialize.hpp"

namespace hlmlp {

// All acceptance-grade runs share this split seed unless told otherwise.
inline constexpr std::uint64_t kDefaultSplitSeed = 1;
inline constexpr double kDefaultTrainFraction = 0.7;
inline constexpr double kDefaultBoundLow = -10.0;
inline constexpr double kDefaultBoundHigh = 10.0;

// Best population sizes per algorithm, in kAllAlgorithms order.
inline constexpr std::array<int, 6> kReportedBestPopulations = {350, 400, 200, 500, 50, 300};

struct ExperimentConfig {
  std::filesystem::path data_path;
  Algorithm algorithm = Algorithm::Bbo;
  TrainConfig train;  // bounds sized to the topology by the caller
  std::uint64_t split_seed = kDefaultSplitSeed;
  double train_fraction = kDefaultTrainFraction;
  Topology topology;
};

struct ExperimentResult {
  TrainedModel model;
  MetricReport train_metrics;
  MetricReport test_metrics;
  TrainResult train_result;
  DataSplit split;
  std::uint64_t dataset_checksum = 0;
};

// Metrics in raw heating-load units: predictions are inverse-scaled before
// comparing against the stored targets.
MetricReport evaluate_model(const TrainedModel& model, const Dataset& dataset,
                            std::span<const std::size_t> indices, Phase phase);

// load -> split -> fit scaler on the training rows only -> train -> evaluate.
ExperimentResult run_experiment(const ExperimentConfig& config);
ExperimentResult run_experiment(const ExperimentConfig& config, const Dataset& dataset);

struct SweepPlan {
  std::vector<Algorithm> algorithms{kAllAlgorithms.begin(), kAllAlgorithms.end()};
  std::vector<int> population_sizes{25, 50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
  int iterations = 1000;
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  std::uint64_t split_seed = kDefaultSplitSeed;
  double train_fraction = kDefaultTrainFraction;
  double bound_low = kDefaultBoundLow;
  double bound_high = kDefaultBoundHigh;
  std::filesystem::path data_path;
  AlgorithmParams params;
  Topology topology;
};

Json to_json(const SweepPlan& plan);
SweepPlan plan_from_json(const Json& j);

struct SweepCellResult {
  Algorithm algorithm = Algorithm::Alo;
  int population_size = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  std::string error;
  double final_mse = 0.0;
  std::uint64_t evaluations = 0;
  double wall_time = 0.0;
  std::vector<double> curve;
  WeightVector best_vector;
  MetricReport train_metrics;
  MetricReport test_metrics;
};

struct SweepReport {
  SweepPlan plan;
  std::uint64_t dataset_checksum = 0;
  std::vector<SweepCellResult> cells;  // plan order: algorithm, size, seed
  // argmin over sizes of the median final training MSE, ties to the smaller size
  std::vector<std::pair<Algorithm, int>> best_population;
};

Json to_json(const SweepCellResult& cell);
SweepCellResult cell_from_json(const Json& j);
Json to_json(const SweepReport& report);

// Executes every plan cell, caching each under out_dir/cells/ so interrupted
// sweeps resume without recomputing; per-cell failures are recorded and the
// sweep continues. Cells run on `workers` threads; results merge in plan
// order.
SweepReport run_sweep(const SweepPlan& plan, const std::filesystem::path& out_dir,
                      int workers = 1);

struct TimingRow {
  Algorithm algorithm = Algorithm::Alo;
  int population_size = 0;
  double median_wall_time = 0.0;
  std::uint64_t median_evaluations = 0;
};

std::vector<TimingRow> time_algorithms(const SweepReport& report);
std::string timing_csv(std::span<const TimingRow> rows);

// score_models plus the Table-shaped CSV serialization.
RankTable rank_models(std::span<const ModelMetrics> models);

struct RunReport {
  std::string version;
  std::string data_path;
  std::uint64_t dataset_checksum = 0;
  DataSplit split;
  std::vector<TrainedModel> models;
  std::vector<ModelMetrics> metrics;  // same order as models
  std::optional<RankTable> ranks;
  std::vector<double> wall_times;  // per model, seconds
};

Json to_json(const RunReport& report);
RunReport run_report_from_json(const Json& j);

// Recomputes every stored metric from the serialized models and split;
// returns the largest absolute deviation from the stored values.
double replay_deviation(const RunReport& report, const Dataset& dataset);

}  // namespace hlmlp
