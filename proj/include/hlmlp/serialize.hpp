#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "hlmlp/dataset.hpp"
#include "hlmlp/lm.hpp"
#include "hlmlp/metrics.hpp"
#include "hlmlp/model.hpp"
#include "hlmlp/optimizer.hpp"

namespace hlmlp {

using Json = nlohmann::ordered_json;

Json to_json(const DataSplit& split);
DataSplit split_from_json(const Json& j);

Json to_json(const Scaler& scaler);
Scaler scaler_from_json(const Json& j);

Json to_json(const TrainedModel& model);
TrainedModel model_from_json(const Json& j);

Json to_json(const TrainResult& result);
TrainResult train_result_from_json(const Json& j);

Json to_json(const MetricReport& report);
MetricReport metric_report_from_json(const Json& j);

Json to_json(const RankTable& table);

// Knob echo for run reports.
Json to_json(const AlgorithmParams& params);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);
Json read_json(const std::filesystem::path& path);

// Two-column CSV (iteration, best objective) for convergence plots.
std::string curve_csv(std::span<const double> curve);

// Accuracy table, one row per model with both phases.
std::string metrics_csv(std::span<const ModelMetrics> models);

// Ranking table in the wide two-phase layout.
std::string rank_csv(const RankTable& table);

// Key-value file `section.key = value`, '#' comments; unknown keys rejected.
AlgorithmParams load_knobs(const std::filesystem::path& path, AlgorithmParams defaults = {});

}  // namespace hlmlp
