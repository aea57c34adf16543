#include "hlmlp/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hlmlp/errors.hpp"

namespace hlmlp {

namespace {

void require_pair(std::span<const double> observed, std::span<const double> predicted) {
  if (observed.size() != predicted.size()) {
    throw RunError("metric inputs differ in length: " + std::to_string(observed.size()) + " vs " +
                   std::to_string(predicted.size()));
  }
  if (observed.empty()) throw RunError("metric inputs are empty");
}

// Scores values[i] against each other: best gets M, ties share, next skipped.
std::vector<int> criterion_scores(const std::vector<double>& values, bool lower_is_better) {
  const int m = static_cast<int>(values.size());
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lower_is_better ? values[a] < values[b] : values[a] > values[b];
  });
  std::vector<int> scores(values.size(), 0);
  std::size_t pos = 0;
  while (pos < order.size()) {
    std::size_t end = pos;
    while (end + 1 < order.size() && values[order[end + 1]] == values[order[pos]]) ++end;
    const int score = m - static_cast<int>(pos);
    for (std::size_t k = pos; k <= end; ++k) scores[order[k]] = score;
    pos = end + 1;
  }
  return scores;
}

std::vector<int> competition_ranks(const std::vector<int>& overall) {
  std::vector<std::size_t> order(overall.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return overall[a] > overall[b]; });
  std::vector<int> ranks(overall.size(), 0);
  std::size_t pos = 0;
  while (pos < order.size()) {
    std::size_t end = pos;
    while (end + 1 < order.size() && overall[order[end + 1]] == overall[order[pos]]) ++end;
    const int rank = static_cast<int>(pos) + 1;
    for (std::size_t k = pos; k <= end; ++k) ranks[order[k]] = rank;
    pos = end + 1;
  }
  return ranks;
}

std::vector<RankRow> score_phase(std::span<const ModelMetrics> models, Phase phase) {
  std::vector<double> rmse_v, mae_v, r2_v;
  for (const auto& m : models) {
    const MetricReport& r = (phase == Phase::Training) ? m.training : m.testing;
    rmse_v.push_back(r.rmse);
    mae_v.push_back(r.mae);
    r2_v.push_back(r.r2);
  }
  const auto rmse_s = criterion_scores(rmse_v, true);
  const auto mae_s = criterion_scores(mae_v, true);
  const auto r2_s = criterion_scores(r2_v, false);

  std::vector<int> overall(models.size());
  std::vector<RankRow> rows(models.size());
  for (std::size_t i = 0; i < models.size(); ++i) {
    rows[i].name = models[i].name;
    rows[i].rmse_score = rmse_s[i];
    rows[i].mae_score = mae_s[i];
    rows[i].r2_score = r2_s[i];
    rows[i].overall_score = rmse_s[i] + mae_s[i] + r2_s[i];
    overall[i] = rows[i].overall_score;
  }
  const auto ranks = competition_ranks(overall);
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = ranks[i];
  return rows;
}

}  // namespace

const char* phase_name(Phase phase) { return phase == Phase::Training ? "training" : "testing"; }

double rmse(std::span<const double> observed, std::span<const double> predicted) {
  require_pair(observed, predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - predicted[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(observed.size()));
}

double mae(std::span<const double> observed, std::span<const double> predicted) {
  require_pair(observed, predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) acc += std::abs(observed[i] - predicted[i]);
  return acc / static_cast<double>(observed.size());
}

double r2(std::span<const double> observed, std::span<const double> predicted) {
  require_pair(observed, predicted);
  if (observed.size() < 2) throw RunError("r2 needs at least two samples");
  double mean = 0.0;
  for (double v : observed) mean += v;
  mean /= static_cast<double>(observed.size());
  double ss_res = 0.0;
  double ss_tot = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double e = predicted[i] - observed[i];
    const double d = observed[i] - mean;
    ss_res += e * e;
    ss_tot += d * d;
  }
  if (ss_tot == 0.0) throw RunError("r2 undefined: observed values are all equal");
  return 1.0 - ss_res / ss_tot;
}

double mape(std::span<const double> observed, std::span<const double> predicted) {
  require_pair(observed, predicted);
  double acc = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (observed[i] == 0.0) throw RunError("mape undefined: observed value is zero");
    acc += std::abs(observed[i] - predicted[i]) / std::abs(observed[i]);
  }
  return 100.0 * acc / static_cast<double>(observed.size());
}

MetricReport evaluate_predictions(Phase phase, std::span<const double> observed,
                                  std::span<const double> predicted) {
  MetricReport r;
  r.phase = phase;
  r.rmse = rmse(observed, predicted);
  r.mae = mae(observed, predicted);
  r.r2 = r2(observed, predicted);
  r.mape = mape(observed, predicted);
  r.n = observed.size();
  return r;
}

RankTable score_models(std::span<const ModelMetrics> models) {
  if (models.size() < 2) throw RunError("score_models needs at least two models");
  RankTable table;
  table.training = score_phase(models, Phase::Training);
  table.testing = score_phase(models, Phase::Testing);
  return table;
}

}  // namespace hlmlp
