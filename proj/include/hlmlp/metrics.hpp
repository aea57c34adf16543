#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hlmlp {

enum class Phase { Training, Testing };

const char* phase_name(Phase phase);

double rmse(std::span<const double> observed, std::span<const double> predicted);
double mae(std::span<const double> observed, std::span<const double> predicted);

// Coefficient of determination, 1 - SSres/SStot about the observed mean. Can
// be negative; errors on a constant observed vector.
double r2(std::span<const double> observed, std::span<const double> predicted);

// Mean absolute percentage error, in percent. Errors on any zero observed
// value.
double mape(std::span<const double> observed, std::span<const double> predicted);

struct MetricReport {
  Phase phase = Phase::Training;
  double rmse = 0.0;
  double mae = 0.0;
  double r2 = 0.0;
  double mape = 0.0;
  std::size_t n = 0;
};

MetricReport evaluate_predictions(Phase phase, std::span<const double> observed,
                                  std::span<const double> predicted);

struct ModelMetrics {
  std::string name;
  MetricReport training;
  MetricReport testing;
};

struct RankRow {
  std::string name;
  int rmse_score = 0;
  int mae_score = 0;
  int r2_score = 0;
  int overall_score = 0;
  int rank = 0;
};

struct RankTable {
  std::vector<RankRow> training;  // one row per model, input order preserved
  std::vector<RankRow> testing;
};

// Score-based comparison: per phase and criterion the best of M models gets
// score M down to 1 for the worst (lower rmse/mae better, higher r2 better);
// ties share the higher score and the next score is skipped. Overall score is
// the per-phase sum of the three criterion scores; ranks are by descending
// overall score, ties sharing the better rank. MAPE is reported but does not
// enter the scores.
RankTable score_models(std::span<const ModelMetrics> models);

}  // namespace hlmlp
