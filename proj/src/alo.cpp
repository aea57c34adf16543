#include <algorithm>
#include <cmath>
#include <vector>

#include "hlmlp/optimizer.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

namespace {

using detail::Individual;

// Incremental +-1 random walk per dimension; the running min/max (including
// the start at 0) rescale the current position into any target interval.
struct WalkState {
  double sum = 0.0;
  double min = 0.0;
  double max = 0.0;

  void step(Rng& rng) {
    sum += rng.coin() ? 1.0 : -1.0;
    min = std::min(min, sum);
    max = std::max(max, sum);
  }

  double rescaled(double lo, double hi) const {
    const double width = max - min;
    if (width == 0.0) return 0.5 * (lo + hi);
    return lo + (sum - min) / width * (hi - lo);
  }
};

double shrink_ratio(const AloParams& p, double progress) {
  double ratio = 1.0;
  for (std::size_t i = 0; i < p.w_thresholds.size(); ++i) {
    if (progress > p.w_thresholds[i]) ratio = 1.0 + std::pow(10.0, p.w_exponents[i]) * progress;
  }
  return ratio;
}

}  // namespace

TrainResult run_alo(const TrainConfig& config, const Objective& objective) {
  detail::validate_config(config);
  const detail::StopWatch watch;
  Rng rng(config.seed);
  detail::Evaluator eval(objective);
  const Bounds& bounds = config.bounds;
  const std::size_t dim = bounds.dim();
  const auto n = static_cast<std::size_t>(config.population_size);

  auto antlions = detail::random_population(rng, bounds, config.population_size, eval);
  std::stable_sort(antlions.begin(), antlions.end(), detail::by_value);
  Individual elite = antlions.front();

  // walks[i][0] follows the roulette-selected antlion, walks[i][1] the elite
  std::vector<std::vector<WalkState>> walk_roulette(n, std::vector<WalkState>(dim));
  std::vector<std::vector<WalkState>> walk_elite(n, std::vector<WalkState>(dim));

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(config.iterations));

  std::vector<Individual> ants(n);
  const auto weights = detail::rank_weights(n);

  for (int t = 1; t <= config.iterations; ++t) {
    const double progress = static_cast<double>(t) / config.iterations;
    const double ratio = shrink_ratio(config.params.alo, progress);

    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t pick = detail::roulette(weights, rng.uniform());
      ants[i].x.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        const double c_t = bounds.low[d] / ratio;
        const double d_t = bounds.high[d] / ratio;
        double position = 0.0;
        const Individual* attractors[2] = {&antlions[pick], &elite};
        std::vector<WalkState>* walks[2] = {&walk_roulette[i], &walk_elite[i]};
        for (int a = 0; a < 2; ++a) {
          const double center = attractors[a]->x[d];
          const double lo_edge = center + (rng.coin() ? c_t : -c_t);
          const double hi_edge = center + (rng.coin() ? d_t : -d_t);
          WalkState& w = (*walks[a])[d];
          w.step(rng);
          position += w.rescaled(std::min(lo_edge, hi_edge), std::max(lo_edge, hi_edge));
        }
        ants[i].x[d] = 0.5 * position;
      }
      detail::clamp_into(ants[i].x, bounds);
      ants[i].value = eval(ants[i].x);
    }

    // An ant that beats an antlion takes its place: merge and keep the best n.
    std::vector<Individual> merged;
    merged.reserve(2 * n);
    merged.insert(merged.end(), antlions.begin(), antlions.end());
    merged.insert(merged.end(), ants.begin(), ants.end());
    std::stable_sort(merged.begin(), merged.end(), detail::by_value);
    merged.resize(n);
    antlions = std::move(merged);

    if (antlions.front().value < elite.value) elite = antlions.front();
    curve.push_back(elite.value);
  }

  return detail::finish(std::move(curve), std::move(elite), eval, watch);
}

}  // namespace hlmlp
