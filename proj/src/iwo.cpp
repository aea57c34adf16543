#include <algorithm>
#include <cmath>
#include <vector>

#include "hlmlp/optimizer.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

namespace detail {

double iwo_sigma(int t, int total_iterations, const IwoParams& p, double range) {
  const double sigma_init = p.sigma_init_frac * range;
  const double sigma_final = p.sigma_final_frac * range;
  const double remaining =
      static_cast<double>(total_iterations - t) / static_cast<double>(total_iterations);
  return sigma_final + (sigma_init - sigma_final) * std::pow(remaining, p.modulation_exponent);
}

int iwo_seed_count(double value, double best, double worst, const IwoParams& p) {
  double norm = 0.5;  // whole colony tied
  if (worst > best) norm = (worst - value) / (worst - best);
  const double count = p.seeds_min + (p.seeds_max - p.seeds_min) * norm;
  return static_cast<int>(std::floor(count + 1e-9));
}

}  // namespace detail

TrainResult run_iwo(const TrainConfig& config, const Objective& objective) {
  detail::validate_config(config);
  const detail::StopWatch watch;
  Rng rng(config.seed);
  detail::Evaluator eval(objective);
  const Bounds& bounds = config.bounds;
  const std::size_t dim = bounds.dim();
  const auto cap = static_cast<std::size_t>(config.population_size);
  const IwoParams& p = config.params.iwo;

  auto colony = detail::random_population(rng, bounds, config.population_size, eval);
  std::stable_sort(colony.begin(), colony.end(), detail::by_value);

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(config.iterations));

  for (int t = 1; t <= config.iterations; ++t) {
    const double best = colony.front().value;
    const double worst = colony.back().value;

    std::vector<detail::Individual> seeds;
    for (const auto& weed : colony) {
      const int count = detail::iwo_seed_count(weed.value, best, worst, p);
      for (int s = 0; s < count; ++s) {
        detail::Individual seed;
        seed.x = weed.x;
        for (std::size_t d = 0; d < dim; ++d) {
          seed.x[d] += detail::iwo_sigma(t, config.iterations, p, bounds.range(d)) * rng.normal();
        }
        detail::clamp_into(seed.x, bounds);
        seed.value = eval(seed.x);
        seeds.push_back(std::move(seed));
      }
    }

    // Competitive exclusion: merge and keep the fittest up to the cap.
    colony.insert(colony.end(), std::make_move_iterator(seeds.begin()),
                  std::make_move_iterator(seeds.end()));
    std::stable_sort(colony.begin(), colony.end(), detail::by_value);
    if (colony.size() > cap) colony.resize(cap);

    curve.push_back(colony.front().value);
  }

  detail::Individual best = colony.front();
  return detail::finish(std::move(curve), std::move(best), eval, watch);
}

}  // namespace hlmlp
