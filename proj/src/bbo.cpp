#include <algorithm>
#include <vector>

#include "hlmlp/optimizer.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

namespace detail {

std::pair<std::vector<double>, std::vector<double>> bbo_migration_rates(int n, double imax,
                                                                        double emax) {
  std::vector<double> immigration(static_cast<std::size_t>(n));
  std::vector<double> emigration(static_cast<std::size_t>(n));
  for (int r = 0; r < n; ++r) {
    const double frac = static_cast<double>(r) / (n - 1);
    immigration[static_cast<std::size_t>(r)] = imax * frac;
    emigration[static_cast<std::size_t>(r)] = emax * (1.0 - frac);
  }
  return {immigration, emigration};
}

}  // namespace detail

TrainResult run_bbo(const TrainConfig& config, const Objective& objective) {
  detail::validate_config(config);
  const detail::StopWatch watch;
  Rng rng(config.seed);
  detail::Evaluator eval(objective);
  const Bounds& bounds = config.bounds;
  const std::size_t dim = bounds.dim();
  const auto n = static_cast<std::size_t>(config.population_size);
  const BboParams& p = config.params.bbo;
  const auto n_elites = static_cast<std::size_t>(std::clamp(p.elites, 0, config.population_size));

  auto habitats = detail::random_population(rng, bounds, config.population_size, eval);
  std::stable_sort(habitats.begin(), habitats.end(), detail::by_value);

  const auto [immigration, emigration] = detail::bbo_migration_rates(
      config.population_size, p.immigration_max, p.emigration_max);
  // Rates depend on rank only, so the roulette prefix is fixed for the run.
  std::vector<double> emigration_prefix(n + 1, 0.0);
  for (std::size_t j = 0; j < n; ++j) emigration_prefix[j + 1] = emigration_prefix[j] + emigration[j];
  const double emigration_total = emigration_prefix[n];

  detail::Individual elite = habitats.front();
  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(config.iterations));

  for (int t = 1; t <= config.iterations; ++t) {
    const std::vector<detail::Individual> previous = habitats;  // migration sources

    // Migration: habitat i accepts features with probability immigration[i],
    // the source habitat drawn by roulette on emigration rates (self excluded).
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        if (rng.uniform() < immigration[i]) {
          double cut = rng.uniform() * (emigration_total - emigration[i]);
          if (cut >= emigration_prefix[i]) cut += emigration[i];
          const auto it =
              std::upper_bound(emigration_prefix.begin() + 1, emigration_prefix.end(), cut);
          const auto j = static_cast<std::size_t>(it - emigration_prefix.begin() - 1);
          habitats[i].x[d] = previous[std::min(j, n - 1)].x[d];
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        if (rng.uniform() < p.mutation_prob) {
          habitats[i].x[d] += rng.normal() * p.mutation_sigma_frac * bounds.range(d);
        }
      }
      detail::clamp_into(habitats[i].x, bounds);
      habitats[i].value = eval(habitats[i].x);
    }

    // Top habitats of the previous generation displace the worst of this one.
    std::stable_sort(habitats.begin(), habitats.end(), detail::by_value);
    for (std::size_t k = 0; k < n_elites; ++k) {
      habitats[n - 1 - k] = previous[k];
    }
    std::stable_sort(habitats.begin(), habitats.end(), detail::by_value);

    if (habitats.front().value < elite.value) elite = habitats.front();
    curve.push_back(elite.value);
  }

  return detail::finish(std::move(curve), std::move(elite), eval, watch);
}

}  // namespace hlmlp
