#include <algorithm>
#include <cmath>
#include <vector>

#include "hlmlp/optimizer.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

namespace {

struct EsIndividual {
  std::vector<double> x;
  double sigma = 0.0;  // self-adaptive step size, in units of the dimension range
  double value = 0.0;
};

}  // namespace

// (mu + lambda) evolution strategy with log-normal step-size self-adaptation;
// mu = population_size / 2 parents, lambda = population_size offspring.
TrainResult run_es(const TrainConfig& config, const Objective& objective) {
  detail::validate_config(config);
  const detail::StopWatch watch;
  Rng rng(config.seed);
  detail::Evaluator eval(objective);
  const Bounds& bounds = config.bounds;
  const std::size_t dim = bounds.dim();
  const EsParams& p = config.params.es;

  const auto lambda = static_cast<std::size_t>(config.population_size);
  const std::size_t mu = std::max<std::size_t>(1, lambda / 2);
  const double tau =
      p.learning_rate > 0.0 ? p.learning_rate : 1.0 / std::sqrt(2.0 * static_cast<double>(dim));

  std::vector<EsIndividual> pool(lambda);
  for (auto& ind : pool) {
    ind.x = detail::random_point(rng, bounds);
    ind.sigma = p.initial_sigma_frac;
    ind.value = eval(ind.x);
  }
  auto by_value = [](const EsIndividual& a, const EsIndividual& b) { return a.value < b.value; };
  std::stable_sort(pool.begin(), pool.end(), by_value);
  std::vector<EsIndividual> parents(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(mu));

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(config.iterations));

  for (int t = 1; t <= config.iterations; ++t) {
    std::vector<EsIndividual> offspring(lambda);
    for (std::size_t k = 0; k < lambda; ++k) {
      const EsIndividual& parent = parents[rng.index(mu)];
      EsIndividual child;
      child.sigma = parent.sigma * std::exp(tau * rng.normal());
      child.x = parent.x;
      for (std::size_t d = 0; d < dim; ++d) {
        child.x[d] += child.sigma * bounds.range(d) * rng.normal();
      }
      detail::clamp_into(child.x, bounds);
      child.value = eval(child.x);
      offspring[k] = std::move(child);
    }
    // Plus-selection: parents compete with their offspring.
    offspring.insert(offspring.end(), parents.begin(), parents.end());
    std::stable_sort(offspring.begin(), offspring.end(), by_value);
    offspring.resize(mu);
    parents = std::move(offspring);
    curve.push_back(parents.front().value);
  }

  detail::Individual best{parents.front().x, parents.front().value};
  return detail::finish(std::move(curve), std::move(best), eval, watch);
}

}  // namespace hlmlp
