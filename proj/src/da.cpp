#include <algorithm>
#include <cmath>
#include <vector>

#include "hlmlp/optimizer.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

namespace detail {

std::vector<double> da_separation(std::span<const double> position,
                                  std::span<const std::vector<double>> neighbors) {
  std::vector<double> s(position.size(), 0.0);
  for (const auto& nb : neighbors) {
    for (std::size_t d = 0; d < s.size(); ++d) s[d] -= position[d] - nb[d];
  }
  return s;
}

}  // namespace detail

TrainResult run_da(const TrainConfig& config, const Objective& objective) {
  detail::validate_config(config);
  const detail::StopWatch watch;
  Rng rng(config.seed);
  detail::Evaluator eval(objective);
  const Bounds& bounds = config.bounds;
  const std::size_t dim = bounds.dim();
  const auto n = static_cast<std::size_t>(config.population_size);
  const DaParams& p = config.params.da;
  const int iterations = config.iterations;

  auto swarm = detail::random_population(rng, bounds, config.population_size, eval);
  std::vector<std::vector<double>> step(n, std::vector<double>(dim));
  for (auto& s : step) {
    for (std::size_t d = 0; d < dim; ++d) s[d] = rng.uniform(-0.1, 0.1) * bounds.range(d);
  }

  detail::Individual food = *std::min_element(swarm.begin(), swarm.end(), detail::by_value);
  detail::Individual enemy = *std::max_element(swarm.begin(), swarm.end(), detail::by_value);

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(iterations));

  for (int t = 1; t <= iterations; ++t) {
    const double progress = static_cast<double>(t) / iterations;
    const double inertia = p.inertia_start - progress * (p.inertia_start - p.inertia_end);
    double swarm_weight = 0.1 - progress * 0.2;  // anneals to zero at mid-run
    if (swarm_weight < 0.0) swarm_weight = 0.0;
    const double s_w = 2.0 * rng.uniform() * swarm_weight;  // separation
    const double a_w = 2.0 * rng.uniform() * swarm_weight;  // alignment
    const double c_w = 2.0 * rng.uniform() * swarm_weight;  // cohesion
    const double f_w = 2.0 * rng.uniform();                 // food attraction
    const double e_w = swarm_weight;                        // enemy repulsion

    const auto positions = swarm;  // neighbourhoods use the start-of-week state
    const auto steps = step;

    for (std::size_t i = 0; i < n; ++i) {
      // Neighbourhood radius grows until the swarm becomes one group.
      std::vector<std::size_t> neighbors;
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        bool inside = true;
        for (std::size_t d = 0; d < dim; ++d) {
          const double radius = bounds.range(d) * (0.25 + 2.0 * progress);
          if (std::abs(positions[j].x[d] - positions[i].x[d]) > radius) {
            inside = false;
            break;
          }
        }
        if (inside) neighbors.push_back(j);
      }

      if (!neighbors.empty()) {
        for (std::size_t d = 0; d < dim; ++d) {
          double sep = 0.0;
          double ali = 0.0;
          double coh = 0.0;
          for (std::size_t j : neighbors) {
            sep -= positions[i].x[d] - positions[j].x[d];
            ali += steps[j][d];
            coh += positions[j].x[d];
          }
          ali /= static_cast<double>(neighbors.size());
          coh = coh / static_cast<double>(neighbors.size()) - positions[i].x[d];
          const double food_pull = food.x[d] - positions[i].x[d];
          const double enemy_push = enemy.x[d] + positions[i].x[d];
          double v = s_w * sep + a_w * ali + c_w * coh + f_w * food_pull + e_w * enemy_push +
                     inertia * steps[i][d];
          const double v_max = bounds.range(d) * 0.1;
          v = std::clamp(v, -v_max, v_max);
          step[i][d] = v;
          swarm[i].x[d] = positions[i].x[d] + v;
        }
      } else {
        // Isolated dragonfly: heavy-tailed jump, step memory reset.
        const auto levy = detail::levy_step(rng, dim, p.levy_exponent);
        for (std::size_t d = 0; d < dim; ++d) {
          swarm[i].x[d] = positions[i].x[d] + levy[d] * positions[i].x[d];
          step[i][d] = 0.0;
        }
      }

      detail::clamp_into(swarm[i].x, bounds);
      swarm[i].value = eval(swarm[i].x);
      if (swarm[i].value < food.value) food = swarm[i];
      if (swarm[i].value > enemy.value) enemy = swarm[i];
    }

    curve.push_back(food.value);
  }

  return detail::finish(std::move(curve), std::move(food), eval, watch);
}

}  // namespace hlmlp
