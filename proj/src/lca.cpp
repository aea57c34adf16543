#include <algorithm>
#include <cmath>
#include <vector>

#include "hlmlp/optimizer.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

namespace detail {

int round_robin_weeks(int n_teams) {
  const int m = (n_teams % 2 == 0) ? n_teams : n_teams + 1;
  return m - 1;
}

// Circle method: team 0 is fixed, the rest rotate. Odd team counts get a
// dummy slot whose partner takes a bye (-1).
std::vector<std::pair<int, int>> round_robin_week(int n_teams, int week) {
  const int m = (n_teams % 2 == 0) ? n_teams : n_teams + 1;
  std::vector<int> seats(static_cast<std::size_t>(m));
  seats[0] = 0;
  for (int k = 1; k < m; ++k) {
    seats[static_cast<std::size_t>(k)] = 1 + (k - 1 + week) % (m - 1);
  }
  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < m / 2; ++k) {
    int a = seats[static_cast<std::size_t>(k)];
    int b = seats[static_cast<std::size_t>(m - 1 - k)];
    if (a >= n_teams) std::swap(a, b);
    if (b >= n_teams) b = -1;  // bye
    pairs.emplace_back(a, b);
  }
  return pairs;
}

double lca_win_probability(double f_a, double f_b, double f_worst) {
  const double da = f_worst - f_a;
  const double db = f_worst - f_b;
  const double total = da + db;
  if (total <= 0.0) return 0.5;
  return da / total;
}

}  // namespace detail

TrainResult run_lca(const TrainConfig& config, const Objective& objective) {
  detail::validate_config(config);
  const detail::StopWatch watch;
  Rng rng(config.seed);
  detail::Evaluator eval(objective);
  const Bounds& bounds = config.bounds;
  const std::size_t dim = bounds.dim();
  const auto n = static_cast<std::size_t>(config.population_size);
  const LcaParams& p = config.params.lca;
  const int weeks_per_season = detail::round_robin_weeks(config.population_size);

  auto teams = detail::random_population(rng, bounds, config.population_size, eval);
  std::vector<detail::Individual> best_formations = teams;  // elitist memory
  double worst_known = std::max_element(teams.begin(), teams.end(), detail::by_value)->value;

  detail::Individual champion =
      *std::min_element(best_formations.begin(), best_formations.end(), detail::by_value);

  std::vector<double> curve;
  curve.reserve(static_cast<std::size_t>(config.iterations));

  for (int t = 1; t <= config.iterations; ++t) {
    const int week = (t - 1) % weeks_per_season;
    const auto matches = detail::round_robin_week(config.population_size, week);
    const auto next_matches =
        detail::round_robin_week(config.population_size, (week + 1) % weeks_per_season);

    // Play the week: stronger teams (further from the worst-known objective)
    // win with proportionally higher probability.
    std::vector<bool> won(n, true);  // a bye counts as a rest week, not a loss
    std::vector<int> last_opponent(n, -1);
    for (const auto& [a, b] : matches) {
      if (b < 0) continue;
      last_opponent[static_cast<std::size_t>(a)] = b;
      last_opponent[static_cast<std::size_t>(b)] = a;
      const double pa = detail::lca_win_probability(teams[static_cast<std::size_t>(a)].value,
                                                    teams[static_cast<std::size_t>(b)].value,
                                                    worst_known);
      const bool a_wins = rng.uniform() < pa;
      won[static_cast<std::size_t>(a)] = a_wins;
      won[static_cast<std::size_t>(b)] = !a_wins;
    }

    std::vector<int> upcoming(n, -1);
    for (const auto& [a, b] : next_matches) {
      if (b < 0) continue;
      upcoming[static_cast<std::size_t>(a)] = b;
      upcoming[static_cast<std::size_t>(b)] = a;
    }

    // SWOT-style update: next week's formation is built around the team's own
    // best formation, stepping toward beaten opponents' bests (opportunities)
    // and away from winning ones (threats), on a random subset of dimensions.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t l = upcoming[i] >= 0 ? static_cast<std::size_t>(upcoming[i]) : i;
      const std::size_t j = last_opponent[i] >= 0 ? static_cast<std::size_t>(last_opponent[i]) : i;
      const double sign_l = won[l] ? -1.0 : 1.0;
      const double sign_j = won[i] ? -1.0 : 1.0;
      detail::Individual next;
      next.x.resize(dim);
      for (std::size_t d = 0; d < dim; ++d) {
        double step = 0.0;
        if (rng.uniform() < p.change_prob) {
          const double gap_next = best_formations[l].x[d] - best_formations[i].x[d];
          const double gap_last = best_formations[j].x[d] - best_formations[i].x[d];
          const double c1 = sign_l > 0.0 ? p.approach : p.retreat;
          const double c2 = sign_j > 0.0 ? p.approach : p.retreat;
          step = sign_l * c1 * rng.uniform() * gap_next + sign_j * c2 * rng.uniform() * gap_last;
        }
        next.x[d] = best_formations[i].x[d] + step;
      }
      detail::clamp_into(next.x, bounds);
      next.value = eval(next.x);
      worst_known = std::max(worst_known, next.value);
      if (next.value < best_formations[i].value) {
        best_formations[i] = next;
        if (next.value < champion.value) champion = next;
      }
      teams[i] = std::move(next);
    }

    curve.push_back(champion.value);
  }

  return detail::finish(std::move(curve), std::move(champion), eval, watch);
}

}  // namespace hlmlp
