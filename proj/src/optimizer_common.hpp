#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>
#include <vector>

#include "hlmlp/errors.hpp"
#include "hlmlp/optimizer.hpp"
#include "hlmlp/rng.hpp"

namespace hlmlp::detail {

class StopWatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

inline void validate_config(const TrainConfig& config) {
  if (config.population_size < 2) throw UsageError("population size must be at least 2");
  if (config.iterations < 1) throw UsageError("iterations must be at least 1");
  if (config.bounds.dim() == 0 || config.bounds.dim() != config.bounds.high.size()) {
    throw UsageError("bounds are empty or inconsistent");
  }
  for (std::size_t d = 0; d < config.bounds.dim(); ++d) {
    if (!(config.bounds.low[d] < config.bounds.high[d])) {
      throw UsageError("bounds must satisfy low < high on every dimension");
    }
  }
}

inline void clamp_into(std::vector<double>& x, const Bounds& b) {
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = std::clamp(x[d], b.low[d], b.high[d]);
}

// Counts calls and rejects non-finite objective values, naming the candidate.
class Evaluator {
 public:
  explicit Evaluator(const Objective& objective) : objective_(objective) {}

  double operator()(std::span<const double> x) {
    ++count_;
    const double value = objective_(x);
    if (!std::isfinite(value)) {
      std::ostringstream oss;
      oss << "objective returned a non-finite value at [";
      for (std::size_t d = 0; d < x.size(); ++d) {
        if (d) oss << ", ";
        if (d == 8) {
          oss << "...";
          break;
        }
        oss << x[d];
      }
      oss << "]";
      throw RunError(oss.str());
    }
    return value;
  }

  std::uint64_t count() const { return count_; }

 private:
  const Objective& objective_;
  std::uint64_t count_ = 0;
};

inline std::vector<double> random_point(Rng& rng, const Bounds& b) {
  std::vector<double> x(b.dim());
  for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng.uniform(b.low[d], b.high[d]);
  return x;
}

struct Individual {
  std::vector<double> x;
  double value = 0.0;
};

inline bool by_value(const Individual& a, const Individual& b) { return a.value < b.value; }

inline std::vector<Individual> random_population(Rng& rng, const Bounds& b, int n,
                                                 Evaluator& eval) {
  std::vector<Individual> pop(static_cast<std::size_t>(n));
  for (auto& ind : pop) {
    ind.x = random_point(rng, b);
    ind.value = eval(ind.x);
  }
  return pop;
}

// Rank-based selection weights for minimization: best of n gets weight n.
inline std::vector<double> rank_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = static_cast<double>(n - i);
  return w;
}

inline TrainResult finish(std::vector<double> curve, Individual best, const Evaluator& eval,
                          const StopWatch& watch) {
  TrainResult r;
  r.best_vector = std::move(best.x);
  r.best_objective = best.value;
  r.curve = std::move(curve);
  r.evaluations = eval.count();
  r.wall_time = watch.seconds();
  return r;
}

}  // namespace hlmlp::detail
