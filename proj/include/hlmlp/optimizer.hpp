#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hlmlp/mlp.hpp"
#include "hlmlp/rng.hpp"

namespace hlmlp {

enum class Algorithm { Alo, Bbo, Da, Es, Iwo, Lca };

inline constexpr std::array<Algorithm, 6> kAllAlgorithms = {Algorithm::Alo, Algorithm::Bbo,
                                                            Algorithm::Da,  Algorithm::Es,
                                                            Algorithm::Iwo, Algorithm::Lca};

const char* algorithm_name(Algorithm a);        // "alo" .. "lca"
std::string model_label(Algorithm a);           // "ALO-MLP" .. "LCA-MLP"
Algorithm algorithm_from_name(const std::string& name);

struct Bounds {
  std::vector<double> low;
  std::vector<double> high;

  static Bounds box(std::size_t dim, double lo, double hi);
  std::size_t dim() const { return low.size(); }
  double range(std::size_t d) const { return high[d] - low[d]; }
};

struct AloParams {
  // Trap shrink ratio: I = 1 + 10^w * (t/T), with w staged over the run.
  std::array<double, 5> w_exponents{2.0, 3.0, 4.0, 5.0, 6.0};
  std::array<double, 5> w_thresholds{0.10, 0.50, 0.75, 0.90, 0.95};
};

struct BboParams {
  double immigration_max = 1.0;
  double emigration_max = 1.0;
  double mutation_prob = 0.05;
  double mutation_sigma_frac = 0.05;  // of the per-dimension range
  int elites = 2;
};

struct DaParams {
  double inertia_start = 0.9;
  double inertia_end = 0.4;
  double levy_exponent = 1.5;
};

struct EsParams {
  double initial_sigma_frac = 0.10;  // of the per-dimension range
  double learning_rate = 0.0;        // 0 -> 1/sqrt(2*dim)
};

struct IwoParams {
  int seeds_min = 0;
  int seeds_max = 5;
  double modulation_exponent = 3.0;
  double sigma_init_frac = 0.10;
  double sigma_final_frac = 0.001;
};

struct LcaParams {
  double approach = 1.0;     // coefficient toward a beaten opponent's best
  double retreat = 1.0;      // coefficient away from a winning opponent's best
  double change_prob = 0.5;  // per-dimension chance the formation changes
};

struct AlgorithmParams {
  AloParams alo;
  BboParams bbo;
  DaParams da;
  EsParams es;
  IwoParams iwo;
  LcaParams lca;
};

struct TrainConfig {
  int population_size = 50;
  int iterations = 1000;
  Bounds bounds;
  std::uint64_t seed = 1;
  AlgorithmParams params;
};

using Objective = std::function<double(std::span<const double>)>;

struct TrainResult {
  WeightVector best_vector;
  double best_objective = 0.0;
  std::vector<double> curve;  // best-so-far objective per iteration, non-increasing
  std::uint64_t evaluations = 0;
  double wall_time = 0.0;  // seconds
};

// Shared contract for all six: deterministic given the seed, every evaluated
// candidate clamped into bounds, elitist best-so-far tracking.
TrainResult run_alo(const TrainConfig& config, const Objective& objective);
TrainResult run_bbo(const TrainConfig& config, const Objective& objective);
TrainResult run_da(const TrainConfig& config, const Objective& objective);
TrainResult run_es(const TrainConfig& config, const Objective& objective);
TrainResult run_iwo(const TrainConfig& config, const Objective& objective);
TrainResult run_lca(const TrainConfig& config, const Objective& objective);

TrainResult run_algorithm(Algorithm a, const TrainConfig& config, const Objective& objective);

// Minimizes the training-set MSE of the network over the weight box.
TrainResult train_mlp(Algorithm a, const TrainConfig& config, const ScaledTable& table,
                      Topology topology = {});

namespace detail {

// Rank-based roulette pick: weights[i] >= 0, at least one positive.
std::size_t roulette(std::span<const double> weights, double r01);

// (immigration, emigration) by fitness rank, rank 0 = best habitat. Linear
// model: the best habitat never immigrates, the worst never emigrates.
std::pair<std::vector<double>, std::vector<double>> bbo_migration_rates(int n, double imax,
                                                                        double emax);

// Pairings for one week of a single round-robin; second = -1 marks a bye.
std::vector<std::pair<int, int>> round_robin_week(int n_teams, int week);
int round_robin_weeks(int n_teams);

double lca_win_probability(double f_a, double f_b, double f_worst);

double iwo_sigma(int t, int total_iterations, const IwoParams& p, double range);
int iwo_seed_count(double value, double best, double worst, const IwoParams& p);

std::vector<double> da_separation(std::span<const double> position,
                                  std::span<const std::vector<double>> neighbors);

// Mantegna-style heavy-tailed step, one draw per dimension.
std::vector<double> levy_step(Rng& rng, std::size_t dim, double exponent);

}  // namespace detail

}  // namespace hlmlp
