#pragma once

#include <optional>
#include <vector>

#include "hlmlp/mlp.hpp"
#include "hlmlp/optimizer.hpp"

namespace hlmlp {

struct LmConfig {
  double initial_mu = 1e-3;
  double mu_increase = 10.0;
  double mu_decrease = 0.1;
  int max_epochs = 1000;
  double gradient_tolerance = 1e-7;
  double mu_max = 1e10;
};

enum class LmStatus { Converged, EpochLimit, Diverged };

const char* lm_status_name(LmStatus s);

struct LmState {
  WeightVector x;
  double v = 0.0;  // sum of squared residuals
  double mu = 0.0;
  int epoch = 0;
  bool diverged = false;
};

// Per-row residuals predicted - target, in table row order.
std::vector<double> residuals(const WeightVector& v, const ScaledTable& table,
                              Topology topology = {});

double sum_squares(const std::vector<double>& e);

// Analytic Jacobian of the residuals, rows x weight_count, row-major.
std::vector<double> jacobian(const WeightVector& v, const ScaledTable& table,
                             Topology topology = {});

// One damped Gauss-Newton epoch: trial steps at growing mu until the sum of
// squares decreases, or mu passes mu_max (diverged).
LmState lm_step(const LmState& state, const LmConfig& config, const ScaledTable& table,
                Topology topology = {});

struct LmTrainResult {
  TrainResult result;
  LmStatus status = LmStatus::EpochLimit;
};

LmTrainResult lm_train(const WeightVector& init, const LmConfig& config, const ScaledTable& table,
                       Topology topology = {});

namespace detail {

// Solves (J^T J + mu I) delta = -J^T e for a rows x dim row-major J. Empty on
// factorization failure (only possible at mu = 0 with a singular system).
std::optional<std::vector<double>> damped_step(const std::vector<double>& jac,
                                               const std::vector<double>& e, std::size_t dim,
                                               double mu);

}  // namespace detail

}  // namespace hlmlp
