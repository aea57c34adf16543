#include "hlmlp/optimizer.hpp"

#include <cctype>
#include <cmath>
#include <string>

#include "hlmlp/errors.hpp"
#include "optimizer_common.hpp"

namespace hlmlp {

const char* algorithm_name(Algorithm a) {
  switch (a) {
    case Algorithm::Alo: return "alo";
    case Algorithm::Bbo: return "bbo";
    case Algorithm::Da: return "da";
    case Algorithm::Es: return "es";
    case Algorithm::Iwo: return "iwo";
    case Algorithm::Lca: return "lca";
  }
  return "?";
}

std::string model_label(Algorithm a) {
  std::string n = algorithm_name(a);
  for (auto& c : n) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return n + "-MLP";
}

Algorithm algorithm_from_name(const std::string& name) {
  for (Algorithm a : kAllAlgorithms) {
    if (name == algorithm_name(a)) return a;
  }
  throw UsageError("unknown algorithm '" + name + "' (expected alo, bbo, da, es, iwo or lca)");
}

Bounds Bounds::box(std::size_t dim, double lo, double hi) {
  Bounds b;
  b.low.assign(dim, lo);
  b.high.assign(dim, hi);
  return b;
}

TrainResult run_algorithm(Algorithm a, const TrainConfig& config, const Objective& objective) {
  switch (a) {
    case Algorithm::Alo: return run_alo(config, objective);
    case Algorithm::Bbo: return run_bbo(config, objective);
    case Algorithm::Da: return run_da(config, objective);
    case Algorithm::Es: return run_es(config, objective);
    case Algorithm::Iwo: return run_iwo(config, objective);
    case Algorithm::Lca: return run_lca(config, objective);
  }
  throw RunError("unreachable algorithm dispatch");
}

namespace {

double mse_over_table(const double* w, const ScaledTable& table, Topology topology) {
  double acc = 0.0;
  for (std::size_t i = 0; i < table.rows; ++i) {
    const double e = forward_flat(w, topology, table.row(i)) - table.y[i];
    acc += e * e;
  }
  return acc / static_cast<double>(table.rows);
}

}  // namespace

TrainResult train_mlp(Algorithm a, const TrainConfig& config, const ScaledTable& table,
                      Topology topology) {
  if (table.rows == 0) throw RunError("train_mlp: empty training set");
  if (config.bounds.dim() != static_cast<std::size_t>(topology.weight_count())) {
    throw UsageError("train_mlp: bounds dimension " + std::to_string(config.bounds.dim()) +
                     " does not match weight count " + std::to_string(topology.weight_count()));
  }
  const Objective objective = [&table, topology](std::span<const double> v) {
    return mse_over_table(v.data(), table, topology);
  };
  return run_algorithm(a, config, objective);
}

namespace detail {

std::size_t roulette(std::span<const double> weights, double r01) {
  double total = 0.0;
  for (double w : weights) total += w;
  double cut = r01 * total;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cut -= weights[i];
    if (cut < 0.0) return i;
  }
  return weights.size() - 1;
}

std::vector<double> levy_step(Rng& rng, std::size_t dim, double exponent) {
  const double beta = exponent;
  const double num = std::tgamma(1.0 + beta) * std::sin(3.14159265358979323846 * beta / 2.0);
  const double den = std::tgamma((1.0 + beta) / 2.0) * beta * std::pow(2.0, (beta - 1.0) / 2.0);
  const double sigma = std::pow(num / den, 1.0 / beta);
  std::vector<double> step(dim);
  for (auto& s : step) {
    const double u = rng.normal() * sigma;
    double v = rng.normal();
    if (v == 0.0) v = 1e-100;
    s = 0.01 * u / std::pow(std::abs(v), 1.0 / beta);
  }
  return step;
}

}  // namespace detail

}  // namespace hlmlp
