#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hlmlp {

// Feed-forward network shape: `inputs` -> `hidden` tansig neurons -> 1 linear
// output. The default 8x5x1 gives the 51-weight search space used everywhere.
struct Topology {
  int inputs = 8;
  int hidden = 5;

  int weight_count() const { return hidden * (inputs + 2) + 1; }
  bool operator==(const Topology&) const = default;
};

// Flat parameter vector in canonical order: hidden weights row-major, hidden
// biases, output weights, output bias.
using WeightVector = std::vector<double>;

struct MlpParams {
  Topology topology;
  std::vector<double> hidden_weights;  // hidden x inputs, row-major
  std::vector<double> hidden_biases;   // hidden
  std::vector<double> output_weights;  // hidden
  double output_bias = 0.0;
};

// Hyperbolic-tangent sigmoid in the form 2/(1+e^(-2x)) - 1, saturated to +-1
// for |x| > 20 so large pre-activations never overflow (the shortcut error is
// below 1e-17 there).
inline double tansig(double x) {
  if (x > 20.0) return 1.0;
  if (x < -20.0) return -1.0;
  return 2.0 / (1.0 + std::exp(-2.0 * x)) - 1.0;
}

MlpParams decode(const WeightVector& v, Topology topology = {});
WeightVector encode(const MlpParams& params);

// Output for one scaled input row. Hidden layer is tansig, output neuron is
// linear.
double forward(const MlpParams& params, std::span<const double> inputs);

// Same forward pass reading weights straight from the flat canonical layout.
double forward_flat(const double* weights, Topology topology, const double* inputs);

// Scaled training rows in a contiguous layout for tight objective loops.
struct ScaledTable {
  std::size_t rows = 0;
  int inputs = 8;
  std::vector<double> x;  // rows x inputs, row-major
  std::vector<double> y;  // rows

  const double* row(std::size_t i) const { return x.data() + i * static_cast<std::size_t>(inputs); }
};

// Mean squared error of the network encoded by `v` over `table`, accumulated
// in row order so results are bit-reproducible.
double mse_objective(const WeightVector& v, const ScaledTable& table, Topology topology = {});

}  // namespace hlmlp
