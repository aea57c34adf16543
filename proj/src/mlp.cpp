#include "hlmlp/mlp.hpp"

#include <string>

#include "hlmlp/errors.hpp"

namespace hlmlp {

MlpParams decode(const WeightVector& v, Topology topology) {
  const std::size_t expected = static_cast<std::size_t>(topology.weight_count());
  if (v.size() != expected) {
    throw RunError("weight vector has length " + std::to_string(v.size()) + ", expected " +
                   std::to_string(expected));
  }
  const int in = topology.inputs;
  const int h = topology.hidden;
  MlpParams p;
  p.topology = topology;
  p.hidden_weights.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(h) * in);
  p.hidden_biases.assign(v.begin() + static_cast<std::ptrdiff_t>(h) * in,
                         v.begin() + static_cast<std::ptrdiff_t>(h) * in + h);
  p.output_weights.assign(v.begin() + static_cast<std::ptrdiff_t>(h) * (in + 1),
                          v.begin() + static_cast<std::ptrdiff_t>(h) * (in + 2));
  p.output_bias = v.back();
  return p;
}

WeightVector encode(const MlpParams& params) {
  WeightVector v;
  v.reserve(static_cast<std::size_t>(params.topology.weight_count()));
  v.insert(v.end(), params.hidden_weights.begin(), params.hidden_weights.end());
  v.insert(v.end(), params.hidden_biases.begin(), params.hidden_biases.end());
  v.insert(v.end(), params.output_weights.begin(), params.output_weights.end());
  v.push_back(params.output_bias);
  return v;
}

double forward(const MlpParams& params, std::span<const double> inputs) {
  const int in = params.topology.inputs;
  const int h = params.topology.hidden;
  double out = params.output_bias;
  for (int j = 0; j < h; ++j) {
    double pre = params.hidden_biases[static_cast<std::size_t>(j)];
    const double* row = params.hidden_weights.data() + static_cast<std::size_t>(j) * in;
    for (int k = 0; k < in; ++k) pre += row[k] * inputs[static_cast<std::size_t>(k)];
    out += params.output_weights[static_cast<std::size_t>(j)] * tansig(pre);
  }
  return out;
}

double forward_flat(const double* w, Topology topology, const double* inputs) {
  const int in = topology.inputs;
  const int h = topology.hidden;
  const double* hb = w + static_cast<std::size_t>(h) * in;
  const double* ow = hb + h;
  double out = ow[h];  // output bias sits after the output weights
  for (int j = 0; j < h; ++j) {
    double pre = hb[j];
    const double* row = w + static_cast<std::size_t>(j) * in;
    for (int k = 0; k < in; ++k) pre += row[k] * inputs[k];
    out += ow[j] * tansig(pre);
  }
  return out;
}

double mse_objective(const WeightVector& v, const ScaledTable& table, Topology topology) {
  if (table.rows == 0) throw RunError("mse_objective: empty training set");
  if (v.size() != static_cast<std::size_t>(topology.weight_count())) {
    throw RunError("mse_objective: weight vector has length " + std::to_string(v.size()) +
                   ", expected " + std::to_string(topology.weight_count()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < table.rows; ++i) {
    const double e = forward_flat(v.data(), topology, table.row(i)) - table.y[i];
    acc += e * e;
  }
  return acc / static_cast<double>(table.rows);
}

}  // namespace hlmlp
