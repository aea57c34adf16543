#pragma once

#include <string>

#include "hlmlp/dataset.hpp"
#include "hlmlp/mlp.hpp"

namespace hlmlp {

struct Provenance {
  std::string algorithm;  // "alo".."lca", "lm", or "reference"
  std::uint64_t seed = 0;
  double training_mse = 0.0;
  std::string config;  // knob echo, JSON text
};

// A network plus the scaler it was trained with; predictions run end to end
// in raw heating-load units.
struct TrainedModel {
  MlpParams params;
  Scaler scaler;
  Provenance provenance;
};

double predict(const TrainedModel& model, const Sample& sample);

// The published best-model constants, wired to a scaler fitted on the data
// the model will be applied to. The network output is in scaled target units.
TrainedModel reference_bbo_predictor(const Scaler& scaler);

}  // namespace hlmlp
