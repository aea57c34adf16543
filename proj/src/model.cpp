#include "hlmlp/model.hpp"

#include "hlmlp/errors.hpp"

namespace hlmlp {

double predict(const TrainedModel& model, const Sample& sample) {
  if (!model.scaler.fitted()) throw RunError("predict: model scaler is not fitted");
  const ScaledSample scaled = apply_scaler(model.scaler, sample);
  const double out = forward(model.params, scaled.features);
  return model.scaler.unscale_target(out);
}

TrainedModel reference_bbo_predictor(const Scaler& scaler) {
  TrainedModel model;
  model.params.topology = Topology{8, 5};
  model.params.hidden_weights = {
      -0.8459, 0.2944,  -0.7562, 0.1225,  -0.2456, 0.3266,  -1.0020, 0.6090,   // Z1
      -0.2863, 0.4134,  -0.1649, -0.8857, 0.8828,  -0.9327, 0.1703,  0.4336,   // Z2
      0.7094,  -0.5079, -0.6916, 0.6346,  -0.3142, -0.0794, -0.4306, 0.9990,   // Z3
      -1.1274, -0.0470, -0.1336, 0.6061,  0.0406,  0.3088,  -0.8939, -0.6135,  // Z4
      0.1514,  0.2735,  -0.8389, 0.1982,  -0.6465, -1.0777, 0.2336,  0.6753,   // Z5
  };
  model.params.hidden_biases = {1.7120, 0.8560, 0.0000, -0.8560, 1.7120};
  model.params.output_weights = {0.9076, 0.0050, -0.3986, -0.4754, -0.2692};
  model.params.output_bias = 0.0283;
  model.scaler = scaler;
  model.provenance.algorithm = "reference";
  return model;
}

}  // namespace hlmlp
