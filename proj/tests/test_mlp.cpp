#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hlmlp/errors.hpp"
#include "hlmlp/mlp.hpp"
#include "hlmlp/model.hpp"
#include "hlmlp/rng.hpp"

using namespace hlmlp;

namespace {

WeightVector random_weights(std::uint64_t seed, double lo = -2.0, double hi = 2.0) {
  Rng rng(seed);
  WeightVector v(51);
  for (auto& w : v) w = rng.uniform(lo, hi);
  return v;
}

ScaledTable random_table(std::uint64_t seed, std::size_t rows) {
  Rng rng(seed);
  ScaledTable t;
  t.rows = rows;
  for (std::size_t i = 0; i < rows; ++i) {
    for (int k = 0; k < 8; ++k) t.x.push_back(rng.uniform(-1.0, 1.0));
    t.y.push_back(rng.uniform(-1.0, 1.0));
  }
  return t;
}

// Independent transcription of the published constants, kept separate from
// the library's table on purpose.
constexpr double kOracleHidden[5][8] = {
    {-0.8459, 0.2944, -0.7562, 0.1225, -0.2456, 0.3266, -1.0020, 0.6090},
    {-0.2863, 0.4134, -0.1649, -0.8857, 0.8828, -0.9327, 0.1703, 0.4336},
    {0.7094, -0.5079, -0.6916, 0.6346, -0.3142, -0.0794, -0.4306, 0.9990},
    {-1.1274, -0.0470, -0.1336, 0.6061, 0.0406, 0.3088, -0.8939, -0.6135},
    {0.1514, 0.2735, -0.8389, 0.1982, -0.6465, -1.0777, 0.2336, 0.6753}};
constexpr double kOracleBias[5] = {1.7120, 0.8560, 0.0000, -0.8560, 1.7120};
constexpr double kOracleOut[5] = {0.9076, 0.0050, -0.3986, -0.4754, -0.2692};
constexpr double kOracleOutBias = 0.0283;

long double oracle_eval(const double* x) {
  long double out = kOracleOutBias;
  for (int j = 0; j < 5; ++j) {
    long double pre = kOracleBias[j];
    for (int k = 0; k < 8; ++k) pre += static_cast<long double>(kOracleHidden[j][k]) * x[k];
    const long double z = 2.0L / (1.0L + std::exp(-2.0L * pre)) - 1.0L;
    out += static_cast<long double>(kOracleOut[j]) * z;
  }
  return out;
}

}  // namespace

TEST_CASE("tansig fixed points and symmetry") {
  CHECK(tansig(0.0) == 0.0);
  CHECK(tansig(1.0) == doctest::Approx(0.7615941559557649).epsilon(1e-15));
  for (double x : {0.3, 1.7, 5.0, 19.9}) {
    CHECK(tansig(-x) == doctest::Approx(-tansig(x)).epsilon(1e-15));
  }
}

TEST_CASE("tansig stays in (-1,1) and saturates without overflow") {
  CHECK(tansig(25.0) == 1.0);
  CHECK(tansig(-25.0) == -1.0);
  CHECK(tansig(1e3) == 1.0);
  CHECK(tansig(1e6) == 1.0);
  CHECK(tansig(-1e6) == -1.0);
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double v = tansig(rng.uniform(-50.0, 50.0));
    CHECK(v >= -1.0);
    CHECK(v <= 1.0);
    CHECK(std::isfinite(v));
  }
}

TEST_CASE("weight vector codec is the canonical bijection") {
  const Topology topo;
  CHECK(topo.weight_count() == 51);

  SUBCASE("all zeros") {
    const MlpParams p = decode(WeightVector(51, 0.0));
    for (double w : p.hidden_weights) CHECK(w == 0.0);
    for (double b : p.hidden_biases) CHECK(b == 0.0);
    CHECK(p.output_bias == 0.0);
  }

  SUBCASE("round trip is exact") {
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
      const WeightVector v = random_weights(seed);
      CHECK(encode(decode(v)) == v);
    }
  }

  SUBCASE("hidden biases sit at offsets 40..44") {
    WeightVector v(51, 0.0);
    for (int j = 0; j < 5; ++j) v[static_cast<std::size_t>(40 + j)] = 10.0 + j;
    const MlpParams p = decode(v);
    for (int j = 0; j < 5; ++j) CHECK(p.hidden_biases[static_cast<std::size_t>(j)] == 10.0 + j);
  }

  SUBCASE("wrong length is rejected") {
    CHECK_THROWS_AS(decode(WeightVector(50, 0.0)), RunError);
    CHECK_THROWS_AS(decode(WeightVector(52, 0.0)), RunError);
  }
}

TEST_CASE("forward pass basics") {
  const std::array<double, 8> x = {0.1, -0.2, 0.3, -0.4, 0.5, -0.6, 0.7, -0.8};

  SUBCASE("zero network with output bias") {
    MlpParams p = decode(WeightVector(51, 0.0));
    p.output_bias = 0.5;
    CHECK(forward(p, x) == 0.5);
  }

  SUBCASE("zero hidden layer feeds tansig(0) = 0 to a unit output layer") {
    MlpParams p = decode(WeightVector(51, 0.0));
    p.output_weights = {1, 1, 1, 1, 1};
    CHECK(forward(p, x) == 0.0);
  }

  SUBCASE("flat and structured forward agree") {
    for (std::uint64_t seed : {11, 12, 13}) {
      const WeightVector v = random_weights(seed);
      CHECK(forward(decode(v), x) == forward_flat(v.data(), Topology{}, x.data()));
    }
  }
}

TEST_CASE("published constants evaluate like an independent high-precision oracle") {
  Scaler dummy;  // the network itself is exercised in scaled space
  const TrainedModel model = reference_bbo_predictor(dummy);

  const double inputs[8] = {0.5, -0.3, 0.1, -0.8, 1.0, -1.0, 0.25, 0.75};
  const double got = forward(model.params, std::span<const double>(inputs, 8));
  const double want = static_cast<double>(oracle_eval(inputs));
  CHECK(std::abs(got - want) <= 1e-12);

  Rng rng(99);
  for (int rep = 0; rep < 50; ++rep) {
    double x[8];
    for (auto& v : x) v = rng.uniform(-1.0, 1.0);
    CHECK(std::abs(forward(model.params, std::span<const double>(x, 8)) -
                   static_cast<double>(oracle_eval(x))) <= 1e-12);
  }
}

TEST_CASE("mse objective matches a naive second implementation") {
  const ScaledTable table = random_table(7, 10);
  for (std::uint64_t seed : {21, 22, 23}) {
    const WeightVector v = random_weights(seed);
    const MlpParams p = decode(v);
    // reverse row order and long double accumulation
    long double acc = 0.0L;
    for (std::size_t i = table.rows; i-- > 0;) {
      std::array<double, 8> x;
      for (int k = 0; k < 8; ++k) x[static_cast<std::size_t>(k)] = table.row(i)[k];
      const long double e = forward(p, x) - table.y[i];
      acc += e * e;
    }
    const double want = static_cast<double>(acc / table.rows);
    CHECK(mse_objective(v, table) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("mse objective on exact and constant networks") {
  SUBCASE("perfect fit gives zero") {
    const WeightVector v = random_weights(31);
    const MlpParams p = decode(v);
    ScaledTable t;
    t.rows = 6;
    Rng rng(5);
    for (std::size_t i = 0; i < t.rows; ++i) {
      std::array<double, 8> x;
      for (auto& c : x) c = rng.uniform(-1.0, 1.0);
      t.x.insert(t.x.end(), x.begin(), x.end());
      t.y.push_back(forward(p, x));
    }
    CHECK(mse_objective(v, t) == 0.0);
  }

  SUBCASE("constant zero output against targets -1 and +1") {
    ScaledTable t;
    t.rows = 2;
    t.x.assign(16, 0.25);
    t.y = {-1.0, 1.0};
    CHECK(mse_objective(WeightVector(51, 0.0), t) == 1.0);
  }

  SUBCASE("empty table is rejected") {
    CHECK_THROWS_AS(mse_objective(WeightVector(51, 0.0), ScaledTable{}), RunError);
  }
}

TEST_CASE("forward output change is bounded by the crude Lipschitz estimate") {
  Rng rng(41);
  for (int rep = 0; rep < 200; ++rep) {
    const WeightVector v = random_weights(1000 + static_cast<std::uint64_t>(rep));
    const MlpParams p = decode(v);
    double w1_max = 0.0;
    for (double w : p.hidden_weights) w1_max = std::max(w1_max, std::abs(w));
    double w2_l1 = 0.0;
    for (double w : p.output_weights) w2_l1 += std::abs(w);

    std::array<double, 8> x;
    for (auto& c : x) c = rng.uniform(-1.0, 1.0);
    const double base = forward(p, x);
    const std::size_t k = rng.index(8);
    const double delta = rng.uniform(-0.5, 0.5);
    auto moved = x;
    moved[k] += delta;
    CHECK(std::abs(forward(p, moved) - base) <= w2_l1 * w1_max * std::abs(delta) + 1e-12);
  }
}
