#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>
#include <string>

#include "hlmlp/dataset.hpp"
#include "hlmlp/errors.hpp"
#include "hlmlp/rng.hpp"
#include "test_util.hpp"

using namespace hlmlp;

namespace {

const char* kHeader = "X1,X2,X3,X4,X5,X6,X7,X8,Y1,Y2\n";

std::string row(double rc, double sa, double wa, double ra, double oh, int o, double ga, int gad,
                double hl) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%.2f,%.2f,%.2f,%.2f,%.2f,%d,%.2f,%d,%.2f,%.2f\n", rc, sa, wa,
                ra, oh, o, ga, gad, hl, hl + 5.0);
  return buf;
}

Dataset tiny_dataset() {
  // two rows spanning distinct values on every feature
  Dataset d;
  Sample a;
  a.relative_compactness = 0.62;
  a.surface_area = 514.5;
  a.wall_area = 245.0;
  a.roof_area = 110.25;
  a.overall_height = 3.5;
  a.orientation = 2;
  a.glazing_area = 0.0;
  a.glazing_area_distribution = 0;
  a.heating_load = 0.0;
  Sample b;
  b.relative_compactness = 0.98;
  b.surface_area = 808.5;
  b.wall_area = 416.5;
  b.roof_area = 220.5;
  b.overall_height = 7.0;
  b.orientation = 5;
  b.glazing_area = 0.4;
  b.glazing_area_distribution = 5;
  b.heating_load = 10.0;
  d.samples = {a, b};
  return d;
}

}  // namespace

TEST_CASE("canonical file loads with 768 rows and a stable checksum") {
  const Dataset d = load_csv(test_util::canonical_csv());
  CHECK(d.size() == 768);
  CHECK(d.checksum != 0);
  const Dataset again = load_csv(test_util::canonical_csv());
  CHECK(again.checksum == d.checksum);
}

TEST_CASE("csv loader edge cases") {
  const auto dir = test_util::fresh_dir("csv");

  SUBCASE("header only is a valid empty dataset, but cannot be split") {
    const auto path = test_util::write_file(dir, "empty.csv", kHeader);
    const Dataset d = load_csv(path);
    CHECK(d.size() == 0);
    CHECK_THROWS_AS(split(d, 0.7, 1), DataError);
  }

  SUBCASE("Y2 column is optional") {
    const auto path = test_util::write_file(dir, "noy2.csv",
                                            "X1,X2,X3,X4,X5,X6,X7,X8,Y1\n"
                                            "0.98,514.50,294.00,110.25,7.00,2,0.00,0,15.55\n");
    CHECK(load_csv(path).size() == 1);
  }

  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_csv(dir / "nope.csv"), DataError);
  }

  SUBCASE("non-numeric cell names the row") {
    const auto path = test_util::write_file(
        dir, "bad.csv", std::string(kHeader) + row(0.98, 514.5, 294, 110.25, 7, 2, 0.0, 0, 15.55) +
                            "0.9,x,294.00,110.25,7.00,2,0.00,0,15.55,20\n");
    try {
      load_csv(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("row 3") != std::string::npos);
    }
  }

  SUBCASE("wrong column count names the row") {
    const auto path =
        test_util::write_file(dir, "cols.csv", std::string(kHeader) + "0.9,514.5,294.0\n");
    try {
      load_csv(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }

  SUBCASE("glazing area above 0.4 names row and field") {
    const auto path = test_util::write_file(
        dir, "ga.csv", std::string(kHeader) + row(0.98, 514.5, 294, 110.25, 7, 2, 0.7, 1, 15.55));
    try {
      load_csv(path);
      FAIL("expected DataError");
    } catch (const DataError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("row 2") != std::string::npos);
      CHECK(msg.find("glazing_area") != std::string::npos);
    }
  }

  SUBCASE("orientation outside 2..5 is rejected") {
    const auto path = test_util::write_file(
        dir, "orient.csv", std::string(kHeader) + row(0.98, 514.5, 294, 110.25, 7, 7, 0.1, 1, 15.55));
    CHECK_THROWS_AS(load_csv(path), DataError);
  }

  SUBCASE("non-positive geometry is rejected") {
    const auto path = test_util::write_file(
        dir, "neg.csv", std::string(kHeader) + row(0.98, -514.5, 294, 110.25, 7, 2, 0.1, 1, 15.55));
    CHECK_THROWS_AS(load_csv(path), DataError);
  }

  SUBCASE("bad header is rejected") {
    const auto path = test_util::write_file(dir, "hdr.csv", "A,B,C\n");
    CHECK_THROWS_AS(load_csv(path), DataError);
  }
}

TEST_CASE("split sizes, determinism and partition") {
  const Dataset d = load_csv(test_util::canonical_csv());

  const DataSplit s = split(d, 0.7, 1);
  CHECK(s.train_indices.size() == 538);
  CHECK(s.test_indices.size() == 230);

  const DataSplit again = split(d, 0.7, 1);
  CHECK(again.train_indices == s.train_indices);
  CHECK(again.test_indices == s.test_indices);

  const DataSplit other = split(d, 0.7, 2);
  CHECK(other.train_indices != s.train_indices);

  for (const DataSplit* sp : {&s, &other}) {
    std::set<std::size_t> all(sp->train_indices.begin(), sp->train_indices.end());
    all.insert(sp->test_indices.begin(), sp->test_indices.end());
    CHECK(all.size() == d.size());
    CHECK(*all.rbegin() == d.size() - 1);
  }
}

TEST_CASE("split rejects bad fractions") {
  const Dataset d = tiny_dataset();
  CHECK_THROWS_AS(split(d, 0.0, 1), DataError);
  CHECK_THROWS_AS(split(d, 1.0, 1), DataError);
  CHECK_THROWS_AS(split(d, -0.5, 1), DataError);
}

TEST_CASE("scaler endpoints, midpoint and round trip") {
  const Dataset d = tiny_dataset();
  const Scaler scaler = fit_scaler(d);

  const ScaledSample lo = apply_scaler(scaler, d.samples[0]);
  const ScaledSample hi = apply_scaler(scaler, d.samples[1]);
  for (int k = 0; k < 8; ++k) {
    CHECK(lo.features[static_cast<std::size_t>(k)] == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(hi.features[static_cast<std::size_t>(k)] == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(lo.target == -1.0);
  CHECK(hi.target == 1.0);
  CHECK_FALSE(lo.extrapolated);

  // midpoint of the target range maps to zero
  CHECK(scaler.scale_target(5.0) == doctest::Approx(0.0).epsilon(1e-15));

  Rng rng(11);
  for (int rep = 0; rep < 500; ++rep) {
    const int k = static_cast<int>(rng.index(8));
    const double x = rng.uniform(scaler.feature_min()[static_cast<std::size_t>(k)],
                                 scaler.feature_max()[static_cast<std::size_t>(k)]);
    const double back = scaler.unscale_feature(k, scaler.scale_feature(k, x));
    CHECK(std::abs(back - x) <= 1e-12 * std::max(1.0, std::abs(x)));
    const double y = rng.uniform(scaler.target_min(), scaler.target_max());
    CHECK(std::abs(scaler.unscale_target(scaler.scale_target(y)) - y) <=
          1e-12 * std::max(1.0, std::abs(y)));
  }
}

TEST_CASE("out-of-range inputs extrapolate and are flagged") {
  const Dataset d = tiny_dataset();
  const Scaler scaler = fit_scaler(d);

  Sample s = d.samples[1];
  // 10% beyond the fitted surface-area maximum
  s.surface_area = scaler.feature_max()[1] + 0.1 * (scaler.feature_max()[1] - scaler.feature_min()[1]);
  const ScaledSample scaled = apply_scaler(scaler, s);
  CHECK(scaled.extrapolated);
  CHECK(scaled.features[1] == doctest::Approx(1.2).epsilon(1e-12));
}

TEST_CASE("constant feature is rejected by name") {
  Dataset d = tiny_dataset();
  d.samples[1].overall_height = d.samples[0].overall_height;
  try {
    fit_scaler(d);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("overall_height") != std::string::npos);
  }
}

TEST_CASE("scaler state depends on training rows only") {
  Dataset d = load_csv(test_util::canonical_csv());
  const DataSplit s = split(d, 0.7, 1);
  const Scaler fitted = fit_scaler(d, s.train_indices);

  // poke a test row; the fitted ranges must not move
  Dataset poked = d;
  poked.samples[s.test_indices.front()].surface_area = 99999.0;
  poked.samples[s.test_indices.front()].heating_load = -1234.0;
  const Scaler refit = fit_scaler(poked, s.train_indices);
  CHECK(refit.feature_min() == fitted.feature_min());
  CHECK(refit.feature_max() == fitted.feature_max());
  CHECK(refit.target_min() == fitted.target_min());
  CHECK(refit.target_max() == fitted.target_max());
}

TEST_CASE("scaled table matches per-sample scaling") {
  const Dataset d = load_csv(test_util::canonical_csv());
  const DataSplit s = split(d, 0.7, 1);
  const Scaler scaler = fit_scaler(d, s.train_indices);
  const ScaledTable t = make_scaled_table(d, s.train_indices, scaler);
  REQUIRE(t.rows == s.train_indices.size());
  for (std::size_t i = 0; i < t.rows; i += 97) {
    const ScaledSample expect = apply_scaler(scaler, d.samples[s.train_indices[i]]);
    for (int k = 0; k < 8; ++k) CHECK(t.row(i)[k] == expect.features[static_cast<std::size_t>(k)]);
    CHECK(t.y[i] == expect.target);
  }
}
