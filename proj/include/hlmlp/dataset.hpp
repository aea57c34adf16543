#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "hlmlp/mlp.hpp"

namespace hlmlp {

// One building record from the energy-efficiency corpus. Feature order is the
// canonical network input order: RC, SA, WA, RA, OH, orientation, GA, GAD.
struct Sample {
  double relative_compactness = 0.0;
  double surface_area = 0.0;       // m^2
  double wall_area = 0.0;          // m^2
  double roof_area = 0.0;          // m^2
  double overall_height = 0.0;     // m
  int orientation = 2;             // categorical, 2..5
  double glazing_area = 0.0;       // fraction of floor area, 0..0.4
  int glazing_area_distribution = 0;  // categorical, 0..5
  double heating_load = 0.0;       // kWh/m^2, target

  std::array<double, 8> features() const {
    return {relative_compactness,
            surface_area,
            wall_area,
            roof_area,
            overall_height,
            static_cast<double>(orientation),
            glazing_area,
            static_cast<double>(glazing_area_distribution)};
  }
};

inline constexpr std::array<const char*, 8> kFeatureNames = {
    "relative_compactness", "surface_area", "wall_area",   "roof_area",
    "overall_height",       "orientation",  "glazing_area", "glazing_area_distribution"};

struct Dataset {
  std::vector<Sample> samples;
  std::string source;         // file path
  std::uint64_t checksum = 0;  // FNV-1a over the file bytes

  std::size_t size() const { return samples.size(); }
};

struct DataSplit {
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
  double fraction = 0.0;
};

// Affine map of each feature and the target to [-1, 1] over the fitted rows.
// Out-of-range inputs extrapolate linearly, no clamping.
class Scaler {
 public:
  Scaler() = default;
  Scaler(std::array<double, 8> fmin, std::array<double, 8> fmax, double tmin, double tmax);

  bool fitted() const { return fitted_; }
  double scale_feature(int k, double x) const;
  double unscale_feature(int k, double s) const;
  double scale_target(double y) const;
  double unscale_target(double s) const;

  const std::array<double, 8>& feature_min() const { return fmin_; }
  const std::array<double, 8>& feature_max() const { return fmax_; }
  double target_min() const { return tmin_; }
  double target_max() const { return tmax_; }

 private:
  std::array<double, 8> fmin_{};
  std::array<double, 8> fmax_{};
  double tmin_ = 0.0;
  double tmax_ = 0.0;
  bool fitted_ = false;
};

struct ScaledSample {
  std::array<double, 8> features{};
  double target = 0.0;
  bool extrapolated = false;  // any component fell outside the fitted range
};

// Loads a comma-separated file with header X1..X8,Y1[,Y2]; Y2 is parsed and
// ignored. Errors name the offending row (and field, for invariant
// violations).
Dataset load_csv(const std::filesystem::path& path);

std::uint64_t fnv1a64(std::span<const char> bytes);

// Seed-driven uniform shuffle; the first round(n * train_fraction) indices of
// the permutation form the training set.
DataSplit split(const Dataset& dataset, double train_fraction, std::uint64_t seed);

Scaler fit_scaler(const Dataset& dataset);
Scaler fit_scaler(const Dataset& dataset, std::span<const std::size_t> indices);

ScaledSample apply_scaler(const Scaler& scaler, const Sample& sample);

ScaledTable make_scaled_table(const Dataset& dataset, std::span<const std::size_t> indices,
                              const Scaler& scaler);

}  // namespace hlmlp
