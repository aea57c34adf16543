#include "hlmlp/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <sstream>

#include "hlmlp/errors.hpp"
#include "hlmlp/rng.hpp"

namespace hlmlp {

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) {
    const auto first = cell.find_first_not_of(" \t\r");
    const auto last = cell.find_last_not_of(" \t\r");
    cells.push_back(first == std::string::npos ? std::string{} : cell.substr(first, last - first + 1));
  }
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

double parse_cell(const std::string& cell, std::size_t row, const char* column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) {
    throw DataError("row " + std::to_string(row) + ": non-numeric value '" + cell + "' in column " +
                    column);
  }
  return value;
}

int parse_categorical(double value, std::size_t row, const char* field, int lo, int hi) {
  const double rounded = std::round(value);
  if (value != rounded || rounded < lo || rounded > hi) {
    throw DataError("row " + std::to_string(row) + ": field " + field + " must be an integer in [" +
                    std::to_string(lo) + ", " + std::to_string(hi) + "], got " +
                    std::to_string(value));
  }
  return static_cast<int>(rounded);
}

void require_positive(double value, std::size_t row, const char* field) {
  if (!(value > 0.0)) {
    throw DataError("row " + std::to_string(row) + ": field " + field + " must be > 0, got " +
                    std::to_string(value));
  }
}

void validate_finite(double value, std::size_t row, const char* field) {
  if (!std::isfinite(value)) {
    throw DataError("row " + std::to_string(row) + ": field " + field + " is not finite");
  }
}

}  // namespace

std::uint64_t fnv1a64(std::span<const char> bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

Dataset load_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open data file: " + path.string());

  std::string contents((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

  Dataset dataset;
  dataset.source = path.string();
  dataset.checksum = fnv1a64(contents);

  std::stringstream stream(contents);
  std::string line;
  if (!std::getline(stream, line)) throw DataError("data file is empty: " + path.string());

  const auto header = split_line(line);
  const bool has_y2 = header.size() == 10 && header[9] == "Y2";
  if (!(header.size() == 9 || has_y2)) {
    throw DataError("bad header: expected X1..X8,Y1[,Y2], got '" + line + "'");
  }
  static constexpr std::array<const char*, 9> kExpected = {"X1", "X2", "X3", "X4", "X5",
                                                           "X6", "X7", "X8", "Y1"};
  for (std::size_t i = 0; i < kExpected.size(); ++i) {
    if (header[i] != kExpected[i]) {
      throw DataError("bad header: expected column " + std::string(kExpected[i]) + ", got '" +
                      header[i] + "'");
    }
  }

  std::size_t row = 1;  // header is row 1
  while (std::getline(stream, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto cells = split_line(line);
    if (cells.size() != header.size()) {
      throw DataError("row " + std::to_string(row) + ": expected " + std::to_string(header.size()) +
                      " columns, got " + std::to_string(cells.size()));
    }
    Sample s;
    s.relative_compactness = parse_cell(cells[0], row, "X1");
    s.surface_area = parse_cell(cells[1], row, "X2");
    s.wall_area = parse_cell(cells[2], row, "X3");
    s.roof_area = parse_cell(cells[3], row, "X4");
    s.overall_height = parse_cell(cells[4], row, "X5");
    const double orientation = parse_cell(cells[5], row, "X6");
    s.glazing_area = parse_cell(cells[6], row, "X7");
    const double gad = parse_cell(cells[7], row, "X8");
    s.heating_load = parse_cell(cells[8], row, "Y1");
    if (has_y2) parse_cell(cells[9], row, "Y2");  // parsed, ignored

    for (int k = 0; k < 5; ++k) validate_finite(s.features()[static_cast<std::size_t>(k)], row, kFeatureNames[static_cast<std::size_t>(k)]);
    validate_finite(s.glazing_area, row, "glazing_area");
    validate_finite(s.heating_load, row, "heating_load");
    require_positive(s.relative_compactness, row, "relative_compactness");
    require_positive(s.surface_area, row, "surface_area");
    require_positive(s.wall_area, row, "wall_area");
    require_positive(s.roof_area, row, "roof_area");
    require_positive(s.overall_height, row, "overall_height");
    s.orientation = parse_categorical(orientation, row, "orientation", 2, 5);
    s.glazing_area_distribution = parse_categorical(gad, row, "glazing_area_distribution", 0, 5);
    if (s.glazing_area < 0.0 || s.glazing_area > 0.4) {
      throw DataError("row " + std::to_string(row) + ": field glazing_area must be in [0, 0.4], got " +
                      std::to_string(s.glazing_area));
    }
    dataset.samples.push_back(s);
  }
  return dataset;
}

DataSplit split(const Dataset& dataset, double train_fraction, std::uint64_t seed) {
  if (dataset.samples.empty()) throw DataError("split: dataset is empty");
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw DataError("split: train fraction must be in (0, 1), got " + std::to_string(train_fraction));
  }
  const std::size_t n = dataset.samples.size();
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  for (std::size_t i = n - 1; i > 0; --i) {
    std::swap(perm[i], perm[rng.index(i + 1)]);
  }
  const auto n_train =
      static_cast<std::size_t>(std::llround(static_cast<double>(n) * train_fraction));
  DataSplit s;
  s.seed = seed;
  s.fraction = train_fraction;
  s.train_indices.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(n_train));
  s.test_indices.assign(perm.begin() + static_cast<std::ptrdiff_t>(n_train), perm.end());
  return s;
}

Scaler::Scaler(std::array<double, 8> fmin, std::array<double, 8> fmax, double tmin, double tmax)
    : fmin_(fmin), fmax_(fmax), tmin_(tmin), tmax_(tmax), fitted_(true) {}

double Scaler::scale_feature(int k, double x) const {
  const auto i = static_cast<std::size_t>(k);
  return 2.0 * (x - fmin_[i]) / (fmax_[i] - fmin_[i]) - 1.0;
}

double Scaler::unscale_feature(int k, double s) const {
  const auto i = static_cast<std::size_t>(k);
  return fmin_[i] + (s + 1.0) * 0.5 * (fmax_[i] - fmin_[i]);
}

double Scaler::scale_target(double y) const { return 2.0 * (y - tmin_) / (tmax_ - tmin_) - 1.0; }

double Scaler::unscale_target(double s) const { return tmin_ + (s + 1.0) * 0.5 * (tmax_ - tmin_); }

namespace {

Scaler fit_scaler_impl(const Dataset& dataset, std::span<const std::size_t> indices) {
  if (indices.empty()) throw DataError("fit_scaler: no rows to fit on");
  std::array<double, 8> fmin{};
  std::array<double, 8> fmax{};
  fmin.fill(std::numeric_limits<double>::infinity());
  fmax.fill(-std::numeric_limits<double>::infinity());
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -std::numeric_limits<double>::infinity();
  for (std::size_t idx : indices) {
    const auto f = dataset.samples[idx].features();
    for (std::size_t k = 0; k < 8; ++k) {
      fmin[k] = std::min(fmin[k], f[k]);
      fmax[k] = std::max(fmax[k], f[k]);
    }
    tmin = std::min(tmin, dataset.samples[idx].heating_load);
    tmax = std::max(tmax, dataset.samples[idx].heating_load);
  }
  for (std::size_t k = 0; k < 8; ++k) {
    if (!(fmax[k] > fmin[k])) {
      throw DataError(std::string("fit_scaler: feature ") + kFeatureNames[k] +
                      " is constant over the fitted rows");
    }
  }
  if (!(tmax > tmin)) throw DataError("fit_scaler: target is constant over the fitted rows");
  return Scaler(fmin, fmax, tmin, tmax);
}

}  // namespace

Scaler fit_scaler(const Dataset& dataset) {
  std::vector<std::size_t> all(dataset.samples.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return fit_scaler_impl(dataset, all);
}

Scaler fit_scaler(const Dataset& dataset, std::span<const std::size_t> indices) {
  return fit_scaler_impl(dataset, indices);
}

ScaledSample apply_scaler(const Scaler& scaler, const Sample& sample) {
  if (!scaler.fitted()) throw RunError("apply_scaler: scaler is not fitted");
  ScaledSample out;
  const auto f = sample.features();
  for (int k = 0; k < 8; ++k) {
    out.features[static_cast<std::size_t>(k)] = scaler.scale_feature(k, f[static_cast<std::size_t>(k)]);
    if (std::abs(out.features[static_cast<std::size_t>(k)]) > 1.0) out.extrapolated = true;
  }
  out.target = scaler.scale_target(sample.heating_load);
  if (std::abs(out.target) > 1.0) out.extrapolated = true;
  return out;
}

ScaledTable make_scaled_table(const Dataset& dataset, std::span<const std::size_t> indices,
                              const Scaler& scaler) {
  ScaledTable t;
  t.rows = indices.size();
  t.inputs = 8;
  t.x.reserve(indices.size() * 8);
  t.y.reserve(indices.size());
  for (std::size_t idx : indices) {
    const auto s = apply_scaler(scaler, dataset.samples[idx]);
    t.x.insert(t.x.end(), s.features.begin(), s.features.end());
    t.y.push_back(s.target);
  }
  return t;
}

}  // namespace hlmlp
