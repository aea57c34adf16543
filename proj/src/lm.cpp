#include "hlmlp/lm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "hlmlp/errors.hpp"

namespace hlmlp {

const char* lm_status_name(LmStatus s) {
  switch (s) {
    case LmStatus::Converged: return "converged";
    case LmStatus::EpochLimit: return "epoch-cap";
    case LmStatus::Diverged: return "diverged";
  }
  return "?";
}

std::vector<double> residuals(const WeightVector& v, const ScaledTable& table, Topology topology) {
  if (table.rows == 0) throw RunError("residuals: empty training set");
  std::vector<double> e(table.rows);
  for (std::size_t i = 0; i < table.rows; ++i) {
    e[i] = forward_flat(v.data(), topology, table.row(i)) - table.y[i];
  }
  return e;
}

double sum_squares(const std::vector<double>& e) {
  double acc = 0.0;
  for (double r : e) acc += r * r;
  return acc;
}

std::vector<double> jacobian(const WeightVector& v, const ScaledTable& table, Topology topology) {
  if (table.rows == 0) throw RunError("jacobian: empty training set");
  const int in = topology.inputs;
  const int h = topology.hidden;
  const auto dim = static_cast<std::size_t>(topology.weight_count());
  if (v.size() != dim) throw RunError("jacobian: weight vector length mismatch");

  const double* w = v.data();
  const double* hb = w + static_cast<std::size_t>(h) * in;
  const double* ow = hb + h;

  std::vector<double> jac(table.rows * dim);
  std::vector<double> z(static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < table.rows; ++i) {
    const double* x = table.row(i);
    double* row = jac.data() + i * dim;
    for (int j = 0; j < h; ++j) {
      double pre = hb[j];
      const double* wj = w + static_cast<std::size_t>(j) * in;
      for (int k = 0; k < in; ++k) pre += wj[k] * x[k];
      z[static_cast<std::size_t>(j)] = tansig(pre);
    }
    for (int j = 0; j < h; ++j) {
      const double zj = z[static_cast<std::size_t>(j)];
      const double gate = ow[j] * (1.0 - zj * zj);  // tansig' = 1 - tansig^2
      for (int k = 0; k < in; ++k) row[j * in + k] = gate * x[k];
      row[h * in + j] = gate;
      row[h * (in + 1) + j] = zj;
    }
    row[h * (in + 2)] = 1.0;
  }
  return jac;
}

namespace detail {

namespace {

// In-place Cholesky solve of A x = b for symmetric positive definite A.
bool cholesky_solve(std::vector<double>& a, std::vector<double>& b, std::size_t d) {
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a[j * d + j];
    for (std::size_t k = 0; k < j; ++k) diag -= a[j * d + k] * a[j * d + k];
    if (!(diag > 0.0)) return false;
    diag = std::sqrt(diag);
    a[j * d + j] = diag;
    for (std::size_t i = j + 1; i < d; ++i) {
      double s = a[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= a[i * d + k] * a[j * d + k];
      a[i * d + j] = s / diag;
    }
  }
  for (std::size_t i = 0; i < d; ++i) {  // forward substitution
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= a[i * d + k] * b[k];
    b[i] = s / a[i * d + i];
  }
  for (std::size_t ii = d; ii-- > 0;) {  // back substitution
    double s = b[ii];
    for (std::size_t k = ii + 1; k < d; ++k) s -= a[k * d + ii] * b[k];
    b[ii] = s / a[ii * d + ii];
  }
  return true;
}

}  // namespace

std::optional<std::vector<double>> damped_step(const std::vector<double>& jac,
                                               const std::vector<double>& e, std::size_t dim,
                                               double mu) {
  const std::size_t rows = e.size();
  std::vector<double> jtj(dim * dim, 0.0);
  std::vector<double> rhs(dim, 0.0);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = jac.data() + i * dim;
    for (std::size_t a = 0; a < dim; ++a) {
      rhs[a] -= row[a] * e[i];
      for (std::size_t b = a; b < dim; ++b) jtj[a * dim + b] += row[a] * row[b];
    }
  }
  for (std::size_t a = 0; a < dim; ++a) {
    jtj[a * dim + a] += mu;
    for (std::size_t b = 0; b < a; ++b) jtj[a * dim + b] = jtj[b * dim + a];
  }
  if (!cholesky_solve(jtj, rhs, dim)) return std::nullopt;
  return rhs;
}

}  // namespace detail

namespace {

LmState step_from(const LmState& state, const LmConfig& config, const ScaledTable& table,
                  Topology topology, const std::vector<double>& jac, const std::vector<double>& e,
                  std::uint64_t* evaluations) {
  const auto dim = static_cast<std::size_t>(topology.weight_count());
  LmState next = state;
  next.epoch = state.epoch + 1;

  double mu = state.mu;
  while (true) {
    const auto delta = detail::damped_step(jac, e, dim, mu);
    if (delta.has_value()) {
      double max_step = 0.0;
      for (double d : *delta) max_step = std::max(max_step, std::abs(d));
      if (max_step == 0.0) {
        // Zero right-hand side: already at a stationary point.
        next.mu = std::max(mu * config.mu_decrease, std::numeric_limits<double>::min());
        return next;
      }
      WeightVector trial = state.x;
      for (std::size_t k = 0; k < dim; ++k) trial[k] += (*delta)[k];
      const double v_trial = sum_squares(residuals(trial, table, topology));
      if (evaluations) ++*evaluations;
      if (v_trial < state.v) {
        next.x = std::move(trial);
        next.v = v_trial;
        next.mu = std::max(mu * config.mu_decrease, std::numeric_limits<double>::min());
        return next;
      }
    }
    mu *= config.mu_increase;
    if (mu > config.mu_max) {
      next.mu = mu;
      next.diverged = true;
      return next;
    }
  }
}

}  // namespace

LmState lm_step(const LmState& state, const LmConfig& config, const ScaledTable& table,
                Topology topology) {
  const auto jac = jacobian(state.x, table, topology);
  const auto e = residuals(state.x, table, topology);
  return step_from(state, config, table, topology, jac, e, nullptr);
}

LmTrainResult lm_train(const WeightVector& init, const LmConfig& config, const ScaledTable& table,
                       Topology topology) {
  if (init.size() != static_cast<std::size_t>(topology.weight_count())) {
    throw RunError("lm_train: weight vector length mismatch");
  }
  const auto start = std::chrono::steady_clock::now();
  const auto dim = static_cast<std::size_t>(topology.weight_count());

  LmTrainResult out;
  LmState state;
  state.x = init;
  state.mu = config.initial_mu;
  std::uint64_t evaluations = 1;
  state.v = sum_squares(residuals(init, table, topology));

  std::vector<double> curve;
  out.status = LmStatus::EpochLimit;
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    const auto jac = jacobian(state.x, table, topology);
    const auto e = residuals(state.x, table, topology);
    double grad_inf = 0.0;  // gradient of V is 2 J^T e
    for (std::size_t a = 0; a < dim; ++a) {
      double g = 0.0;
      for (std::size_t i = 0; i < table.rows; ++i) g += jac[i * dim + a] * e[i];
      grad_inf = std::max(grad_inf, std::abs(2.0 * g));
    }
    if (grad_inf < config.gradient_tolerance) {
      out.status = LmStatus::Converged;
      curve.push_back(state.v);
      break;
    }
    state = step_from(state, config, table, topology, jac, e, &evaluations);
    curve.push_back(state.v);
    if (state.diverged) {
      out.status = LmStatus::Diverged;
      break;
    }
  }

  out.result.best_vector = state.x;
  out.result.best_objective = state.v;
  out.result.curve = std::move(curve);
  out.result.evaluations = evaluations;
  out.result.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace hlmlp
