#include "ancientflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ancientflow/errors.hpp"

namespace ancientflow {

PositivityLost::PositivityLost(double t, double min_value)
    : Error("positivity lost at t = " + std::to_string(t) +
            " (min v = " + std::to_string(min_value) + ")"),
      t_(t),
      min_value_(min_value) {}

TimeCrossedZero::TimeCrossedZero(double t, double dt)
    : Error("step from t = " + std::to_string(t) + " with dt = " + std::to_string(dt) +
            " reaches t >= 0") {}

MalformedConfig::MalformedConfig(std::size_t line, const std::string& what)
    : Error("config line " + std::to_string(line) + ": " + what), line_(line) {}

InvalidValue::InvalidValue(std::string field, const std::string& what)
    : Error("invalid value for '" + field + "': " + what), field_(std::move(field)) {}

IoError::IoError(std::string path, const std::string& what)
    : Error(path + ": " + what), path_(std::move(path)) {}

GridPtr build_grid(int n_psi, int n_theta) {
  if (n_psi < 8) {
    throw DomainError("n_psi must be >= 8, got " + std::to_string(n_psi));
  }
  if (n_theta != 1 && (n_theta < 8 || n_theta % 2 != 0)) {
    throw DomainError("n_theta must be 1 or an even integer >= 8, got " +
                      std::to_string(n_theta));
  }
  constexpr double pi = std::numbers::pi;

  auto grid = std::make_shared<LatLonGrid>();
  grid->n_psi = n_psi;
  grid->n_theta = n_theta;
  grid->h_psi = pi / n_psi;
  grid->h_theta = 2.0 * pi / n_theta;

  grid->psi_nodes.resize(n_psi);
  grid->cos_psi.resize(n_psi);
  grid->sin_psi.resize(n_psi);
  grid->tan_psi.resize(n_psi);
  grid->sec_psi.resize(n_psi);
  for (int i = 0; i < n_psi; ++i) {
    const double psi = -pi / 2 + (i + 0.5) * grid->h_psi;
    grid->psi_nodes[i] = psi;
    grid->cos_psi[i] = std::cos(psi);
    grid->sin_psi[i] = std::sin(psi);
    grid->tan_psi[i] = std::tan(psi);
    grid->sec_psi[i] = 1.0 / grid->cos_psi[i];
  }
  grid->theta_nodes.resize(n_theta);
  for (int j = 0; j < n_theta; ++j) grid->theta_nodes[j] = j * grid->h_theta;

  const std::size_t n = grid->size();
  grid->coef_tan_over_2h.resize(n);
  if (n_theta > 1) {
    grid->coef_theta_lap.resize(n);
    grid->coef_theta_grad.resize(n);
  }
  const double inv_ht2 = 1.0 / (grid->h_theta * grid->h_theta);
  for (int i = 0; i < n_psi; ++i) {
    const double tan_c = grid->tan_psi[i] / (2.0 * grid->h_psi);
    const double sec2 = grid->sec_psi[i] * grid->sec_psi[i];
    for (int j = 0; j < n_theta; ++j) {
      const std::size_t k = grid->index(i, j);
      grid->coef_tan_over_2h[k] = tan_c;
      if (n_theta > 1) {
        grid->coef_theta_lap[k] = sec2 * inv_ht2;
        grid->coef_theta_grad[k] = 0.25 * sec2 * inv_ht2;
      }
    }
  }
  return grid;
}

ScalarField::ScalarField(GridPtr grid, double fill)
    : grid_(std::move(grid)), values_(grid_->size(), fill) {}

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size()) {
    throw DomainError("field has " + std::to_string(values_.size()) +
                      " values for a grid of " + std::to_string(grid_->size()) + " nodes");
  }
}

ScalarField ScalarField::from_function(GridPtr grid,
                                       const std::function<double(double, double)>& fn) {
  ScalarField out(grid);
  for (int i = 0; i < grid->n_psi; ++i) {
    for (int j = 0; j < grid->n_theta; ++j) {
      out(i, j) = fn(grid->psi_nodes[i], grid->theta_nodes[j]);
    }
  }
  return out;
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

double ScalarField::max_abs() const {
  double m = 0.0;
  for (double x : values_) m = std::max(m, std::abs(x));
  return m;
}

bool ScalarField::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double x) { return std::isfinite(x); });
}

ScalarField ScalarField::map(const std::function<double(double)>& fn) const {
  ScalarField out(grid_);
  for (std::size_t k = 0; k < values_.size(); ++k) out.values_[k] = fn(values_[k]);
  return out;
}

bool operator==(const ScalarField& a, const ScalarField& b) {
  return a.grid_->same_shape(*b.grid_) && a.values_ == b.values_;
}

double max_abs_difference(const ScalarField& a, const ScalarField& b) {
  if (!a.grid().same_shape(b.grid())) throw DomainError("grid shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

}  // namespace ancientflow
