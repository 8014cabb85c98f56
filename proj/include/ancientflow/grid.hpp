#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

namespace ancientflow {

/// Latitude/longitude discretization of the round sphere ds² = dψ² + cos²ψ dθ².
///
/// Latitudes are staggered, ψ_i = -π/2 + (i + 1/2) h_psi, so no node sits on a
/// pole and tanψ, secψ stay finite. n_theta == 1 selects axisymmetric mode.
/// Otherwise n_theta is even, which turns the pole reflection θ -> θ + π into
/// an exact index shift.
struct LatLonGrid {
  int n_psi = 0;
  int n_theta = 0;
  std::vector<double> psi_nodes;
  std::vector<double> theta_nodes;
  double h_psi = 0.0;
  double h_theta = 0.0;

  // Per-latitude trigonometry, evaluated once.
  std::vector<double> cos_psi;
  std::vector<double> sin_psi;
  std::vector<double> tan_psi;
  std::vector<double> sec_psi;

  // Stencil coefficients expanded to one entry per node (row-major), so the
  // line kernels see the same layout in both modes.
  std::vector<double> coef_tan_over_2h;     // tanψ / (2 h_psi)
  std::vector<double> coef_theta_lap;       // sec²ψ / h_theta²  (empty if axisymmetric)
  std::vector<double> coef_theta_grad;      // sec²ψ / (4 h_theta²)  (empty if axisymmetric)

  bool axisymmetric() const noexcept { return n_theta == 1; }
  std::size_t size() const noexcept {
    return static_cast<std::size_t>(n_psi) * static_cast<std::size_t>(n_theta);
  }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_theta) +
           static_cast<std::size_t>(j);
  }
  bool same_shape(const LatLonGrid& other) const noexcept {
    return n_psi == other.n_psi && n_theta == other.n_theta;
  }
};

using GridPtr = std::shared_ptr<const LatLonGrid>;

/// Throws DomainError for n_psi < 8 or n_theta not in {1} ∪ {even >= 8}.
GridPtr build_grid(int n_psi, int n_theta);

/// One real value per grid node, row-major by latitude.
class ScalarField {
public:
  ScalarField() = default;
  explicit ScalarField(GridPtr grid, double fill = 0.0);
  ScalarField(GridPtr grid, std::vector<double> values);

  /// Samples fn(psi, theta) at every node.
  static ScalarField from_function(GridPtr grid,
                                   const std::function<double(double, double)>& fn);

  const LatLonGrid& grid() const noexcept { return *grid_; }
  const GridPtr& grid_ptr() const noexcept { return grid_; }

  std::size_t size() const noexcept { return values_.size(); }
  double& operator()(int i, int j) noexcept { return values_[grid_->index(i, j)]; }
  double operator()(int i, int j) const noexcept { return values_[grid_->index(i, j)]; }
  double& operator[](std::size_t k) noexcept { return values_[k]; }
  double operator[](std::size_t k) const noexcept { return values_[k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  double* data() noexcept { return values_.data(); }
  const double* data() const noexcept { return values_.data(); }

  double min() const;
  double max() const;
  double max_abs() const;
  bool all_finite() const;

  /// Pointwise map, keeping the grid.
  ScalarField map(const std::function<double(double)>& fn) const;

  friend bool operator==(const ScalarField& a, const ScalarField& b);

private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Sup-norm of a - b; grids must have the same shape.
double max_abs_difference(const ScalarField& a, const ScalarField& b);

}  // namespace ancientflow
