#pragma once

#include <vector>

#include "ancientflow/grid.hpp"
#include "ancientflow/kernels.hpp"

namespace ancientflow::detail {

/// Copy of a field with two ghost rows beyond each pole and, in 2D, one
/// periodic ghost column on each side. Ghost rows come from the reflection
/// f(∓π/2 ∓ δ, θ) = f(∓π/2 ± δ, θ + π).
class PaddedField {
public:
  static constexpr int kGhostRows = 2;

  explicit PaddedField(const ScalarField& field);

  /// Pointer to node (i, j), -2 <= i <= n_psi + 1; -1 <= j <= n_theta in 2D.
  const double* at(int i, int j) const noexcept {
    return values_.data() + static_cast<std::size_t>(i + kGhostRows) * stride_ +
           static_cast<std::size_t>(j + col_offset_);
  }
  double operator()(int i, int j) const noexcept { return *at(i, j); }

private:
  std::vector<double> values_;
  std::size_t stride_;
  int col_offset_;
};

/// Calls fn(line, out) over the whole field: one call per latitude row in 2D,
/// a single call over the latitude column in axisymmetric mode.
template <class Fn>
void for_each_line(const LatLonGrid& grid, const PaddedField& padded, double* out, Fn&& fn) {
  kernels::StencilLine line;
  line.inv_h2 = 1.0 / (grid.h_psi * grid.h_psi);
  line.inv_2h = 1.0 / (2.0 * grid.h_psi);
  if (grid.axisymmetric()) {
    line.count = static_cast<std::size_t>(grid.n_psi);
    line.south = padded.at(-1, 0);
    line.center = padded.at(0, 0);
    line.north = padded.at(1, 0);
    line.tan_over_2h = grid.coef_tan_over_2h.data();
    fn(line, out);
    return;
  }
  line.count = static_cast<std::size_t>(grid.n_theta);
  for (int i = 0; i < grid.n_psi; ++i) {
    const std::size_t row = grid.index(i, 0);
    line.south = padded.at(i - 1, 0);
    line.center = padded.at(i, 0);
    line.north = padded.at(i + 1, 0);
    line.west = padded.at(i, -1);
    line.east = padded.at(i, 1);
    line.tan_over_2h = grid.coef_tan_over_2h.data() + row;
    line.theta_lap = grid.coef_theta_lap.data() + row;
    line.theta_grad = grid.coef_theta_grad.data() + row;
    fn(line, out + row);
  }
}

}  // namespace ancientflow::detail
