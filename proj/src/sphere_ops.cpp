#include "ancientflow/sphere_ops.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ancientflow/errors.hpp"
#include "ancientflow/kernels.hpp"
#include "padded_field.hpp"

namespace ancientflow {

namespace detail {

PaddedField::PaddedField(const ScalarField& field) {
  const LatLonGrid& g = field.grid();
  const bool axi = g.axisymmetric();
  const int cols = axi ? 1 : g.n_theta + 2;
  col_offset_ = axi ? 0 : 1;
  stride_ = static_cast<std::size_t>(cols);
  const int rows = g.n_psi + 2 * kGhostRows;
  values_.resize(static_cast<std::size_t>(rows) * stride_);

  const int half_turn = axi ? 0 : g.n_theta / 2;
  for (int i = -kGhostRows; i < g.n_psi + kGhostRows; ++i) {
    int src = i;
    int shift = 0;
    if (i < 0) {
      src = -1 - i;
      shift = half_turn;
    } else if (i >= g.n_psi) {
      src = 2 * g.n_psi - 1 - i;
      shift = half_turn;
    }
    double* row = values_.data() + static_cast<std::size_t>(i + kGhostRows) * stride_;
    if (axi) {
      row[0] = field(src, 0);
      continue;
    }
    for (int j = -1; j <= g.n_theta; ++j) {
      const int jj = ((j + shift) % g.n_theta + g.n_theta) % g.n_theta;
      row[j + col_offset_] = field(src, jj);
    }
  }
}

}  // namespace detail

ScalarField laplace_beltrami(const ScalarField& field) {
  const detail::PaddedField padded(field);
  ScalarField out(field.grid_ptr());
  const auto& k = kernels::active();
  detail::for_each_line(field.grid(), padded, out.data(),
                        [&](const kernels::StencilLine& line, double* dst) { k.laplacian(line, dst); });
  return out;
}

ScalarField grad_sq_sphere(const ScalarField& field) {
  const detail::PaddedField padded(field);
  ScalarField out(field.grid_ptr());
  const auto& k = kernels::active();
  detail::for_each_line(field.grid(), padded, out.data(),
                        [&](const kernels::StencilLine& line, double* dst) { k.grad_sq(line, dst); });
  return out;
}

ScalarField partial_psi(const ScalarField& field, int order) {
  if (order < 1 || order > 4) {
    throw DomainError("partial_psi order must be 1..4, got " + std::to_string(order));
  }
  const LatLonGrid& g = field.grid();
  const detail::PaddedField p(field);
  const double h = g.h_psi;
  ScalarField out(field.grid_ptr());
  for (int i = 0; i < g.n_psi; ++i) {
    for (int j = 0; j < g.n_theta; ++j) {
      const double m2 = p(i - 2, j), m1 = p(i - 1, j), c = p(i, j), p1 = p(i + 1, j),
                   p2 = p(i + 2, j);
      double d = 0.0;
      switch (order) {
        case 1: d = (p1 - m1) / (2.0 * h); break;
        case 2: d = ((p1 + m1) - (c + c)) / (h * h); break;
        case 3: d = ((p2 - m2) - 2.0 * (p1 - m1)) / (2.0 * h * h * h); break;
        case 4: d = (((p2 + m2) - 4.0 * (p1 + m1)) + 6.0 * c) / (h * h * h * h); break;
      }
      out(i, j) = d;
    }
  }
  return out;
}

ScalarField partial_theta(const ScalarField& field) {
  const LatLonGrid& g = field.grid();
  ScalarField out(field.grid_ptr());
  if (g.axisymmetric()) return out;
  const detail::PaddedField p(field);
  const double inv = 1.0 / (2.0 * g.h_theta);
  for (int i = 0; i < g.n_psi; ++i)
    for (int j = 0; j < g.n_theta; ++j) out(i, j) = (p(i, j + 1) - p(i, j - 1)) * inv;
  return out;
}

double integrate_sphere(const ScalarField& field) {
  const LatLonGrid& g = field.grid();
  double total = 0.0;
  for (int i = 0; i < g.n_psi; ++i) {
    double row = 0.0;
    for (int j = 0; j < g.n_theta; ++j) row += field(i, j);
    row *= g.axisymmetric() ? 2.0 * std::numbers::pi : g.h_theta;
    total += row * g.cos_psi[i] * g.h_psi;
  }
  return total;
}

ScalarField rotate_theta(const ScalarField& field, int k) {
  const LatLonGrid& g = field.grid();
  if (g.axisymmetric()) throw DomainError("rotate_theta needs n_theta > 1");
  ScalarField out(field.grid_ptr());
  const int n = g.n_theta;
  const int shift = ((k % n) + n) % n;
  for (int i = 0; i < g.n_psi; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = field(i, (j + shift) % n);
  return out;
}

double mercator_x(double psi) {
  if (!(std::abs(psi) < std::numbers::pi / 2)) {
    throw DomainError("mercator_x needs |psi| < pi/2, got " + std::to_string(psi));
  }
  return std::asinh(std::tan(psi));
}

double mercator_psi(double x) { return std::atan(std::sinh(x)); }

}  // namespace ancientflow
