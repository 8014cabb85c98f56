#include <cstring>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "ancientflow/closed_forms.hpp"
#include "ancientflow/diagnostics.hpp"
#include "ancientflow/flow_solver.hpp"
#include "ancientflow/kernels.hpp"
#include "ancientflow/sphere_ops.hpp"

using namespace ancientflow;
namespace k = ancientflow::kernels;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

struct LineData {
  std::vector<double> s, c, n, w, e, tan, lap, grad;
  k::StencilLine line(bool full) const {
    k::StencilLine l;
    l.count = c.size();
    l.south = s.data();
    l.center = c.data();
    l.north = n.data();
    l.tan_over_2h = tan.data();
    l.inv_h2 = 1234.5;
    l.inv_2h = 17.25;
    if (full) {
      l.west = w.data();
      l.east = e.data();
      l.theta_lap = lap.data();
      l.theta_grad = grad.data();
    }
    return l;
  }
};

LineData random_line(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  auto fill = [&]() {
    std::vector<double> v(count);
    for (double& x : v) x = dist(rng);
    return v;
  };
  return {fill(), fill(), fill(), fill(), fill(), fill(), fill(), fill()};
}

std::vector<const k::KernelTable*> simd_tables() {
  std::vector<const k::KernelTable*> out;
  if (const auto* t = k::avx2_kernels()) out.push_back(t);
  if (const auto* t = k::neon_kernels()) out.push_back(t);
  return out;
}

void compare_tables(const k::KernelTable& ref, const k::KernelTable& simd) {
  // Lengths cover empty lines, SIMD tails and multi-vector bodies.
  for (std::size_t count : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 16u, 31u, 64u, 257u}) {
    const LineData d = random_line(count, static_cast<unsigned>(count) + 11);
    for (bool full : {false, true}) {
      const k::StencilLine line = d.line(full);
      std::vector<double> a(count), b(count);
      ref.laplacian(line, a.data());
      simd.laplacian(line, b.data());
      EXPECT_TRUE(bitwise_equal(a, b)) << simd.name << " laplacian count=" << count << " full=" << full;
      ref.grad_sq(line, a.data());
      simd.grad_sq(line, b.data());
      EXPECT_TRUE(bitwise_equal(a, b)) << simd.name << " grad_sq count=" << count << " full=" << full;
      ref.flow_rhs(line, a.data());
      simd.flow_rhs(line, b.data());
      EXPECT_TRUE(bitwise_equal(a, b)) << simd.name << " flow_rhs count=" << count << " full=" << full;
    }
    std::vector<double> a(count), b(count);
    ref.axpy(count, d.c.data(), 0.37, d.n.data(), a.data());
    simd.axpy(count, d.c.data(), 0.37, d.n.data(), b.data());
    EXPECT_TRUE(bitwise_equal(a, b)) << simd.name << " axpy count=" << count;
    ref.rk4_combine(count, d.c.data(), 0.01 / 6, d.s.data(), d.n.data(), d.w.data(), d.e.data(), a.data());
    simd.rk4_combine(count, d.c.data(), 0.01 / 6, d.s.data(), d.n.data(), d.w.data(), d.e.data(), b.data());
    EXPECT_TRUE(bitwise_equal(a, b)) << simd.name << " rk4_combine count=" << count;
  }
}

}  // namespace

TEST(Kernels, RegistryLookup) {
  EXPECT_EQ(k::find("scalar"), &k::scalar_kernels());
  EXPECT_EQ(k::find("bogus"), nullptr);
  EXPECT_EQ(k::find("avx2"), k::avx2_kernels());
  EXPECT_EQ(k::find("neon"), k::neon_kernels());
  EXPECT_EQ(k::scalar_kernels().name, "scalar");
}

TEST(Kernels, ScopedOverrideRestores) {
  const k::KernelTable* before = &k::active();
  {
    k::ScopedKernels scope(k::scalar_kernels());
    EXPECT_EQ(&k::active(), &k::scalar_kernels());
  }
  EXPECT_EQ(&k::active(), before);
}

TEST(Kernels, ScalarReferenceValues) {
  const double s[] = {1.0}, c[] = {2.0}, n[] = {4.0}, tan[] = {0.5};
  k::StencilLine line;
  line.count = 1;
  line.south = s;
  line.center = c;
  line.north = n;
  line.tan_over_2h = tan;
  line.inv_h2 = 1.0;
  line.inv_2h = 0.5;
  double out = 0.0;
  k::scalar_kernels().laplacian(line, &out);
  EXPECT_EQ(out, (4.0 + 1.0 - 4.0) - 0.5 * 3.0);
  k::scalar_kernels().grad_sq(line, &out);
  EXPECT_EQ(out, 1.5 * 1.5);
  k::scalar_kernels().flow_rhs(line, &out);
  EXPECT_EQ(out, 2.0 * -0.5 - 2.25 + 8.0);
}

TEST(Kernels, SimdMatchesScalarBitwise) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD kernels on this CPU";
  for (const auto* t : tables) compare_tables(k::scalar_kernels(), *t);
}

TEST(Kernels, OperatorsMatchAcrossTables) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD kernels on this CPU";
  const ScalarField f = ScalarField::from_function(
      build_grid(24, 18), [](double p, double t) { return 1.5 + std::sin(p) * std::cos(2 * t) + std::cos(p); });
  ScalarField lap_ref, grad_ref;
  {
    k::ScopedKernels scope(k::scalar_kernels());
    lap_ref = laplace_beltrami(f);
    grad_ref = grad_sq_sphere(f);
  }
  for (const auto* t : tables) {
    k::ScopedKernels scope(*t);
    EXPECT_TRUE(laplace_beltrami(f) == lap_ref) << t->name;
    EXPECT_TRUE(grad_sq_sphere(f) == grad_ref) << t->name;
  }
}

TEST(Kernels, EvolutionIsBitwiseIdenticalAcrossTables) {
  const auto tables = simd_tables();
  if (tables.empty()) GTEST_SKIP() << "no SIMD kernels on this CPU";
  const ClosedFormSolution sol = ClosedFormSolution::rosenau(1.0);
  for (int n_theta : {1, 16}) {
    FlowState init{-1.0, sample_v(sol, build_grid(32, n_theta), -1.0)};
    for (double& x : init.v.values()) x *= 1.01;
    EvolveResult ref;
    {
      k::ScopedKernels scope(k::scalar_kernels());
      ref = evolve(init, -0.95, SolverConfig{});
    }
    for (const auto* t : tables) {
      k::ScopedKernels scope(*t);
      const EvolveResult got = evolve(init, -0.95, SolverConfig{});
      EXPECT_EQ(got.steps, ref.steps);
      EXPECT_TRUE(got.state.v == ref.state.v) << t->name << " n_theta=" << n_theta;
    }
  }
}
