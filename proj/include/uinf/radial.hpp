#pragma once

#include <span>
#include <vector>

namespace uinf {

/// Graded radial grid ξ(s) = ξ_min + L((1 − γ)s + γs²) on uniform s ∈ [0, 1],
/// dense near the origin. The origin itself is excluded.
struct RadialGrid {
  std::vector<double> xi;
  std::vector<double> dxi_ds;  ///< ξ'(s)
  double d2xi_ds2 = 0.0;       ///< ξ''(s), constant
  double ds = 0.0;
  double gamma = 0.5;

  static RadialGrid graded(double xi_min, double xi_max, int n, double gamma = 0.5);
  int size() const { return static_cast<int>(xi.size()); }
  double cutoff() const { return xi.back(); }
  double start() const { return xi.front(); }
};

/// Finite-difference weights for the derivatives 0..m at z from nodes x.
std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int m);

/// dⁿf/dξⁿ (n = 1 or 2), fourth-order in s with the chain rule; one-sided
/// stencils at the ends.
std::vector<double> radial_derivative(const RadialGrid& grid, std::span<const double> f, int n);

/// One row of the ξ-derivative operator: node indices and weights.
struct StencilRow {
  std::vector<int> index;
  std::vector<double> weight;
};
StencilRow radial_stencil(const RadialGrid& grid, int i, int n);

/// ∫ f dξ over the grid: Simpson in s, with a 3/8 panel at the end when the
/// interval count is odd.
double radial_integrate(const RadialGrid& grid, std::span<const double> f);

}  // namespace uinf
