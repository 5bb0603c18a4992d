#include "uinf/radial.hpp"

#include <algorithm>
#include <stdexcept>

namespace uinf {

namespace {

constexpr int kOrder = 4;

// Stencil for derivative n at node i: centered where possible.
std::pair<int, int> window(int i, int size, int n) {
  const int half = kOrder / 2;
  if (i - half >= 0 && i + half < size) return {i - half, 2 * half + 1};
  const int width = kOrder + n;
  const int lo = std::clamp(i - width / 2, 0, size - width);
  return {lo, width};
}

}  // namespace

RadialGrid RadialGrid::graded(double xi_min, double xi_max, int n, double gamma) {
  if (!(xi_min > 0.0)) throw std::invalid_argument("radial grid must exclude the origin");
  if (!(xi_max > xi_min)) throw std::invalid_argument("radial grid cutoff must exceed its start");
  if (n < 8) throw std::invalid_argument("radial grid needs at least 8 points");
  if (!(gamma >= 0.0 && gamma < 1.0)) throw std::invalid_argument("grading must lie in [0, 1)");
  RadialGrid g;
  g.gamma = gamma;
  g.ds = 1.0 / (n - 1);
  const double span = xi_max - xi_min;
  g.d2xi_ds2 = 2.0 * span * gamma;
  for (int i = 0; i < n; ++i) {
    const double s = i * g.ds;
    g.xi.push_back(i == n - 1 ? xi_max : xi_min + span * ((1.0 - gamma) * s + gamma * s * s));
    g.dxi_ds.push_back(span * ((1.0 - gamma) + 2.0 * gamma * s));
  }
  return g;
}

std::vector<std::vector<double>> fd_weights(double z, std::span<const double> x, int m) {
  const int n = static_cast<int>(x.size());
  std::vector<std::vector<double>> c(m + 1, std::vector<double>(n, 0.0));
  double c1 = 1.0;
  double c4 = x[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < n; ++i) {
    const int mn = std::min(i, m);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = x[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = x[i] - x[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

StencilRow radial_stencil(const RadialGrid& grid, int i, int n) {
  if (n < 1 || n > 2) throw std::invalid_argument("radial_stencil: derivative order must be 1 or 2");
  const int size = grid.size();
  const auto [lo, width] = window(i, size, n);
  std::vector<double> offsets(width);
  for (int j = 0; j < width; ++j) offsets[j] = lo + j - i;
  const auto w = fd_weights(0.0, offsets, n);
  const double h = grid.ds;
  const double xs = grid.dxi_ds[i];
  StencilRow row;
  for (int j = 0; j < width; ++j) {
    row.index.push_back(lo + j);
    const double d1 = w[1][j] / h;
    double val = d1 / xs;
    if (n == 2) {
      // f_ξξ = (f_ss − ξ_ss f_ξ) / ξ_s²
      const double d2 = w[2][j] / (h * h);
      val = (d2 - grid.d2xi_ds2 * d1 / xs) / (xs * xs);
    }
    row.weight.push_back(val);
  }
  return row;
}

std::vector<double> radial_derivative(const RadialGrid& grid, std::span<const double> f, int n) {
  if (static_cast<int>(f.size()) != grid.size()) throw std::invalid_argument("radial_derivative: size mismatch");
  std::vector<double> out(f.size());
  for (int i = 0; i < grid.size(); ++i) {
    const auto row = radial_stencil(grid, i, n);
    // Weights sum to zero, so differencing against f[i] keeps constants exact.
    double acc = 0.0;
    for (std::size_t j = 0; j < row.index.size(); ++j) acc += row.weight[j] * (f[row.index[j]] - f[i]);
    out[i] = acc;
  }
  return out;
}

double radial_integrate(const RadialGrid& grid, std::span<const double> f) {
  const int n = grid.size();
  if (static_cast<int>(f.size()) != n) throw std::invalid_argument("radial_integrate: size mismatch");
  auto g = [&](int i) { return f[i] * grid.dxi_ds[i]; };
  const int intervals = n - 1;
  const int simpson_end = (intervals % 2 == 0) ? n - 1 : n - 4;
  double acc = 0.0;
  for (int i = 0; i + 2 <= simpson_end; i += 2) acc += grid.ds / 3.0 * (g(i) + 4.0 * g(i + 1) + g(i + 2));
  if (simpson_end != n - 1) {
    const int i = simpson_end;
    acc += 3.0 * grid.ds / 8.0 * (g(i) + 3.0 * g(i + 1) + 3.0 * g(i + 2) + g(i + 3));
  }
  return acc;
}

}  // namespace uinf
