#include "uinf/sphere_grid.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace uinf {

namespace {

// P_n(z) and P_n'(z) by the three-term recurrence.
std::pair<double, double> legendre_with_derivative(int n, double z) {
  double p0 = 1.0, p1 = z;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, n * (z * p1 - p0) / (z * z - 1.0)};
}

}  // namespace

std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be positive");
  std::vector<double> x(n), w(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, dp] = legendre_with_derivative(n, z);
      const double dz = p / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double dp = legendre_with_derivative(n, z).second;
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  return {x, w};
}

SphereGrid::SphereGrid(int n_theta, int n_phi) : n_theta_(n_theta), n_phi_(n_phi) {
  if (n_theta < 1 || n_phi < 1) throw std::invalid_argument("grid dimensions must be positive");
  auto [x, w] = gauss_legendre(n_theta);
  cos_theta_ = std::move(x);
  ring_weights_ = std::move(w);
  sin_theta_.resize(n_theta);
  theta_.resize(n_theta);
  for (int j = 0; j < n_theta; ++j) {
    sin_theta_[j] = std::sqrt((1.0 - cos_theta_[j]) * (1.0 + cos_theta_[j]));
    theta_[j] = std::acos(cos_theta_[j]);
  }
  phi_.resize(n_phi);
  for (int k = 0; k < n_phi; ++k) phi_[k] = 2.0 * std::numbers::pi * k / n_phi;
  phi_weight_ = 2.0 * std::numbers::pi / n_phi;
}

SphereGrid SphereGrid::for_degree(int degree) {
  if (degree < 0) throw std::invalid_argument("negative exactness degree");
  return SphereGrid(degree / 2 + 1, degree + 1);
}

int SphereGrid::max_degree() const { return std::min(2 * n_theta_ - 1, n_phi_ - 1); }

std::vector<std::pair<double, double>> SphereGrid::nodes() const {
  std::vector<std::pair<double, double>> out;
  out.reserve(size());
  for (int j = 0; j < n_theta_; ++j) {
    for (int k = 0; k < n_phi_; ++k) out.emplace_back(theta_[j], phi_[k]);
  }
  return out;
}

std::vector<double> SphereGrid::weights() const {
  std::vector<double> out;
  out.reserve(size());
  for (int j = 0; j < n_theta_; ++j) {
    for (int k = 0; k < n_phi_; ++k) out.push_back(ring_weights_[j] * phi_weight_);
  }
  return out;
}

void normalized_legendre(int l_max, double x, std::vector<double>& out, std::vector<double>* dout) {
  const int count = (l_max + 1) * (l_max + 2) / 2;
  out.assign(count, 0.0);
  const double s = std::sqrt((1.0 - x) * (1.0 + x));
  double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
  for (int m = 0; m <= l_max; ++m) {
    if (m > 0) pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
    out[SphereBasis::tri(m, m)] = pmm;
    if (m + 1 <= l_max) out[SphereBasis::tri(m + 1, m)] = std::sqrt(2.0 * m + 3.0) * x * pmm;
    for (int l = m + 2; l <= l_max; ++l) {
      const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - m * m));
      const double a_prev =
          std::sqrt((4.0 * (l - 1) * (l - 1) - 1.0) / (static_cast<double>(l - 1) * (l - 1) - m * m));
      out[SphereBasis::tri(l, m)] =
          a * (x * out[SphereBasis::tri(l - 1, m)] - out[SphereBasis::tri(l - 2, m)] / a_prev);
    }
  }
  if (dout == nullptr) return;
  dout->assign(count, 0.0);
  const double denom = x * x - 1.0;
  for (int m = 0; m <= l_max; ++m) {
    for (int l = m; l <= l_max; ++l) {
      double num = l * x * out[SphereBasis::tri(l, m)];
      if (l > m) {
        const double c = std::sqrt((2.0 * l + 1.0) * (static_cast<double>(l) * l - m * m) / (2.0 * l - 1.0));
        num -= c * out[SphereBasis::tri(l - 1, m)];
      }
      (*dout)[SphereBasis::tri(l, m)] = num / denom;
    }
  }
}

SphereBasis::SphereBasis(SphereGrid grid, int l_max) : grid_(std::move(grid)), l_max_(l_max) {
  if (l_max < 0) throw std::invalid_argument("negative band limit");
  const int tc = tri_count();
  p_.resize(static_cast<std::size_t>(grid_.n_theta()) * tc);
  dp_.resize(p_.size());
  std::vector<double> p, dp;
  for (int j = 0; j < grid_.n_theta(); ++j) {
    normalized_legendre(l_max, grid_.cos_theta()[j], p, &dp);
    std::copy(p.begin(), p.end(), p_.begin() + static_cast<std::ptrdiff_t>(j) * tc);
    std::copy(dp.begin(), dp.end(), dp_.begin() + static_cast<std::ptrdiff_t>(j) * tc);
  }
  const int width = 2 * l_max + 1;
  phase_.resize(static_cast<std::size_t>(grid_.n_phi()) * width);
  for (int k = 0; k < grid_.n_phi(); ++k) {
    for (int m = -l_max; m <= l_max; ++m) {
      phase_[k * width + (m + l_max)] = std::polar(1.0, m * grid_.phi()[k]);
    }
  }
}

std::shared_ptr<const SphereBasis> basis_for(int degree, int l_max) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const SphereBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{degree, l_max}];
  if (!slot) slot = std::make_shared<const SphereBasis>(SphereGrid::for_degree(degree), l_max);
  return slot;
}

}  // namespace uinf
