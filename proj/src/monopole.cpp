#include "uinf/monopole.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "hyper_dual.hpp"

namespace uinf {

namespace {

template <class T>
T density(const EnergyFunctional& f, const T& xi, const T& K, const T& Kp, const T& H, const T& Hp) {
  using std::pow;
  const auto& c = f.coeffs;
  const T w = Hp - H / xi;
  const T k2m1 = K * K - 1.0;
  const T xi2 = xi * xi;
  T out = 0.0;
  if (f.w_first != 0.0) {
    out = out + f.w_first * (Kp * Kp + 0.5 * (w * w) + k2m1 * k2m1 / (2.0 * xi2) + K * K * H * H / xi2);
  }
  if (f.w_second != 0.0) {
    const T omk = 1.0 - K;
    const T omk2 = omk * omk;
    out = out + f.w_second * (c.c_hk * (H * H * Kp * Kp) + c.c_dh * (w * w * omk2) + c.c_h * (H * H * omk2) +
                              c.c_k * (Kp * Kp * omk2) + c.c_xi * (pow(xi, c.xi_power) * omk2 * omk2));
  }
  return out;
}

// Variables of the density in the order (ξ, K, K', H, H').
using Point = std::array<double, 5>;

double partial(const EnergyFunctional& f, const Point& x, int i) {
  std::array<HyperDual, 5> v;
  for (int k = 0; k < 5; ++k) v[k] = HyperDual(x[k]);
  v[i].b = 1.0;
  return density(f, v[0], v[1], v[2], v[3], v[4]).b;
}

double mixed(const EnergyFunctional& f, const Point& x, int i, int j) {
  std::array<HyperDual, 5> v;
  for (int k = 0; k < 5; ++k) v[k] = HyperDual(x[k]);
  v[i].b = 1.0;
  v[j].c = 1.0;
  return density(f, v[0], v[1], v[2], v[3], v[4]).d;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

// Slope of log|f| against log ξ (log_x) or ξ on [lo, hi].
double fitted_slope(const RadialGrid& g, const std::vector<double>& f, double lo, double hi, bool log_x) {
  std::vector<double> x, y;
  for (int i = 0; i < g.size(); ++i) {
    if (g.xi[i] < lo || g.xi[i] > hi || f[i] == 0.0) continue;
    x.push_back(log_x ? std::log(g.xi[i]) : g.xi[i]);
    y.push_back(std::log(std::abs(f[i])));
  }
  return slope(x, y);
}

void check_profile(const MonopoleProfile& p) {
  if (static_cast<int>(p.K.size()) != p.grid.size() || static_cast<int>(p.H.size()) != p.grid.size()) {
    throw std::invalid_argument("profile arrays do not match the grid");
  }
}

}  // namespace

double epsilon_from_evb(double evb) { return std::pow(evb, 4) / 30.0; }

double EnergyParams::prefactor() const {
  return 8.0 * std::numbers::pi * std::numbers::pi * v * beta / (e * e * e * b * b);
}

bool EnergyParams::e_quantized() const {
  const double n = 2.0 / e;
  return std::abs(n - std::round(n)) < 1e-12;
}

void EnergyParams::validate() const {
  if (!(v > 0.0) || !(beta > 0.0) || !(e > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("energy parameters v, beta, e, b must be positive");
  }
}

double bps_K(double xi) {
  if (xi < 1e-2) {
    const double x2 = xi * xi;
    return 1.0 - x2 / 6.0 + 7.0 * x2 * x2 / 360.0 - 31.0 * x2 * x2 * x2 / 15120.0;
  }
  if (xi > 20.0) return 2.0 * xi * std::exp(-xi) / (1.0 - std::exp(-2.0 * xi));
  return xi / std::sinh(xi);
}

double bps_H(double xi) {
  if (xi < 1e-2) {
    const double x2 = xi * xi;
    return x2 / 3.0 - x2 * x2 / 45.0 + 2.0 * x2 * x2 * x2 / 945.0;
  }
  return xi / std::tanh(xi) - 1.0;
}

double bps_dK(double xi) {
  if (xi < 1e-2) {
    const double x2 = xi * xi;
    return -xi / 3.0 + 7.0 * xi * x2 / 90.0 - 31.0 * xi * x2 * x2 / 2520.0;
  }
  const double s = std::sinh(xi);
  return (s - xi * std::cosh(xi)) / (s * s);
}

double bps_dH(double xi) {
  if (xi < 1e-2) {
    const double x2 = xi * xi;
    return 2.0 * xi / 3.0 - 4.0 * xi * x2 / 45.0 + 12.0 * xi * x2 * x2 / 945.0;
  }
  if (xi > 20.0) return 1.0 / std::tanh(xi) - 4.0 * xi * std::exp(-2.0 * xi);
  const double s = std::sinh(xi);
  return 1.0 / std::tanh(xi) - xi / (s * s);
}

MonopoleProfile bps_profiles(const RadialGrid& grid) {
  MonopoleProfile p{grid, {}, {}};
  for (double x : grid.xi) {
    p.K.push_back(bps_K(x));
    p.H.push_back(bps_H(x));
  }
  return p;
}

BogomolnyiResiduals bogomolnyi_residuals(const MonopoleProfile& p) {
  check_profile(p);
  const auto dK = radial_derivative(p.grid, p.K, 1);
  const auto dH = radial_derivative(p.grid, p.H, 1);
  BogomolnyiResiduals r;
  for (int i = 0; i < p.grid.size(); ++i) {
    const double x = p.grid.xi[i];
    r.k = std::max(r.k, std::abs(x * dK[i] + p.K[i] * p.H[i]));
    r.h = std::max(r.h, std::abs(x * dH[i] - p.H[i] - (1.0 - p.K[i] * p.K[i])));
  }
  return r;
}

namespace {

std::vector<double> line_density(const MonopoleProfile& p, const EnergyFunctional& f) {
  check_profile(p);
  const auto dK = radial_derivative(p.grid, p.K, 1);
  const auto dH = radial_derivative(p.grid, p.H, 1);
  std::vector<double> out(p.K.size());
  for (int i = 0; i < p.grid.size(); ++i) out[i] = density(f, p.grid.xi[i], p.K[i], dK[i], p.H[i], dH[i]);
  return out;
}

}  // namespace

std::vector<double> first_line_density(const MonopoleProfile& p) { return line_density(p, {1.0, 0.0, {}}); }

std::vector<double> second_line_density(const MonopoleProfile& p, const SecondLineCoefficients& c) {
  return line_density(p, {0.0, 1.0, c});
}

double functional_value(const MonopoleProfile& p, const EnergyFunctional& f) {
  return radial_integrate(p.grid, line_density(p, f));
}

EnergyBreakdown energy(const MonopoleProfile& p, double evb, const EnergyParams& params,
                       const SecondLineCoefficients& c) {
  params.validate();
  if (evb < 0.0) throw std::invalid_argument("evb must be non-negative");
  const auto first = first_line_density(p);
  EnergyBreakdown out;
  out.cutoff = p.grid.cutoff();
  out.E0_truncated = radial_integrate(p.grid, first);
  // Below xi[0] the density grows like ξ².
  const double origin = first.front() * p.grid.start() / 3.0;
  // Beyond the cutoff K has decayed and H ≈ ξ − c, leaving (c² + 1)/(2ξ²).
  const double Xi = p.grid.cutoff();
  if (std::abs(p.K.back()) < 1e-6) {
    const double cc = Xi - p.H.back();
    out.tail = (cc * cc + 1.0) / (2.0 * Xi);
    out.tail_applied = true;
  }
  out.E0_integral = out.E0_truncated + origin + out.tail;
  out.correction_integral = radial_integrate(p.grid, second_line_density(p, c));
  out.prefactor = params.prefactor();
  out.epsilon = epsilon_from_evb(evb);
  out.total = out.prefactor * (out.E0_integral + out.epsilon * out.correction_integral);
  return out;
}

std::pair<std::vector<double>, std::vector<double>> euler_lagrange(const MonopoleProfile& p,
                                                                   const EnergyFunctional& f) {
  check_profile(p);
  const auto& g = p.grid;
  const auto dK = radial_derivative(g, p.K, 1);
  const auto dH = radial_derivative(g, p.H, 1);
  const auto ddK = radial_derivative(g, p.K, 2);
  const auto ddH = radial_derivative(g, p.H, 2);
  const int n = g.size();
  std::vector<double> EK(n), EH(n);
#pragma omp parallel for schedule(static)
  for (int i = 0; i < n; ++i) {
    const Point x{g.xi[i], p.K[i], dK[i], p.H[i], dH[i]};
    // d/dξ of a function of (ξ, K, K', H, H') along the profile
    const std::array<double, 5> chain{1.0, dK[i], ddK[i], dH[i], ddH[i]};
    double dpK = 0.0, dpH = 0.0;
    for (int j = 0; j < 5; ++j) {
      dpK += mixed(f, x, 2, j) * chain[j];
      dpH += mixed(f, x, 4, j) * chain[j];
    }
    EK[i] = partial(f, x, 1) - dpK;
    EH[i] = partial(f, x, 3) - dpH;
  }
  return {EK, EH};
}

LinearizedSolution linearized_solve(const MonopoleProfile& base, const std::vector<double>& forcing_K,
                                    const std::vector<double>& forcing_H) {
  check_profile(base);
  const auto& g = base.grid;
  const int n = g.size();
  if (static_cast<int>(forcing_K.size()) != n || static_cast<int>(forcing_H.size()) != n) {
    throw std::invalid_argument("linearized_solve: forcing does not match the grid");
  }
  std::vector<Eigen::Triplet<double>> trips;
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(2 * n);
  const int hk = n;  // offset of H1 unknowns

  trips.emplace_back(0, 0, 1.0);
  trips.emplace_back(hk, hk, 1.0);
  for (int i = 1; i < n - 1; ++i) {
    const double x = g.xi[i];
    const double K0 = base.K[i], H0 = base.H[i];
    const double x2 = x * x;
    const double aK = (2.0 * (3.0 * K0 * K0 - 1.0) + 2.0 * H0 * H0) / x2;
    const double aH = 2.0 * K0 * K0 / x2;
    const double cross = 4.0 * K0 * H0 / x2;
    const auto row = radial_stencil(g, i, 2);
    for (std::size_t j = 0; j < row.index.size(); ++j) {
      trips.emplace_back(i, row.index[j], -2.0 * row.weight[j]);
      trips.emplace_back(hk + i, hk + row.index[j], -row.weight[j]);
    }
    trips.emplace_back(i, i, aK);
    trips.emplace_back(i, hk + i, cross);
    trips.emplace_back(hk + i, hk + i, aH);
    trips.emplace_back(hk + i, i, cross);
    rhs[i] = forcing_K[i];
    rhs[hk + i] = forcing_H[i];
  }
  // K1' + K1 = 0 and H1' = 0 at the cutoff.
  const auto last = radial_stencil(g, n - 1, 1);
  for (std::size_t j = 0; j < last.index.size(); ++j) {
    trips.emplace_back(n - 1, last.index[j], last.weight[j]);
    trips.emplace_back(hk + n - 1, hk + last.index[j], last.weight[j]);
  }
  trips.emplace_back(n - 1, n - 1, 1.0);

  Eigen::SparseMatrix<double> A(2 * n, 2 * n);
  A.setFromTriplets(trips.begin(), trips.end());
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(A);
  if (lu.info() != Eigen::Success) {
    throw std::runtime_error("linearized_solve: singular discretization (n = " + std::to_string(n) +
                             ", cutoff = " + std::to_string(g.cutoff()) + "): " + lu.lastErrorMessage());
  }
  Eigen::VectorXd sol = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw std::runtime_error("linearized_solve: back substitution failed");
  // One step of iterative refinement; the 1/ξ² rows make the system stiff.
  const Eigen::VectorXd residual = rhs - A * sol;
  sol += lu.solve(residual);
  LinearizedSolution out;
  out.K1.assign(sol.data(), sol.data() + n);
  out.H1.assign(sol.data() + n, sol.data() + 2 * n);
  return out;
}

Perturbation perturbation_solve(const MonopoleProfile& base, double epsilon, const SecondLineCoefficients& c) {
  if (epsilon < 0.0) throw std::invalid_argument("perturbation_solve: epsilon must be non-negative");
  auto [EK, EH] = euler_lagrange(base, {0.0, 1.0, c});
  for (auto& x : EK) x = -x;
  for (auto& x : EH) x = -x;
  auto sol = linearized_solve(base, EK, EH);
  Perturbation p;
  p.grid = base.grid;
  p.K1 = std::move(sol.K1);
  p.H1 = std::move(sol.H1);
  p.epsilon = epsilon;
  const double Xi = base.grid.cutoff();
  const double lo = std::max(0.02, 20.0 * base.grid.start());
  p.origin_exponent_K = fitted_slope(p.grid, p.K1, lo, 10.0 * lo, true);
  p.origin_exponent_H = fitted_slope(p.grid, p.H1, lo, 10.0 * lo, true);
  p.tail_slope_K = fitted_slope(p.grid, p.K1, 0.6 * Xi, 0.9 * Xi, false);
  return p;
}

EnergyCorrectionTable energy_correction(const MonopoleProfile& base, const std::vector<double>& evb_list,
                                        const SecondLineCoefficients& c) {
  if (evb_list.empty()) throw std::invalid_argument("energy_correction: empty evb list");
  const auto e0 = energy(base, 0.0, {}, c);
  EnergyCorrectionTable t;
  std::vector<double> eps, ratio;
  for (double evb : evb_list) {
    if (evb < 0.0) throw std::invalid_argument("energy_correction: evb must be non-negative");
    EnergyCorrectionRow row;
    row.evb = evb;
    row.epsilon = epsilon_from_evb(evb);
    row.E0_integral = e0.E0_integral;
    row.correction_integral = e0.correction_integral;
    row.dE_over_E0 = row.epsilon * e0.correction_integral;
    row.cutoff = e0.cutoff;
    t.rows.push_back(row);
    eps.push_back(row.epsilon);
    ratio.push_back(row.dE_over_E0);
  }
  t.slope = eps.size() >= 2 ? slope(eps, ratio) : e0.correction_integral;
  double my = 0.0;
  for (double y : ratio) my += y;
  my /= ratio.size();
  double mx = 0.0;
  for (double x : eps) mx += x;
  mx /= eps.size();
  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double fit = my + t.slope * (eps[i] - mx);
    ss_res += (ratio[i] - fit) * (ratio[i] - fit);
    ss_tot += (ratio[i] - my) * (ratio[i] - my);
  }
  t.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return t;
}

VariationalResult variational_check(const EnergyFunctional& f, const MonopoleProfile& profile,
                                    const std::vector<double>& dK, const std::vector<double>& dH) {
  check_profile(profile);
  const int n = profile.grid.size();
  if (static_cast<int>(dK.size()) != n || static_cast<int>(dH.size()) != n) {
    throw std::invalid_argument("variational_check: direction does not match the grid");
  }
  VariationalResult r;
  const auto [EK, EH] = euler_lagrange(profile, f);
  std::vector<double> integrand(n);
  double scale = 0.0;
  for (int i = 0; i < n; ++i) {
    integrand[i] = EK[i] * dK[i] + EH[i] * dH[i];
    scale = std::max({scale, std::abs(dK[i]), std::abs(dH[i])});
  }
  if (scale == 0.0) return r;
  r.analytic = radial_integrate(profile.grid, integrand);

  const double h = 1e-5 / scale;
  auto shifted = [&](double t) {
    MonopoleProfile q = profile;
    for (int i = 0; i < n; ++i) {
      q.K[i] += t * dK[i];
      q.H[i] += t * dH[i];
    }
    return functional_value(q, f);
  };
  r.finite_difference = (shifted(h) - shifted(-h)) / (2.0 * h);
  const double denom = std::max(std::abs(r.analytic), std::abs(r.finite_difference));
  r.rel_diff = denom > 0.0 ? std::abs(r.analytic - r.finite_difference) / denom : 0.0;
  return r;
}

std::vector<double> bump(const RadialGrid& grid, double a, double w) {
  std::vector<double> out(grid.size(), 0.0);
  for (int i = 0; i < grid.size(); ++i) {
    const double t = (grid.xi[i] - a) / w;
    if (t > 0.0 && t < 1.0) out[i] = std::pow(std::sin(std::numbers::pi * t), 6);
  }
  return out;
}

MonopoleProfile random_profile(const RadialGrid& grid, std::mt19937_64& rng, double amplitude) {
  // Rescaling moves the profile off the field equations everywhere while
  // keeping K → 1, H → 0 at the origin and K → 0, H ≈ ξ − 1/λ far out.
  std::uniform_real_distribution<double> scale(0.8, 1.25);
  const double lambda = scale(rng);
  MonopoleProfile p{grid, {}, {}};
  for (double x : grid.xi) {
    p.K.push_back(bps_K(lambda * x));
    p.H.push_back(bps_H(lambda * x) / lambda);
  }
  const double Xi = grid.cutoff();
  std::uniform_real_distribution<double> width(1.0, 4.0);
  std::uniform_real_distribution<double> amp(-amplitude, amplitude);
  for (int k = 0; k < 3; ++k) {
    const double w = width(rng);
    std::uniform_real_distribution<double> start(0.3, std::max(0.31, Xi - 3.0 - w));
    const double a = start(rng);
    const double ak = amp(rng);
    const double ah = amp(rng) * (1.0 + a);
    const auto shape = bump(grid, a, w);
    for (int i = 0; i < grid.size(); ++i) {
      p.K[i] += ak * shape[i];
      p.H[i] += ah * shape[i];
    }
  }
  return p;
}

std::pair<std::vector<double>, std::vector<double>> random_direction(const RadialGrid& grid, std::mt19937_64& rng) {
  const double Xi = grid.cutoff();
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> width(1.0, 5.0);
  std::vector<double> dK(grid.size(), 0.0), dH(grid.size(), 0.0);
  for (int k = 0; k < 2; ++k) {
    const double w = width(rng);
    std::uniform_real_distribution<double> start(0.5, std::max(0.51, Xi - 2.0 - w));
    const double a = start(rng);
    const double ck = normal(rng), ch = normal(rng);
    const auto shape = bump(grid, a, w);
    for (int i = 0; i < grid.size(); ++i) {
      dK[i] += ck * shape[i];
      dH[i] += ch * shape[i];
    }
  }
  return {dK, dH};
}

}  // namespace uinf
