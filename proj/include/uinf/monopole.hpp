#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "uinf/radial.hpp"

namespace uinf {

struct MonopoleProfile {
  RadialGrid grid;
  std::vector<double> K, H;
};

/// Coefficients of the residual-interaction integrand
/// c_hk H²K'² + c_dh (H' − H/ξ)²(1−K)² + c_h H²(1−K)² + c_k K'²(1−K)² + c_xi ξ^p (1−K)⁴.
struct SecondLineCoefficients {
  double c_hk = 15.0;
  double c_dh = 10.0;
  double c_h = 18.0;
  double c_k = 14.0;
  double c_xi = 64.0;
  double xi_power = 2.0;
};

struct EnergyParams {
  double v = 1.0;
  double beta = 1.0;
  double e = 1.0;
  double b = 1.0;

  /// 8π² v β / (e³ b²).
  double prefactor() const;
  /// Whether e = 2/n for an integer n.
  bool e_quantized() const;
  void validate() const;
};

struct EnergyBreakdown {
  /// First-line integral including the small-ξ piece below xi[0] and the
  /// far-field tail beyond the cutoff.
  double E0_integral = 0.0;
  /// First-line integral on [xi[0], Ξ] only.
  double E0_truncated = 0.0;
  double tail = 0.0;
  bool tail_applied = false;
  double correction_integral = 0.0;
  double prefactor = 0.0;
  double epsilon = 0.0;
  double total = 0.0;
  double cutoff = 0.0;
};

struct BogomolnyiResiduals {
  double k = 0.0;  ///< max |ξK' + KH|
  double h = 0.0;  ///< max |ξH' − H − (1 − K²)|
};

struct Perturbation {
  RadialGrid grid;
  std::vector<double> K1, H1;
  double epsilon = 0.0;
  /// Power-law exponents of |K1|, |H1| fitted near the origin.
  double origin_exponent_K = 0.0;
  double origin_exponent_H = 0.0;
  /// Slope of log|K1| against ξ fitted near the cutoff.
  double tail_slope_K = 0.0;
};

struct LinearizedSolution {
  std::vector<double> K1, H1;
};

struct EnergyCorrectionRow {
  double evb = 0.0;
  double epsilon = 0.0;
  double E0_integral = 0.0;
  double correction_integral = 0.0;
  double dE_over_E0 = 0.0;
  double cutoff = 0.0;
};

struct EnergyCorrectionTable {
  std::vector<EnergyCorrectionRow> rows;
  double slope = 0.0;      ///< least-squares slope of ΔE/E0 against ε
  double r_squared = 0.0;  ///< coefficient of determination of that fit
};

struct VariationalResult {
  double analytic = 0.0;           ///< ∫ (E_K δK + E_H δH) dξ
  double finite_difference = 0.0;  ///< central difference of the discrete functional
  double rel_diff = 0.0;
};

/// Energy density weights: w_first·(first line) + w_second·(second line).
struct EnergyFunctional {
  double w_first = 1.0;
  double w_second = 0.0;
  SecondLineCoefficients coeffs;
};

/// ε = (evb)⁴ / 30.
double epsilon_from_evb(double evb);

/// K₀ = ξ / sinh ξ and H₀ = ξ coth ξ − 1 on the grid.
MonopoleProfile bps_profiles(const RadialGrid& grid);
double bps_K(double xi);
double bps_H(double xi);
double bps_dK(double xi);
double bps_dH(double xi);

BogomolnyiResiduals bogomolnyi_residuals(const MonopoleProfile& p);

std::vector<double> first_line_density(const MonopoleProfile& p);
std::vector<double> second_line_density(const MonopoleProfile& p, const SecondLineCoefficients& c = {});

EnergyBreakdown energy(const MonopoleProfile& p, double evb, const EnergyParams& params,
                       const SecondLineCoefficients& c = {});

/// Euler-Lagrange expressions (E_K, E_H) of a functional at every node.
std::pair<std::vector<double>, std::vector<double>> euler_lagrange(const MonopoleProfile& p,
                                                                   const EnergyFunctional& f);

/// Discretized functional ∫ density dξ on [xi[0], Ξ].
double functional_value(const MonopoleProfile& p, const EnergyFunctional& f);

/// Solves the first-line linearization about `base`,
/// L(K1, H1) = (forcing_K, forcing_H), with K1 = H1 = 0 at xi[0],
/// K1' + K1 = 0 and H1' = 0 at the cutoff.
LinearizedSolution linearized_solve(const MonopoleProfile& base, const std::vector<double>& forcing_K,
                                    const std::vector<double>& forcing_H);

/// First-order coefficients K1, H1 of K = K0 + εK1, H = H0 + εH1.
Perturbation perturbation_solve(const MonopoleProfile& base, double epsilon, const SecondLineCoefficients& c = {});

EnergyCorrectionTable energy_correction(const MonopoleProfile& base, const std::vector<double>& evb_list,
                                        const SecondLineCoefficients& c = {});

VariationalResult variational_check(const EnergyFunctional& f, const MonopoleProfile& profile,
                                    const std::vector<double>& dK, const std::vector<double>& dH);

/// Smooth bump sin⁶(π(ξ − a)/w) on [a, a + w], zero elsewhere.
std::vector<double> bump(const RadialGrid& grid, double a, double w);

/// Rescaled BPS profile K₀(λξ), H₀(λξ)/λ plus random interior bumps. The
/// boundary behaviour at both ends is that of the BPS profile.
MonopoleProfile random_profile(const RadialGrid& grid, std::mt19937_64& rng, double amplitude = 0.2);

/// Random direction supported strictly inside the grid.
std::pair<std::vector<double>, std::vector<double>> random_direction(const RadialGrid& grid, std::mt19937_64& rng);

}  // namespace uinf
