#pragma once

#include <string>
#include <vector>

#include "uinf/gauge_fields.hpp"
#include "uinf/tensor_kernels.hpp"

namespace uinf {

/// Block-diagonal (D+2)-dimensional metric: a diagonal spacetime block and
/// b² times the unit round metric on the sphere.
struct BlockMetric {
  int D = 0;
  std::vector<double> g_spacetime;
  double b = 1.0;

  /// diag(−1, +1, …) spacetime block.
  static BlockMetric lorentzian(int D, double b);
  /// Full metric at polar angle θ, indices ordered (μ…, θ, φ).
  FlatMetric at(double sin_theta) const;
  SpacetimeMetric spacetime() const { return {g_spacetime}; }
  void validate() const;
};

/// Monopole flux through the extra sphere. In coordinates the background is
/// F_θφ = (b²/q) sinθ, so that F_mn F^mn = 2/q² for every radius b.
struct Background {
  double q = 1.0;

  double flux(double sin_theta, double b) const { return b * b / q * sin_theta; }
  /// Whether 1/q is an integer or half-integer.
  bool quantized() const;
  void validate() const;
};

/// Terms of a (D+2)-dimensional Lagrangian grouped by how many of the summed
/// indices run over the sphere, each integrated over the unit sphere.
struct ReductionReport {
  std::string model;  ///< "scalar" or "ym"
  int D = 0;
  double b = 0.0;
  double q = 0.0;
  double e = 0.0;  ///< q / b²
  int sign = 0;    ///< calibrated orientation sign s of the bracket coupling
  /// groups[k] = integral of all terms with k extra-space indices.
  std::vector<double> groups;
  /// Integral of the absolute values of those terms; scale for cancellations.
  std::vector<double> magnitudes;
  /// Brute-force contraction of the assembled fields, integrated the same way.
  double oracle = 0.0;
  /// Covariant D-dimensional form with coupling s·e, integrated over S².
  double reduced_reference = 0.0;
  /// Index of the covariant group (2 for both models).
  int covariant_group = 2;
  std::vector<std::string> residual_names;
  std::vector<double> residuals;

  double total() const;
  /// Value of the covariant group divided by 4π.
  double normalized_reference() const;
};

/// Lagrangian density with half the three-index delta contraction.
ReductionReport scalar_line_values(const GaugeConfig& cfg, const AdjointScalar& s, const Background& bg,
                                   const BlockMetric& metric);

/// Quartic density (F_AB F^AB)² − 2 tr(F⁴).
ReductionReport ym_line_values(const GaugeConfig& cfg, const Background& bg, const BlockMetric& metric);

/// Sign s in D_μφ = ∂_μφ + s·e{A_μ, φ} produced by the background
/// orientation. Computed once from a fixed reference configuration.
int calibrated_sign();

struct TwoDimReport {
  double b = 1.0;
  double q = 0.0;
  /// ∫ ε-squared quartic density dΩ.
  double eps_integral = 0.0;
  /// (1/q²) ∫ F̃_01² dΩ with coupling s·e.
  double reference = 0.0;
  /// eps_integral / reference.
  double constant = 0.0;
  double pinned_constant = 0.0;
  double rel_err = 0.0;
  /// Groups of the quartic density; those with one or no extra index vanish.
  ReductionReport groups;
  double residual_1 = 0.0;
  double residual_0 = 0.0;
};

/// Four-dimensional ε-squared quartic Lagrangian on a D = 2 configuration.
TwoDimReport two_dim_exact_check(const GaugeConfig& cfg, const Background& bg, double b = 1.0);

struct ScanRow {
  double b = 0.0;
  double q = 0.0;
  double covariant = 0.0;
  double residual_1 = 0.0;
  double residual_0 = 0.0;
  double ratio = 0.0;
};

struct ScanReport {
  std::string model;
  double e = 0.0;
  std::vector<ScanRow> rows;
  /// Least-squares slope of log ratio against log b.
  double fit_exponent = 0.0;
  std::vector<ReductionReport> reports;
};

/// Evaluates the line groups for each b with q = e·b². The scalar `s` is
/// ignored for the quartic model.
ScanReport b_scaling_scan(const std::string& model, const GaugeConfig& cfg, const AdjointScalar& s, double e,
                          int D, const std::vector<double>& b_list);

struct BornInfeldRow {
  double b = 0.0;
  double q = 0.0;
  double full = 0.0;     ///< ∫ dθ dφ of the (D+2)-dimensional density
  double reduced = 0.0;  ///< (C/α²)(α/|e|) ∫ dΩ √(−det(g + αF̃))
  double ratio = 0.0;
  double drift = 0.0;  ///< |ratio − previous ratio|; 0 for the first row
};

struct AlphaRow {
  double alpha = 0.0;
  /// Part of I(cfg) − I(background) odd under q → −q, relative to the whole.
  double bracket_share = 0.0;
  /// Relative distance of I(cfg) − I(background) from the Maxwell limit.
  double maxwell_rel_err = 0.0;
};

struct BornInfeldReport {
  double e = 0.0;
  double alpha = 0.0;
  double C = 1.0;
  std::vector<BornInfeldRow> rows;
  bool drift_decreasing = false;
  double alpha_b = 0.0;
  std::vector<AlphaRow> alpha_rows;
  double alpha_exponent = 0.0;  ///< fitted power of α in the bracket share
};

/// Full and reduced determinant actions along a b-scan at fixed e, then the
/// α → 0 ordering experiment at the largest b.
BornInfeldReport born_infeld_reduction_check(const GaugeConfig& cfg, double e, double alpha, double C,
                                             const std::vector<double>& b_list,
                                             const std::vector<double>& alpha_list = {});

/// Least-squares slope of log y against log x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Sphere integral of the full scalar-model density when A = 0 and every
/// spacetime derivative of φ vanishes, leaving only φ's sphere dependence.
double scalar_sector_without_derivatives(const AdjointScalar& s, const Background& bg, const BlockMetric& metric);

}  // namespace uinf
