#pragma once

#include <vector>

#include "uinf/harmonic_field.hpp"

namespace uinf {

/// Diagonal spacetime metric used to raise indices.
struct SpacetimeMetric {
  std::vector<double> diag;

  /// diag(−1, +1, …, +1).
  static SpacetimeMetric lorentzian(int D);
  int dim() const { return static_cast<int>(diag.size()); }
  double inverse(int mu) const { return 1.0 / diag[mu]; }
};

/// Jet of a U(∞) gauge field at one spacetime point: the values A_μ and the
/// first derivatives ∂_ν A_μ, each a real function on the sphere.
struct GaugeConfig {
  int D = 0;
  double coupling = 1.0;
  std::vector<HarmonicField> A;   ///< A[μ]
  std::vector<HarmonicField> dA;  ///< dA[ν * D + μ] = ∂_ν A_μ

  static GaugeConfig zero(int D, int l_max, double coupling = 1.0);
  static GaugeConfig random(int D, int l_max, std::mt19937_64& rng, double coupling = 1.0,
                            double scale = 1.0);

  const HarmonicField& d(int nu, int mu) const { return dA[nu * D + mu]; }
  HarmonicField& d(int nu, int mu) { return dA[nu * D + mu]; }
  int l_max() const;
  /// Throws unless shapes agree, all fields are real and share one band limit.
  void validate() const;
};

/// Scalar in the adjoint: value φ and ∂_μ φ at one spacetime point.
struct AdjointScalar {
  HarmonicField phi;
  std::vector<HarmonicField> dphi;

  static AdjointScalar zero(int D, int l_max);
  static AdjointScalar random(int D, int l_max, std::mt19937_64& rng, double scale = 1.0);
  int l_max() const { return phi.l_max(); }
  void validate(int D) const;
};

/// Infinitesimal gauge parameter ω with its first and (optional, symmetric)
/// second spacetime derivatives.
struct GaugeParameter {
  HarmonicField omega;
  std::vector<HarmonicField> d_omega;   ///< ∂_μ ω
  std::vector<HarmonicField> dd_omega;  ///< ∂_μ∂_ν ω at [μ * D + ν]; empty means zero
};

/// F̃_μν = ∂_μA_ν − ∂_νA_μ + coupling {A_μ, A_ν}, at band limit 2·l_max.
HarmonicField field_strength(const GaugeConfig& cfg, int mu, int nu);

/// First-order gauge transformation with parameter t:
/// A_μ → A_μ + t(∂_μω + coupling {A_μ, ω}), with ∂_νA_μ moved consistently.
GaugeConfig gauge_transform(const GaugeConfig& cfg, const GaugeParameter& w, double t);

/// Matching transformation of an adjoint scalar: φ → φ + t·coupling{φ, ω}.
AdjointScalar gauge_transform(const AdjointScalar& s, const GaugeConfig& cfg, const GaugeParameter& w,
                              double t);

/// D_μφ = ∂_μφ + coupling {A_μ, φ}.
HarmonicField covariant_derivative(const AdjointScalar& s, const GaugeConfig& cfg, int mu);

/// ∫ F̃_μν F̃^μν dΩ summed over all ordered pairs (μ, ν).
double field_strength_square(const GaugeConfig& cfg, const SpacetimeMetric& g);

/// ∫ D_μφ D^μφ dΩ.
double covariant_derivative_square(const AdjointScalar& s, const GaugeConfig& cfg, const SpacetimeMetric& g);

/// ∫ f g dΩ for real fields.
double real_inner(const HarmonicField& f, const HarmonicField& g);

}  // namespace uinf
