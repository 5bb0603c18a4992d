#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

#include "uinf/harmonic_field.hpp"
#include "uinf/kernels.hpp"
#include "uinf/sphere_grid.hpp"

namespace uinf {

using kernels::Derivative;

/// Grid exact for triple products of fields with band limit `l_max`.
SphereGrid make_grid(int l_max);

/// Orthonormal Y_lm(θ, φ) with the Condon-Shortley phase.
cplx eval_harmonic(int l, int m, double theta, double phi);

/// Values (or angular derivatives) of f at every grid node.
std::vector<cplx> synthesize(const HarmonicField& f, const SphereGrid& grid,
                             Derivative kind = Derivative::Value);

/// Quadrature projection ∫ values conj(Y_lm) dΩ for l <= l_max.
HarmonicField analyze(std::span<const cplx> values, int l_max, const SphereGrid& grid);

/// {f, g} = ∂f/∂cosθ ∂g/∂φ − ∂f/∂φ ∂g/∂cosθ. The result carries band limit
/// f.l_max() + g.l_max(); nothing is truncated.
HarmonicField bracket(const HarmonicField& f, const HarmonicField& g);

/// Pointwise product at the summed band limit.
HarmonicField multiply(const HarmonicField& f, const HarmonicField& g);

/// ∫ f dΩ.
cplx integrate(const HarmonicField& f);

/// f_{(l1 m1)(l2 m2)(l3 m3)} = ∫ {Y_{l1 m1}, Y_{l2 m2}} conj(Y_{l3 m3}) dΩ for
/// every triple with all degrees <= l_max.
class StructureConstants {
 public:
  explicit StructureConstants(int l_max);

  int l_max() const { return l_max_; }
  cplx operator()(int l1, int m1, int l2, int m2, int l3, int m3) const;

 private:
  int l_max_;
  int modes_;
  std::vector<cplx> values_;
};

StructureConstants structure_constants(int l_max);

/// l = 1 generators realizing su(2) under the bracket:
/// {T^a, T^b} = c ε_abc T^c.
struct Su2Generators {
  std::array<HarmonicField, 3> T;
  /// Closure constant c of the basis in use.
  double closure_constant = 0.0;
  /// max |{T^a, T^b} − c ε_abc T^c| over all pairs, for the basis in use.
  double closure_residual = 0.0;
  /// Whether the basis in use is (Y11 ± iY1-1)/√2, Y10; otherwise the real
  /// Cartesian combinations are used.
  bool printed_basis = true;
  /// Closure residual measured for the (Y11 ± iY1-1)/√2, Y10 basis.
  double printed_basis_residual = 0.0;
};

Su2Generators su2_generators();

/// Closure check for an arbitrary triple: returns {c, residual}, with c fitted
/// from {T^1, T^2} against T^3 (complex in general).
std::pair<cplx, double> su2_closure(const std::array<HarmonicField, 3>& T);

}  // namespace uinf
