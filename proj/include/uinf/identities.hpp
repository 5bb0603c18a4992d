#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "uinf/tensor_kernels.hpp"

namespace uinf {

// Proportionality constants between the generalized-delta Lagrangians and
// their expanded / ε-squared forms. Measured by the identity suites and
// pinned here; the tests re-measure them.
inline constexpr double kDeltaYmRatio = 8.0;    ///< δ⁴-contraction / expanded quartic form, n >= 4
inline constexpr double kEpsScalarRatio = 1.0;  ///< ε²-scalar / δ³-contraction, n = 3, positive metric
inline constexpr double kEpsYmRatio = 8.0;      ///< ε²-quartic / expanded quartic form, n = 4, positive metric

enum class Identity {
  DeltaScalarExpansion,  ///< gen_delta_contract_3 == expanded_form_12
  DeltaYmProportional,   ///< gen_delta_contract_4 == κ expanded_form_19
  EpsScalar3d,           ///< eps_square_scalar_3d == c gen_delta_contract_3
  EpsYm4d,               ///< eps_square_ym_4d == c expanded_form_19
};

std::string identity_name(Identity id);

struct IdentityReport {
  std::string identity;
  std::vector<int> dims;
  int trials = 0;  ///< per dimension
  /// max |lhs − pinned·rhs| / max(|lhs|, |pinned·rhs|).
  double max_rel_err = 0.0;
  /// Mean measured lhs/rhs ratio.
  double constant = 0.0;
  /// (max ratio − min ratio) / |mean ratio|.
  double spread = 0.0;
  double pinned_constant = 0.0;
};

/// Runs one identity on `trials` random draws in each dimension. Draws are
/// seeded per (seed, identity, dimension, trial), so the report does not
/// depend on the number of threads.
IdentityReport run_identity(Identity id, std::span<const int> dims, int trials, std::uint64_t seed);

// Random draws used by the suites.
FlatTensor2 random_antisymmetric(int n, std::mt19937_64& rng);
FlatVector random_vector(int n, std::mt19937_64& rng);
/// Diagonal entries with magnitudes in [0.5, 2]; random signs unless `positive`.
FlatMetric random_metric(int n, std::mt19937_64& rng, bool positive);

}  // namespace uinf
