#pragma once

#include <span>
#include <vector>

namespace uinf {

inline constexpr int kMaxTensorDim = 8;

/// Rank-2 covariant tensor F_AB in n <= 8 dimensions, row-major.
struct FlatTensor2 {
  int n = 0;
  std::vector<double> entries;

  static FlatTensor2 zero(int n);
  double operator()(int a, int b) const { return entries[a * n + b]; }
  double& operator()(int a, int b) { return entries[a * n + b]; }
  /// max |F_AB + F_BA|.
  double antisymmetry_defect() const;
};

/// Covariant vector v_A (e.g. ∂_A φ).
struct FlatVector {
  std::vector<double> entries;

  int n() const { return static_cast<int>(entries.size()); }
  double operator[](int a) const { return entries[a]; }
};

/// Diagonal metric g_AB = diag(...); every entry nonzero.
struct FlatMetric {
  std::vector<double> diag;

  static FlatMetric euclidean(int n);
  /// diag(−1, +1, …, +1).
  static FlatMetric lorentzian(int n);
  int n() const { return static_cast<int>(diag.size()); }
  double inverse(int a) const { return 1.0 / diag[a]; }
  double det() const;
};

/// Sign of the permutation taking (0, 1, …, k−1) to `perm`; 0 if any index repeats.
int levi_civita(std::span<const int> perm);

/// δ^{upper}_{lower} = Σ_σ sgn σ Π_i δ^{upper_i}_{lower_σ(i)}.
int generalized_delta(std::span<const int> upper, std::span<const int> lower);

/// δ^{ABC}_{DEF} F^{DE} F_{AB} ∂^Fφ ∂_Cφ by an explicit sum over the 3! index permutations.
double gen_delta_contract_3(const FlatTensor2& F, const FlatVector& v, const FlatMetric& g);

/// 2(F^{AB}F_{AB} ∂^Cφ∂_Cφ − 2 F^{AC}F_{AB} ∂^Bφ∂_Cφ).
double expanded_form_12(const FlatTensor2& F, const FlatVector& v, const FlatMetric& g);

/// δ^{ABCD}_{EFGH} F^{EF} F_{AB} F^{GH} F_{CD} by an explicit sum over 4! permutations.
double gen_delta_contract_4(const FlatTensor2& F, const FlatMetric& g);

/// (F_AB F^AB)² − 2 F^A_B F^B_C F^C_D F^D_A.
double expanded_form_19(const FlatTensor2& F, const FlatMetric& g);

/// (ε^{ABC} F_AB ∂_Cφ)² / |det g| with ε the Levi-Civita symbol; n = 3 only.
double eps_square_scalar_3d(const FlatTensor2& F, const FlatVector& v, const FlatMetric& g);

/// (ε^{ABCD} F_AB F_CD)² / |det g|; n = 4 only.
double eps_square_ym_4d(const FlatTensor2& F, const FlatMetric& g);

/// (C/α²)[√(−det(g + αF)) − √(−det g)]. Requires a Lorentzian g and a
/// negative det(g + αF); throws std::domain_error otherwise.
double born_infeld_density(const FlatTensor2& F, const FlatMetric& g, double alpha, double C);

/// det(g + αF) by LU factorization.
double shifted_determinant(const FlatTensor2& F, const FlatMetric& g, double alpha);

}  // namespace uinf
