#pragma once

#include <complex>
#include <random>
#include <span>
#include <vector>

namespace uinf {

using cplx = std::complex<double>;

/// Flat index of the (l, m) coefficient in a band-limited expansion.
constexpr int harmonic_index(int l, int m) { return l * (l + 1) + m; }
constexpr int harmonic_count(int l_max) { return (l_max + 1) * (l_max + 1); }

/// Band-limited complex function on the unit sphere, stored as orthonormal
/// spherical-harmonic coefficients c(l, m) for 0 <= l <= l_max, |m| <= l.
///
/// The `real` flag records that the coefficients satisfy
/// c(l, -m) = (-1)^m conj(c(l, m)); arithmetic propagates it conservatively.
class HarmonicField {
 public:
  HarmonicField() : HarmonicField(0, true) {}
  explicit HarmonicField(int l_max, bool real = true);
  HarmonicField(int l_max, std::vector<cplx> coeffs, bool real);

  /// Single mode `value * Y_lm`, padded to `l_max` (defaults to l).
  static HarmonicField mode(int l, int m, cplx value = 1.0, int l_max = -1);

  int l_max() const { return l_max_; }
  bool real() const { return real_; }
  void set_real(bool r) { real_ = r; }

  cplx coeff(int l, int m) const;
  void set(int l, int m, cplx value);
  std::span<const cplx> coeffs() const { return coeffs_; }
  std::span<cplx> coeffs() { return coeffs_; }

  HarmonicField padded(int l_max) const;
  HarmonicField truncated(int l_max) const;

  /// Largest |c(l, m)|.
  double max_abs() const;
  /// Largest violation of the reality condition.
  double reality_defect() const;
  /// Projects onto the real subspace and sets the flag.
  HarmonicField real_part() const;

  HarmonicField& operator+=(const HarmonicField& o);
  HarmonicField& operator-=(const HarmonicField& o);
  HarmonicField& operator*=(double s);
  HarmonicField& operator*=(cplx s);

  friend HarmonicField operator+(HarmonicField a, const HarmonicField& b) { return a += b; }
  friend HarmonicField operator-(HarmonicField a, const HarmonicField& b) { return a -= b; }
  friend HarmonicField operator-(HarmonicField a) { return a *= -1.0; }
  friend HarmonicField operator*(double s, HarmonicField a) { return a *= s; }
  friend HarmonicField operator*(HarmonicField a, double s) { return a *= s; }
  friend HarmonicField operator*(cplx s, HarmonicField a) { return a *= s; }

 private:
  int l_max_ = 0;
  bool real_ = true;
  std::vector<cplx> coeffs_;
};

/// max |a - b| over the union of both band limits.
double max_abs_diff(const HarmonicField& a, const HarmonicField& b);

/// ∫ f conj(g) dΩ (Parseval).
cplx inner(const HarmonicField& f, const HarmonicField& g);

/// Random real field with standard-normal coefficients scaled by `scale`,
/// attenuated by 1/(1+l) so that higher modes stay moderate.
HarmonicField random_real_field(int l_max, std::mt19937_64& rng, double scale = 1.0);

}  // namespace uinf
