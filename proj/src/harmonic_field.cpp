#include "uinf/harmonic_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uinf {

namespace {

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

void check_lm(int l, int m) {
  if (l < 0 || m < -l || m > l) {
    throw std::invalid_argument("invalid harmonic index (" + std::to_string(l) + ", " +
                                std::to_string(m) + ")");
  }
}

}  // namespace

HarmonicField::HarmonicField(int l_max, bool real)
    : l_max_(l_max), real_(real), coeffs_(static_cast<std::size_t>(harmonic_count(l_max))) {
  if (l_max < 0) throw std::invalid_argument("negative band limit");
}

HarmonicField::HarmonicField(int l_max, std::vector<cplx> coeffs, bool real)
    : l_max_(l_max), real_(real), coeffs_(std::move(coeffs)) {
  if (l_max < 0) throw std::invalid_argument("negative band limit");
  if (coeffs_.size() != static_cast<std::size_t>(harmonic_count(l_max))) {
    throw std::invalid_argument("coefficient array does not match band limit");
  }
}

HarmonicField HarmonicField::mode(int l, int m, cplx value, int l_max) {
  check_lm(l, m);
  HarmonicField f(std::max(l, l_max), false);
  f.set(l, m, value);
  return f;
}

cplx HarmonicField::coeff(int l, int m) const {
  check_lm(l, m);
  if (l > l_max_) return {};
  return coeffs_[harmonic_index(l, m)];
}

void HarmonicField::set(int l, int m, cplx value) {
  check_lm(l, m);
  if (l > l_max_) throw std::out_of_range("coefficient beyond band limit");
  coeffs_[harmonic_index(l, m)] = value;
}

HarmonicField HarmonicField::padded(int l_max) const {
  if (l_max < l_max_) throw std::invalid_argument("padding cannot shrink the band limit");
  HarmonicField out(l_max, real_);
  std::copy(coeffs_.begin(), coeffs_.end(), out.coeffs_.begin());
  return out;
}

HarmonicField HarmonicField::truncated(int l_max) const {
  if (l_max >= l_max_) return padded(l_max);
  HarmonicField out(l_max, real_);
  std::copy_n(coeffs_.begin(), out.coeffs_.size(), out.coeffs_.begin());
  return out;
}

double HarmonicField::max_abs() const {
  double mx = 0.0;
  for (const auto& c : coeffs_) mx = std::max(mx, std::abs(c));
  return mx;
}

double HarmonicField::reality_defect() const {
  double mx = 0.0;
  for (int l = 0; l <= l_max_; ++l) {
    for (int m = 0; m <= l; ++m) {
      const cplx expect = parity(m) * std::conj(coeffs_[harmonic_index(l, m)]);
      mx = std::max(mx, std::abs(coeffs_[harmonic_index(l, -m)] - expect));
    }
  }
  return mx;
}

HarmonicField HarmonicField::real_part() const {
  HarmonicField out(l_max_, true);
  for (int l = 0; l <= l_max_; ++l) {
    for (int m = 0; m <= l; ++m) {
      const cplx a = coeffs_[harmonic_index(l, m)];
      const cplx b = parity(m) * std::conj(coeffs_[harmonic_index(l, -m)]);
      const cplx avg = 0.5 * (a + b);
      out.coeffs_[harmonic_index(l, m)] = (m == 0) ? cplx(avg.real(), 0.0) : avg;
      out.coeffs_[harmonic_index(l, -m)] = parity(m) * std::conj(out.coeffs_[harmonic_index(l, m)]);
    }
  }
  return out;
}

HarmonicField& HarmonicField::operator+=(const HarmonicField& o) {
  if (o.l_max_ > l_max_) *this = padded(o.l_max_);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

HarmonicField& HarmonicField::operator-=(const HarmonicField& o) {
  if (o.l_max_ > l_max_) *this = padded(o.l_max_);
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  real_ = real_ && o.real_;
  return *this;
}

HarmonicField& HarmonicField::operator*=(double s) {
  for (auto& c : coeffs_) c *= s;
  return *this;
}

HarmonicField& HarmonicField::operator*=(cplx s) {
  for (auto& c : coeffs_) c *= s;
  if (s.imag() != 0.0) real_ = false;
  return *this;
}

double max_abs_diff(const HarmonicField& a, const HarmonicField& b) {
  const int l_max = std::max(a.l_max(), b.l_max());
  double mx = 0.0;
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) mx = std::max(mx, std::abs(a.coeff(l, m) - b.coeff(l, m)));
  }
  return mx;
}

cplx inner(const HarmonicField& f, const HarmonicField& g) {
  const int l_max = std::min(f.l_max(), g.l_max());
  cplx acc{};
  for (int i = 0; i < harmonic_count(l_max); ++i) acc += f.coeffs()[i] * std::conj(g.coeffs()[i]);
  return acc;
}

HarmonicField random_real_field(int l_max, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal(0.0, 1.0);
  HarmonicField f(l_max, true);
  for (int l = 0; l <= l_max; ++l) {
    const double amp = scale / (1.0 + l);
    f.set(l, 0, amp * normal(rng));
    for (int m = 1; m <= l; ++m) {
      const double re = normal(rng);
      const double im = normal(rng);
      const cplx c = amp * cplx(re, im) / std::sqrt(2.0);
      f.set(l, m, c);
      f.set(l, -m, parity(m) * std::conj(c));
    }
  }
  return f;
}

}  // namespace uinf
