#pragma once

#include <random>

#include "uinf/gauge_fields.hpp"
#include "uinf/harmonic_field.hpp"

namespace uinf::testing {

inline std::mt19937_64 rng_for(std::uint64_t seed) { return std::mt19937_64(seed * 0x9e3779b97f4a7c15ULL + 17); }

/// Complex field with every coefficient drawn, no reality condition.
inline HarmonicField random_complex_field(int l_max, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  HarmonicField f(l_max, false);
  for (auto& c : f.coeffs()) c = {nd(rng), nd(rng)};
  return f;
}

/// ω with first derivatives; second derivatives zero.
inline GaugeParameter random_parameter(int D, int l_max, std::mt19937_64& rng) {
  GaugeParameter w;
  w.omega = random_real_field(l_max, rng);
  for (int mu = 0; mu < D; ++mu) w.d_omega.push_back(random_real_field(l_max, rng));
  return w;
}

inline double rel(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

}  // namespace uinf::testing
