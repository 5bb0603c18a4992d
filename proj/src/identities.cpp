#include "uinf/identities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace uinf {

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::DeltaScalarExpansion: return "eq10_eq12";
    case Identity::DeltaYmProportional: return "eq18_eq19";
    case Identity::EpsScalar3d: return "eq16_eq10";
    case Identity::EpsYm4d: return "eq22_eq19";
  }
  return "unknown";
}

FlatTensor2 random_antisymmetric(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  auto F = FlatTensor2::zero(n);
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      F(a, b) = normal(rng);
      F(b, a) = -F(a, b);
    }
  }
  return F;
}

FlatVector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  FlatVector v;
  for (int a = 0; a < n; ++a) v.entries.push_back(normal(rng));
  return v;
}

FlatMetric random_metric(int n, std::mt19937_64& rng, bool positive) {
  std::uniform_real_distribution<double> mag(0.5, 2.0);
  std::bernoulli_distribution flip(0.5);
  FlatMetric g;
  for (int a = 0; a < n; ++a) {
    const double m = mag(rng);
    g.diag.push_back((!positive && flip(rng)) ? -m : m);
  }
  return g;
}

namespace {

struct Sample {
  double lhs = 0.0;
  double rhs = 0.0;
};

Sample draw(Identity id, int n, std::mt19937_64& rng) {
  switch (id) {
    case Identity::DeltaScalarExpansion: {
      const auto F = random_antisymmetric(n, rng);
      const auto v = random_vector(n, rng);
      const auto g = random_metric(n, rng, false);
      return {gen_delta_contract_3(F, v, g), expanded_form_12(F, v, g)};
    }
    case Identity::DeltaYmProportional: {
      const auto F = random_antisymmetric(n, rng);
      const auto g = random_metric(n, rng, false);
      return {gen_delta_contract_4(F, g), expanded_form_19(F, g)};
    }
    case Identity::EpsScalar3d: {
      const auto F = random_antisymmetric(3, rng);
      const auto v = random_vector(3, rng);
      const auto g = random_metric(3, rng, true);
      return {eps_square_scalar_3d(F, v, g), gen_delta_contract_3(F, v, g)};
    }
    case Identity::EpsYm4d: {
      const auto F = random_antisymmetric(4, rng);
      const auto g = random_metric(4, rng, true);
      return {eps_square_ym_4d(F, g), expanded_form_19(F, g)};
    }
  }
  return {};
}

double pinned(Identity id) {
  switch (id) {
    case Identity::DeltaScalarExpansion: return 1.0;
    case Identity::DeltaYmProportional: return kDeltaYmRatio;
    case Identity::EpsScalar3d: return kEpsScalarRatio;
    case Identity::EpsYm4d: return kEpsYmRatio;
  }
  return 0.0;
}

void check_dims(Identity id, int n) {
  if (n < 2 || n > kMaxTensorDim) throw std::invalid_argument("identity dimension must be in [2, 8]");
  if (id == Identity::EpsScalar3d && n != 3) throw std::invalid_argument("eq16_eq10 is defined for n = 3");
  if (id == Identity::EpsYm4d && n != 4) throw std::invalid_argument("eq22_eq19 is defined for n = 4");
}

}  // namespace

IdentityReport run_identity(Identity id, std::span<const int> dims, int trials, std::uint64_t seed) {
  if (trials <= 0) throw std::invalid_argument("trials must be positive");
  if (dims.empty()) throw std::invalid_argument("no dimensions given");
  for (int n : dims) check_dims(id, n);

  const int per_dim = trials;
  const int total = per_dim * static_cast<int>(dims.size());
  std::vector<Sample> samples(static_cast<std::size_t>(total));

#pragma omp parallel for schedule(static)
  for (int t = 0; t < total; ++t) {
    const int n = dims[t / per_dim];
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(id), static_cast<std::uint32_t>(n),
                      static_cast<std::uint32_t>(t % per_dim)};
    std::mt19937_64 rng(seq);
    samples[t] = draw(id, n, rng);
  }

  IdentityReport report;
  report.identity = identity_name(id);
  report.dims.assign(dims.begin(), dims.end());
  report.trials = per_dim;
  report.pinned_constant = pinned(id);

  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  double rsum = 0.0;
  int rcount = 0;
  for (const auto& s : samples) {
    const double expect = report.pinned_constant * s.rhs;
    const double denom = std::max(std::abs(s.lhs), std::abs(expect));
    if (denom > 0.0) report.max_rel_err = std::max(report.max_rel_err, std::abs(s.lhs - expect) / denom);
    // Ratios are only meaningful away from identically vanishing forms.
    if (std::abs(s.rhs) > 1e-8) {
      const double r = s.lhs / s.rhs;
      rmin = std::min(rmin, r);
      rmax = std::max(rmax, r);
      rsum += r;
      ++rcount;
    }
  }
  if (rcount > 0) {
    report.constant = rsum / rcount;
    report.spread = (rmax - rmin) / std::abs(report.constant);
  }
  return report;
}

}  // namespace uinf
