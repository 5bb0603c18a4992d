#include "uinf/gauge_fields.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "uinf/sphere_algebra.hpp"

namespace uinf {

namespace {

void check_index(int D, int mu) {
  if (mu < 0 || mu >= D) throw std::out_of_range("spacetime index " + std::to_string(mu) + " out of range");
}

std::vector<HarmonicField> padded_all(const std::vector<HarmonicField>& in, int l_max) {
  std::vector<HarmonicField> out;
  out.reserve(in.size());
  for (const auto& f : in) out.push_back(f.padded(l_max));
  return out;
}

}  // namespace

SpacetimeMetric SpacetimeMetric::lorentzian(int D) {
  if (D < 1) throw std::invalid_argument("spacetime dimension must be positive");
  SpacetimeMetric g;
  g.diag.assign(D, 1.0);
  g.diag[0] = -1.0;
  return g;
}

GaugeConfig GaugeConfig::zero(int D, int l_max, double coupling) {
  GaugeConfig cfg;
  cfg.D = D;
  cfg.coupling = coupling;
  cfg.A.assign(D, HarmonicField(l_max, true));
  cfg.dA.assign(static_cast<std::size_t>(D) * D, HarmonicField(l_max, true));
  return cfg;
}

GaugeConfig GaugeConfig::random(int D, int l_max, std::mt19937_64& rng, double coupling, double scale) {
  GaugeConfig cfg;
  cfg.D = D;
  cfg.coupling = coupling;
  for (int mu = 0; mu < D; ++mu) cfg.A.push_back(random_real_field(l_max, rng, scale));
  for (int i = 0; i < D * D; ++i) cfg.dA.push_back(random_real_field(l_max, rng, scale));
  return cfg;
}

int GaugeConfig::l_max() const { return A.empty() ? 0 : A.front().l_max(); }

void GaugeConfig::validate() const {
  if (D < 1) throw std::invalid_argument("GaugeConfig: D must be positive");
  if (static_cast<int>(A.size()) != D || static_cast<int>(dA.size()) != D * D) {
    throw std::invalid_argument("GaugeConfig: component count does not match D");
  }
  const int l = l_max();
  auto check = [l](const HarmonicField& f) {
    if (f.l_max() != l) throw std::invalid_argument("GaugeConfig: components must share one band limit");
    if (f.reality_defect() > 1e-12) throw std::invalid_argument("GaugeConfig: components must be real");
  };
  std::for_each(A.begin(), A.end(), check);
  std::for_each(dA.begin(), dA.end(), check);
}

AdjointScalar AdjointScalar::zero(int D, int l_max) {
  AdjointScalar s;
  s.phi = HarmonicField(l_max, true);
  s.dphi.assign(D, HarmonicField(l_max, true));
  return s;
}

AdjointScalar AdjointScalar::random(int D, int l_max, std::mt19937_64& rng, double scale) {
  AdjointScalar s;
  s.phi = random_real_field(l_max, rng, scale);
  for (int mu = 0; mu < D; ++mu) s.dphi.push_back(random_real_field(l_max, rng, scale));
  return s;
}

void AdjointScalar::validate(int D) const {
  if (static_cast<int>(dphi.size()) != D) throw std::invalid_argument("AdjointScalar: dphi count does not match D");
  for (const auto& f : dphi) {
    if (f.l_max() != phi.l_max()) throw std::invalid_argument("AdjointScalar: components must share one band limit");
    if (f.reality_defect() > 1e-12) throw std::invalid_argument("AdjointScalar: components must be real");
  }
  if (phi.reality_defect() > 1e-12) throw std::invalid_argument("AdjointScalar: phi must be real");
}

HarmonicField field_strength(const GaugeConfig& cfg, int mu, int nu) {
  check_index(cfg.D, mu);
  check_index(cfg.D, nu);
  HarmonicField out = cfg.d(mu, nu) - cfg.d(nu, mu);
  out += cfg.coupling * bracket(cfg.A[mu], cfg.A[nu]);
  return out;
}

GaugeConfig gauge_transform(const GaugeConfig& cfg, const GaugeParameter& w, double t) {
  cfg.validate();
  const int D = cfg.D;
  if (static_cast<int>(w.d_omega.size()) != D) throw std::invalid_argument("gauge_transform: d_omega count");
  if (!w.dd_omega.empty() && static_cast<int>(w.dd_omega.size()) != D * D) {
    throw std::invalid_argument("gauge_transform: dd_omega count");
  }
  if (w.omega.reality_defect() > 1e-12) throw std::invalid_argument("gauge_transform: omega must be real");
  const int lw = w.omega.l_max();
  for (const auto& f : w.d_omega) {
    if (f.l_max() != lw) throw std::invalid_argument("gauge_transform: band-limit mismatch in d_omega");
  }
  for (const auto& f : w.dd_omega) {
    if (f.l_max() != lw) throw std::invalid_argument("gauge_transform: band-limit mismatch in dd_omega");
  }

  const int l_out = cfg.l_max() + lw;
  const double c = cfg.coupling;
  GaugeConfig out;
  out.D = D;
  out.coupling = c;
  out.A = padded_all(cfg.A, l_out);
  out.dA = padded_all(cfg.dA, l_out);
  for (int mu = 0; mu < D; ++mu) {
    out.A[mu] += t * (w.d_omega[mu] + c * bracket(cfg.A[mu], w.omega));
  }
  for (int nu = 0; nu < D; ++nu) {
    for (int mu = 0; mu < D; ++mu) {
      // ∂_ν(∂_μω + c{A_μ, ω}) = ∂_ν∂_μω + c{∂_νA_μ, ω} + c{A_μ, ∂_νω}
      HarmonicField delta = c * (bracket(cfg.d(nu, mu), w.omega) + bracket(cfg.A[mu], w.d_omega[nu]));
      if (!w.dd_omega.empty()) delta += w.dd_omega[nu * D + mu];
      out.d(nu, mu) += t * delta;
    }
  }
  for (auto& f : out.A) f = f.real_part();
  for (auto& f : out.dA) f = f.real_part();
  return out;
}

AdjointScalar gauge_transform(const AdjointScalar& s, const GaugeConfig& cfg, const GaugeParameter& w,
                              double t) {
  s.validate(cfg.D);
  const double c = cfg.coupling;
  const int l_out = s.l_max() + w.omega.l_max();
  AdjointScalar out;
  out.phi = s.phi.padded(l_out) + (t * c) * bracket(s.phi, w.omega);
  for (int mu = 0; mu < cfg.D; ++mu) {
    // ∂_μ{φ, ω} = {∂_μφ, ω} + {φ, ∂_μω}
    out.dphi.push_back(s.dphi[mu].padded(l_out) +
                       (t * c) * (bracket(s.dphi[mu], w.omega) + bracket(s.phi, w.d_omega[mu])));
  }
  out.phi = out.phi.real_part();
  for (auto& f : out.dphi) f = f.real_part();
  return out;
}

HarmonicField covariant_derivative(const AdjointScalar& s, const GaugeConfig& cfg, int mu) {
  check_index(cfg.D, mu);
  if (static_cast<int>(s.dphi.size()) != cfg.D) throw std::invalid_argument("covariant_derivative: dphi count");
  HarmonicField out = s.dphi[mu];
  out += cfg.coupling * bracket(cfg.A[mu], s.phi);
  return out;
}

double real_inner(const HarmonicField& f, const HarmonicField& g) { return inner(f, g).real(); }

double field_strength_square(const GaugeConfig& cfg, const SpacetimeMetric& g) {
  if (g.dim() != cfg.D) throw std::invalid_argument("field_strength_square: metric dimension");
  double acc = 0.0;
  for (int mu = 0; mu < cfg.D; ++mu) {
    for (int nu = 0; nu < cfg.D; ++nu) {
      if (mu == nu) continue;
      const auto f = field_strength(cfg, mu, nu);
      acc += g.inverse(mu) * g.inverse(nu) * real_inner(f, f);
    }
  }
  return acc;
}

double covariant_derivative_square(const AdjointScalar& s, const GaugeConfig& cfg, const SpacetimeMetric& g) {
  if (g.dim() != cfg.D) throw std::invalid_argument("covariant_derivative_square: metric dimension");
  double acc = 0.0;
  for (int mu = 0; mu < cfg.D; ++mu) {
    const auto d = covariant_derivative(s, cfg, mu);
    acc += g.inverse(mu) * real_inner(d, d);
  }
  return acc;
}

}  // namespace uinf
