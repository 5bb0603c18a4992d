#include "uinf/sphere_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace uinf {

namespace {

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

HarmonicField from_coeffs(std::vector<cplx> coeffs, int l_max, bool real) {
  return HarmonicField(l_max, std::move(coeffs), real);
}

}  // namespace

SphereGrid make_grid(int l_max) {
  if (l_max <= 0) throw std::invalid_argument("make_grid: l_max must be positive");
  return SphereGrid::for_degree(3 * l_max);
}

cplx eval_harmonic(int l, int m, double theta, double phi) {
  if (l < 0 || m < -l || m > l) throw std::invalid_argument("eval_harmonic: require |m| <= l");
  std::vector<double> p;
  normalized_legendre(l, std::cos(theta), p);
  const int am = std::abs(m);
  const double sign = m < 0 ? parity(m) : 1.0;
  return sign * p[SphereBasis::tri(l, am)] * std::polar(1.0, m * phi);
}

std::vector<cplx> synthesize(const HarmonicField& f, const SphereGrid& grid, Derivative kind) {
  if (!grid.resolves(f.l_max())) throw std::invalid_argument("synthesize: grid too coarse for band limit");
  const SphereBasis basis(grid, f.l_max());
  return kernels::parallel::synthesize(f.coeffs(), f.l_max(), basis, kind);
}

HarmonicField analyze(std::span<const cplx> values, int l_max, const SphereGrid& grid) {
  if (values.size() != static_cast<std::size_t>(grid.size())) {
    throw std::invalid_argument("analyze: value array does not match grid");
  }
  if (!grid.resolves(l_max)) throw std::invalid_argument("analyze: grid too coarse for band limit");
  const SphereBasis basis(grid, l_max);
  return from_coeffs(kernels::parallel::analyze(values, l_max, basis), l_max, false);
}

HarmonicField bracket(const HarmonicField& f, const HarmonicField& g) {
  const int l_out = f.l_max() + g.l_max();
  const auto basis = basis_for(2 * l_out, l_out);
  using kernels::parallel::synthesize;
  const auto fz = synthesize(f.coeffs(), f.l_max(), *basis, Derivative::DCosTheta);
  const auto fp = synthesize(f.coeffs(), f.l_max(), *basis, Derivative::DPhi);
  const auto gz = synthesize(g.coeffs(), g.l_max(), *basis, Derivative::DCosTheta);
  const auto gp = synthesize(g.coeffs(), g.l_max(), *basis, Derivative::DPhi);
  std::vector<cplx> values(fz.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fz[i] * gp[i] - fp[i] * gz[i];
  return from_coeffs(kernels::parallel::analyze(values, l_out, *basis), l_out, f.real() && g.real());
}

HarmonicField multiply(const HarmonicField& f, const HarmonicField& g) {
  const int l_out = f.l_max() + g.l_max();
  const auto basis = basis_for(2 * l_out, l_out);
  const auto fv = kernels::parallel::synthesize(f.coeffs(), f.l_max(), *basis);
  const auto gv = kernels::parallel::synthesize(g.coeffs(), g.l_max(), *basis);
  std::vector<cplx> values(fv.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fv[i] * gv[i];
  return from_coeffs(kernels::parallel::analyze(values, l_out, *basis), l_out, f.real() && g.real());
}

cplx integrate(const HarmonicField& f) { return std::sqrt(4.0 * std::numbers::pi) * f.coeff(0, 0); }

StructureConstants::StructureConstants(int l_max) : l_max_(l_max), modes_(harmonic_count(l_max)) {
  if (l_max <= 0) throw std::invalid_argument("structure_constants: l_max must be positive");
  values_.assign(static_cast<std::size_t>(modes_) * modes_ * modes_, cplx{});
  std::vector<std::pair<int, int>> lm;
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) lm.emplace_back(l, m);
  }
  const int n = modes_;
#pragma omp parallel for schedule(dynamic)
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const auto br = bracket(HarmonicField::mode(lm[a].first, lm[a].second),
                              HarmonicField::mode(lm[b].first, lm[b].second));
      for (int c = 0; c < n; ++c) {
        const cplx v = br.coeff(lm[c].first, lm[c].second);
        values_[(static_cast<std::size_t>(a) * n + b) * n + c] = v;
        values_[(static_cast<std::size_t>(b) * n + a) * n + c] = -v;
      }
    }
  }
}

cplx StructureConstants::operator()(int l1, int m1, int l2, int m2, int l3, int m3) const {
  for (int l : {l1, l2, l3}) {
    if (l < 0 || l > l_max_) throw std::out_of_range("structure constant index beyond band limit");
  }
  if (std::abs(m1) > l1 || std::abs(m2) > l2 || std::abs(m3) > l3) {
    throw std::out_of_range("structure constant index |m| > l");
  }
  const auto a = static_cast<std::size_t>(harmonic_index(l1, m1));
  const auto b = static_cast<std::size_t>(harmonic_index(l2, m2));
  const auto c = static_cast<std::size_t>(harmonic_index(l3, m3));
  return values_[(a * modes_ + b) * modes_ + c];
}

StructureConstants structure_constants(int l_max) { return StructureConstants(l_max); }

std::pair<cplx, double> su2_closure(const std::array<HarmonicField, 3>& T) {
  // Fit c from {T1, T2} = c T3.
  const auto b12 = bracket(T[0], T[1]);
  const cplx c = inner(b12, T[2]) / inner(T[2], T[2]);
  double residual = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      const auto br = bracket(T[a], T[b]);
      HarmonicField expect(br.l_max(), false);
      if (a != b) {
        const int k = 3 - a - b;
        // ε_{abk} for a cyclic (a, b, k) is +1.
        const double eps = ((b - a + 3) % 3 == 1) ? 1.0 : -1.0;
        expect += (c * eps) * T[k];
      }
      residual = std::max(residual, max_abs_diff(br, expect));
    }
  }
  return {c, residual};
}

Su2Generators su2_generators() {
  const double r2 = std::numbers::sqrt2;
  const cplx i(0.0, 1.0);
  const auto y11 = HarmonicField::mode(1, 1);
  const auto y1m = HarmonicField::mode(1, -1);
  const auto y10 = HarmonicField::mode(1, 0);

  Su2Generators out;
  const std::array<HarmonicField, 3> printed{(1.0 / r2) * (y11 + i * y1m), (1.0 / r2) * (y11 - i * y1m), y10};
  const auto [c_printed, res_printed] = su2_closure(printed);
  out.printed_basis_residual = res_printed;
  constexpr double kClosureTol = 1e-10;
  if (res_printed < kClosureTol && std::abs(c_printed.imag()) < kClosureTol) {
    out.T = printed;
    out.closure_constant = c_printed.real();
    out.closure_residual = res_printed;
    out.printed_basis = true;
  } else {
    std::array<HarmonicField, 3> cartesian{(1.0 / r2) * (y1m - y11), (i / r2) * (y1m + y11), y10};
    for (auto& t : cartesian) t = t.real_part();
    const auto [c, res] = su2_closure(cartesian);
    out.T = cartesian;
    out.closure_constant = c.real();
    out.closure_residual = std::max(res, std::abs(c.imag()));
    out.printed_basis = false;
  }
  for (auto& t : out.T) t.set_real(t.reality_defect() < 1e-14);
  return out;
}

}  // namespace uinf
