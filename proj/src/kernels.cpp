#include "uinf/kernels.hpp"

#include <stdexcept>

#include "uinf/harmonic_field.hpp"

namespace uinf::kernels {

namespace {

double parity(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

// Sign relating Y_{l,m} to P̄_l^{|m|} e^{imφ}.
double mode_sign(int m) { return m < 0 ? parity(m) : 1.0; }

void check_sizes(std::size_t coeff_count, int l_max, const SphereBasis& basis) {
  if (l_max > basis.l_max()) throw std::invalid_argument("basis band limit too small");
  if (coeff_count != static_cast<std::size_t>(harmonic_count(l_max))) {
    throw std::invalid_argument("coefficient count does not match band limit");
  }
}

double radial(const SphereBasis& basis, int ring, int l, int m, Derivative kind) {
  const int am = m < 0 ? -m : m;
  return kind == Derivative::DCosTheta ? basis.legendre_dx(ring, l, am) : basis.legendre(ring, l, am);
}

cplx azimuthal_factor(int m, Derivative kind) {
  return kind == Derivative::DPhi ? cplx(0.0, m) : cplx(1.0, 0.0);
}

}  // namespace

namespace parallel {

std::vector<cplx> synthesize(std::span<const cplx> coeffs, int l_max, const SphereBasis& basis,
                             Derivative kind) {
  check_sizes(coeffs.size(), l_max, basis);
  const auto& grid = basis.grid();
  const int n_theta = grid.n_theta();
  const int n_phi = grid.n_phi();
  std::vector<cplx> values(static_cast<std::size_t>(grid.size()));

#pragma omp parallel for schedule(static)
  for (int j = 0; j < n_theta; ++j) {
    std::vector<cplx> ring(2 * l_max + 1);
    for (int m = -l_max; m <= l_max; ++m) {
      cplx acc{};
      const int am = m < 0 ? -m : m;
      for (int l = am; l <= l_max; ++l) acc += coeffs[harmonic_index(l, m)] * radial(basis, j, l, m, kind);
      ring[m + l_max] = acc * mode_sign(m) * azimuthal_factor(m, kind);
    }
    for (int k = 0; k < n_phi; ++k) {
      cplx v{};
      for (int m = -l_max; m <= l_max; ++m) v += ring[m + l_max] * basis.phase(k, m);
      values[static_cast<std::size_t>(j) * n_phi + k] = v;
    }
  }
  return values;
}

std::vector<cplx> analyze(std::span<const cplx> values, int l_max, const SphereBasis& basis) {
  const auto& grid = basis.grid();
  if (values.size() != static_cast<std::size_t>(grid.size())) {
    throw std::invalid_argument("value array does not match grid size");
  }
  if (l_max > basis.l_max()) throw std::invalid_argument("basis band limit too small");
  const int n_theta = grid.n_theta();
  const int n_phi = grid.n_phi();
  const int width = 2 * l_max + 1;
  std::vector<cplx> fourier(static_cast<std::size_t>(n_theta) * width);

#pragma omp parallel for schedule(static)
  for (int j = 0; j < n_theta; ++j) {
    for (int m = -l_max; m <= l_max; ++m) {
      cplx acc{};
      for (int k = 0; k < n_phi; ++k) {
        acc += values[static_cast<std::size_t>(j) * n_phi + k] * std::conj(basis.phase(k, m));
      }
      fourier[static_cast<std::size_t>(j) * width + (m + l_max)] = acc * grid.phi_weight();
    }
  }

  std::vector<cplx> coeffs(static_cast<std::size_t>(harmonic_count(l_max)));
#pragma omp parallel for schedule(static)
  for (int m = -l_max; m <= l_max; ++m) {
    const int am = m < 0 ? -m : m;
    for (int l = am; l <= l_max; ++l) {
      cplx acc{};
      for (int j = 0; j < n_theta; ++j) {
        acc += grid.ring_weights()[j] * basis.legendre(j, l, am) *
               fourier[static_cast<std::size_t>(j) * width + (m + l_max)];
      }
      coeffs[harmonic_index(l, m)] = acc * mode_sign(m);
    }
  }
  return coeffs;
}

}  // namespace parallel

namespace serial {

std::vector<cplx> synthesize(std::span<const cplx> coeffs, int l_max, const SphereBasis& basis,
                             Derivative kind) {
  check_sizes(coeffs.size(), l_max, basis);
  const auto& grid = basis.grid();
  std::vector<cplx> values(static_cast<std::size_t>(grid.size()));
  for (int node = 0; node < grid.size(); ++node) {
    const int j = node / grid.n_phi();
    const int k = node % grid.n_phi();
    cplx v{};
    for (int l = 0; l <= l_max; ++l) {
      for (int m = -l; m <= l; ++m) {
        const cplx ylm = mode_sign(m) * radial(basis, j, l, m, kind) * basis.phase(k, m);
        v += coeffs[harmonic_index(l, m)] * ylm * azimuthal_factor(m, kind);
      }
    }
    values[node] = v;
  }
  return values;
}

std::vector<cplx> analyze(std::span<const cplx> values, int l_max, const SphereBasis& basis) {
  const auto& grid = basis.grid();
  if (values.size() != static_cast<std::size_t>(grid.size())) {
    throw std::invalid_argument("value array does not match grid size");
  }
  if (l_max > basis.l_max()) throw std::invalid_argument("basis band limit too small");
  std::vector<cplx> coeffs(static_cast<std::size_t>(harmonic_count(l_max)));
  for (int l = 0; l <= l_max; ++l) {
    for (int m = -l; m <= l; ++m) {
      cplx acc{};
      for (int node = 0; node < grid.size(); ++node) {
        const int j = node / grid.n_phi();
        const int k = node % grid.n_phi();
        const cplx ylm = mode_sign(m) * basis.legendre(j, l, m < 0 ? -m : m) * basis.phase(k, m);
        acc += grid.weight(node) * values[node] * std::conj(ylm);
      }
      coeffs[harmonic_index(l, m)] = acc;
    }
  }
  return coeffs;
}

}  // namespace serial

}  // namespace uinf::kernels
