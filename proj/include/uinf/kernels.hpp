#pragma once

#include <complex>
#include <span>
#include <vector>

#include "uinf/sphere_grid.hpp"

namespace uinf::kernels {

using cplx = std::complex<double>;

/// Which angular function a synthesis evaluates at the grid nodes.
enum class Derivative {
  Value,      ///< Σ c Y
  DCosTheta,  ///< Σ c ∂Y/∂cosθ
  DPhi,       ///< Σ c ∂Y/∂φ
};

// Ring-factored transforms: a Legendre sum per ring followed by a Fourier sum
// per ring (synthesis) or the reverse (analysis). OpenMP work-sharing is over
// rings and azimuthal orders; every output is reduced in a fixed order, so
// results are bitwise independent of the thread count.
namespace parallel {

std::vector<cplx> synthesize(std::span<const cplx> coeffs, int l_max, const SphereBasis& basis,
                             Derivative kind = Derivative::Value);

std::vector<cplx> analyze(std::span<const cplx> values, int l_max, const SphereBasis& basis);

}  // namespace parallel

// Direct node-by-node summation against every harmonic. O(nodes * modes);
// kept as the reference the fast kernels are tested and benchmarked against.
namespace serial {

std::vector<cplx> synthesize(std::span<const cplx> coeffs, int l_max, const SphereBasis& basis,
                             Derivative kind = Derivative::Value);

std::vector<cplx> analyze(std::span<const cplx> values, int l_max, const SphereBasis& basis);

}  // namespace serial

}  // namespace uinf::kernels
