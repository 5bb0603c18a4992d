#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

namespace uinf {

/// Gauss-Legendre nodes in cos(theta) times uniform nodes in phi.
///
/// Integrates exactly any polynomial on the sphere of total degree up to
/// `max_degree()`. Nodes are stored ring-major: node j * n_phi + k sits at
/// (theta_j, phi_k). No node lies on a pole.
class SphereGrid {
 public:
  SphereGrid(int n_theta, int n_phi);

  /// Smallest grid exact for polynomials of the given total degree.
  static SphereGrid for_degree(int degree);

  int n_theta() const { return n_theta_; }
  int n_phi() const { return n_phi_; }
  int size() const { return n_theta_ * n_phi_; }
  int max_degree() const;
  /// True when products of two fields of band limit `l_max` integrate exactly.
  bool resolves(int l_max) const { return max_degree() >= 2 * l_max; }

  const std::vector<double>& cos_theta() const { return cos_theta_; }
  const std::vector<double>& sin_theta() const { return sin_theta_; }
  const std::vector<double>& theta() const { return theta_; }
  const std::vector<double>& phi() const { return phi_; }
  /// Gauss-Legendre weight of ring j (sums to 2).
  const std::vector<double>& ring_weights() const { return ring_weights_; }

  std::vector<std::pair<double, double>> nodes() const;
  /// Area weight of every node; sums to 4π.
  std::vector<double> weights() const;
  double weight(int node) const { return ring_weights_[node / n_phi_] * phi_weight_; }
  double phi_weight() const { return phi_weight_; }

 private:
  int n_theta_;
  int n_phi_;
  double phi_weight_;
  std::vector<double> cos_theta_, sin_theta_, theta_, ring_weights_, phi_;
};

/// Gauss-Legendre nodes and weights on [-1, 1], ascending.
std::pair<std::vector<double>, std::vector<double>> gauss_legendre(int n);

/// Normalized associated Legendre values P̄_l^m(x) (Condon-Shortley phase,
/// 0 <= m <= l <= l_max) and their x-derivatives for every ring of a grid,
/// plus the e^{imφ} table. Read-only after construction.
class SphereBasis {
 public:
  SphereBasis(SphereGrid grid, int l_max);

  const SphereGrid& grid() const { return grid_; }
  int l_max() const { return l_max_; }

  /// Triangular index for m >= 0.
  static int tri(int l, int m) { return l * (l + 1) / 2 + m; }
  int tri_count() const { return (l_max_ + 1) * (l_max_ + 2) / 2; }

  double legendre(int ring, int l, int m) const { return p_[ring * tri_count() + tri(l, m)]; }
  double legendre_dx(int ring, int l, int m) const { return dp_[ring * tri_count() + tri(l, m)]; }
  /// e^{i m φ_k} for -l_max <= m <= l_max.
  const std::complex<double>& phase(int k, int m) const {
    return phase_[k * (2 * l_max_ + 1) + (m + l_max_)];
  }

 private:
  SphereGrid grid_;
  int l_max_;
  std::vector<double> p_, dp_;
  std::vector<std::complex<double>> phase_;
};

/// Shared, cached basis for a grid of the given exactness degree.
std::shared_ptr<const SphereBasis> basis_for(int degree, int l_max);

/// Fills `out` (size tri count) with P̄_l^m(x) and `dout` with dP̄_l^m/dx.
void normalized_legendre(int l_max, double x, std::vector<double>& out,
                         std::vector<double>* dout = nullptr);

}  // namespace uinf
