#include "uinf/tensor_kernels.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace uinf {

namespace {

void check_dim(int n) {
  if (n < 1 || n > kMaxTensorDim) throw std::invalid_argument("tensor dimension must be in [1, 8]");
}

void check_pair(const FlatTensor2& F, const FlatMetric& g) {
  check_dim(F.n);
  if (g.n() != F.n) throw std::invalid_argument("dimension mismatch between tensor and metric");
  if (F.entries.size() != static_cast<std::size_t>(F.n) * F.n) throw std::invalid_argument("malformed tensor");
  for (double d : g.diag) {
    if (d == 0.0) throw std::invalid_argument("degenerate metric");
  }
}

void check_antisymmetric(const FlatTensor2& F) {
  double scale = 0.0;
  for (double e : F.entries) scale = std::max(scale, std::abs(e));
  if (F.antisymmetry_defect() > 1e-12 * std::max(1.0, scale)) {
    throw std::invalid_argument("field strength must be antisymmetric");
  }
}

// Contractions cancel heavily for indefinite metrics, so they accumulate in
// extended precision.
using wide = long double;
// The O(n³) forms are cheap enough for quad precision, which keeps their
// ratios meaningful even for nearly degenerate F.
#if defined(__SIZEOF_FLOAT128__)
using quad = __float128;
#else
using quad = long double;
#endif

// F^{AB} for a diagonal metric.
template <class T = wide>
T raised(const FlatTensor2& F, const FlatMetric& g, int a, int b) {
  return T(F(a, b)) / (T(g.diag[a]) * T(g.diag[b]));
}

// All permutations of {0..k-1} with their signs.
template <std::size_t K>
std::vector<std::pair<std::array<int, K>, int>> signed_permutations() {
  std::array<int, K> p{};
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::pair<std::array<int, K>, int>> out;
  do {
    out.emplace_back(p, levi_civita(p));
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace

FlatTensor2 FlatTensor2::zero(int n) {
  check_dim(n);
  return FlatTensor2{n, std::vector<double>(static_cast<std::size_t>(n) * n, 0.0)};
}

double FlatTensor2::antisymmetry_defect() const {
  double mx = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) mx = std::max(mx, std::abs((*this)(a, b) + (*this)(b, a)));
  }
  return mx;
}

FlatMetric FlatMetric::euclidean(int n) {
  check_dim(n);
  return FlatMetric{std::vector<double>(n, 1.0)};
}

FlatMetric FlatMetric::lorentzian(int n) {
  auto g = euclidean(n);
  g.diag[0] = -1.0;
  return g;
}

double FlatMetric::det() const {
  double d = 1.0;
  for (double x : diag) d *= x;
  return d;
}

int levi_civita(std::span<const int> perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    for (std::size_t j = i + 1; j < perm.size(); ++j) {
      if (perm[i] == perm[j]) return 0;
      if (perm[i] > perm[j]) sign = -sign;
    }
  }
  return sign;
}

int generalized_delta(std::span<const int> upper, std::span<const int> lower) {
  if (upper.size() != lower.size()) throw std::invalid_argument("generalized_delta: rank mismatch");
  const std::size_t k = upper.size();
  std::vector<int> sigma(k);
  std::iota(sigma.begin(), sigma.end(), 0);
  int total = 0;
  do {
    bool hit = true;
    for (std::size_t i = 0; i < k && hit; ++i) hit = (upper[i] == lower[sigma[i]]);
    if (hit) total += levi_civita(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

double gen_delta_contract_3(const FlatTensor2& F, const FlatVector& v, const FlatMetric& g) {
  check_pair(F, g);
  check_antisymmetric(F);
  if (v.n() != F.n) throw std::invalid_argument("dimension mismatch between tensor and vector");
  static const auto perms = signed_permutations<3>();
  const int n = F.n;
  wide total = 0.0;
  // The delta is nonzero only when (D, E, F) is a permutation of (A, B, C).
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        const std::array<int, 3> up{a, b, c};
        for (const auto& [p, sign] : perms) {
          const int d = up[p[0]], e = up[p[1]], f = up[p[2]];
          total += sign * raised(F, g, d, e) * F(a, b) * (wide(v[f]) / g.diag[f]) * v[c];
        }
      }
    }
  }
  return static_cast<double>(total);
}

double expanded_form_12(const FlatTensor2& F, const FlatVector& v, const FlatMetric& g) {
  check_pair(F, g);
  check_antisymmetric(F);
  if (v.n() != F.n) throw std::invalid_argument("dimension mismatch between tensor and vector");
  const int n = F.n;
  quad ff = 0.0, vv = 0.0, mixed = 0.0;
  for (int a = 0; a < n; ++a) {
    vv += quad(v[a]) * v[a] / g.diag[a];
    for (int b = 0; b < n; ++b) ff += raised<quad>(F, g, a, b) * F(a, b);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) mixed += raised<quad>(F, g, a, c) * F(a, b) * (quad(v[b]) / g.diag[b]) * v[c];
    }
  }
  return static_cast<double>(2 * (ff * vv - 2 * mixed));
}

double gen_delta_contract_4(const FlatTensor2& F, const FlatMetric& g) {
  check_pair(F, g);
  check_antisymmetric(F);
  static const auto perms = signed_permutations<4>();
  const int n = F.n;
  wide total = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      for (int c = 0; c < n; ++c) {
        for (int d = 0; d < n; ++d) {
          if (c == d) continue;
          const std::array<int, 4> up{a, b, c, d};
          const wide lower = wide(F(a, b)) * F(c, d);
          for (const auto& [p, sign] : perms) {
            total += sign * raised(F, g, up[p[0]], up[p[1]]) * raised(F, g, up[p[2]], up[p[3]]) * lower;
          }
        }
      }
    }
  }
  return static_cast<double>(total);
}

double expanded_form_19(const FlatTensor2& F, const FlatMetric& g) {
  check_pair(F, g);
  check_antisymmetric(F);
  const int n = F.n;
  // M^A_B = g^{AA} F_AB
  std::vector<quad> M(static_cast<std::size_t>(n) * n);
  quad ff = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      M[a * n + b] = quad(F(a, b)) / g.diag[a];
      ff += raised<quad>(F, g, a, b) * F(a, b);
    }
  }
  std::vector<quad> M2(M.size(), 0.0);
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) {
      quad acc = 0.0;
      for (int b = 0; b < n; ++b) acc += M[a * n + b] * M[b * n + c];
      M2[a * n + c] = acc;
    }
  }
  quad trace4 = 0.0;
  for (int a = 0; a < n; ++a) {
    for (int c = 0; c < n; ++c) trace4 += M2[a * n + c] * M2[c * n + a];
  }
  return static_cast<double>(ff * ff - 2 * trace4);
}

double eps_square_scalar_3d(const FlatTensor2& F, const FlatVector& v, const FlatMetric& g) {
  check_pair(F, g);
  if (F.n != 3) throw std::invalid_argument("eps_square_scalar_3d requires n = 3");
  if (v.n() != 3) throw std::invalid_argument("dimension mismatch between tensor and vector");
  quad s = 0.0;
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) {
      for (int c = 0; c < 3; ++c) {
        const std::array<int, 3> idx{a, b, c};
        s += levi_civita(idx) * quad(F(a, b)) * v[c];
      }
    }
  }
  return static_cast<double>(s * s / std::abs(quad(g.det())));
}

double eps_square_ym_4d(const FlatTensor2& F, const FlatMetric& g) {
  check_pair(F, g);
  if (F.n != 4) throw std::invalid_argument("eps_square_ym_4d requires n = 4");
  quad s = 0.0;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      for (int c = 0; c < 4; ++c) {
        for (int d = 0; d < 4; ++d) {
          const std::array<int, 4> idx{a, b, c, d};
          s += levi_civita(idx) * quad(F(a, b)) * F(c, d);
        }
      }
    }
  }
  return static_cast<double>(s * s / std::abs(quad(g.det())));
}

double shifted_determinant(const FlatTensor2& F, const FlatMetric& g, double alpha) {
  check_pair(F, g);
  const int n = F.n;
  Eigen::MatrixXd m(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) m(a, b) = alpha * F(a, b) + (a == b ? g.diag[a] : 0.0);
  }
  return m.partialPivLu().determinant();
}

double born_infeld_density(const FlatTensor2& F, const FlatMetric& g, double alpha, double C) {
  check_pair(F, g);
  if (alpha == 0.0) throw std::invalid_argument("born_infeld_density: alpha must be nonzero");
  const double det_g = g.det();
  if (det_g >= 0.0) throw std::domain_error("born_infeld_density: metric is not Lorentzian");
  const double det_shift = shifted_determinant(F, g, alpha);
  if (det_shift >= 0.0) throw std::domain_error("born_infeld_density: det(g + αF) is not negative");
  return C / (alpha * alpha) * (std::sqrt(-det_shift) - std::sqrt(-det_g));
}

}  // namespace uinf
