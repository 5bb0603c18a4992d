#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uinf/monopole.hpp"

using namespace uinf;
using uinf::testing::rng_for;

namespace {

const RadialGrid& standard_grid() {
  static const auto g = RadialGrid::graded(1e-3, 25.0, 4000);
  return g;
}

}  // namespace

TEST_CASE("closed-form profiles near the origin and far away") {
  for (double x : {1e-4, 1e-3, 5e-3}) {
    CHECK(bps_K(x) == doctest::Approx(1 - x * x / 6).epsilon(x * x * x * x));
    CHECK(bps_H(x) == doctest::Approx(x * x / 3).epsilon(1e-6));
  }
  for (double x : {25.0, 30.0, 40.0}) {
    // ξ / sinh ξ = 2ξe^{−ξ} (1 + e^{−2ξ} + ...)
    CHECK(bps_K(x) / (2 * x * std::exp(-x)) == doctest::Approx(1.0).epsilon(4 * std::exp(-2 * x) + 1e-14));
    CHECK(bps_H(x) / x == doctest::Approx(1.0).epsilon(1.0 / x + 1e-12));
  }
  // The series and closed forms meet smoothly.
  for (double x : {0.5, 2.0, 19.9, 20.1}) {
    const double h = 1e-5;
    CHECK(bps_dK(x) == doctest::Approx((bps_K(x + h) - bps_K(x - h)) / (2 * h)).epsilon(1e-8));
    CHECK(bps_dH(x) == doctest::Approx((bps_H(x + h) - bps_H(x - h)) / (2 * h)).epsilon(1e-8));
  }
}

TEST_CASE("Bogomol'nyi residuals") {
  const auto p = bps_profiles(standard_grid());
  const auto r = bogomolnyi_residuals(p);
  CHECK(r.k < 1e-8);
  CHECK(r.h < 1e-8);
  auto bent = p;
  bent.K[2000] += 1e-3;
  CHECK(bogomolnyi_residuals(bent).k > 1e-6);
}

TEST_CASE("first-line integral saturates the bound") {
  const auto p = bps_profiles(standard_grid());
  const auto e = energy(p, 0.0, {});
  CHECK(std::abs(e.E0_integral - 1.0) < 1e-4);
  CHECK(e.tail_applied);
  CHECK(e.cutoff == doctest::Approx(25.0));
  CHECK(e.total == doctest::Approx(e.prefactor * e.E0_integral).epsilon(1e-15));
  CHECK(e.prefactor == doctest::Approx(8 * std::numbers::pi * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("first-line integral converges in grid and cutoff") {
  const auto base = energy(bps_profiles(standard_grid()), 0.0, {}).E0_integral;
  const auto fine = energy(bps_profiles(RadialGrid::graded(1e-3, 25.0, 8000)), 0.0, {}).E0_integral;
  CHECK(std::abs(base - fine) < 1e-6);
  const auto longer = energy(bps_profiles(RadialGrid::graded(1e-3, 30.0, 4800)), 0.0, {}).E0_integral;
  CHECK(std::abs(base - longer) < 1e-8);
}

TEST_CASE("energy bookkeeping") {
  const auto p = bps_profiles(standard_grid());
  EnergyParams params{2.0, 0.5, 1.0, 0.7};
  const auto e0 = energy(p, 0.0, params);
  CHECK(e0.epsilon == 0.0);
  CHECK(e0.total == doctest::Approx(e0.prefactor * e0.E0_integral));
  const auto e = energy(p, 0.3, params);
  CHECK(e.epsilon == doctest::Approx(std::pow(0.3, 4) / 30).epsilon(1e-15));
  CHECK(e.total == doctest::Approx(e.prefactor * (e.E0_integral + e.epsilon * e.correction_integral)).epsilon(1e-14));
  CHECK(epsilon_from_evb(0.4) == doctest::Approx(16 * epsilon_from_evb(0.2)).epsilon(1e-15));
  CHECK(params.prefactor() == doctest::Approx(8 * std::numbers::pi * std::numbers::pi * 2.0 * 0.5 / 0.49));
  CHECK(EnergyParams{1, 1, 2.0 / 3.0, 1}.e_quantized());
  CHECK_FALSE(EnergyParams{1, 1, 0.7, 1}.e_quantized());
  CHECK_THROWS_AS(energy(p, -0.1, params), std::invalid_argument);
  CHECK_THROWS(energy(p, 0.1, EnergyParams{0.0, 1, 1, 1}));
}

TEST_CASE("trivial vacuum has no first-line energy") {
  auto p = bps_profiles(standard_grid());
  std::fill(p.K.begin(), p.K.end(), 1.0);
  std::fill(p.H.begin(), p.H.end(), 0.0);
  for (double d : first_line_density(p)) CHECK(d == 0.0);
}

TEST_CASE("densities are non-negative") {
  const auto& g = standard_grid();
  for (std::uint64_t s = 0; s < 10; ++s) {
    auto rng = rng_for(s);
    const auto p = random_profile(g, rng, 0.5);
    for (double d : first_line_density(p)) CHECK(d >= 0.0);
    for (double d : second_line_density(p)) CHECK(d >= 0.0);
  }
}

TEST_CASE("Bogomol'nyi bound on perturbed profiles") {
  const auto& g = standard_grid();
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rng = rng_for(100 + s);
    const auto p = random_profile(g, rng);
    CHECK(p.K.front() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(std::abs(p.K.back()) < 1e-6);
    CHECK(energy(p, 0.0, {}).E0_integral >= 1.0 - 1e-3);
  }
}

TEST_CASE("Euler-Lagrange expressions against a hand derivation") {
  // First line: E_K = 2K(K² − 1 + H²)/ξ² − 2K'', E_H = 2K²H/ξ² − H''.
  const auto g = RadialGrid::graded(0.05, 20.0, 3000);
  MonopoleProfile p{g, {}, {}};
  for (double x : g.xi) {
    p.K.push_back(1.0 / std::cosh(x / 2));
    p.H.push_back(x * std::tanh(x / 3));
  }
  const auto [EK, EH] = euler_lagrange(p, {});
  double worst = 0.0;
  for (int i = 0; i < g.size(); ++i) {
    const double x = g.xi[i];
    const double K = p.K[i], H = p.H[i];
    const double t = std::tanh(x / 2);
    const double Kpp = 0.25 * K * (t * t - (1 - t * t));
    const double th = std::tanh(x / 3);
    const double sech2 = 1 - th * th;
    const double Hpp = (2.0 / 3.0) * sech2 - (2.0 / 9.0) * x * sech2 * th;
    const double ek = 2 * K * (K * K - 1 + H * H) / (x * x) - 2 * Kpp;
    const double eh = 2 * K * K * H / (x * x) - Hpp;
    worst = std::max({worst, std::abs(EK[i] - ek) / (1 + std::abs(ek)), std::abs(EH[i] - eh) / (1 + std::abs(eh))});
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("the profile solves the unperturbed field equations") {
  const auto p = bps_profiles(standard_grid());
  const auto [EK, EH] = euler_lagrange(p, {});
  for (int i = 10; i < p.grid.size() - 10; ++i) {
    CHECK(std::abs(EK[i]) < 1e-5);
    CHECK(std::abs(EH[i]) < 1e-5);
  }
}

TEST_CASE("variational derivative matches finite differences") {
  // The two sides differ by an O(h⁴) discretization error, hence the finer grid.
  static const auto g = RadialGrid::graded(1e-3, 25.0, 8000);
  const EnergyFunctional physical{1.0, epsilon_from_evb(0.3), {}};
  const EnergyFunctional second{0.0, 1.0, {}};
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rng = rng_for(200 + s);
    const auto p = random_profile(g, rng);
    const auto [dK, dH] = random_direction(g, rng);
    const auto r = variational_check(s % 2 ? physical : second, p, dK, dH);
    CHECK(r.rel_diff < 1e-6);
  }
  const std::vector<double> zero(g.size(), 0.0);
  const auto z = variational_check({}, bps_profiles(g), zero, zero);
  CHECK(z.analytic == 0.0);
  CHECK(z.finite_difference == 0.0);
  auto rng = rng_for(1);
  const auto [dK, dH] = random_direction(g, rng);
  const auto st = variational_check({}, bps_profiles(g), dK, dH);
  CHECK(std::abs(st.analytic) < 1e-6);
  CHECK(std::abs(st.finite_difference) < 1e-6);
}

TEST_CASE("linearized problem") {
  const auto base = bps_profiles(RadialGrid::graded(1e-3, 25.0, 2000));
  const std::vector<double> zero(base.grid.size(), 0.0);
  const auto hom = linearized_solve(base, zero, zero);
  for (int i = 0; i < base.grid.size(); ++i) {
    CHECK(hom.K1[i] == 0.0);
    CHECK(hom.H1[i] == 0.0);
  }
  // Manufactured solution: apply the operator to known K1, H1 through the
  // Euler-Lagrange expressions, then recover them.
  const auto& g = base.grid;
  std::vector<double> K1(g.size()), H1(g.size());
  for (int i = 0; i < g.size(); ++i) {
    // Both satisfy the Robin conditions at Ξ to round-off.
    const double x = g.xi[i];
    K1[i] = x * x * std::exp(-x);
    H1[i] = 1.0 - std::exp(-x * x) - 0.5 * x * x * std::exp(-x);
  }
  const double h = 1e-6;
  auto shifted = [&](double t) {
    auto p = base;
    for (int i = 0; i < g.size(); ++i) {
      p.K[i] += t * K1[i];
      p.H[i] += t * H1[i];
    }
    return euler_lagrange(p, {});
  };
  const auto [Kp, Hp] = shifted(h);
  const auto [Km, Hm] = shifted(-h);
  std::vector<double> fK(g.size()), fH(g.size());
  for (int i = 0; i < g.size(); ++i) {
    fK[i] = (Kp[i] - Km[i]) / (2 * h);
    fH[i] = (Hp[i] - Hm[i]) / (2 * h);
  }
  const auto sol = linearized_solve(base, fK, fH);
  double err = 0.0;
  for (int i = 0; i < g.size(); ++i) err = std::max({err, std::abs(sol.K1[i] - K1[i]), std::abs(sol.H1[i] - H1[i])});
  CHECK(err < 1e-6);
}

TEST_CASE("perturbation near the origin") {
  const auto p = perturbation_solve(bps_profiles(standard_grid()), epsilon_from_evb(0.2));
  CHECK(p.epsilon == doctest::Approx(std::pow(0.2, 4) / 30));
  CHECK(std::abs(p.origin_exponent_K - 2.0) <= 0.1);
  CHECK(std::abs(p.origin_exponent_H - 2.0) <= 0.1);
  CHECK(std::isfinite(p.tail_slope_K));
  double scale = 0.0;
  for (std::size_t i = 0; i < p.K1.size(); ++i) scale = std::max({scale, std::abs(p.K1[i]), std::abs(p.H1[i])});
  CHECK(std::abs(p.K1.front()) < 1e-12 * scale);
  CHECK(std::abs(p.H1.front()) < 1e-12 * scale);
}

TEST_CASE("energy correction is linear in epsilon") {
  const auto base = bps_profiles(standard_grid());
  const auto t = energy_correction(base, {0.1, 0.2, 0.3, 0.4});
  REQUIRE(t.rows.size() == 4);
  CHECK(t.r_squared > 0.9999);
  const double c1 = energy(base, 0.0, {}).correction_integral;
  CHECK(t.slope == doctest::Approx(c1 / t.rows[0].E0_integral).epsilon(1e-10));
  CHECK(energy_correction(base, {0.0}).rows[0].dE_over_E0 == 0.0);
}

TEST_CASE("coefficient overrides reach the correction") {
  const auto p = bps_profiles(standard_grid());
  SecondLineCoefficients none{0, 0, 0, 0, 0, 2};
  CHECK(energy(p, 0.2, {}, none).correction_integral == 0.0);
  SecondLineCoefficients only_xi{0, 0, 0, 0, 1, 2};
  // On BPS (1 − K)⁴ → 1 far out, so the ξ² term grows like Ξ³/3.
  const double c = energy(p, 0.2, {}, only_xi).correction_integral;
  CHECK(c == doctest::Approx(std::pow(25.0, 3) / 3).epsilon(0.05));
}
