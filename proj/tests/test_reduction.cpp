#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uinf/reduction.hpp"

using namespace uinf;
using uinf::testing::rel;
using uinf::testing::rng_for;

namespace {

GaugeConfig with_coupling(GaugeConfig cfg, double c) {
  cfg.coupling = c;
  return cfg;
}

double residual(const ReductionReport& r, const std::string& name) {
  for (std::size_t i = 0; i < r.residual_names.size(); ++i) {
    if (r.residual_names[i] == name) return r.residuals[i];
  }
  FAIL("missing residual " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("calibrated orientation sign") {
  const int s = calibrated_sign();
  CHECK(s == 1);
  CHECK(calibrated_sign() == s);
}

TEST_CASE("scalar groups without gauge field") {
  // A = 0 and ∂_μφ constant on the sphere: only the two-index group survives,
  // and it equals (2/q²) Σ g^μμ c_μ² for ∂_μφ = c_μ Y00.
  const int D = 3;
  const double b = 0.8, q = 0.5;
  auto s = AdjointScalar::zero(D, 2);
  auto rng = rng_for(1);
  s.phi = random_real_field(2, rng);
  std::vector<double> c{0.3, -1.2, 0.7};
  for (int mu = 0; mu < D; ++mu) s.dphi[mu].set(0, 0, c[mu]);
  const auto metric = BlockMetric::lorentzian(D, b);
  const auto r = scalar_line_values(GaugeConfig::zero(D, 2), s, Background{q}, metric);
  double expect = 0.0;
  for (int mu = 0; mu < D; ++mu) expect += c[mu] * c[mu] / metric.g_spacetime[mu];
  expect *= 2.0 / (q * q);
  CHECK(rel(r.groups[2], expect) < 1e-12);
  CHECK(std::abs(r.groups[1]) < 1e-12 * r.magnitudes[1] + 1e-300);
  CHECK(r.groups[3] == 0.0);
  CHECK(rel(r.normalized_reference() * 4 * std::numbers::pi, r.reduced_reference) < 1e-15);
}

TEST_CASE("scalar groups on random configurations") {
  for (int D = 2; D <= 4; ++D) {
    for (std::uint64_t t = 0; t < 6; ++t) {
      auto rng = rng_for(100 * D + t);
      const double b = 0.3 + 0.2 * t, e = 1.5;
      const double q = e * b * b;
      const auto cfg = GaugeConfig::random(D, 2, rng);
      const auto s = AdjointScalar::random(D, 2, rng);
      const auto metric = BlockMetric::lorentzian(D, b);
      const auto r = scalar_line_values(cfg, s, Background{q}, metric);
      CHECK(rel(r.total(), r.oracle) < 1e-10);
      CHECK(residual(r, "vanishing_3") < 1e-12);
      // Independent covariant form with the calibrated sign.
      const double ref = 2.0 / (q * q) *
                         covariant_derivative_square(s, with_coupling(cfg, calibrated_sign() * e), metric.spacetime());
      CHECK(rel(r.groups[2], ref) < 1e-9);
      CHECK(residual(r, "master") < 1e-10);
      CHECK(residual(r, "covariant") < 1e-9);
      CHECK(r.sign == calibrated_sign());
      CHECK(r.e == doctest::Approx(e));
    }
  }
}

TEST_CASE("the opposite sign fails the covariant identity") {
  auto rng = rng_for(7);
  const double b = 0.5, e = 2.0, q = e * b * b;
  const auto cfg = GaugeConfig::random(3, 2, rng);
  const auto s = AdjointScalar::random(3, 2, rng);
  const auto metric = BlockMetric::lorentzian(3, b);
  const auto r = scalar_line_values(cfg, s, Background{q}, metric);
  const double wrong =
      2.0 / (q * q) * covariant_derivative_square(s, with_coupling(cfg, -calibrated_sign() * e), metric.spacetime());
  CHECK(rel(r.groups[2], wrong) > 1e-3);
}

TEST_CASE("quartic groups without gauge field vanish") {
  const auto r = ym_line_values(GaugeConfig::zero(3, 2), Background{0.7}, BlockMetric::lorentzian(3, 0.9));
  for (double g : r.groups) CHECK(std::abs(g) < 1e-12);
  CHECK(std::abs(r.oracle) < 1e-12);
}

TEST_CASE("quartic groups on random configurations") {
  for (int D = 2; D <= 4; ++D) {
    for (std::uint64_t t = 0; t < 5; ++t) {
      auto rng = rng_for(1000 + 10 * D + t);
      const double b = 0.2 + 0.3 * t, e = 2.0;
      const double q = e * b * b;
      const auto cfg = GaugeConfig::random(D, 2, rng);
      const auto metric = BlockMetric::lorentzian(D, b);
      const auto r = ym_line_values(cfg, Background{q}, metric);
      CHECK(rel(r.total(), r.oracle) < 1e-10);
      CHECK(residual(r, "vanishing_4") < 1e-12);
      CHECK(residual(r, "vanishing_3") < 1e-12);
      CHECK(std::abs(r.groups[4]) <= 1e-15 * r.magnitudes[4]);
      const double ref =
          4.0 / (q * q) * field_strength_square(with_coupling(cfg, calibrated_sign() * e), metric.spacetime());
      CHECK(rel(r.groups[2], ref) < 1e-9);
    }
  }
}

TEST_CASE("covariant group scales as one over q squared") {
  // With only l = 0 content the bracket drops out and q enters through the prefactor alone.
  auto rng = rng_for(3);
  auto cfg = GaugeConfig::random(3, 1, rng);
  for (auto& f : cfg.A) f = f.truncated(0).padded(1);
  const auto metric = BlockMetric::lorentzian(3, 1.0);
  const auto r1 = ym_line_values(cfg, Background{0.5}, metric);
  const auto r2 = ym_line_values(cfg, Background{1.0}, metric);
  CHECK(rel(r1.groups[2], 4.0 * r2.groups[2]) < 1e-12);
}

TEST_CASE("two-dimensional epsilon form is exactly the reduced square") {
  for (std::uint64_t t = 0; t < 5; ++t) {
    auto rng = rng_for(50 + t);
    const auto cfg = GaugeConfig::random(2, 2, rng);
    for (double b : {1.0, 0.4, 0.1}) {
      const double q = 2.0 * b * b;
      const auto r = two_dim_exact_check(cfg, Background{q}, b);
      CHECK(r.rel_err < 1e-9);
      CHECK(r.constant == doctest::Approx(r.pinned_constant).epsilon(1e-9));
      CHECK(r.pinned_constant == 64.0);
      CHECK(r.residual_1 < 1e-12);
      CHECK(r.residual_0 < 1e-12);
    }
  }
  auto rng = rng_for(1);
  CHECK_THROWS_AS(two_dim_exact_check(GaugeConfig::random(3, 2, rng), Background{1.0}), std::invalid_argument);
}

TEST_CASE("scan agrees with single evaluations and has the right exponent") {
  auto rng = rng_for(9);
  const int D = 3;
  const double e = 2.0;
  const auto cfg = GaugeConfig::random(D, 2, rng);
  const auto s = AdjointScalar::random(D, 2, rng);
  const std::vector<double> bs{0.4, 0.2, 0.1, 0.05};
  const auto scan = b_scaling_scan("ym", cfg, s, e, D, bs);
  REQUIRE(scan.rows.size() == bs.size());
  const auto single = ym_line_values(cfg, Background{e * 0.2 * 0.2}, BlockMetric::lorentzian(D, 0.2));
  CHECK(scan.rows[1].covariant == single.groups[2]);
  CHECK(scan.fit_exponent >= 1.95);
  const auto sscan = b_scaling_scan("scalar", cfg, s, e, D, bs);
  CHECK(sscan.fit_exponent >= 1.95);
  // At the smallest radius the covariant group is the U(∞) expression with coupling e.
  const double ref = 4.0 / std::pow(e * 0.05 * 0.05, 2) *
                     field_strength_square(with_coupling(cfg, calibrated_sign() * e), BlockMetric::lorentzian(D, 0.05).spacetime());
  CHECK(rel(scan.rows.back().covariant, ref) < 1e-9);
  CHECK_THROWS(b_scaling_scan("maxwell", cfg, s, e, D, bs));
}

TEST_CASE("scalar modes carry no mass term") {
  for (std::uint64_t t = 0; t < 10; ++t) {
    auto rng = rng_for(70 + t);
    const int D = 2 + t % 3;
    const auto s = AdjointScalar::random(D, 1 + t % 4, rng);
    CHECK(scalar_sector_without_derivatives(s, Background{0.3 + t}, BlockMetric::lorentzian(D, 0.5)) == 0.0);
  }
}

TEST_CASE("Born-Infeld limit") {
  auto rng = rng_for(11);
  const auto cfg = GaugeConfig::random(3, 2, rng, 1.0, 0.2);
  const auto r = born_infeld_reduction_check(cfg, 2.0, 0.5, 1.0, {0.4, 0.2, 0.1, 0.05});
  REQUIRE(r.rows.size() == 4);
  CHECK(r.drift_decreasing);
  CHECK(std::abs(r.rows.back().ratio - 1.0) < std::abs(r.rows.front().ratio - 1.0));
  for (std::size_t i = 1; i < r.alpha_rows.size(); ++i) {
    CHECK(r.alpha_rows[i].bracket_share < r.alpha_rows[i - 1].bracket_share);
  }
  CHECK(r.alpha_exponent > 1.5);

  const auto vac = born_infeld_reduction_check(GaugeConfig::zero(3, 2), 2.0, 0.5, 1.0, {0.4, 0.2});
  for (const auto& row : vac.rows) CHECK(std::isfinite(row.ratio));
  CHECK_THROWS_AS(born_infeld_reduction_check(cfg, 2.0, 0.0, 1.0, {0.4}), std::invalid_argument);
}

TEST_CASE("log-log slope") {
  CHECK(log_log_slope({1, 2, 4}, {3, 12, 48}) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::isnan(log_log_slope({1}, {1})));
}

TEST_CASE("background and metric validation") {
  CHECK(Background{1.0}.quantized());
  CHECK(Background{2.0 / 3.0}.quantized());
  CHECK_FALSE(Background{0.3}.quantized());
  CHECK_THROWS(Background{0.0}.validate());
  CHECK_THROWS(BlockMetric::lorentzian(7, 1.0).validate());
  CHECK_THROWS(BlockMetric::lorentzian(3, 0.0).validate());
  const auto m = BlockMetric::lorentzian(2, 0.5).at(0.5);
  CHECK(m.diag == std::vector<double>{-1.0, 1.0, 0.25, 0.0625});
}
