#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "uinf/sphere_algebra.hpp"

using namespace uinf;
using uinf::testing::random_complex_field;
using uinf::testing::rng_for;

namespace {

const double kA = std::sqrt(3.0 / (4.0 * std::numbers::pi));

struct Triple {
  HarmonicField f, g, h;
};

// Random band limits in [1, max_l], mixed real and complex fields.
Triple draw(std::uint64_t seed, int max_l) {
  auto rng = rng_for(seed);
  std::uniform_int_distribution<int> band(1, max_l);
  auto one = [&] {
    const int L = band(rng);
    return (rng() % 2) ? random_real_field(L, rng) : random_complex_field(L, rng);
  };
  Triple t{one(), one(), one()};
  return t;
}

double scale_of(const HarmonicField& f) { return std::max(1.0, f.max_abs()); }

}  // namespace

TEST_CASE("bracket of a field with itself vanishes exactly") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto t = draw(s, 6);
    CHECK(bracket(t.f, t.f).max_abs() == 0.0);
  }
}

TEST_CASE("constants are central") {
  auto rng = rng_for(1);
  const auto g = random_complex_field(5, rng);
  CHECK(bracket(HarmonicField::mode(0, 0), g).max_abs() < 1e-14);
  CHECK(bracket(g, HarmonicField::mode(0, 0)).max_abs() < 1e-14);
}

TEST_CASE("bracket with cos(theta) differentiates in phi") {
  // Y10 = a cosθ, so {Y10, Y_lm} = a ∂_φ Y_lm = i m a Y_lm.
  for (int l = 1; l <= 5; ++l) {
    for (int m = -l; m <= l; ++m) {
      const auto br = bracket(HarmonicField::mode(1, 0), HarmonicField::mode(l, m));
      const auto expect = cplx(0.0, m * kA) * HarmonicField::mode(l, m, 1.0, br.l_max());
      CHECK(max_abs_diff(br, expect) < 1e-14);
    }
  }
}

TEST_CASE("antisymmetry") {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto t = draw(s, 6);
    CHECK(max_abs_diff(bracket(t.f, t.g), -bracket(t.g, t.f)) < 1e-12 * scale_of(t.f) * scale_of(t.g));
  }
}

TEST_CASE("Jacobi identity") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto t = draw(100 + s, 6);
    auto sum = bracket(t.f, bracket(t.g, t.h));
    const auto b = bracket(t.g, bracket(t.h, t.f));
    const auto c = bracket(t.h, bracket(t.f, t.g));
    const int L = std::max({sum.l_max(), b.l_max(), c.l_max()});
    sum = sum.padded(L) + b.padded(L) + c.padded(L);
    CHECK(sum.max_abs() < 1e-10 * scale_of(t.f) * scale_of(t.g) * scale_of(t.h));
  }
}

TEST_CASE("Leibniz rule") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto t = draw(200 + s, 5);
    const auto lhs = bracket(multiply(t.f, t.g), t.h);
    const auto r1 = multiply(t.f, bracket(t.g, t.h));
    const auto r2 = multiply(bracket(t.f, t.h), t.g);
    const int L = std::max({lhs.l_max(), r1.l_max(), r2.l_max()});
    CHECK(max_abs_diff(lhs.padded(L), r1.padded(L) + r2.padded(L)) <
          1e-10 * scale_of(t.f) * scale_of(t.g) * scale_of(t.h));
  }
}

TEST_CASE("bracket of real fields is real") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    auto rng = rng_for(300 + s);
    const auto f = random_real_field(1 + s % 6, rng);
    const auto g = random_real_field(1 + (s / 2) % 6, rng);
    const auto br = bracket(f, g);
    CHECK(br.real());
    CHECK(br.reality_defect() < 1e-12);
  }
}

TEST_CASE("bracket integrates to zero") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto t = draw(400 + s, 6);
    CHECK(std::abs(integrate(bracket(t.f, t.g))) < 1e-12 * scale_of(t.f) * scale_of(t.g));
  }
}

TEST_CASE("trace form is cyclic") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    const auto t = draw(500 + s, 4);
    const cplx a = integrate(multiply(bracket(t.f, t.g), t.h));
    const cplx b = integrate(multiply(bracket(t.g, t.h), t.f));
    const cplx c = integrate(multiply(bracket(t.h, t.f), t.g));
    const double tol = 1e-11 * scale_of(t.f) * scale_of(t.g) * scale_of(t.h);
    CHECK(std::abs(a - b) < tol);
    CHECK(std::abs(b - c) < tol);
  }
}

TEST_CASE("structure constants") {
  const int L = 3;
  const auto sc = structure_constants(L);
  CHECK(sc.l_max() == L);
  for (int l1 = 0; l1 <= L; ++l1) {
    for (int m1 = -l1; m1 <= l1; ++m1) {
      for (int l2 = 0; l2 <= L; ++l2) {
        for (int m2 = -l2; m2 <= l2; ++m2) {
          for (int l3 = 0; l3 <= L; ++l3) {
            for (int m3 = -l3; m3 <= l3; ++m3) {
              const cplx v = sc(l1, m1, l2, m2, l3, m3);
              CHECK(v == -sc(l2, m2, l1, m1, l3, m3));
              if (l1 == 0 || l2 == 0 || l3 == 0) CHECK(std::abs(v) < 1e-14);
              // The bracket preserves the total azimuthal order.
              if (m3 != m1 + m2) CHECK(std::abs(v) < 1e-14);
            }
          }
        }
      }
    }
  }
  CHECK(std::abs(sc(1, 0, 1, 1, 1, 1) - cplx(0.0, kA)) < 1e-14);
  CHECK_THROWS_AS(sc(4, 0, 1, 0, 1, 0), std::out_of_range);
  CHECK_THROWS_AS(structure_constants(0), std::invalid_argument);
}

TEST_CASE("l = 1 generators close") {
  const auto su2 = su2_generators();
  for (const auto& t : su2.T) {
    for (int l = 0; l <= t.l_max(); ++l) {
      for (int m = -l; m <= l; ++m) {
        if (l != 1) CHECK(t.coeff(l, m) == cplx{});
      }
    }
    CHECK(t.real());
  }
  CHECK(su2.closure_residual < 1e-10);
  // Cartesian coordinates x, y, z on the sphere obey {x, y} = −z, and T = a(x, y, z).
  CHECK(std::abs(su2.closure_constant + kA) < 1e-14);
  CHECK(bracket(su2.T[2], su2.T[2]).max_abs() == 0.0);
  const auto [c, res] = su2_closure(su2.T);
  CHECK(std::abs(c.real() - su2.closure_constant) < 1e-15);
  CHECK(res < 1e-10);
}

TEST_CASE("the complex combination basis does not close") {
  const auto su2 = su2_generators();
  CHECK_FALSE(su2.printed_basis);
  CHECK(su2.printed_basis_residual > 0.1);
}
