#pragma once

#include <cmath>

namespace uinf {

// a + b ε₁ + c ε₂ + d ε₁ε₂ with ε₁² = ε₂² = 0: exact first and mixed second
// derivatives of any expression built from these operations.
struct HyperDual {
  double a = 0.0, b = 0.0, c = 0.0, d = 0.0;

  HyperDual() = default;
  HyperDual(double v) : a(v) {}  // NOLINT(google-explicit-constructor)
  HyperDual(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

  friend HyperDual operator+(const HyperDual& x, const HyperDual& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend HyperDual operator-(const HyperDual& x, const HyperDual& y) {
    return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d};
  }
  friend HyperDual operator-(const HyperDual& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend HyperDual operator*(const HyperDual& x, const HyperDual& y) {
    return {x.a * y.a, x.a * y.b + x.b * y.a, x.a * y.c + x.c * y.a,
            x.a * y.d + x.b * y.c + x.c * y.b + x.d * y.a};
  }
  friend HyperDual operator/(const HyperDual& x, const HyperDual& y) { return x * y.inverse(); }

  // f(x) with f, f', f'' at x.a
  HyperDual apply(double f, double f1, double f2) const { return {f, f1 * b, f1 * c, f1 * d + f2 * b * c}; }
  HyperDual inverse() const { return apply(1.0 / a, -1.0 / (a * a), 2.0 / (a * a * a)); }
};

inline HyperDual pow(const HyperDual& x, double p) {
  return x.apply(std::pow(x.a, p), p * std::pow(x.a, p - 1.0), p * (p - 1.0) * std::pow(x.a, p - 2.0));
}

}  // namespace uinf
