#include "doctest.h"

#include <cmath>

#include "nkg/jet.hpp"

using nkg::Jet;

TEST_CASE("polynomial derivatives are exact") {
  using J3 = Jet<3, 4>;
  const double x0 = 0.7, y0 = -1.3, z0 = 0.4;
  J3 x = J3::variable(0, x0), y = J3::variable(1, y0), z = J3::variable(2, z0);
  // f = x^3 y + 2 y^2 z^2 - x z + 5
  J3 f = x * x * x * y + 2.0 * y * y * z * z - x * z + 5.0;
  CHECK(f.value() == doctest::Approx(x0 * x0 * x0 * y0 + 2 * y0 * y0 * z0 * z0 - x0 * z0 + 5).epsilon(1e-14));
  CHECK(f.gradient(0) == doctest::Approx(3 * x0 * x0 * y0 - z0).epsilon(1e-13));
  CHECK(f.derivative({2, 0, 0}) == doctest::Approx(6 * x0 * y0).epsilon(1e-13));
  CHECK(f.derivative({0, 2, 2}) == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(f.derivative({3, 1, 0}) == doctest::Approx(6.0).epsilon(1e-13));
  CHECK(f.derivative({1, 0, 1}) == doctest::Approx(-1.0).epsilon(1e-13));
  // fifth-order terms are truncated, nothing leaks into the stored orders
  J3 g = x * x * x * x * x;
  CHECK(g.derivative({4, 0, 0}) == doctest::Approx(120 * x0).epsilon(1e-13));
}

TEST_CASE("elementary compositions match closed forms") {
  using J2 = Jet<2, 4>;
  const double u0 = 0.3, v0 = 1.1;
  J2 u = J2::variable(0, u0), v = J2::variable(1, v0);
  // h = sin(u v) exp(u)
  J2 h = sin(u * v) * exp(u);
  const double s = std::sin(u0 * v0), c = std::cos(u0 * v0), e = std::exp(u0);
  CHECK(h.value() == doctest::Approx(s * e).epsilon(1e-12));
  CHECK(h.gradient(0) == doctest::Approx((v0 * c + s) * e).epsilon(1e-12));
  CHECK(h.gradient(1) == doctest::Approx(u0 * c * e).epsilon(1e-12));
  // d^2/dv^2 = -u^2 sin(uv) e^u
  CHECK(h.derivative({0, 2}) == doctest::Approx(-u0 * u0 * s * e).epsilon(1e-12));
  // d^4/dv^4 = u^4 sin(uv) e^u
  CHECK(h.derivative({0, 4}) == doctest::Approx(u0 * u0 * u0 * u0 * s * e).epsilon(1e-12));
  // cos, log, sqrt, pow, reciprocal
  J2 w = cos(u) + log(v) + sqrt(v) + pow(v, 1.5) + 1.0 / v;
  const double dwdv = 1 / v0 + 0.5 / std::sqrt(v0) + 1.5 * std::sqrt(v0) - 1 / (v0 * v0);
  CHECK(w.gradient(1) == doctest::Approx(dwdv).epsilon(1e-12));
  const double d3 = 2 / (v0 * v0 * v0) + 0.375 * std::pow(v0, -2.5) - 0.375 * std::pow(v0, -1.5) - 6 / std::pow(v0, 4);
  CHECK(w.derivative({0, 3}) == doctest::Approx(d3).epsilon(1e-12));
  CHECK(w.derivative({4, 0}) == doctest::Approx(std::cos(u0)).epsilon(1e-12));
}

TEST_CASE("jet differentiation lowers order") {
  using J = Jet<2, 3>;
  J x = J::variable(0, 2.0), y = J::variable(1, 3.0);
  J f = x * x * y;
  J fx = f.d(0);  // 2xy
  CHECK(fx.value() == doctest::Approx(12.0));
  CHECK(fx.gradient(1) == doctest::Approx(4.0));
  CHECK(fx.d(0).d(1).value() == doctest::Approx(2.0));
}
