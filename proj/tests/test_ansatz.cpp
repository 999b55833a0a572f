#include <doctest.h>

#include "nkg/ansatz.hpp"
#include "nkg/errors.hpp"
#include "nkg/nearly_kahler.hpp"

using namespace nkg;

TEST_CASE("tautological normalization from S3 x S3") {
  // |Re Psi|^2_{g0} = (16/3) |g0(K., .)|^2 = 32/3 and |Re Phi0|^2 = 2 lambda^2
  CHECK(tautological_lambda_oracle() == doctest::Approx(4.0 / std::sqrt(3.0)).epsilon(1e-10));
}

TEST_CASE("gauge search finds the parallel winding") {
  const TautologicalForm t = build_tautological(tautological_lambda_oracle());
  CHECK(t.m1 == 0);
  CHECK(t.m2 == 0);
  CHECK(t.parallel_residual < 1e-10);
  const TautologicalForm wrong{1, -1, t.lambda, 0.0};
  CHECK(twisted_parallel_residual(wrong, {}, {Point{1.0, 0.5, 2.0, -1.0}}) > 0.1);
  // with a gauge shift the search still succeeds: Phi0 picks up e^{if}
  GaugeShift gs{0.05, -0.03, 0.02, 0.04};
  CHECK(build_tautological(t.lambda, gs).parallel_residual < 1e-10);
}

TEST_CASE("wrong normalization is caught by the J^2 certification") {
  AnsatzConfig cfg;
  cfg.lambda = 1.0;
  CHECK_THROWS_WITH_AS(build_ansatz(cfg), doctest::Contains("spectrum of J^2"), Error);
}

TEST_CASE("ansatz metric and two-form in the fiber directions") {
  const MChartPtr chart = build_ansatz();
  const Point p{1.0, 0.2, 2.1, -0.5, 0.7, -1.1};
  const auto f = chart->values(p);
  const auto& g = f.metric;
  CHECK(g(5, 5) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(g(4, 4) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  CHECK(std::abs(g(4, 5)) < 1e-15);
  // omega(xi, .) = theta / (2 sqrt3) and theta is dual to 12 d/dt1
  const auto J = *f.complex_structure;
  const auto jxi = apply(J, [] {
    Tensor<double> v = vector_tensor<double>(6);
    v[5] = 1.0;
    return v;
  }());
  CHECK(pair(g, jxi, jxi) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(jxi[4] == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
  StructurePoint<6, 2> s(*chart, p);
  CHECK(value_of(s.geo().scalar_curvature()) == doctest::Approx(30.0).epsilon(1e-10));
}
