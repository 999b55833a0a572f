#include <doctest.h>

#include <algorithm>

#include "nkg/check.hpp"
#include "nkg/reduction.hpp"

using namespace nkg;

TEST_CASE("both generators on S3 x S3 are unit Killing fields") {
  const MChartPtr chart = build_s3s3();
  for (const char* name : {"xi", "xi_left"}) {
    const CheckReport r = verify_killing_unit(*chart, name, 10, 3);
    CHECK_MESSAGE(r.pass, name);
    CHECK(*r.max_residual < 1e-10);
  }
}

TEST_CASE("xi scaled by 2 fails the unit test with deviation 3") {
  S3S3Config cfg;
  cfg.killing_scale = 2.0;
  const CheckReport r = verify_killing_unit(*build_s3s3(cfg), "xi", 8, 5);
  CHECK_FALSE(r.pass);
  CHECK(r.error.empty());
  REQUIRE(r.value);
  CHECK(*r.value == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(*r.max_residual >= 3.0 - 1e-10);
}

TEST_CASE("S6 reduction: unit length is an expected failure") {
  RunConfig cfg;
  cfg.model = "s6";
  cfg.suites = {"reduction"};
  cfg.samples = 4;
  const auto reps = run(cfg);
  const auto it = std::find_if(reps.begin(), reps.end(), [](const CheckReport& r) { return r.id == "killing-unit-length"; });
  REQUIRE(it != reps.end());
  CHECK(it->expected_fail);
  CHECK_FALSE(it->pass);
  CHECK(it->outcome() == "xfail");
  CHECK(it->satisfied());
  for (const auto& r : reps) CHECK_MESSAGE(r.satisfied(), r.id);
}

TEST_CASE("lemma-norm-dzeta11 reports the value 8") {
  RunConfig cfg;
  cfg.model = "s3s3";
  cfg.suites = {"reduction"};
  cfg.only = {"lemma-norm-dzeta11"};
  cfg.samples = 5;
  const auto reps = run(cfg);
  REQUIRE(reps.size() == 1);
  REQUIRE(reps[0].value);
  CHECK(*reps[0].value == doctest::Approx(8.0).epsilon(1e-9));
  CHECK(reps[0].pass);
}

TEST_CASE("transversal structures against hand-built projectors") {
  const MChartPtr chart = build_s3s3();
  const ReductionPoint<2> r(*chart, Point{0.3, -0.1, 0.2, -0.2, 0.1, 0.4});
  const auto g = r.g();
  const auto xi = r.v(r.xi()), jxi = apply(r.Jv(), xi);
  // H = span(xi, J xi)^perp, checked by projecting explicit vectors
  Tensor<double> v = vector_tensor<double>(6);
  for (int i = 0; i < 6; ++i) v[i] = 0.1 * (i + 1) - 0.25;
  const auto h = apply(r.v(r.pi_h()), v);
  CHECK(std::abs(pair(g, h, xi)) < 1e-13);
  CHECK(std::abs(pair(g, h, jxi)) < 1e-13);
  CHECK(max_abs(v - h - xi * pair(g, v, xi) - jxi * pair(g, v, jxi)) < 1e-13);
  // I = nabla_xi J as an explicit contraction of nabla J
  const auto nj = r.nabla_j_v();
  Tensor<double> I = endomorphism_tensor<double>(6);
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      for (int c = 0; c < 6; ++c) I(a, b) += xi[c] * nj(c, a, b);
  CHECK(max_abs(I - r.v(r.I())) < 1e-13);
  // sigma has eigenvalues +1, +1, -1, -1 on H and 0 on V
  auto ev = endomorphism_spectrum(r.v(r.sigma()));
  std::vector<double> re;
  for (auto [a, b] : ev) {
    CHECK(std::abs(b) < 1e-9);
    re.push_back(a);
  }
  std::sort(re.begin(), re.end());
  const double expect[6] = {-1, -1, 0, 0, 1, 1};
  for (int i = 0; i < 6; ++i) CHECK(re[i] == doctest::Approx(expect[i]).epsilon(1e-9));
}

TEST_CASE("g0 Levi-Civita connection is torsion free and g0-metric") {
  const MChartPtr chart = build_s3s3();
  const ReductionPoint<2> r(*chart, Point{-0.2, 0.3, 0.1, 0.2, -0.3, 0.1});
  CHECK(max_abs(values(r.nabla0(r.g0()))) < 1e-12);
  const auto gam = r.v(r.gamma0());
  CHECK(max_abs(gam - permute(gam, {0, 2, 1})) < 1e-12);
}
