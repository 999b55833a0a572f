#include <doctest.h>

#include "nkg/errors.hpp"
#include "nkg/models/models.hpp"
#include "nkg/sekigawa.hpp"

using namespace nkg;

TEST_CASE("Kaehler-Einstein base: every term of the formula") {
  const double r = kahler_einstein_radius();
  const NChartPtr chart = build_s2s2(r, r);
  const Point p{1.1, 0.3, 2.0, -1.2};
  for (const char* acs : {"Jhat", "I0"}) {
    const SekigawaTerms t = sekigawa_terms_at(*chart, p, acs);
    CHECK(t.s == doctest::Approx(48.0).epsilon(1e-10));
    CHECK(t.s_star == doctest::Approx(48.0).epsilon(1e-10));
    CHECK(std::abs(t.laplacian_s_star) < 1e-8);
    CHECK(std::abs(t.div_term) < 1e-8);
    CHECK(t.r2_norm2 < 1e-20);
    CHECK(t.phi_norm2 < 1e-20);
    CHECK(t.nabla_omega_norm2 < 1e-20);
    CHECK(t.rough_omega_norm2 < 1e-16);
    CHECK(t.residual() < 1e-8);
    // on a Kaehler manifold rho* is the Ricci form Ric(J., .)
    const LocalGeometry<4, 4> geo(*chart, p);
    const auto rho = precompose(values(geo.ricci()), values(geo.endomorphism(acs)));
    CHECK(max_abs(t.rho_star - rho) < 1e-9);
  }
}

TEST_CASE("non-Einstein products are refused") {
  const NChartPtr chart = build_s2s2(1.0, 2.0);
  CHECK_THROWS_AS(sekigawa_terms_at(*chart, Point{1.0, 0.0, 1.0, 0.0}), PreconditionError);
}

TEST_CASE("R'' picks the part anti-commuting with J on anti-invariant forms") {
  // flat R^4, J e1 = e2, J e3 = e4; anti-invariant forms b1 = e13 - e24, b2 = e14 + e23
  const Tensor<double> g = identity_endomorphism<double>(4);
  Tensor<double> gb = bilinear_tensor<double>(4);
  for (int i = 0; i < 4; ++i) gb(i, i) = 1.0;
  Tensor<double> j = endomorphism_tensor<double>(4);
  j(1, 0) = 1.0;
  j(0, 1) = -1.0;
  j(3, 2) = 1.0;
  j(2, 3) = -1.0;
  auto form = [](std::initializer_list<std::tuple<int, int, double>> t) {
    Tensor<double> w = bilinear_tensor<double>(4);
    for (auto [a, b, c] : t) {
      w(a, b) += c;
      w(b, a) -= c;
    }
    return w;
  };
  const auto b1 = form({{0, 2, 1.0}, {1, 3, -1.0}}), b2 = form({{0, 3, 1.0}, {1, 2, 1.0}});
  // curvature operator s1 b1 (x) b1 + s2 b2 (x) b2 with unit-norm forms: g(R(e_k,e_l)e_j, e_i) = r(i,j,k,l)
  auto riemann_of = [&](double s1, double s2) {
    Tensor<double> r(4, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
    for (int i = 0; i < 4; ++i)
      for (int jj = 0; jj < 4; ++jj)
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) r(i, jj, k, l) = 0.5 * (s1 * b1(i, jj) * b1(k, l) + s2 * b2(i, jj) * b2(k, l));
    return r;
  };
  // the reflection b1 -> b1, b2 -> -b2 anti-commutes with the rotation a -> a(J., .)
  CHECK(detail::r2_norm2(riemann_of(1.0, -1.0), gb, j) == doctest::Approx(2.0).epsilon(1e-12));
  // the identity commutes
  CHECK(detail::r2_norm2(riemann_of(1.0, 1.0), gb, j) < 1e-24);
  // a general diagonal operator: anti-commuting part is (s1 - s2)/2 times the reflection
  CHECK(detail::r2_norm2(riemann_of(3.0, 0.5), gb, j) == doctest::Approx(2.0 * 1.25 * 1.25).epsilon(1e-12));
  (void)g;
}
