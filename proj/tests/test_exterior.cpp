#include <doctest.h>

#include <random>

#include "nkg/linalg.hpp"
#include "nkg/models/models.hpp"
#include "nkg/nearly_kahler.hpp"

using namespace nkg;

namespace {

using J62 = Jet<6, 2>;

// Random polynomial p-form on R^6 with jet components at a point.
Tensor<J62> random_form(int p, std::mt19937_64& rng, const Point& at) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::array<J62, 6> x;
  for (int i = 0; i < 6; ++i) x[i] = J62::variable(i, at[i]);
  std::vector<J62> comps;
  for (std::size_t k = 0; k < detail::increasing_sets(6, p).size(); ++k) {
    J62 c(u(rng));
    for (int i = 0; i < 6; ++i) c += x[i] * u(rng) + x[i] * x[(i + k) % 6] * u(rng);
    comps.push_back(c * x[k % 6] * u(rng) + J62(u(rng)));
  }
  return form_from_increasing(6, p, comps);
}

Tensor<double> random_values_form(int p, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> comps;
  for (std::size_t k = 0; k < detail::increasing_sets(6, p).size(); ++k) comps.push_back(u(rng));
  return form_from_increasing(6, p, comps);
}

}  // namespace

TEST_CASE("exterior derivative matches the coordinate formulas") {
  std::mt19937_64 rng(11);
  const Point p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4};
  const auto a = random_form(1, rng, p);
  const auto da = values(exterior_derivative(a));
  const auto pa = values(partial(a));  // (i, j) = d_i a_j
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) CHECK(da(i, j) == doctest::Approx(pa(i, j) - pa(j, i)).epsilon(1e-12));

  const auto b = random_form(2, rng, p);
  const auto db = values(exterior_derivative(b));
  const auto pb = values(partial(b));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k)
        CHECK(db(i, j, k) == doctest::Approx(pb(i, j, k) - pb(j, i, k) + pb(k, i, j)).epsilon(1e-12));
}

TEST_CASE("d squared vanishes and d is an antiderivation") {
  std::mt19937_64 rng(12);
  const Point p{-0.1, 0.4, 0.2, -0.6, 0.3, 0.05};
  for (int deg = 0; deg <= 3; ++deg) {
    const auto a = random_form(deg, rng, p);
    if (deg == 0) continue;
    CHECK(max_abs(values(exterior_derivative(exterior_derivative(a)))) < 1e-11);
  }
  const auto a = random_form(1, rng, p), b = random_form(2, rng, p);
  const auto lhs = values(exterior_derivative(wedge(a, b)));
  const auto rhs = values(wedge(exterior_derivative(a), b)) - values(wedge(a, exterior_derivative(b)));
  CHECK(max_abs(lhs - rhs) < 1e-11);
}

TEST_CASE("wedge is graded commutative and associative") {
  std::mt19937_64 rng(13);
  const auto a = random_values_form(1, rng), b = random_values_form(2, rng), c = random_values_form(3, rng);
  const auto d = random_values_form(1, rng);
  CHECK(max_abs(wedge(a, b) - wedge(b, a)) < 1e-14);
  CHECK(max_abs(wedge(a, d) + wedge(d, a)) < 1e-14);
  CHECK(max_abs(wedge(wedge(a, b), c) - wedge(a, wedge(b, c))) < 1e-13);
  // (e1 ^ e2)(e1, e2) = 1 in the determinant convention
  Tensor<double> e1 = covector_tensor<double>(6), e2 = e1;
  e1[0] = 1.0;
  e2[1] = 1.0;
  CHECK(wedge(e1, e2)(0, 1) == 1.0);
}

TEST_CASE("Cartan formula agrees with the coordinate Lie derivative") {
  const MChartPtr chart = build_s3s3();
  const Point p{0.2, -0.3, 0.1, 0.4, -0.2, 0.3};
  const LocalGeometry<6, 2> geo(*chart, p);
  const auto& xi = geo.vector_field("xi");
  const auto omega = form_of_endomorphism(geo.J(), geo.g());
  const auto lie = values(lie_derivative(xi, omega));
  const auto cartan = values(interior(xi, exterior_derivative(omega))) +
                      values(exterior_derivative(interior(xi, omega)));
  CHECK(max_abs(lie - cartan) < 1e-12);
  // a non-Killing field: the coordinate field d/dx1
  Tensor<J62> e = vector_tensor<J62>(6);
  e[0] = J62(1.0);
  const auto l2 = values(lie_derivative(e, omega));
  const auto c2 = values(interior(e, exterior_derivative(omega))) + values(exterior_derivative(interior(e, omega)));
  CHECK(max_abs(l2 - c2) < 1e-12);
  CHECK(max_abs(l2) > 1e-3);
}

TEST_CASE("Hodge star: a ^ *b = <a, b> vol and ** = (-1)^{p(n-p)}") {
  const MChartPtr chart = build_s3s3();
  const auto f = chart->values(Point{0.1, 0.2, -0.3, 0.4, 0.0, -0.1});
  const Tensor<double>& g = f.metric;
  const Tensor<double> gi = inverse(g);
  const int o = chart->orientation();
  const auto vol = volume_form(g, o);
  std::mt19937_64 rng(14);
  for (int p = 1; p <= 5; ++p) {
    const auto a = random_values_form(p, rng), b = random_values_form(p, rng);
    const auto lhs = wedge(a, hodge_star(b, g, gi, o));
    CHECK(max_abs(lhs - vol * form_inner(a, b, g, gi)) < 1e-11);
    const double sign = (p * (6 - p)) % 2 ? -1.0 : 1.0;
    CHECK(max_abs(hodge_star(hodge_star(a, g, gi, o), g, gi, o) - a * sign) < 1e-11);
  }
}

TEST_CASE("codifferential equals -*d* in even dimension") {
  const MChartPtr chart = build_s3s3();
  const Point p{-0.2, 0.1, 0.3, 0.2, -0.4, 0.1};
  const LocalGeometry<6, 2> geo(*chart, p);
  const int o = chart->orientation();
  const auto omega = form_of_endomorphism(geo.J(), geo.g());
  const auto jzeta = geo.flat(apply(geo.J(), geo.vector_field("xi")));
  for (const auto* a : {&omega, &jzeta}) {
    const auto direct = values(codifferential(geo, *a));
    const auto star = values(hodge_star(exterior_derivative(hodge_star(*a, geo.g(), geo.ginv(), o)), geo.g(),
                                        geo.ginv(), o)) * -1.0;
    CHECK(max_abs(direct - star) < 1e-11);
  }
}

TEST_CASE("curvature has the algebraic Bianchi and pair symmetries") {
  for (const MChartPtr& chart : {build_s3s3(), build_s6()}) {
    const Point p{0.15, -0.25, 0.3, 0.05, -0.1, 0.2};
    const LocalGeometry<6, 2> geo(*chart, p);
    const auto r = values(geo.riemann());
    const auto rl = lower(r, 0, geo.g_value());  // R_abcd
    double bianchi = 0.0, pair = 0.0, skew = 0.0;
    for (int a = 0; a < 6; ++a)
      for (int b = 0; b < 6; ++b)
        for (int c = 0; c < 6; ++c)
          for (int d = 0; d < 6; ++d) {
            bianchi = std::max(bianchi, std::abs(r(a, b, c, d) + r(a, c, d, b) + r(a, d, b, c)));
            pair = std::max(pair, std::abs(rl(a, b, c, d) - rl(c, d, a, b)));
            skew = std::max(skew, std::abs(rl(a, b, c, d) + rl(b, a, c, d)));
          }
    CHECK(bianchi < 1e-11);
    CHECK(pair < 1e-11);
    CHECK(skew < 1e-11);
  }
}

TEST_CASE("extrapolated differences reproduce exact jets") {
  DerivativeEngine eng;
  eng.mode = DerivativeMode::ExtrapolatedDifferences;
  for (const MChartPtr& exact : {build_s3s3(), build_s6()}) {
    const MChartPtr diff = with_engine(exact, eng);
    const Point p{0.2, 0.1, -0.3, 0.25, -0.15, 0.05};
    const LocalGeometry<6, 2> a(*exact, p), b(*diff, p);
    CHECK(max_abs(values(a.gamma()) - values(b.gamma())) < 1e-7);
    CHECK(max_abs(values(a.riemann()) - values(b.riemann())) < 1e-5);
    CHECK(max_abs(values(a.nabla(a.J())) - values(b.nabla(b.J()))) < 1e-7);
  }
  CHECK_THROWS_AS(with_engine(build_s2s2(1.0, 1.0), eng), OrderError);
}
