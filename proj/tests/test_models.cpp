#include <doctest.h>

#include <random>

#include "nkg/linalg.hpp"
#include "nkg/models/models.hpp"
#include "nkg/nearly_kahler.hpp"

using namespace nkg;

namespace {

Point random_point(const Box& b, std::mt19937_64& rng, double margin = 0.05) {
  Point p(b.dim());
  for (int i = 0; i < b.dim(); ++i) {
    const double w = b.hi[i] - b.lo[i];
    std::uniform_real_distribution<double> u(b.lo[i] + margin * w, b.hi[i] - margin * w);
    p[i] = u(rng);
  }
  return p;
}

// Christoffel symbols from a central-difference Koszul formula on metric values.
template <int D, int K>
Tensor<double> christoffel_fd(const Chart<D, K>& chart, const Point& p, double h = 1e-4) {
  std::vector<Tensor<double>> dg;
  for (int k = 0; k < D; ++k) {
    auto at = [&](double s) {
      Point q = p;
      q[k] += s;
      return chart.values(q).metric;
    };
    dg.push_back((at(-2 * h) * (1.0 / 12) + at(-h) * (-8.0 / 12) + at(h) * (8.0 / 12) + at(2 * h) * (-1.0 / 12)) *
                 (1.0 / h));
  }
  const Tensor<double> ginv = inverse(chart.values(p).metric);
  Tensor<double> gam(D, {Slot::Up, Slot::Down, Slot::Down});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c) {
        double s = 0.0;
        for (int e = 0; e < D; ++e) s += ginv(a, e) * (dg[b](e, c) + dg[c](e, b) - dg[e](b, c));
        gam(a, b, c) = 0.5 * s;
      }
  return gam;
}

}  // namespace

TEST_CASE("Christoffel symbols agree with a finite-difference Koszul formula") {
  std::mt19937_64 rng(7);
  for (auto chart : {build_s3s3(), build_s6()}) {
    for (int k = 0; k < 3; ++k) {
      const Point p = random_point(chart->domain(), rng);
      const Tensor<double> exact = christoffel_at(*chart, p).values();
      CHECK(max_abs(exact - christoffel_fd(*chart, p)) < 1e-7);
    }
  }
}

TEST_CASE("left-trivialized dexp matches differences of the quaternion exponential") {
  const std::array<double, 3> v{0.7, -1.1, 0.4};
  const auto L = dexp_left(v);
  const auto q = quaternion_exp(v);
  const double h = 1e-5;
  for (int j = 0; j < 3; ++j) {
    auto vp = v, vm = v;
    vp[j] += h;
    vm[j] -= h;
    const auto dq = (quaternion_exp(vp) + quaternion_exp(vm) * -1.0) * (0.5 / h);
    const auto w = q.conj() * dq;
    CHECK(std::abs(w.w) < 1e-9);
    const auto wv = w.vec();
    for (int i = 0; i < 3; ++i) CHECK(wv[i] == doctest::Approx(L[i][j]).epsilon(1e-8));
  }
  const auto Li = dexp_left_inverse(v);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += Li[i][k] * L[k][j];
      CHECK(s == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
    }
  const auto back = quaternion_log(q);
  for (int i = 0; i < 3; ++i) CHECK(back[i] == doctest::Approx(v[i]).epsilon(1e-13));
}

TEST_CASE("octonion norm is multiplicative and g2 has dimension 14") {
  Octonion a{0.3, {1, -2, 0.5, 0.1, 0.7, -0.4, 1.2}}, b{-1.0, {0.2, 0.3, -0.9, 1.1, 0.0, 0.6, -0.5}};
  CHECK((a * b).norm2() == doctest::Approx(a.norm2() * b.norm2()).epsilon(1e-13));
  const auto basis = g2_basis();
  CHECK(basis.size() == 14);
}

TEST_CASE("cross product: |x cross y|^2 = |x|^2 |y|^2 - <x, y>^2 and x cross y is orthogonal to x, y") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  for (int t = 0; t < 50; ++t) {
    Vec7 x, y;
    for (int i = 0; i < 7; ++i) {
      x[i] = n(rng);
      y[i] = n(rng);
    }
    const Vec7 c = cross7(x, y);
    double xx = 0, yy = 0, xy = 0, cc = 0, cx = 0, cy = 0;
    for (int i = 0; i < 7; ++i) {
      xx += x[i] * x[i];
      yy += y[i] * y[i];
      xy += x[i] * y[i];
      cc += c[i] * c[i];
      cx += c[i] * x[i];
      cy += c[i] * y[i];
    }
    CHECK(cc == doctest::Approx(xx * yy - xy * xy).epsilon(1e-12));
    CHECK(std::abs(cx) < 1e-12);
    CHECK(std::abs(cy) < 1e-12);
  }
}

TEST_CASE("model structures are orthogonal almost complex structures") {
  std::mt19937_64 rng(11);
  for (auto chart : {build_s3s3(), build_s6()}) {
    const Point p = random_point(chart->domain(), rng);
    const auto f = chart->values(p);
    const Tensor<double>& J = *f.complex_structure;
    CHECK(max_abs(compose(J, J) + identity_endomorphism<double>(6)) < 1e-12);
    const Tensor<double> w = form_of_endomorphism(J, f.metric);
    CHECK(max_abs(w + permute(w, {1, 0})) < 1e-12);
    CHECK(std::abs(pair(f.metric, f.vector_fields.at("xi"), f.vector_fields.at("xi"))) > 0.0);
  }
}

TEST_CASE("round S6 has Ric = 5g and the structure has constant type 1") {
  auto chart = build_s6();
  std::mt19937_64 rng(3);
  const Point p = random_point(chart->domain(), rng);
  const auto ric = ricci_at(*chart, p);
  CHECK(max_abs(ric - chart->values(p).metric * 5.0) < 1e-9);
  CHECK(scalar_curvature_at(*chart, p) == doctest::Approx(30.0).epsilon(1e-10));
  StructurePoint<6, 2> s(*chart, p);
  Tensor<double> x = vector_tensor<double>(6), y = vector_tensor<double>(6);
  x[0] = 1.0;
  y[2] = 1.0;
  CHECK(constant_type_at(s, x, y) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("S3xS3 at the calibrated scale is nearly Kaehler with scal 30") {
  auto chart = build_s3s3();
  std::mt19937_64 rng(5);
  const Point p = random_point(chart->domain(), rng);
  StructurePoint<6, 2> s(*chart, p);
  // (nabla_X J) X = 0
  Tensor<double> sym = s.nabla_j_v() + permute(s.nabla_j_v(), {2, 1, 0});
  CHECK(max_abs(sym) < 1e-10);
  Tensor<double> x = vector_tensor<double>(6), y = vector_tensor<double>(6);
  x[1] = 1.0;
  y[4] = 1.0;
  y[0] = 0.3;
  CHECK(constant_type_at(s, x, y) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(scalar_curvature_at(*chart, p) == doctest::Approx(30.0).epsilon(1e-9));
  const auto f = chart->values(p);
  CHECK(pair(f.metric, f.vector_fields.at("xi"), f.vector_fields.at("xi")) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(pair(f.metric, f.vector_fields.at("xi_left"), f.vector_fields.at("xi_left")) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("Kaehler-Einstein S2xS2 has Ric = 12 g") {
  const double r = kahler_einstein_radius();
  auto chart = build_s2s2(r, r);
  const Point p{1.1, 0.3, 2.0, -0.7};
  CHECK(max_abs(ricci_at(*chart, p) - chart->values(p).metric * 12.0) < 1e-9);
}
