#pragma once

// Pointwise Weitzenboeck formula of an almost Kaehler Einstein manifold (N^2n, g, J, W):
//
//   Delta s* - 8 delta <rho*, nabla_. W> = -8|R''|^2 - |nabla* nabla W|^2 - |phi|^2 - s/(2n) |nabla W|^2
//
// Conventions:
//   curvature operator <R(X^Y), Z^W> = g(R(X,Y)W, Z)  (positive on round spheres)
//   rho* = R(W) as a 2-form, s* = 2 <rho*, W>        (so s* = s when J is Kaehler)
//   phi(X,Y) = <nabla_JX W, nabla_Y W>
//   R'' = part of R restricted to J-anti-invariant 2-forms that anti-commutes with a -> a(J., .)
//   2-forms use the form norm, |nabla W|^2 = sum_i |nabla_ei W|^2, |phi|^2 and |R''|^2 are
//   full contractions.

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "nkg/connection.hpp"
#include "nkg/exterior.hpp"
#include "nkg/linalg.hpp"

namespace nkg {

struct SekigawaTerms {
  double s = 0.0;
  double s_star = 0.0;
  Tensor<double> rho_star;
  Tensor<double> phi;
  double r2_norm2 = 0.0;           // |R''|^2
  double rough_omega_norm2 = 0.0;  // |nabla* nabla W|^2
  double phi_norm2 = 0.0;
  double nabla_omega_norm2 = 0.0;
  double laplacian_s_star = 0.0;
  double div_term = 0.0;  // delta <rho*, nabla_. W>
  double lhs = 0.0;
  double rhs = 0.0;
  double residual() const { return std::abs(lhs - rhs); }
};

namespace detail {

// <a, b> for 2-forms with jet entries: (1/2) a_ij b^ij
template <class T>
T form_pair(const Tensor<T>& a, const Tensor<T>& b_up) {
  T acc(0.0);
  for (std::size_t f = 0; f < a.size(); ++f) acc += a[f] * b_up[f];
  return acc * 0.5;
}

// R'' in an orthonormal frame; r is R^a_{bcd}, j and g are values.
inline double r2_norm2(const Tensor<double>& r, const Tensor<double>& g, const Tensor<double>& j) {
  const int n = g.dim();
  std::vector<Tensor<double>> seeds;
  for (int i = 0; i < n; ++i) {
    Tensor<double> v = vector_tensor<double>(n);
    v[i] = 1.0;
    seeds.push_back(v);
  }
  const auto frame = orthonormal_frame(g, seeds);
  Eigen::MatrixXd E(n, n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) E(k, i) = frame[i][k];
  const Eigen::MatrixXd G = to_eigen(g), Jm = E.inverse() * to_eigen(j) * E;

  // Rf(i,j,k,l) = g(R(e_k,e_l) e_j, e_i)
  auto rf = [&](int i, int jj, int k, int l) {
    double acc = 0.0;
    for (int z = 0; z < n; ++z)
      for (int w = 0; w < n; ++w)
        for (int x = 0; x < n; ++x)
          for (int y = 0; y < n; ++y) {
            const double c = E(z, i) * E(w, jj) * E(x, k) * E(y, l);
            if (c == 0.0) continue;
            double low = 0.0;
            for (int a = 0; a < n; ++a) low += G(z, a) * r(a, w, x, y);
            acc += c * low;
          }
    return acc;
  };
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) pairs.emplace_back(i, k);
  const int m = static_cast<int>(pairs.size());
  Eigen::MatrixXd op(m, m);
  for (int q = 0; q < m; ++q)
    for (int p = 0; p < m; ++p) op(q, p) = rf(pairs[q].first, pairs[q].second, pairs[p].first, pairs[p].second);

  // linear maps on 2-forms, as matrices in the orthonormal basis e^i ^ e^k (i < k)
  auto form_map = [&](auto&& f) {
    Eigen::MatrixXd M(m, m);
    for (int p = 0; p < m; ++p) {
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
      a(pairs[p].first, pairs[p].second) = 1.0;
      a(pairs[p].second, pairs[p].first) = -1.0;
      const Eigen::MatrixXd b = f(a);
      for (int q = 0; q < m; ++q) M(q, p) = b(pairs[q].first, pairs[q].second);
    }
    return M;
  };
  // a(JX, JY) = (J^T a J)(X, Y), a(JX, Y) = (J^T a)(X, Y)
  const Eigen::MatrixXd anti = form_map([&](const Eigen::MatrixXd& a) {
    return Eigen::MatrixXd(0.5 * (a - Jm.transpose() * a * Jm));
  });
  const Eigen::MatrixXd jj = form_map([&](const Eigen::MatrixXd& a) { return Eigen::MatrixXd(Jm.transpose() * a); });
  const Eigen::MatrixXd rm = anti * op * anti;
  const Eigen::MatrixXd r2 = 0.5 * (rm + jj * rm * jj);
  return r2.squaredNorm();
}

}  // namespace detail

// Terms of the formula at p for the almost complex structure named acs ("Jhat" or "I0")
// on a chart of dimension D = 2n with jets of order K >= 4.
template <int D, int K>
SekigawaTerms sekigawa_terms_at(const Chart<D, K>& chart, const Point& p, const std::string& acs = "Jhat",
                                double einstein_tol = 1e-6) {
  static_assert(K >= 4, "the formula needs fourth metric derivatives");
  using JetT = Jet<D, K>;
  using Field = Tensor<JetT>;
  const LocalGeometry<D, K> geo(chart, p);
  const Field& g = geo.g();
  const Field& ginv = geo.ginv();
  const Field& J = geo.endomorphism(acs);

  SekigawaTerms t;
  const Field ric = geo.ricci();
  const JetT s = geo.scalar_curvature();
  t.s = value_of(s);
  {
    const Tensor<double> trace_free = values(ric) - geo.g_value() * (t.s / D);
    const double dev = geo.norm(trace_free);
    if (dev > einstein_tol)
      throw PreconditionError("non-Einstein base: |Ric - (s/n) g| = " + std::to_string(dev));
  }

  const Field omega = form_of_endomorphism(J, g);
  const Field omega_mixed = raise(omega, 1, ginv);  // W_a^w
  const Field omega_up = raise(omega_mixed, 0, ginv);
  const Field& r = geo.riemann();

  // rho*(x,y) = (1/2) sum R^a_{wxy} W_a^w
  Field rho = bilinear_tensor<JetT>(D);
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y) {
      JetT acc(0.0);
      for (int a = 0; a < D; ++a)
        for (int w = 0; w < D; ++w) acc += r(a, w, x, y) * omega_mixed(a, w);
      rho(x, y) = acc * 0.5;
    }
  const JetT s_star = detail::form_pair(rho, omega_up) * 2.0;
  t.s_star = value_of(s_star);
  t.rho_star = values(rho);

  // Delta s* = d* d s*
  const Field ds = partial(Field::scalar(s_star));
  t.laplacian_s_star = values(codifferential(geo, ds))[0];

  // beta(X) = <rho*, nabla_X W>
  const Field nw = geo.nabla(omega);  // (c, a, b)
  const Field rho_up = raise(raise(rho, 0, ginv), 1, ginv);
  Field beta = covector_tensor<JetT>(D);
  for (int c = 0; c < D; ++c) {
    JetT acc(0.0);
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) acc += rho_up(a, b) * nw(c, a, b);
    beta[c] = acc * 0.5;
  }
  t.div_term = values(codifferential(geo, beta))[0];

  const Tensor<double> gv = geo.g_value(), giv = geo.ginv_value(), jv = values(J);
  const Tensor<double> nwv = values(nw);
  t.nabla_omega_norm2 = 0.5 * inner(nwv, nwv, gv, giv);
  const Tensor<double> rough = values(rough_laplacian(geo, omega));
  t.rough_omega_norm2 = form_norm2(rough, gv, giv);

  // phi(x,y) = <nabla_{Jx} W, nabla_y W>
  const Tensor<double> nw_up = raise(raise(nwv, 1, giv), 2, giv);
  t.phi = bilinear_tensor<double>(D);
  for (int x = 0; x < D; ++x)
    for (int y = 0; y < D; ++y) {
      double acc = 0.0;
      for (int c = 0; c < D; ++c)
        for (int a = 0; a < D; ++a)
          for (int b = 0; b < D; ++b) acc += jv(c, x) * nwv(c, a, b) * nw_up(y, a, b);
      t.phi(x, y) = 0.5 * acc;
    }
  t.phi_norm2 = inner(t.phi, t.phi, gv, giv);
  t.r2_norm2 = detail::r2_norm2(values(r), gv, jv);

  t.lhs = t.laplacian_s_star - 8.0 * t.div_term;
  t.rhs = -8.0 * t.r2_norm2 - t.rough_omega_norm2 - t.phi_norm2 - t.s / D * t.nabla_omega_norm2;
  return t;
}

}  // namespace nkg
