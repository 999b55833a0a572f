#pragma once

// Almost Hermitian structure layer: J, the fundamental form Omega(X,Y) = g(JX,Y),
// nabla J, adapted frames and constant type.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nkg/connection.hpp"
#include "nkg/exterior.hpp"

namespace nkg {

// Contract vector x into (covariant) slot `slot` of t.
inline Tensor<double> contract_vector(const Tensor<double>& t, int slot, const Tensor<double>& x) {
  if (t.slot(slot) != Slot::Down) throw ShapeError("contract_vector: slot is not covariant");
  return contract(outer(x, t), 0, slot + 1);
}

// t(.., X, ..) for a Down slot of a jet tensor, with X a vector of doubles.
template <int D, int K>
Tensor<Jet<D, K>> contract_vector(const Tensor<Jet<D, K>>& t, int slot, const Tensor<double>& x) {
  return contract(outer(lift<D, K>(x), t), 0, slot + 1);
}

inline double gdot(const Tensor<double>& g, const Tensor<double>& x, const Tensor<double>& y) {
  return pair(g, x, y);
}

// Projector on {X, Y}^perp for g-orthonormal-izable vectors is built with orthonormal_frame.

template <int D, int K>
class StructurePoint {
 public:
  using JetT = Jet<D, K>;
  using Field = Tensor<JetT>;

  // J is the chart's complex structure, or a named endomorphism field.
  StructurePoint(const Chart<D, K>& chart, const Point& p, const std::string& j_name = "")
      : geo_(chart, p), J_(j_name.empty() ? geo_.J() : geo_.endomorphism(j_name)) {}

  const LocalGeometry<D, K>& geo() const { return geo_; }
  int orientation() const { return geo_.chart().orientation(); }

  const Field& J() const { return J_; }
  const Field& omega() const { return cache(omega_, [&] { return form_of_endomorphism(J_, geo_.g()); }); }
  // (nabla_c J)^a_b stored as (c, a, b)
  const Field& nabla_j() const { return cache(nabla_j_, [&] { return geo_.nabla(J_); }); }
  // (nabla_c Omega)_ab stored as (c, a, b)
  const Field& nabla_omega() const { return cache(nabla_omega_, [&] { return geo_.nabla(omega()); }); }
  const Field& d_omega() const { return cache(d_omega_, [&] { return exterior_derivative(omega()); }); }
  // nabla_d nabla_c J^a_b stored as (d, c, a, b)
  const Field& nabla2_j() const { return cache(nabla2_j_, [&] { return geo_.nabla(nabla_j()); }); }

  // Pointwise values.
  const Tensor<double>& g() const { return geo_.g_value(); }
  const Tensor<double>& ginv() const { return geo_.ginv_value(); }
  const Tensor<double>& Jv() const { return cache(Jv_, [&] { return values(J_); }); }
  const Tensor<double>& omega_v() const { return cache(omega_v_, [&] { return values(omega()); }); }
  const Tensor<double>& nabla_j_v() const { return cache(nabla_j_v_, [&] { return values(nabla_j()); }); }

  // (nabla_X J) Y
  Tensor<double> nabla_j_xy(const Tensor<double>& x, const Tensor<double>& y) const {
    return apply(contract_vector(nabla_j_v(), 0, x), y);
  }
  Tensor<double> j(const Tensor<double>& x) const { return apply(Jv(), x); }
  Tensor<double> flat(const Tensor<double>& x) const { return lower(x, 0, g()); }
  double dot(const Tensor<double>& x, const Tensor<double>& y) const { return pair(g(), x, y); }
  double norm(const Tensor<double>& t) const { return geo_.norm(t); }

 protected:
  template <class T, class F>
  static const T& cache(std::optional<T>& slot, F&& f) {
    if (!slot) slot = f();
    return *slot;
  }

  LocalGeometry<D, K> geo_;
  Field J_;
  mutable std::optional<Field> omega_, nabla_j_, nabla_omega_, d_omega_, nabla2_j_;
  mutable std::optional<Tensor<double>> Jv_, omega_v_, nabla_j_v_;
};

// alpha from ||(nabla_X J)Y||^2 = alpha {|X|^2|Y|^2 - g(X,Y)^2 - g(JX,Y)^2}.
template <int D, int K>
double constant_type_at(const StructurePoint<D, K>& s, const Tensor<double>& x, const Tensor<double>& y,
                        double eps = 1e-10) {
  const double xx = s.dot(x, x), yy = s.dot(y, y), xy = s.dot(x, y), jxy = s.dot(s.j(x), y);
  const double den = xx * yy - xy * xy - jxy * jxy;
  if (!(den > eps * xx * yy)) throw DegenerateError("degenerate (X, Y) pair: Y lies in span(X, JX)");
  const Tensor<double> v = s.nabla_j_xy(x, y);
  return s.dot(v, v) / den;
}

struct AdaptedFrame {
  std::array<Tensor<double>, 6> e;
};

// e2 = Je1, e4 = Je3, e5 = (nabla_e1 J) e3, e6 = Je5, after orthonormalizing e1 and e3.
template <int D, int K>
AdaptedFrame adapted_frame_at(const StructurePoint<D, K>& s, const Tensor<double>& e1_seed,
                              const Tensor<double>& e3_seed) {
  static_assert(D == 6, "adapted frames live on 6-manifolds");
  AdaptedFrame f;
  f.e[0] = e1_seed * (1.0 / std::sqrt(s.dot(e1_seed, e1_seed)));
  f.e[1] = s.j(f.e[0]);
  Tensor<double> e3 = e3_seed;
  const double n0 = std::sqrt(s.dot(e3, e3));
  e3 -= f.e[0] * s.dot(f.e[0], e3);
  e3 -= f.e[1] * s.dot(f.e[1], e3);
  const double n = std::sqrt(std::max(0.0, s.dot(e3, e3)));
  if (!(n > 1e-8 * n0)) throw DegenerateError("e3 lies in span(e1, Je1)");
  f.e[2] = e3 * (1.0 / n);
  f.e[3] = s.j(f.e[2]);
  f.e[4] = s.nabla_j_xy(f.e[0], f.e[2]);
  f.e[5] = s.j(f.e[4]);
  return f;
}

// Build a form from dual coframe terms: sum_k coeff_k e^{i_k} ^ e^{j_k} ^ ...
inline Tensor<double> frame_form(const std::vector<Tensor<double>>& coframe,
                                 const std::vector<std::pair<double, std::vector<int>>>& terms) {
  const int n = coframe[0].dim();
  const int p = static_cast<int>(terms.front().second.size());
  Tensor<double> r(n, slots_down(p));
  for (const auto& [c, idx] : terms) {
    Tensor<double> w = coframe[idx[0]];
    for (std::size_t k = 1; k < idx.size(); ++k) w = wedge(w, coframe[idx[k]]);
    r += w * c;
  }
  return r;
}

// Ric*(X,Y) = tr(Z -> R(X,JZ)JY) = R^a_{b x d} J^b_y J^d_a
template <class T>
Tensor<T> ricci_star(const Tensor<T>& riem, const Tensor<T>& j) {
  const int n = j.dim();
  Tensor<T> r = bilinear_tensor<T>(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      T acc(0.0);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int d = 0; d < n; ++d) acc += riem(a, b, x, d) * j(b, y) * j(d, a);
      r(x, y) = acc;
    }
  return r;
}

}  // namespace nkg
