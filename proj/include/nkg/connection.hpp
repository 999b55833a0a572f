#pragma once

// Levi-Civita connection, covariant and Lie derivatives, and curvature at a point.
//
// Conventions:
//   Gamma(a, b, c) = Gamma^a_{bc},  nabla_b V^a = d_b V^a + Gamma^a_{bc} V^c
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z,
//   R(a, b, c, d) = R^a_{bcd} with R(d_c, d_d) d_b = R^a_{bcd} d_a
//   Ric(X,Y) = tr(Z -> R(Z,X)Y),  so the unit round sphere S^n has Ric = (n-1) g.
// Derivative slots are always prepended: (nabla T)(c, ...) = nabla_c T_(...).

#include <functional>
#include <optional>
#include <vector>

#include "nkg/chart.hpp"
#include "nkg/linalg.hpp"
#include "nkg/tensor.hpp"

namespace nkg {

template <int D, int K>
Tensor<Jet<D, K>> christoffel(const Tensor<Jet<D, K>>& g, const Tensor<Jet<D, K>>& ginv) {
  using JetT = Jet<D, K>;
  const Tensor<JetT> dg = partial(g);  // dg(c, a, b) = d_c g_ab
  // Koszul: Gamma_{k i j} = 1/2 (d_i g_jk + d_j g_ik - d_k g_ij)
  Tensor<JetT> lowered(D, {Slot::Down, Slot::Down, Slot::Down});
  for (int k = 0; k < D; ++k)
    for (int i = 0; i < D; ++i)
      for (int j = i; j < D; ++j) {
        JetT v = 0.5 * (dg(i, j, k) + dg(j, i, k) - dg(k, i, j));
        lowered(k, i, j) = v;
        lowered(k, j, i) = v;
      }
  Tensor<JetT> gamma(D, {Slot::Up, Slot::Down, Slot::Down});
  for (int a = 0; a < D; ++a)
    for (int i = 0; i < D; ++i)
      for (int j = i; j < D; ++j) {
        JetT acc(0.0);
        for (int k = 0; k < D; ++k) acc += ginv(a, k) * lowered(k, i, j);
        gamma(a, i, j) = acc;
        gamma(a, j, i) = acc;
      }
  return gamma;
}

template <class T>
Tensor<T> covariant_derivative(const Tensor<T>& t, const Tensor<T>& gamma, const Tensor<T>& dt) {
  // dt is the tensor of partial derivatives (derivative slot first).
  const int n = t.dim();
  Tensor<T> r = dt;
  std::vector<int> idx(r.rank());
  const int rank = t.rank();
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.unflat(f, idx);
    const int c = idx[0];
    T acc = r[f];
    for (int k = 0; k < rank; ++k) {
      const int ik = idx[k + 1];
      const std::size_t st = t.stride(k);
      std::size_t base = 0;
      for (int m = 0; m < rank; ++m)
        if (m != k) base += static_cast<std::size_t>(idx[m + 1]) * t.stride(m);
      if (t.slot(k) == Slot::Up) {
        for (int e = 0; e < n; ++e) acc += gamma(ik, c, e) * t[base + e * st];
      } else {
        for (int e = 0; e < n; ++e) acc -= gamma(e, c, ik) * t[base + e * st];
      }
    }
    r[f] = acc;
  }
  return r;
}

template <int D, int K>
Tensor<Jet<D, K>> covariant_derivative(const Tensor<Jet<D, K>>& t, const Tensor<Jet<D, K>>& gamma) {
  return covariant_derivative(t, gamma, partial(t));
}

// Lie derivative of t along the vector field x (both as jets).
template <int D, int K>
Tensor<Jet<D, K>> lie_derivative(const Tensor<Jet<D, K>>& x, const Tensor<Jet<D, K>>& t) {
  using JetT = Jet<D, K>;
  const Tensor<JetT> dt = partial(t);
  const Tensor<JetT> dx = partial(x);  // dx(e, a) = d_e X^a
  Tensor<JetT> r(D, t.slots());
  std::vector<int> idx(t.rank());
  const int rank = t.rank();
  const std::size_t n = t.size();
  for (std::size_t f = 0; f < n; ++f) {
    t.unflat(f, idx);
    JetT acc(0.0);
    for (int c = 0; c < D; ++c) acc += x[c] * dt[c * n + f];
    for (int k = 0; k < rank; ++k) {
      const int ik = idx[k];
      const std::size_t st = t.stride(k);
      const std::size_t base = f - static_cast<std::size_t>(ik) * st;
      if (t.slot(k) == Slot::Up) {
        for (int e = 0; e < D; ++e) acc -= dx(e, ik) * t[base + e * st];
      } else {
        for (int e = 0; e < D; ++e) acc += dx(ik, e) * t[base + e * st];
      }
    }
    r[f] = acc;
  }
  return r;
}

// [X, Y]^a = X^c d_c Y^a - Y^c d_c X^a
template <int D, int K>
Tensor<Jet<D, K>> lie_bracket(const Tensor<Jet<D, K>>& x, const Tensor<Jet<D, K>>& y) {
  return lie_derivative(x, y);
}

template <int D, int K>
Tensor<Jet<D, K>> riemann(const Tensor<Jet<D, K>>& gamma) {
  using JetT = Jet<D, K>;
  const Tensor<JetT> dgam = partial(gamma);  // dgam(c, a, b, d) = d_c Gamma^a_bd
  Tensor<JetT> r(D, {Slot::Up, Slot::Down, Slot::Down, Slot::Down});
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = c + 1; d < D; ++d) {
          JetT acc = dgam(c, a, d, b) - dgam(d, a, c, b);
          for (int e = 0; e < D; ++e) acc += gamma(a, c, e) * gamma(e, d, b) - gamma(a, d, e) * gamma(e, c, b);
          r(a, b, c, d) = acc;
          r(a, b, d, c) = -acc;
        }
  return r;
}

template <class T>
Tensor<T> ricci(const Tensor<T>& riem) {
  return contract(riem, 0, 2);  // Ric_bd = R^a_{bad}
}

template <class T>
T scalar_curvature(const Tensor<T>& ric, const Tensor<T>& ginv) {
  T acc(0.0);
  for (int i = 0; i < ric.dim(); ++i)
    for (int j = 0; j < ric.dim(); ++j) acc += ginv(i, j) * ric(i, j);
  return acc;
}

// Everything the kernel knows at one chart point, as jets.
template <int D, int K>
class LocalGeometry {
 public:
  using JetT = Jet<D, K>;
  using Field = Tensor<JetT>;

  LocalGeometry(const Chart<D, K>& chart, const Point& p)
      : chart_(&chart), point_(p), fields_(chart.jets(p)) {
    g_ = fields_.metric;
    g_value_ = values(g_);
    if (!is_positive_definite(g_value_)) throw DegenerateError("metric is not positive definite");
    ginv_ = inverse(g_);
    ginv_value_ = values(ginv_);
    gamma_ = christoffel(g_, ginv_);
  }

  const Chart<D, K>& chart() const { return *chart_; }
  const Point& point() const { return point_; }
  const StructureFields<JetT>& fields() const { return fields_; }

  const Field& g() const { return g_; }
  const Field& ginv() const { return ginv_; }
  const Field& gamma() const { return gamma_; }
  const Tensor<double>& g_value() const { return g_value_; }
  const Tensor<double>& ginv_value() const { return ginv_value_; }

  const Field& J() const {
    if (!fields_.complex_structure) throw PreconditionError("chart has no almost complex structure");
    return *fields_.complex_structure;
  }
  bool has_vector_field(const std::string& name) const { return fields_.vector_fields.count(name) > 0; }
  const Field& vector_field(const std::string& name) const {
    auto it = fields_.vector_fields.find(name);
    if (it == fields_.vector_fields.end()) throw PreconditionError("chart has no vector field '" + name + "'");
    return it->second;
  }
  const Field& endomorphism(const std::string& name) const {
    auto it = fields_.endomorphisms.find(name);
    if (it == fields_.endomorphisms.end()) throw PreconditionError("chart has no endomorphism '" + name + "'");
    return it->second;
  }

  Field nabla(const Field& t) const { return covariant_derivative(t, gamma_); }
  Field nabla2(const Field& t) const { return nabla(nabla(t)); }
  Field lie(const Field& x, const Field& t) const { return lie_derivative(x, t); }

  const Field& riemann() const {
    if (!riemann_) riemann_ = nkg::riemann(gamma_);
    return *riemann_;
  }
  Field ricci() const { return nkg::ricci(riemann()); }
  JetT scalar_curvature() const { return nkg::scalar_curvature(ricci(), ginv_); }

  Field flat(const Field& v) const { return lower(v, 0, g_); }
  Field sharp(const Field& w) const { return raise(w, 0, ginv_); }

  double norm(const Tensor<double>& t) const { return nkg::norm(t, g_value_, ginv_value_); }
  double inner(const Tensor<double>& a, const Tensor<double>& b) const {
    return nkg::inner(a, b, g_value_, ginv_value_);
  }

 private:
  const Chart<D, K>* chart_;
  Point point_;
  StructureFields<JetT> fields_;
  Field g_, ginv_, gamma_;
  Tensor<double> g_value_, ginv_value_;
  mutable std::optional<Field> riemann_;
};

// Tensor field: anything that produces jet components at a local geometry.
template <int D, int K>
using TensorField = std::function<Tensor<Jet<D, K>>(const LocalGeometry<D, K>&)>;

template <int D, int K>
struct ConnectionValue {
  Tensor<Jet<D, K>> gamma;
  Tensor<double> values() const { return nkg::values(gamma); }
  Tensor<Jet<D, K>> first_derivatives() const { return partial(gamma); }
  Tensor<Jet<D, K>> second_derivatives() const { return partial(partial(gamma)); }
};

template <int D, int K>
ConnectionValue<D, K> christoffel_at(const Chart<D, K>& chart, const Point& p) {
  if (K < 1) throw OrderError("Christoffel symbols need first metric derivatives");
  LocalGeometry<D, K> geo(chart, p);
  return {geo.gamma()};
}

template <int D, int K>
Tensor<Jet<D, K>> covariant_derivative_at(const Chart<D, K>& chart, const TensorField<D, K>& field,
                                          const Point& p) {
  if (K < 1) throw OrderError("covariant derivative needs first derivatives");
  LocalGeometry<D, K> geo(chart, p);
  return geo.nabla(field(geo));
}

template <int D, int K>
Tensor<Jet<D, K>> second_covariant_derivative_at(const Chart<D, K>& chart,
                                                 const TensorField<D, K>& field, const Point& p) {
  if (K < 2) throw OrderError("second covariant derivative needs second derivatives");
  LocalGeometry<D, K> geo(chart, p);
  return geo.nabla2(field(geo));
}

template <int D, int K>
Tensor<double> riemann_at(const Chart<D, K>& chart, const Point& p) {
  if (K < 2) throw OrderError("curvature needs second metric derivatives");
  LocalGeometry<D, K> geo(chart, p);
  return values(geo.riemann());
}

template <int D, int K>
Tensor<double> ricci_at(const Chart<D, K>& chart, const Point& p) {
  return ricci(riemann_at(chart, p));
}

template <int D, int K>
double scalar_curvature_at(const Chart<D, K>& chart, const Point& p) {
  if (K < 2) throw OrderError("curvature needs second metric derivatives");
  LocalGeometry<D, K> geo(chart, p);
  return value_of(geo.scalar_curvature());
}

template <int D, int K>
Tensor<Jet<D, K>> lie_derivative_at(const Chart<D, K>& chart, const TensorField<D, K>& x,
                                    const TensorField<D, K>& t, const Point& p) {
  if (K < 1) throw OrderError("Lie derivative needs first derivatives");
  LocalGeometry<D, K> geo(chart, p);
  return geo.lie(x(geo), t(geo));
}

// Gram-Schmidt in the order of the seeds.
inline std::vector<Tensor<double>> orthonormal_frame(const Tensor<double>& g,
                                                     const std::vector<Tensor<double>>& seeds) {
  std::vector<Tensor<double>> frame;
  for (const auto& s : seeds) {
    Tensor<double> v = s;
    const double n0 = std::sqrt(std::abs(pair(g, s, s)));
    for (const auto& e : frame) v -= e * pair(g, e, v);
    const double n = std::sqrt(std::max(0.0, pair(g, v, v)));
    if (!(n > 1e-10 * std::max(n0, 1e-300))) throw DegenerateError("degenerate frame seeds");
    frame.push_back(v * (1.0 / n));
  }
  return frame;
}

template <int D, int K>
std::vector<Tensor<double>> orthonormal_frame_at(const Chart<D, K>& chart, const Point& p,
                                                 const std::vector<Tensor<double>>& seeds) {
  const auto f = chart.values(p);
  return orthonormal_frame(f.metric, seeds);
}

}  // namespace nkg
