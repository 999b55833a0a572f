#pragma once

// Nearly Kaehler structure rebuilt from the Kaehler-Einstein base S^2 x S^2 (radius r,
// 12 r^2 = 1) with its two complex structures I0 = (j1, j2) and Jhat = (j1, -j2).
//
// Chart (phi1, psi1, phi2, psi2, t1, t2), t1 the fiber of M1 -> N, t2 the fiber of M -> M1:
//   theta = dt1 + A,  dA = -12 g0(I0., .)
//   mu    = dt2 + B,  dB = 2 g0(Jhat., .)
//   Phi   = e^{i t1} Phi0,  Phi0 = lambda e^{i gamma} (e1 - i e2) ^ (e3 - i e4)
//   g     = mu (x) mu + (1/12) theta (x) theta + (4/3) g0 - (1/(2 sqrt3)) Re Phi (Jhat., .)
//   omega = (1/(2 sqrt3)) mu ^ theta + (1/2) Im Phi,   J = g^{-1} omega
// with e1..e4 the orthonormal coframe r dphi1, r sin(phi1) dpsi1, r dphi2, r sin(phi2) dpsi2
// and gamma = m1 psi1 + m2 psi2 + f, the winding (m1, m2) found by a gauge search.
//
// A gauge shift (f, h) replaces A by A + df, B by B + dh and Phi0 by e^{if} Phi0; it is the
// coordinate change (x, t1, t2) -> (x, t1 + f(x), t2 + h(x)).

#include <array>
#include <cmath>
#include <optional>

#include "nkg/exterior.hpp"
#include "nkg/models/models.hpp"

namespace nkg {

// f = a1 sin(phi1 + psi2) + a2 phi2 psi1,  h = b1 cos(phi2 - psi1) + b2 phi1^2
struct GaugeShift {
  double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;

  template <class S>
  S f(const std::array<S, 4>& x) const {
    using std::sin;
    return sin(x[0] + x[3]) * a1 + x[2] * x[1] * a2;
  }
  template <class S>
  S h(const std::array<S, 4>& x) const {
    using std::cos;
    return cos(x[2] - x[1]) * b1 + x[0] * x[0] * b2;
  }
  template <class S>
  std::array<S, 4> df(const std::array<S, 4>& x) const {
    using std::cos;
    const S c = cos(x[0] + x[3]) * a1;
    return {c, x[2] * a2, x[1] * a2, c};
  }
  template <class S>
  std::array<S, 4> dh(const std::array<S, 4>& x) const {
    using std::sin;
    const S s = sin(x[2] - x[1]) * b1;
    return {x[0] * (2.0 * b2), s, S(0.0) - s, S(0.0)};
  }
};

struct TautologicalForm {
  int m1 = 0, m2 = 0;
  double lambda = 0.0;
  double parallel_residual = 0.0;
};

template <class S>
struct BaseAnsatzData {
  Tensor<S> g0, i0, jhat;  // base metric and complex structures
  Tensor<S> A, B;          // connection potentials
  Tensor<S> phi_re, phi_im;  // Phi0 (no fiber phase)
};

namespace detail {

template <class S>
Tensor<S> wedge1(const Tensor<S>& a, const Tensor<S>& b) {
  const int n = a.dim();
  Tensor<S> r = bilinear_tensor<S>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r(i, j) = a[i] * b[j] - a[j] * b[i];
  return r;
}

// Pad a base tensor (all slots in the first 4 coordinates) to 6 dimensions.
template <class S>
Tensor<S> pad6(const Tensor<S>& t) {
  Tensor<S> r(6, t.slots());
  std::vector<int> idx(t.rank());
  for (std::size_t f = 0; f < t.size(); ++f) {
    t.unflat(f, idx);
    r[r.flat(idx)] = t[f];
  }
  return r;
}

}  // namespace detail

// Base tensors at x = (phi1, psi1, phi2, psi2); extra_phase is added to gamma.
template <class S>
BaseAnsatzData<S> base_ansatz_data(const std::array<S, 4>& x, double r, const TautologicalForm& t,
                                   const GaugeShift& gs, const S& extra_phase = S(0.0)) {
  using std::cos;
  using std::sin;
  const S s1 = sin(x[0]), s2 = sin(x[2]), c1 = cos(x[0]), c2 = cos(x[2]);
  BaseAnsatzData<S> d;
  d.g0 = bilinear_tensor<S>(4);
  d.g0(0, 0) = S(r * r);
  d.g0(1, 1) = s1 * s1 * (r * r);
  d.g0(2, 2) = S(r * r);
  d.g0(3, 3) = s2 * s2 * (r * r);
  d.i0 = endomorphism_tensor<S>(4);
  d.jhat = endomorphism_tensor<S>(4);
  auto factor = [](Tensor<S>& m, int off, const S& s, double sign) {
    m(off + 1, off) = (1.0 / s) * sign;
    m(off, off + 1) = (S(0.0) - s) * sign;
  };
  factor(d.i0, 0, s1, 1.0);
  factor(d.i0, 2, s2, 1.0);
  factor(d.jhat, 0, s1, 1.0);
  factor(d.jhat, 2, s2, -1.0);

  const auto df = gs.df(x), dh = gs.dh(x);
  d.A = covector_tensor<S>(4);
  d.B = covector_tensor<S>(4);
  const double b = 2.0 * r * r;
  for (int i = 0; i < 4; ++i) {
    d.A[i] = df[i];
    d.B[i] = dh[i];
  }
  d.A[1] += c1;
  d.A[3] += c2;
  d.B[1] += c1 * (-b);
  d.B[3] += c2 * b;

  Tensor<S> e1 = covector_tensor<S>(4), e2 = e1, e3 = e1, e4 = e1;
  e1[0] = S(r);
  e2[1] = s1 * r;
  e3[2] = S(r);
  e4[3] = s2 * r;
  // (e1 - i e2) ^ (e3 - i e4) = P - i Q
  const Tensor<S> P = detail::wedge1(e1, e3) - detail::wedge1(e2, e4);
  const Tensor<S> Q = detail::wedge1(e1, e4) + detail::wedge1(e2, e3);
  const S gamma = x[1] * static_cast<double>(t.m1) + x[3] * static_cast<double>(t.m2) + gs.f(x) + extra_phase;
  const S cg = cos(gamma), sg = sin(gamma);
  auto scaled = [](const Tensor<S>& m, const S& c) {
    return map_components(m, [&](const S& v) { return v * c; });
  };
  d.phi_re = (scaled(P, cg) + scaled(Q, sg)) * t.lambda;
  d.phi_im = (scaled(P, sg) - scaled(Q, cg)) * t.lambda;
  return d;
}

template <class S>
struct AnsatzTensors {
  Tensor<S> g, omega;
  Tensor<S> phi_re, phi_im;  // Phi = e^{i t1} Phi0, padded
  Tensor<S> theta, mu;
};

template <class S>
AnsatzTensors<S> ansatz_tensors(const std::array<S, 6>& x, double r, const TautologicalForm& t,
                                const GaugeShift& gs) {
  const std::array<S, 4> xb{x[0], x[1], x[2], x[3]};
  const BaseAnsatzData<S> b = base_ansatz_data(xb, r, t, gs, x[4]);
  AnsatzTensors<S> a;
  a.theta = covector_tensor<S>(6);
  a.mu = covector_tensor<S>(6);
  for (int i = 0; i < 4; ++i) {
    a.theta[i] = b.A[i];
    a.mu[i] = b.B[i];
  }
  a.theta[4] = S(1.0);
  a.mu[5] = S(1.0);
  a.phi_re = detail::pad6(b.phi_re);
  a.phi_im = detail::pad6(b.phi_im);
  const double k = 1.0 / (2.0 * std::sqrt(3.0));
  a.g = outer(a.mu, a.mu) + outer(a.theta, a.theta) * (1.0 / 12.0) + detail::pad6(b.g0) * (4.0 / 3.0) -
        detail::pad6(precompose(b.phi_re, b.jhat)) * k;
  a.omega = detail::wedge1(a.mu, a.theta) * k + a.phi_im * 0.5;
  return a;
}

struct AnsatzConfig {
  double lambda = 0.0;                      // 0: measured on S3 x S3
  std::optional<std::array<int, 2>> winding;  // unset: gauge search
  GaugeShift shift;
  double fiber_half_width = 4.0;
};

// lambda such that |Re Phi0|_{g0} matches |Re Psi|_{g0} on S3 x S3, Psi = (4/sqrt3) g0((K - i I0 K)., .)
double tautological_lambda_oracle();

// max over the base points of |nabla^g0 Phi0 - i A (x) Phi0|
double twisted_parallel_residual(const TautologicalForm& t, const GaugeShift& gs,
                                 const std::vector<Point>& base_points);

// Gauge search over windings m1, m2 in [-2, 2]; throws if no winding makes Phi0 parallel.
TautologicalForm build_tautological(double lambda, const GaugeShift& gs = {});

// Fields: metric, J, vector fields "xi" (d/dt2, dual to mu) and "xi1" (d/dt1).
// Throws if J^2 != -Id at the chart center, reporting the spectrum of J^2.
MChartPtr build_ansatz(const AnsatzConfig& config = {});

// The tautological form used by build_ansatz for this config.
TautologicalForm ansatz_tautological(const AnsatzConfig& config);

}  // namespace nkg
