#pragma once

// Quaternions over a generic scalar (double or jet), the exponential map of
// S^3 = Sp(1), and the left-trivialized differential of exp.

#include <array>
#include <cmath>

#include "nkg/jet.hpp"

namespace nkg {

template <class S>
struct Quaternion {
  S w, x, y, z;

  static Quaternion identity() { return {S(1.0), S(0.0), S(0.0), S(0.0)}; }
  static Quaternion pure(const std::array<S, 3>& v) { return {S(0.0), v[0], v[1], v[2]}; }

  std::array<S, 3> vec() const { return {x, y, z}; }
  Quaternion conj() const { return {w, S(0.0) - x, S(0.0) - y, S(0.0) - z}; }
  S norm2() const { return w * w + x * x + y * y + z * z; }

  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  }
  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Quaternion operator*(const Quaternion& a, double s) { return {a.w * s, a.x * s, a.y * s, a.z * s}; }
};

template <class S>
Quaternion<S> lift_quaternion(const Quaternion<double>& q) {
  return {S(q.w), S(q.x), S(q.y), S(q.z)};
}

// Power series sum_m c_m t^m evaluated by Horner's rule.
template <class S, std::size_t N>
S power_series(const std::array<double, N>& c, const S& t) {
  S r(c[N - 1]);
  for (std::size_t k = N - 1; k-- > 0;) r = r * t + c[k];
  return r;
}

namespace detail {

constexpr int kExpTerms = 36;

// cos(sqrt(t)) and sin(sqrt(t))/sqrt(t) as series in t.
inline const std::array<double, kExpTerms>& cos_sqrt_coeffs() {
  static const auto c = [] {
    std::array<double, kExpTerms> r{};
    double f = 1.0;
    for (int m = 0; m < kExpTerms; ++m) {
      if (m > 0) f *= (2.0 * m - 1) * (2.0 * m);
      r[m] = (m % 2 == 0 ? 1.0 : -1.0) / f;
    }
    return r;
  }();
  return c;
}
inline const std::array<double, kExpTerms>& sinc_sqrt_coeffs() {
  static const auto c = [] {
    std::array<double, kExpTerms> r{};
    double f = 1.0;
    for (int m = 0; m < kExpTerms; ++m) {
      if (m > 0) f *= (2.0 * m) * (2.0 * m + 1);
      r[m] = (m % 2 == 0 ? 1.0 : -1.0) / f;
    }
    return r;
  }();
  return c;
}

// a(t) = -2 sum (-4t)^m / (2m+2)!,  b(t) = 4 sum (-4t)^m / (2m+3)!
inline const std::array<double, kExpTerms>& dexp_a_coeffs() {
  static const auto c = [] {
    std::array<double, kExpTerms> r{};
    for (int m = 0; m < kExpTerms; ++m) {
      double v = -2.0;
      for (int k = 1; k <= 2 * m + 2; ++k) v /= k;
      for (int k = 0; k < m; ++k) v *= -4.0;
      r[m] = v;
    }
    return r;
  }();
  return c;
}
inline const std::array<double, kExpTerms>& dexp_b_coeffs() {
  static const auto c = [] {
    std::array<double, kExpTerms> r{};
    for (int m = 0; m < kExpTerms; ++m) {
      double v = 4.0;
      for (int k = 1; k <= 2 * m + 3; ++k) v /= k;
      for (int k = 0; k < m; ++k) v *= -4.0;
      r[m] = v;
    }
    return r;
  }();
  return c;
}

}  // namespace detail

// exp(v) = cos|v| + sin|v| v/|v| for an imaginary quaternion v.
template <class S>
Quaternion<S> quaternion_exp(const std::array<S, 3>& v) {
  const S t = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const S c = power_series(detail::cos_sqrt_coeffs(), t);
  const S s = power_series(detail::sinc_sqrt_coeffs(), t);
  return {c, s * v[0], s * v[1], s * v[2]};
}

// Inverse of exp on |v| < pi, for unit quaternions (double only).
inline std::array<double, 3> quaternion_log(const Quaternion<double>& q) {
  const double n = std::sqrt(q.x * q.x + q.y * q.y + q.z * q.z);
  const double ang = std::atan2(n, q.w);
  const double f = n > 1e-300 ? ang / n : 1.0;
  return {f * q.x, f * q.y, f * q.z};
}

using Mat3 = std::array<std::array<double, 3>, 3>;

template <class S>
using Mat3T = std::array<std::array<S, 3>, 3>;

template <class S>
Mat3T<S> dexp_matrix(const std::array<S, 3>& v, const S& t, const S& a, const S& b) {
  // A = [v]_x, A^2 = v v^T - t I
  Mat3T<S> A{};
  A[0] = {S(0.0), S(0.0) - v[2], v[1]};
  A[1] = {v[2], S(0.0), S(0.0) - v[0]};
  A[2] = {S(0.0) - v[1], v[0], S(0.0)};
  Mat3T<S> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      S a2 = v[i] * v[j];
      if (i == j) a2 = a2 - t;
      m[i][j] = a * A[i][j] + b * a2;
      if (i == j) m[i][j] = m[i][j] + 1.0;
    }
  return m;
}

// Left-trivialized differential of exp: exp(v)^{-1} d exp_v (h) = L(v) h, with
// L(v) = I + a(t) A + b(t) A^2, A = [v]_x, t = |v|^2 (vectors in Im H = R^3).
template <class S>
Mat3T<S> dexp_left(const std::array<S, 3>& v) {
  const S t = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const S a = power_series(detail::dexp_a_coeffs(), t);
  const S b = power_series(detail::dexp_b_coeffs(), t);
  return dexp_matrix(v, t, a, b);
}

// Inverse of dexp_left in closed form.
template <class S>
Mat3T<S> dexp_left_inverse(const std::array<S, 3>& v) {
  const S t = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  const S a = power_series(detail::dexp_a_coeffs(), t);
  const S b = power_series(detail::dexp_b_coeffs(), t);
  const S one_tb = 1.0 - t * b;
  const S det = one_tb * one_tb + t * a * a;
  const S ai = (S(0.0) - a) / det;
  const S bi = (a * a - b + t * b * b) / det;
  return dexp_matrix(v, t, ai, bi);
}

}  // namespace nkg
