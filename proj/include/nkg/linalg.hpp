#pragma once

// Small dense linear algebra over doubles and jets.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "nkg/errors.hpp"
#include "nkg/tensor.hpp"

namespace nkg {

// Gauss-Jordan inverse with partial pivoting on the leading values.
// The result has the opposite variance in both slots.
template <class T>
Tensor<T> inverse(const Tensor<T>& m) {
  const int n = m.dim();
  std::vector<T> a(m.data());
  std::vector<T> inv(static_cast<std::size_t>(n) * n, T(0.0));
  for (int i = 0; i < n; ++i) inv[i * n + i] = T(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(a[col * n + col]));
    for (int r = col + 1; r < n; ++r) {
      const double v = std::abs(value_of(a[r * n + col]));
      if (v > best) {
        best = v;
        piv = r;
      }
    }
    if (best < 1e-300) throw DegenerateError("singular matrix");
    if (piv != col)
      for (int k = 0; k < n; ++k) {
        std::swap(a[piv * n + k], a[col * n + k]);
        std::swap(inv[piv * n + k], inv[col * n + k]);
      }
    const T p = T(1.0) / a[col * n + col];
    for (int k = 0; k < n; ++k) {
      a[col * n + k] = a[col * n + k] * p;
      inv[col * n + k] = inv[col * n + k] * p;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const T f = a[r * n + col];
      if (value_of(f) == 0.0 && !is_jet<T>::value) continue;
      for (int k = 0; k < n; ++k) {
        a[r * n + k] -= f * a[col * n + k];
        inv[r * n + k] -= f * inv[col * n + k];
      }
    }
  }
  std::vector<Slot> s(2);
  s[0] = m.slot(0) == Slot::Down ? Slot::Up : Slot::Down;
  s[1] = m.slot(1) == Slot::Down ? Slot::Up : Slot::Down;
  Tensor<T> r(n, s);
  r.data() = std::move(inv);
  return r;
}

template <class T>
T determinant(const Tensor<T>& m) {
  const int n = m.dim();
  std::vector<T> a(m.data());
  T det(1.0);
  for (int col = 0; col < n; ++col) {
    int piv = col;
    double best = std::abs(value_of(a[col * n + col]));
    for (int r = col + 1; r < n; ++r)
      if (std::abs(value_of(a[r * n + col])) > best) {
        best = std::abs(value_of(a[r * n + col]));
        piv = r;
      }
    if (best == 0.0) return T(0.0);
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(a[piv * n + k], a[col * n + k]);
      det = -det;
    }
    det = det * a[col * n + col];
    const T p = T(1.0) / a[col * n + col];
    for (int r = col + 1; r < n; ++r) {
      const T f = a[r * n + col] * p;
      for (int k = col; k < n; ++k) a[r * n + k] -= f * a[col * n + k];
    }
  }
  return det;
}

inline Eigen::MatrixXd to_eigen(const Tensor<double>& m) {
  const int n = m.dim();
  Eigen::MatrixXd e(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e(i, j) = m(i, j);
  return e;
}

inline Tensor<double> from_eigen(const Eigen::MatrixXd& e, std::vector<Slot> slots) {
  Tensor<double> t(static_cast<int>(e.rows()), std::move(slots));
  for (int i = 0; i < e.rows(); ++i)
    for (int j = 0; j < e.cols(); ++j) t(i, j) = e(i, j);
  return t;
}

// Positive definiteness via Cholesky factorization.
inline bool is_positive_definite(const Tensor<double>& g) {
  Eigen::MatrixXd e = to_eigen(g);
  Eigen::LLT<Eigen::MatrixXd> llt(0.5 * (e + e.transpose()));
  return llt.info() == Eigen::Success;
}

// Eigenvalues of g^{-1} b for symmetric b and positive definite g, ascending.
inline std::vector<double> relative_spectrum(const Tensor<double>& b, const Tensor<double>& g) {
  Eigen::MatrixXd eb = to_eigen(b), eg = to_eigen(g);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (eb + eb.transpose()),
                                                               0.5 * (eg + eg.transpose()));
  std::vector<double> r(es.eigenvalues().data(), es.eigenvalues().data() + eb.rows());
  return r;
}

// Eigenvalues of a general real endomorphism (complex in general), as (re, im) pairs.
inline std::vector<std::pair<double, double>> endomorphism_spectrum(const Tensor<double>& a) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(to_eigen(a), false);
  std::vector<std::pair<double, double>> r;
  for (int i = 0; i < es.eigenvalues().size(); ++i)
    r.emplace_back(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
  return r;
}

}  // namespace nkg
