#pragma once

// Octonions in the Cayley basis 1, e1..e7 with e_i e_j = -delta_ij + phi_ijk e_k,
//   phi = e123 + e145 + e167 + e246 - e257 - e347 - e356,
// and the induced cross product on Im O = R^7.

#include <array>

namespace nkg {

namespace detail {

struct G2Triple {
  int i, j, k;
  double sign;
};

inline constexpr std::array<G2Triple, 7> kG2Triples{{{1, 2, 3, 1.0},
                                                     {1, 4, 5, 1.0},
                                                     {1, 6, 7, 1.0},
                                                     {2, 4, 6, 1.0},
                                                     {2, 5, 7, -1.0},
                                                     {3, 4, 7, -1.0},
                                                     {3, 5, 6, -1.0}}};

// phi[i][j][k] for 0-based indices, fully antisymmetric.
inline const std::array<std::array<std::array<double, 7>, 7>, 7>& g2_form() {
  static const auto phi = [] {
    std::array<std::array<std::array<double, 7>, 7>, 7> p{};
    for (const auto& t : kG2Triples) {
      const int a = t.i - 1, b = t.j - 1, c = t.k - 1;
      p[a][b][c] = p[b][c][a] = p[c][a][b] = t.sign;
      p[b][a][c] = p[a][c][b] = p[c][b][a] = -t.sign;
    }
    return p;
  }();
  return phi;
}

}  // namespace detail

using Vec7 = std::array<double, 7>;

// (x cross y)_k = phi_ijk x_i y_j, templated over the scalar type.
template <class S>
std::array<S, 7> cross7(const std::array<S, 7>& x, const std::array<S, 7>& y) {
  const auto& phi = detail::g2_form();
  std::array<S, 7> r;
  for (int k = 0; k < 7; ++k) r[k] = S(0.0);
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 7; ++j) {
      if (i == j) continue;
      for (int k = 0; k < 7; ++k)
        if (phi[i][j][k] != 0.0) r[k] = r[k] + phi[i][j][k] * (x[i] * y[j]);
    }
  return r;
}

struct Octonion {
  double re = 0.0;
  Vec7 im{};

  friend Octonion operator*(const Octonion& a, const Octonion& b) {
    Octonion r;
    double dot = 0.0;
    for (int i = 0; i < 7; ++i) dot += a.im[i] * b.im[i];
    r.re = a.re * b.re - dot;
    const Vec7 c = cross7(a.im, b.im);
    for (int i = 0; i < 7; ++i) r.im[i] = a.re * b.im[i] + b.re * a.im[i] + c[i];
    return r;
  }
  double norm2() const {
    double s = re * re;
    for (double v : im) s += v * v;
    return s;
  }
};

}  // namespace nkg
