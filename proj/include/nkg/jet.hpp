#pragma once

// Truncated multivariate Taylor polynomials ("jets").
//
// A Jet<Dim, Order> stores the Taylor coefficients f_alpha = (d^alpha f)(x0) / alpha!
// of a smooth function of Dim variables for every multi-index |alpha| <= Order.
// Arithmetic and elementary functions propagate the coefficients exactly (up to
// floating point rounding), so derivatives of arbitrary compositions come out
// without step-size error.  Differentiating a jet lowers its valid order by one;
// the top-degree coefficients of the result are set to zero.

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <ostream>
#include <span>
#include <vector>

namespace nkg {

namespace detail {

constexpr int binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return static_cast<int>(r);
}

template <int Dim, int Order>
struct MonomialTable {
  static constexpr int kSize = binomial(Dim + Order, Order);

  struct Product {
    std::uint16_t a, b, c;
  };
  struct DerivativeEntry {
    std::uint16_t src, dst;
    double factor;
  };

  std::vector<std::array<std::uint8_t, Dim>> exponents;
  std::vector<int> degree;
  std::vector<Product> products;
  std::array<std::vector<DerivativeEntry>, Dim> derivatives;
  std::vector<double> factorial_weight;  // alpha!

  int index_of(const std::array<std::uint8_t, Dim>& e) const {
    for (int i = 0; i < kSize; ++i)
      if (exponents[i] == e) return i;
    return -1;
  }

  MonomialTable() {
    // graded order: all monomials of degree 0, then 1, ...
    for (int d = 0; d <= Order; ++d) {
      std::array<std::uint8_t, Dim> e{};
      enumerate(e, 0, d, d);
    }
    for (int i = 0; i < kSize; ++i) {
      int s = 0;
      double w = 1.0;
      for (int v = 0; v < Dim; ++v) {
        s += exponents[i][v];
        for (int k = 2; k <= exponents[i][v]; ++k) w *= k;
      }
      degree.push_back(s);
      factorial_weight.push_back(w);
    }
    // products: index of monomial a*b for deg(a)+deg(b) <= Order
    for (int a = 0; a < kSize; ++a) {
      for (int b = 0; b < kSize; ++b) {
        if (degree[a] + degree[b] > Order) continue;
        std::array<std::uint8_t, Dim> e{};
        for (int v = 0; v < Dim; ++v) e[v] = exponents[a][v] + exponents[b][v];
        products.push_back({static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b),
                            static_cast<std::uint16_t>(index_of(e))});
      }
    }
    for (int v = 0; v < Dim; ++v) {
      for (int i = 0; i < kSize; ++i) {
        if (exponents[i][v] == 0) continue;
        auto e = exponents[i];
        e[v] -= 1;
        derivatives[v].push_back({static_cast<std::uint16_t>(i),
                                  static_cast<std::uint16_t>(index_of(e)),
                                  static_cast<double>(exponents[i][v])});
      }
    }
  }

 private:
  void enumerate(std::array<std::uint8_t, Dim>& e, int var, int remaining, int total) {
    if (var == Dim - 1) {
      e[var] = static_cast<std::uint8_t>(remaining);
      exponents.push_back(e);
      return;
    }
    for (int k = remaining; k >= 0; --k) {
      e[var] = static_cast<std::uint8_t>(k);
      enumerate(e, var + 1, remaining - k, total);
    }
    e[var] = 0;
  }
};

template <int Dim, int Order>
const MonomialTable<Dim, Order>& monomial_table() {
  static const MonomialTable<Dim, Order> table;
  return table;
}

}  // namespace detail

template <int Dim, int Order>
class Jet {
 public:
  static constexpr int kDim = Dim;
  static constexpr int kOrder = Order;
  static constexpr int kSize = detail::binomial(Dim + Order, Order);

  Jet() { c_.fill(0.0); }
  Jet(double v) {  // NOLINT: constants promote implicitly
    c_.fill(0.0);
    c_[0] = v;
  }

  static Jet variable(int var, double at) {
    Jet j(at);
    j.c_[1 + var] = 1.0;
    return j;
  }

  double value() const { return c_[0]; }
  double coefficient(int flat) const { return c_[flat]; }
  double& coefficient(int flat) { return c_[flat]; }
  std::span<const double> coefficients() const { return c_; }

  // First partial derivative d/dx_var at the expansion point.
  double gradient(int var) const { return c_[1 + var]; }

  // Partial derivative for the multi-index alpha.
  double derivative(const std::array<std::uint8_t, Dim>& alpha) const {
    const auto& t = detail::monomial_table<Dim, Order>();
    int i = t.index_of(alpha);
    if (i < 0) return 0.0;
    return c_[i] * t.factorial_weight[i];
  }

  // Jet of d/dx_var; valid to order Order-1.
  Jet d(int var) const {
    const auto& t = detail::monomial_table<Dim, Order>();
    Jet r;
    for (const auto& e : t.derivatives[var]) r.c_[e.dst] += e.factor * c_[e.src];
    return r;
  }

  Jet operator-() const {
    Jet r;
    for (int i = 0; i < kSize; ++i) r.c_[i] = -c_[i];
    return r;
  }
  Jet& operator+=(const Jet& o) {
    for (int i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    for (int i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Jet& operator*=(double s) {
    for (auto& x : c_) x *= s;
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    *this = *this * o;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    *this = *this / o;
    return *this;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, double b) {
    a.c_[0] += b;
    return a;
  }
  friend Jet operator+(double b, Jet a) {
    a.c_[0] += b;
    return a;
  }
  friend Jet operator-(Jet a, double b) {
    a.c_[0] -= b;
    return a;
  }
  friend Jet operator-(double b, const Jet& a) {
    Jet r = -a;
    r.c_[0] += b;
    return r;
  }
  friend Jet operator*(Jet a, double s) { return a *= s; }
  friend Jet operator*(double s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, double s) { return a *= (1.0 / s); }

  friend Jet operator*(const Jet& a, const Jet& b) {
    const auto& t = detail::monomial_table<Dim, Order>();
    Jet r;
    for (const auto& p : t.products) r.c_[p.c] += a.c_[p.a] * b.c_[p.b];
    return r;
  }

  friend Jet operator/(const Jet& a, const Jet& b) { return a * reciprocal(b); }
  friend Jet operator/(double a, const Jet& b) { return reciprocal(b) * a; }

  // f(u) where taylor[n] = f^(n)(u0) / n!, n = 0..Order.
  friend Jet compose(const Jet& u, const std::array<double, Order + 1>& taylor) {
    Jet h = u;
    h.c_[0] = 0.0;
    Jet r(taylor[Order]);
    for (int n = Order - 1; n >= 0; --n) {
      r = r * h;
      r.c_[0] += taylor[n];
    }
    return r;
  }

  friend Jet reciprocal(const Jet& u) {
    std::array<double, Order + 1> t{};
    const double x = u.value();
    double p = 1.0 / x;
    for (int n = 0; n <= Order; ++n) {
      t[n] = (n % 2 == 0 ? 1.0 : -1.0) * p;
      p /= x;
    }
    return compose(u, t);
  }

  friend Jet sqrt(const Jet& u) {
    std::array<double, Order + 1> t{};
    const double x = u.value();
    // generalized binomial coefficients of (x0 + h)^(1/2)
    double coef = std::sqrt(x);
    for (int n = 0; n <= Order; ++n) {
      t[n] = coef;
      coef *= (0.5 - n) / ((n + 1) * x);
    }
    return compose(u, t);
  }

  friend Jet pow(const Jet& u, double e) {
    std::array<double, Order + 1> t{};
    const double x = u.value();
    double coef = std::pow(x, e);
    for (int n = 0; n <= Order; ++n) {
      t[n] = coef;
      coef *= (e - n) / ((n + 1) * x);
    }
    return compose(u, t);
  }

  friend Jet exp(const Jet& u) {
    std::array<double, Order + 1> t{};
    const double ex = std::exp(u.value());
    double f = 1.0;
    for (int n = 0; n <= Order; ++n) {
      t[n] = ex / f;
      f *= (n + 1);
    }
    return compose(u, t);
  }

  friend Jet log(const Jet& u) {
    std::array<double, Order + 1> t{};
    const double x = u.value();
    t[0] = std::log(x);
    double p = 1.0 / x;
    for (int n = 1; n <= Order; ++n) {
      t[n] = (n % 2 == 1 ? 1.0 : -1.0) * p / n;
      p /= x;
    }
    return compose(u, t);
  }

  friend Jet sin(const Jet& u) {
    std::array<double, Order + 1> t{};
    const double s = std::sin(u.value()), c = std::cos(u.value());
    const double cyc[4] = {s, c, -s, -c};
    double f = 1.0;
    for (int n = 0; n <= Order; ++n) {
      t[n] = cyc[n % 4] / f;
      f *= (n + 1);
    }
    return compose(u, t);
  }

  friend Jet cos(const Jet& u) {
    std::array<double, Order + 1> t{};
    const double s = std::sin(u.value()), c = std::cos(u.value());
    const double cyc[4] = {c, -s, -c, s};
    double f = 1.0;
    for (int n = 0; n <= Order; ++n) {
      t[n] = cyc[n % 4] / f;
      f *= (n + 1);
    }
    return compose(u, t);
  }

  friend std::ostream& operator<<(std::ostream& os, const Jet& j) {
    os << "Jet(" << j.value() << "; ";
    for (int i = 1; i < kSize && i <= Dim; ++i) os << j.c_[i] << (i < Dim ? "," : "");
    return os << ")";
  }

 private:
  std::array<double, kSize> c_;
};

// Scalar helpers that work for both double and jets.
inline double value_of(double x) { return x; }
template <int D, int K>
double value_of(const Jet<D, K>& j) {
  return j.value();
}

template <class T>
struct is_jet : std::false_type {};
template <int D, int K>
struct is_jet<Jet<D, K>> : std::true_type {};

template <class T>
T square(const T& x) {
  return x * x;
}

}  // namespace nkg
