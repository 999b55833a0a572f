#pragma once

// Dense tensors of arbitrary valence in a chart basis.
//
// Components are stored row-major; each slot is tagged covariant (Down) or
// contravariant (Up).  The element type is either double (pointwise values) or a
// Jet (values together with their partial derivatives).

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nkg/errors.hpp"
#include "nkg/jet.hpp"

namespace nkg {

enum class Slot : unsigned char { Down, Up };

template <class T>
class Tensor {
 public:
  Tensor() = default;
  Tensor(int dim, std::vector<Slot> slots) : dim_(dim), slots_(std::move(slots)) {
    std::size_t n = 1;
    for (std::size_t k = 0; k < slots_.size(); ++k) n *= static_cast<std::size_t>(dim_);
    data_.assign(n, T(0.0));
  }

  static Tensor scalar(const T& v) {
    Tensor t(0, {});
    t.data_.assign(1, v);
    return t;
  }

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(slots_.size()); }
  const std::vector<Slot>& slots() const { return slots_; }
  Slot slot(int k) const { return slots_[k]; }
  std::size_t size() const { return data_.size(); }

  std::vector<T>& data() { return data_; }
  const std::vector<T>& data() const { return data_; }

  T& operator[](std::size_t f) { return data_[f]; }
  const T& operator[](std::size_t f) const { return data_[f]; }

  template <class... I>
  T& operator()(I... idx) {
    return data_[flat_of(idx...)];
  }
  template <class... I>
  const T& operator()(I... idx) const {
    return data_[flat_of(idx...)];
  }

  std::size_t flat(std::span<const int> idx) const {
    std::size_t f = 0;
    for (int i : idx) f = f * dim_ + i;
    return f;
  }

  void unflat(std::size_t f, std::span<int> idx) const {
    for (int k = rank() - 1; k >= 0; --k) {
      idx[k] = static_cast<int>(f % dim_);
      f /= dim_;
    }
  }

  std::size_t stride(int slot) const {
    std::size_t s = 1;
    for (int k = rank() - 1; k > slot; --k) s *= dim_;
    return s;
  }

  Tensor& operator+=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  Tensor& operator-=(const Tensor& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  Tensor& operator*=(double s) {
    for (auto& x : data_) x *= s;
    return *this;
  }
  friend Tensor operator+(Tensor a, const Tensor& b) { return a += b; }
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend Tensor operator*(Tensor a, double s) { return a *= s; }
  friend Tensor operator*(double s, Tensor a) { return a *= s; }
  friend Tensor operator-(Tensor a) { return a *= -1.0; }

  // Multiply every component by a scalar of element type.
  friend Tensor scale(Tensor a, const T& s) {
    for (auto& x : a.data_) x = x * s;
    return a;
  }

  void check_same_shape(const Tensor& o) const {
    if (o.dim_ != dim_ || o.slots_ != slots_)
      throw ShapeError("tensor shape mismatch");
  }

 private:
  template <class... I>
  std::size_t flat_of(I... idx) const {
    assert(sizeof...(I) == slots_.size());
    std::size_t f = 0;
    ((f = f * dim_ + static_cast<std::size_t>(idx)), ...);
    return f;
  }

  int dim_ = 0;
  std::vector<Slot> slots_;
  std::vector<T> data_;
};

// Common shapes.
inline std::vector<Slot> slots_down(int n) { return std::vector<Slot>(n, Slot::Down); }

template <class T>
Tensor<T> vector_tensor(int dim) {
  return Tensor<T>(dim, {Slot::Up});
}
template <class T>
Tensor<T> covector_tensor(int dim) {
  return Tensor<T>(dim, {Slot::Down});
}
template <class T>
Tensor<T> endomorphism_tensor(int dim) {
  return Tensor<T>(dim, {Slot::Up, Slot::Down});
}
template <class T>
Tensor<T> bilinear_tensor(int dim) {
  return Tensor<T>(dim, {Slot::Down, Slot::Down});
}

template <class T>
Tensor<T> identity_endomorphism(int dim) {
  Tensor<T> id = endomorphism_tensor<T>(dim);
  for (int i = 0; i < dim; ++i) id(i, i) = T(1.0);
  return id;
}

template <class T>
Tensor<T> make_vector(std::span<const double> v) {
  Tensor<T> t = vector_tensor<T>(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) t[i] = T(v[i]);
  return t;
}

// a (x) b with the slots of a first.
template <class T>
Tensor<T> outer(const Tensor<T>& a, const Tensor<T>& b) {
  if (a.rank() > 0 && b.rank() > 0 && a.dim() != b.dim()) throw ShapeError("outer: dimension mismatch");
  std::vector<Slot> s = a.slots();
  s.insert(s.end(), b.slots().begin(), b.slots().end());
  const int dim = a.rank() > 0 ? a.dim() : b.dim();
  Tensor<T> r(dim, std::move(s));
  const std::size_t nb = b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < nb; ++j) r[i * nb + j] = a[i] * b[j];
  return r;
}

// Sum over slot i = slot j; both slots are removed.
template <class T>
Tensor<T> contract(const Tensor<T>& t, int i, int j) {
  if (i == j || i >= t.rank() || j >= t.rank()) throw ShapeError("contract: bad slots");
  if (i > j) std::swap(i, j);
  std::vector<Slot> s;
  for (int k = 0; k < t.rank(); ++k)
    if (k != i && k != j) s.push_back(t.slot(k));
  Tensor<T> r(t.dim(), s);
  const int dim = t.dim();
  std::vector<int> out(r.rank()), in(t.rank());
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.unflat(f, out);
    for (int k = 0, m = 0; k < t.rank(); ++k)
      if (k != i && k != j) in[k] = out[m++];
    T acc(0.0);
    for (int a = 0; a < dim; ++a) {
      in[i] = a;
      in[j] = a;
      acc += t[t.flat(in)];
    }
    r[f] = acc;
  }
  return r;
}

// Result slot k carries the old slot perm[k].
template <class T>
Tensor<T> permute(const Tensor<T>& t, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != t.rank()) throw ShapeError("permute: bad permutation");
  std::vector<Slot> s(t.rank());
  for (int k = 0; k < t.rank(); ++k) s[k] = t.slot(perm[k]);
  Tensor<T> r(t.dim(), s);
  std::vector<int> out(t.rank()), in(t.rank());
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.unflat(f, out);
    for (int k = 0; k < t.rank(); ++k) in[perm[k]] = out[k];
    r[f] = t[t.flat(in)];
  }
  return r;
}

template <class T>
Tensor<T> permute(const Tensor<T>& t, std::initializer_list<int> perm) {
  std::vector<int> p(perm);
  return permute(t, std::span<const int>(p));
}

// Apply a (Down,Down) or (Up,Up) matrix to one slot, flipping its variance.
// m(slot_index, new_index) is summed against the slot.
template <class T>
Tensor<T> transform_slot(const Tensor<T>& t, int slot, const Tensor<T>& m, Slot new_variance) {
  std::vector<Slot> s = t.slots();
  s[slot] = new_variance;
  Tensor<T> r(t.dim(), s);
  const int dim = t.dim();
  const std::size_t st = t.stride(slot);
  std::vector<int> idx(t.rank());
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.unflat(f, idx);
    const int b = idx[slot];
    const std::size_t base = f - static_cast<std::size_t>(b) * st;
    T acc(0.0);
    for (int a = 0; a < dim; ++a) acc += m(b, a) * t[base + a * st];
    r[f] = acc;
  }
  return r;
}

template <class T>
Tensor<T> lower(const Tensor<T>& t, int slot, const Tensor<T>& g) {
  if (t.slot(slot) != Slot::Up) throw ShapeError("lower: slot is not contravariant");
  return transform_slot(t, slot, g, Slot::Down);
}

template <class T>
Tensor<T> raise(const Tensor<T>& t, int slot, const Tensor<T>& ginv) {
  if (t.slot(slot) != Slot::Down) throw ShapeError("raise: slot is not covariant");
  return transform_slot(t, slot, ginv, Slot::Up);
}

template <class T>
Tensor<T> lower_all(Tensor<T> t, const Tensor<T>& g) {
  for (int k = 0; k < t.rank(); ++k)
    if (t.slot(k) == Slot::Up) t = lower(t, k, g);
  return t;
}

template <class T>
Tensor<T> raise_all(Tensor<T> t, const Tensor<T>& ginv) {
  for (int k = 0; k < t.rank(); ++k)
    if (t.slot(k) == Slot::Down) t = raise(t, k, ginv);
  return t;
}

// (A B)^a_b = A^a_c B^c_b
template <class T>
Tensor<T> compose(const Tensor<T>& a, const Tensor<T>& b) {
  const int n = a.dim();
  Tensor<T> r = endomorphism_tensor<T>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T acc(0.0);
      for (int k = 0; k < n; ++k) acc += a(i, k) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

template <class T>
Tensor<T> commutator(const Tensor<T>& a, const Tensor<T>& b) {
  return compose(a, b) - compose(b, a);
}

// (A X)^a = A^a_b X^b
template <class T>
Tensor<T> apply(const Tensor<T>& a, const Tensor<T>& x) {
  const int n = a.dim();
  Tensor<T> r = vector_tensor<T>(n);
  for (int i = 0; i < n; ++i) {
    T acc(0.0);
    for (int k = 0; k < n; ++k) acc += a(i, k) * x[k];
    r[i] = acc;
  }
  return r;
}

// Evaluate a tensor of rank r on vectors in its first r covariant slots:
// returns the remaining tensor after contracting vectors[k] into slot k.
template <class T>
Tensor<T> insert_vectors(Tensor<T> t, std::span<const Tensor<T>> vectors) {
  for (const auto& v : vectors) {
    if (t.slot(0) != Slot::Down) throw ShapeError("insert_vectors: slot is not covariant");
    t = contract(outer(v, t), 0, 1);
  }
  return t;
}

// Bilinear pairing b(X, Y) for a (Down,Down) tensor.
template <class T>
T pair(const Tensor<T>& b, const Tensor<T>& x, const Tensor<T>& y) {
  const int n = b.dim();
  T acc(0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += b(i, j) * x[i] * y[j];
  return acc;
}

template <class T>
T trace(const Tensor<T>& endo) {
  T acc(0.0);
  for (int i = 0; i < endo.dim(); ++i) acc += endo(i, i);
  return acc;
}

template <class T, class F>
auto map_components(const Tensor<T>& t, F&& f) {
  using R = decltype(f(t[0]));
  Tensor<R> r(t.dim(), t.slots());
  for (std::size_t i = 0; i < t.size(); ++i) r[i] = f(t[i]);
  return r;
}

template <class T>
Tensor<double> values(const Tensor<T>& t) {
  return map_components(t, [](const T& x) { return value_of(x); });
}

template <int D, int K>
Tensor<Jet<D, K>> lift(const Tensor<double>& t) {
  return map_components(t, [](double x) { return Jet<D, K>(x); });
}

// Partial derivatives of a jet-valued tensor; the new covariant slot comes first.
template <int D, int K>
Tensor<Jet<D, K>> partial(const Tensor<Jet<D, K>>& t) {
  std::vector<Slot> s{Slot::Down};
  s.insert(s.end(), t.slots().begin(), t.slots().end());
  Tensor<Jet<D, K>> r(D, s);
  const std::size_t n = t.size();
  for (int c = 0; c < D; ++c)
    for (std::size_t f = 0; f < n; ++f) r[c * n + f] = t[f].d(c);
  return r;
}

// Full contraction <a, b> using g to match variances.
inline double inner(const Tensor<double>& a, const Tensor<double>& b, const Tensor<double>& g,
                    const Tensor<double>& ginv) {
  a.check_same_shape(b);
  Tensor<double> bb = b;
  for (int k = 0; k < bb.rank(); ++k)
    bb = bb.slot(k) == Slot::Down ? raise(bb, k, ginv) : lower(bb, k, g);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * bb[i];
  return acc;
}

inline double norm(const Tensor<double>& a, const Tensor<double>& g, const Tensor<double>& ginv) {
  return std::sqrt(std::max(0.0, inner(a, a, g, ginv)));
}

inline double max_abs(const Tensor<double>& a) {
  double m = 0.0;
  for (double x : a.data()) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace nkg
