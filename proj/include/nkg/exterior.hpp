#pragma once

// Pointwise exterior calculus.  A p-form is a Tensor with p covariant slots whose
// components are fully antisymmetric (dense storage).
//
// Conventions:
//   (a ^ b)(v_1..v_{p+q}) = sum over (p,q)-shuffles s of sgn(s) a(v_s..) b(v_s..)
//     (so e^1 ^ e^2 = e^1 (x) e^2 - e^2 (x) e^1)
//   |a|^2 = sum over increasing I of a_I a^I
//   (X _| a)_{j..} = X^i a_{i j..}
//   (*a)_J = sum over increasing I of a^I eps_{IJ},  eps = orientation * sqrt(det g) dx^1..dx^n
//   d*a = -g^{ij} nabla_i a_{j..},  Laplacian = d d* + d* d.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "nkg/connection.hpp"
#include "nkg/linalg.hpp"
#include "nkg/tensor.hpp"

namespace nkg {

namespace detail {

// All increasing index tuples of length p in {0..n-1}.
inline const std::vector<std::vector<int>>& increasing_sets(int n, int p) {
  static std::vector<std::vector<std::vector<std::vector<int>>>> cache(
      9, std::vector<std::vector<std::vector<int>>>(10));
  auto& slot = cache.at(n).at(p);
  if (slot.empty()) {
    std::vector<int> cur;
    auto rec = [&](auto&& self, int start) -> void {
      if (static_cast<int>(cur.size()) == p) {
        slot.push_back(cur);
        return;
      }
      for (int i = start; i < n; ++i) {
        cur.push_back(i);
        self(self, i + 1);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
  return slot;
}

// Sign of the permutation sorting idx, 0 if an index repeats.
inline int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

}  // namespace detail

template <class T>
int form_degree(const Tensor<T>& a) {
  for (int k = 0; k < a.rank(); ++k)
    if (a.slot(k) != Slot::Down) throw ShapeError("form slots must be covariant");
  return a.rank();
}

// Dense form from its components on increasing index sets (in increasing_sets order).
template <class T>
Tensor<T> form_from_increasing(int n, int p, const std::vector<T>& comps) {
  Tensor<T> r(n, slots_down(p));
  std::vector<int> idx(p), sorted;
  const auto& sets = detail::increasing_sets(n, p);
  for (std::size_t f = 0; f < r.size(); ++f) {
    r.unflat(f, idx);
    sorted = idx;
    const int s = detail::sort_sign(sorted);
    if (s == 0) continue;
    const auto it = std::lower_bound(sets.begin(), sets.end(), sorted);
    const T& v = comps[it - sets.begin()];
    r[f] = s > 0 ? v : T(0.0) - v;
  }
  return r;
}

template <class T>
std::vector<T> increasing_components(const Tensor<T>& a) {
  const int p = form_degree(a);
  std::vector<T> out;
  for (const auto& I : detail::increasing_sets(a.dim(), p)) out.push_back(a[a.flat(I)]);
  return out;
}

// Full antisymmetrization (1/p!) sum sgn(s) t_{s(i)}.
template <class T>
Tensor<T> antisymmetrize(const Tensor<T>& t) {
  const int p = form_degree(t);
  const int n = t.dim();
  std::vector<int> perm(p);
  for (int k = 0; k < p; ++k) perm[k] = k;
  std::vector<T> comps;
  double fact = 1.0;
  for (int k = 2; k <= p; ++k) fact *= k;
  for (const auto& I : detail::increasing_sets(n, p)) {
    T acc(0.0);
    std::vector<int> q = perm, idx(p);
    do {
      std::vector<int> tmp = q;
      const int s = detail::sort_sign(tmp);
      for (int k = 0; k < p; ++k) idx[k] = I[q[k]];
      const T& v = t[t.flat(idx)];
      if (s > 0) acc += v;
      else acc -= v;
    } while (std::next_permutation(q.begin(), q.end()));
    comps.push_back(acc * (1.0 / fact));
  }
  return form_from_increasing(n, p, comps);
}

template <class T>
Tensor<T> wedge(const Tensor<T>& a, const Tensor<T>& b) {
  const int p = form_degree(a), q = form_degree(b);
  const int n = p > 0 ? a.dim() : b.dim();
  if (p + q > n) throw ShapeError("wedge: degree exceeds dimension");
  if (p == 0) return scale(b, a[0]);
  if (q == 0) return scale(a, b[0]);
  std::vector<T> comps;
  const auto& sub = detail::increasing_sets(p + q, p);
  std::vector<int> ia(p), ib(q);
  for (const auto& I : detail::increasing_sets(n, p + q)) {
    T acc(0.0);
    for (const auto& S : sub) {
      // S picks positions for a; the rest go to b
      std::vector<int> order(S);
      int ka = 0, kb = 0;
      for (int k = 0; k < p + q; ++k) {
        if (ka < p && S[ka] == k) ia[ka++] = I[k];
        else {
          ib[kb++] = I[k];
          order.push_back(k);
        }
      }
      const int s = detail::sort_sign(order);
      const T term = a[a.flat(ia)] * b[b.flat(ib)];
      if (s > 0) acc += term;
      else acc -= term;
    }
    comps.push_back(acc);
  }
  return form_from_increasing(n, p + q, comps);
}

template <class T>
Tensor<T> interior(const Tensor<T>& x, const Tensor<T>& a) {
  if (form_degree(a) == 0) throw ShapeError("interior: 0-form");
  return contract(outer(x, a), 0, 1);
}

// <a, b> = sum over increasing I of a_I b^I
inline double form_inner(const Tensor<double>& a, const Tensor<double>& b, const Tensor<double>& g,
                         const Tensor<double>& ginv) {
  const int p = form_degree(a);
  double fact = 1.0;
  for (int k = 2; k <= p; ++k) fact *= k;
  return inner(a, b, g, ginv) / fact;
}

inline double form_norm2(const Tensor<double>& a, const Tensor<double>& g, const Tensor<double>& ginv) {
  return form_inner(a, a, g, ginv);
}

// Exterior derivative of a jet-valued form.
template <int D, int K>
Tensor<Jet<D, K>> exterior_derivative(const Tensor<Jet<D, K>>& a) {
  using JetT = Jet<D, K>;
  const int p = form_degree(a);
  if (p + 1 > D) return Tensor<JetT>(D, slots_down(p + 1));
  std::vector<JetT> comps;
  std::vector<int> rest(p);
  for (const auto& I : detail::increasing_sets(D, p + 1)) {
    JetT acc(0.0);
    for (int k = 0; k <= p; ++k) {
      for (int m = 0, r = 0; m <= p; ++m)
        if (m != k) rest[r++] = I[m];
      const JetT v = a[a.flat(rest)].d(I[k]);
      if (k % 2 == 0) acc += v;
      else acc -= v;
    }
    comps.push_back(acc);
  }
  return form_from_increasing(D, p + 1, comps);
}

// Volume density eps_{1..n} = orientation * sqrt(det g).
template <class T>
T volume_density(const Tensor<T>& g, int orientation) {
  using std::sqrt;
  const T det = determinant(g);
  if (!(value_of(det) > 0.0)) throw DegenerateError("metric determinant is not positive");
  T s = sqrt(det);
  return orientation >= 0 ? s : T(0.0) - s;
}

template <class T>
Tensor<T> volume_form(const Tensor<T>& g, int orientation) {
  const int n = g.dim();
  std::vector<T> comps{volume_density(g, orientation)};
  return form_from_increasing(n, n, comps);
}

template <class T>
Tensor<T> hodge_star(const Tensor<T>& a, const Tensor<T>& g, const Tensor<T>& ginv, int orientation) {
  if (orientation == 0) throw PreconditionError("Hodge star needs an oriented chart");
  const int p = form_degree(a);
  const int n = g.dim();
  const T eps = volume_density(g, orientation);
  const Tensor<T> up = raise_all(a, ginv);
  const auto& sets_p = detail::increasing_sets(n, p);
  std::vector<T> comps;
  for (const auto& J : detail::increasing_sets(n, n - p)) {
    T acc(0.0);
    for (const auto& I : sets_p) {
      std::vector<int> all(I);
      all.insert(all.end(), J.begin(), J.end());
      std::vector<int> tmp(all);
      const int s = detail::sort_sign(tmp);
      if (s == 0) continue;
      const T& v = up[up.flat(I)];
      if (s > 0) acc += v;
      else acc -= v;
    }
    comps.push_back(acc * eps);
  }
  return form_from_increasing(n, n - p, comps);
}

// d* a = -g^{ij} (nabla_i a)_{j...}
template <class T>
Tensor<T> codifferential_from_nabla(const Tensor<T>& nabla_a, const Tensor<T>& ginv) {
  const Tensor<T> raised = raise(nabla_a, 0, ginv);
  return -contract(raised, 0, 1);
}

template <int D, int K>
Tensor<Jet<D, K>> codifferential(const LocalGeometry<D, K>& geo, const Tensor<Jet<D, K>>& a) {
  if (form_degree(a) == 0) return Tensor<Jet<D, K>>::scalar(Jet<D, K>(0.0));
  return codifferential_from_nabla(geo.nabla(a), geo.ginv());
}

template <int D, int K>
Tensor<Jet<D, K>> form_laplacian(const LocalGeometry<D, K>& geo, const Tensor<Jet<D, K>>& a) {
  const int p = form_degree(a);
  Tensor<Jet<D, K>> r(D, slots_down(p));
  if (p > 0) r += exterior_derivative(codifferential(geo, a));
  if (p < D) r += codifferential(geo, exterior_derivative(a));
  return r;
}

// Rough Laplacian nabla* nabla t = -g^{ij} nabla_i nabla_j t
template <int D, int K>
Tensor<Jet<D, K>> rough_laplacian(const LocalGeometry<D, K>& geo, const Tensor<Jet<D, K>>& t) {
  const auto nn = geo.nabla2(t);
  return -contract(raise(nn, 0, geo.ginv()), 0, 1);
}

// 2-form <-> endomorphism: a(X,Y) = g(AX, Y), i.e. a_ij = g_kj A^k_i.
template <class T>
Tensor<T> form_of_endomorphism(const Tensor<T>& a, const Tensor<T>& g) {
  // lower the Up slot of A, then swap so slot order is (i, j)
  return permute(lower(a, 0, g), {1, 0});
}

template <class T>
Tensor<T> endomorphism_of_form(const Tensor<T>& w, const Tensor<T>& ginv) {
  // A^k_i = g^{kj} w_ij
  return permute(raise(w, 1, ginv), {1, 0});
}

// b(AX, Y) for a bilinear form b and endomorphism A.
template <class T>
Tensor<T> precompose(const Tensor<T>& b, const Tensor<T>& a) {
  // r_ij = A^k_i b_kj
  const int n = b.dim();
  Tensor<T> r = bilinear_tensor<T>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T acc(0.0);
      for (int k = 0; k < n; ++k) acc += a(k, i) * b(k, j);
      r(i, j) = acc;
    }
  return r;
}

// a(JX, JY)
template <class T>
Tensor<T> pullback_by(const Tensor<T>& b, const Tensor<T>& a) {
  const int n = b.dim();
  Tensor<T> r = bilinear_tensor<T>(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      T acc(0.0);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += a(k, i) * a(l, j) * b(k, l);
      r(i, j) = acc;
    }
  return r;
}

template <class T>
struct TypeSplit2Form {
  Tensor<T> invariant;      // alpha^(1,1)
  Tensor<T> anti_invariant; // alpha^(2,0)
};

inline void require_almost_complex(const Tensor<double>& j, double tol = 1e-6) {
  const auto j2 = compose(j, j) + identity_endomorphism<double>(j.dim());
  if (max_abs(j2) > tol) throw PreconditionError("J^2 != -Id at this point");
}

template <class T>
TypeSplit2Form<T> type_decompose(const Tensor<T>& a, const Tensor<T>& j) {
  if (form_degree(a) != 2) throw ShapeError("type_decompose expects a 2-form");
  require_almost_complex(values(j));
  const Tensor<T> aj = pullback_by(a, j);
  return {(a + aj) * 0.5, (a - aj) * 0.5};
}

}  // namespace nkg
