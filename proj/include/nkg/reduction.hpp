#pragma once

// Structures induced by a unit Killing field xi on a nearly Kaehler 6-manifold:
//   I = nabla_xi J, K = nabla_{J xi} J, Jhat = nabla xi + K/2, sigma = K Jhat,
//   H = {xi, J xi}^perp, g0 = g + g(sigma., .)/2, I0 = (2/sqrt3)(I - sigma I / 2),
//   Psi = sqrt3 omega_K'' + 2i omega_J,
// and the first canonical Hermitian connection nabla + (nabla J) J / 2.
//
// Endomorphisms A are turned into 2-forms by omega_A(X,Y) = g(AX,Y).
// Jzeta denotes the 1-form g(J xi, .).

#include <cmath>
#include <string>

#include "nkg/nearly_kahler.hpp"

namespace nkg {

// Project every slot of t with the projector p (Up slots by p, Down slots by p^T).
inline Tensor<double> project_all(const Tensor<double>& t, const Tensor<double>& p) {
  Tensor<double> r = t;
  const int n = t.dim();
  for (int k = 0; k < t.rank(); ++k) {
    Tensor<double> next(n, r.slots());
    std::vector<int> idx(r.rank());
    const std::size_t st = r.stride(k);
    for (std::size_t f = 0; f < r.size(); ++f) {
      r.unflat(f, idx);
      const int i = idx[k];
      const std::size_t base = f - static_cast<std::size_t>(i) * st;
      double acc = 0.0;
      if (r.slot(k) == Slot::Up) {
        for (int e = 0; e < n; ++e) acc += p(i, e) * r[base + e * st];
      } else {
        for (int e = 0; e < n; ++e) acc += p(e, i) * r[base + e * st];
      }
      next[f] = acc;
    }
    r = std::move(next);
  }
  return r;
}

template <int K>
class ReductionPoint : public StructurePoint<6, K> {
 public:
  using Base = StructurePoint<6, K>;
  using JetT = Jet<6, K>;
  using Field = Tensor<JetT>;

  ReductionPoint(const Chart<6, K>& chart, const Point& p, std::string xi_name = "xi")
      : Base(chart, p), xi_name_(std::move(xi_name)) {}

  const Field& xi() const { return c(xi_, [&] { return this->geo_.vector_field(xi_name_); }); }
  const Field& zeta() const { return c(zeta_, [&] { return this->geo_.flat(xi()); }); }
  const Field& jxi() const { return c(jxi_, [&] { return apply(this->J_, xi()); }); }
  const Field& jzeta() const { return c(jzeta_, [&] { return this->geo_.flat(jxi()); }); }
  // (c, a) = nabla_c xi^a
  const Field& nabla_xi() const { return c(nabla_xi_, [&] { return this->geo_.nabla(xi()); }); }

  const Field& I() const { return c(I_, [&] { return contract_field(xi()); }); }
  const Field& K_() const { return c(K__, [&] { return contract_field(jxi()); }); }
  const Field& Jhat() const {
    return c(Jhat_, [&] { return permute(nabla_xi(), {1, 0}) + K_() * 0.5; });
  }
  const Field& sigma() const { return c(sigma_, [&] { return compose(K_(), Jhat()); }); }
  const Field& pi_h() const {
    return c(pi_h_, [&] {
      return identity_endomorphism<JetT>(6) - outer(xi(), zeta()) - outer(jxi(), jzeta());
    });
  }
  const Field& p_plus() const { return c(p_plus_, [&] { return (pi_h() + sigma()) * 0.5; }); }
  const Field& p_minus() const { return c(p_minus_, [&] { return (pi_h() - sigma()) * 0.5; }); }
  const Field& pi_e() const { return c(pi_e_, [&] { return outer(xi(), zeta()) + p_plus(); }); }
  const Field& pi_f() const { return c(pi_f_, [&] { return outer(jxi(), jzeta()) + p_minus(); }); }

  const Field& g0() const {
    return c(g0_, [&] { return this->geo_.g() + precompose(this->geo_.g(), sigma()) * 0.5; });
  }
  const Field& g0inv() const { return c(g0inv_, [&] { return inverse(g0()); }); }
  const Field& gamma0() const { return c(gamma0_, [&] { return christoffel(g0(), g0inv()); }); }
  Field nabla0(const Field& t) const { return covariant_derivative(t, gamma0()); }
  const Field& I0() const {
    return c(I0_, [&] { return (I() - compose(sigma(), I()) * 0.5) * (2.0 / std::sqrt(3.0)); });
  }

  const Field& omega_I() const { return c(omega_I_, [&] { return form(I()); }); }
  const Field& omega_K() const { return c(omega_K_, [&] { return form(K_()); }); }
  const Field& omega_Jhat() const { return c(omega_Jhat_, [&] { return form(Jhat()); }); }
  const Field& omega_J() const { return c(omega_J_, [&] { return this->omega() - wedge(zeta(), jzeta()); }); }
  const Field& omega0_Jhat() const { return c(omega0_Jhat_, [&] { return precompose(g0(), Jhat()); }); }
  const Field& dzeta() const { return c(dzeta_, [&] { return exterior_derivative(zeta()); }); }
  const Field& djzeta() const { return c(djzeta_, [&] { return exterior_derivative(jzeta()); }); }

  // xi' = J xi / (2 sqrt3), zeta' = 2 sqrt3 Jzeta, so zeta'(xi') = 1.
  Field xi_prime() const { return jxi() * (1.0 / (2.0 * std::sqrt(3.0))); }
  Field zeta_prime() const { return jzeta() * (2.0 * std::sqrt(3.0)); }

  // I0-invariant (') and anti-invariant ('') parts of a 2-form.
  Field prime(const Field& a) const { return (a + pullback_by(a, I0())) * 0.5; }
  Field double_prime(const Field& a) const { return (a - pullback_by(a, I0())) * 0.5; }

  // Psi = sqrt3 omega_K'' + 2i omega_J
  const Field& psi_re() const { return c(psi_re_, [&] { return double_prime(omega_K()) * std::sqrt(3.0); }); }
  const Field& psi_im() const { return c(psi_im_, [&] { return omega_J() * 2.0; }); }
  // Psi = (4/sqrt3) g0((K - i I0 K)., .)
  Field psi_t2_re() const { return precompose(g0(), K_()) * (4.0 / std::sqrt(3.0)); }
  Field psi_t2_im() const { return precompose(g0(), compose(I0(), K_())) * (-4.0 / std::sqrt(3.0)); }

  // Canonical connection coefficients C(a, c, b) = (1/2) (nabla_c J)^a_e J^e_b.
  const Field& canonical_c() const {
    return c(canonical_c_, [&] {
      const Field& nj = this->nabla_j();
      Field r(6, {Slot::Up, Slot::Down, Slot::Down});
      for (int a = 0; a < 6; ++a)
        for (int cc = 0; cc < 6; ++cc)
          for (int b = 0; b < 6; ++b) {
            JetT acc(0.0);
            for (int e = 0; e < 6; ++e) acc += nj(cc, a, e) * this->J_(e, b);
            r(a, cc, b) = acc * 0.5;
          }
      return r;
    });
  }
  Field nabla_bar(const Field& t) const { return covariant_derivative(t, canonical_c(), this->geo_.nabla(t)); }

  Tensor<double> v(const Field& f) const { return values(f); }

 private:
  template <class F>
  const Field& c(std::optional<Field>& slot, F&& f) const {
    if (!slot) slot = f();
    return *slot;
  }
  // X^c (nabla_c J)
  Field contract_field(const Field& x) const { return contract(outer(x, this->nabla_j()), 0, 1); }
  Field form(const Field& a) const { return form_of_endomorphism(a, this->geo_.g()); }

  std::string xi_name_;
  mutable std::optional<Field> xi_, zeta_, jxi_, jzeta_, nabla_xi_, I_, K__, Jhat_, sigma_, pi_h_, p_plus_,
      p_minus_, pi_e_, pi_f_, g0_, g0inv_, gamma0_, I0_, omega_I_, omega_K_, omega_Jhat_, omega_J_,
      omega0_Jhat_, dzeta_, djzeta_, psi_re_, psi_im_, canonical_c_;
};

}  // namespace nkg
