// reduction, lie and canonical suites: identities of a unit Killing field.

#include <algorithm>
#include <cmath>

#include "check_util.hpp"
#include "nkg/linalg.hpp"

namespace nkg {

using namespace checks;

namespace {

const double kS3 = std::sqrt(3.0);

using PointFn = std::function<double(const RP&, Sampler&, Mean&)>;

CheckDef red(std::string id, std::string suite, std::set<std::string> models, double tol, std::string desc,
             PointFn f) {
  CheckDef d;
  d.id = std::move(id);
  d.suite = std::move(suite);
  d.models = std::move(models);
  d.tolerance = tol;
  d.description = std::move(desc);
  d.run = [f = std::move(f)](CheckInput& in) {
    Mean m;
    auto out = sample_chart(in, [&](const MChart& c, const Point& p) {
      RP r(c, p);
      return f(r, in.sampler, m);
    });
    out.value = m.get();
    return out;
  };
  return d;
}

double n(const RP& r, const Tensor<double>& t) { return gnorm(r, t); }
double nh(const RP& r, const Tensor<double>& t) { return gnorm(r, project_all(t, r.v(r.pi_h()))); }

template <class... T>
double mx(T... v) {
  return std::max({static_cast<double>(v)...});
}

Tensor<double> id6() { return identity_endomorphism<double>(6); }

// eigenvalue check for Delta a = lambda a
double eigen_residual(const RP& r, const Tensor<double>& la, const Tensor<double>& a, double lambda, Mean& m) {
  m.add(inner(la, a, r.g(), r.ginv()) / inner(a, a, r.g(), r.ginv()));
  return n(r, la - a * lambda);
}

const std::set<std::string> kS3S3{"s3s3"};
const std::set<std::string> kNK{"s3s3", "s6"};

void killing(std::vector<CheckDef>& out) {
  out.push_back(red("killing-lie-g", "reduction", kNK, 1e-8, "L_xi g = 0", [](const RP& r, Sampler&, Mean&) {
    return n(r, values(r.geo().lie(r.xi(), r.geo().g())));
  }));
  out.push_back(red("killing-lie-j", "reduction", kNK, 1e-8, "L_xi J = 0", [](const RP& r, Sampler&, Mean&) {
    return n(r, values(r.geo().lie(r.xi(), r.J())));
  }));
  out.push_back(red("killing-lie-omega", "reduction", kNK, 1e-8, "L_xi Omega = 0", [](const RP& r, Sampler&, Mean&) {
    return n(r, values(r.geo().lie(r.xi(), r.omega())));
  }));
  out.push_back(red("killing-lie-domega", "reduction", kNK, 1e-8, "L_xi dOmega = 0",
                    [](const RP& r, Sampler&, Mean&) { return n(r, values(r.geo().lie(r.xi(), r.d_omega()))); }));
  {
    auto d = red("killing-unit-length", "reduction", kNK, 1e-10, "g(xi, xi) = 1", [](const RP& r, Sampler&, Mean& m) {
      const auto x = r.v(r.xi());
      const double l = r.dot(x, x);
      m.add(l);
      return std::abs(l - 1.0);
    });
    d.expected_fail_models = {"s6"};
    out.push_back(d);
  }
  {
    CheckDef d;
    d.id = "killing-constant-length-family";
    d.suite = "reduction";
    d.models = {"s6"};
    d.tolerance = 0.05;
    d.expected_fail_models = {"s6"};
    d.description =
        "negative control: some Killing field A p (A in g2 basis or random so(7)) has constant length; "
        "residual = min over the family of (max|xi|^2 - min|xi|^2)/max|xi|^2";
    d.run = [](CheckInput& in) {
      std::vector<Mat7> family = g2_basis();
      for (int k = 0; k < 20; ++k) {
        Mat7 A{};
        for (int i = 0; i < 7; ++i)
          for (int j = i + 1; j < 7; ++j) {
            A[i][j] = in.sampler.uniform(-1.0, 1.0);
            A[j][i] = -A[i][j];
          }
        family.push_back(A);
      }
      const Box box = in.model.chart()->domain();
      std::vector<Point> pts;
      for (int s = 0; s < std::max(in.samples, 8); ++s) pts.push_back(in.sampler.point(box));
      double best = 1e300;
      for (const auto& A : family) {
        S6Config cfg;
        cfg.killing_generator = A;
        const auto chart = build_s6(cfg);
        double lo = 1e300, hi = 0.0;
        for (const auto& p : pts) {
          const auto f = chart->values(p);
          const double l = pair(f.metric, f.vector_fields.at("xi"), f.vector_fields.at("xi"));
          lo = std::min(lo, l);
          hi = std::max(hi, l);
        }
        best = std::min(best, (hi - lo) / hi);
      }
      CheckOutcome o;
      o.residuals = {best};
      o.value = best;
      return o;
    };
    out.push_back(d);
  }
  out.push_back(CheckDef{
      "killing-left-generator", "reduction", kS3S3, 1e-8, {},
      "the left generator on the first factor is a unit Killing field preserving J",
      [](CheckInput& in) {
        return sample_chart(in, [&](const MChart& c, const Point& p) {
          RP r(c, p, "xi_left");
          const auto x = r.v(r.xi());
          return mx(std::abs(r.dot(x, x) - 1.0), n(r, values(r.geo().lie(r.xi(), r.geo().g()))),
                    n(r, values(r.geo().lie(r.xi(), r.J()))));
        });
      }});
}

void transversal(std::vector<CheckDef>& out) {
  out.push_back(red("foliation-relations", "reduction", kS3S3, 1e-8,
                    "nabla_xi xi = nabla_Jxi xi = nabla_xi Jxi = nabla_Jxi Jxi = 0, [xi, Jxi] = 0, "
                    "xi _| dzeta = Jxi _| dzeta = 0",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto x = r.v(r.xi()), jx = r.v(r.jxi());
                      const auto nx = r.v(r.nabla_xi());
                      const auto njx = values(r.geo().nabla(r.jxi()));
                      const auto dz = r.v(r.dzeta());
                      return mx(n(r, contract_vector(nx, 0, x)), n(r, contract_vector(nx, 0, jx)),
                                n(r, contract_vector(njx, 0, x)), n(r, contract_vector(njx, 0, jx)),
                                n(r, values(lie_bracket(r.xi(), r.jxi()))), n(r, interior(x, dz)),
                                n(r, interior(jx, dz)));
                    }));
  out.push_back(red("djzeta-identities", "reduction", kS3S3, 1e-8, "d(Jzeta) = -xi _| dOmega = -3 omega_I",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto dj = r.v(r.djzeta());
                      return mx(n(r, dj + values(interior(r.xi(), r.d_omega()))), n(r, dj + r.v(r.omega_I()) * 3.0));
                    }));
  out.push_back(red("transversal-complex-structures", "reduction", kS3S3, 1e-8,
                    "I^2 = K^2 = Jhat^2 = -Id on H, all vanish on V and are g-skew", [](const RP& r, Sampler&, Mean&) {
                      const auto ph = r.v(r.pi_h());
                      const auto pv = id6() - ph;
                      double res = 0.0;
                      for (const auto* f : {&r.I(), &r.K_(), &r.Jhat()}) {
                        const auto a = r.v(*f);
                        const auto w = form_of_endomorphism(a, r.g());
                        res = mx(res, n(r, compose(a, a) + ph), n(r, compose(a, pv)), n(r, compose(pv, a)),
                                 n(r, w + permute(w, {1, 0})));
                      }
                      return res;
                    }));
  out.push_back(red("transversal-relations", "reduction", kS3S3, 1e-8,
                    "K = I J, I J + J I = 0, [Jhat, J] = [Jhat, I] = [Jhat, K] = 0", [](const RP& r, Sampler&, Mean&) {
                      const auto I = r.v(r.I()), K = r.v(r.K_()), Jh = r.v(r.Jhat()), J = r.Jv();
                      return mx(n(r, K - compose(I, J)), n(r, compose(I, J) + compose(J, I)), n(r, commutator(Jh, J)),
                                n(r, commutator(Jh, I)), n(r, commutator(Jh, K)));
                    }));
  out.push_back(red("acs-nabla-j-horizontal", "reduction", kS3S3, 1e-8,
                    "(nabla_X J)Y = <Y, IX> xi + <Y, KX> Jxi for X, Y in H", [](const RP& r, Sampler& s, Mean&) {
                      const auto ph = r.v(r.pi_h());
                      const auto x = s.unit_in(r.g(), ph), y = s.unit_in(r.g(), ph);
                      const auto rhs = r.v(r.xi()) * r.dot(y, apply(r.v(r.I()), x)) +
                                       r.v(r.jxi()) * r.dot(y, apply(r.v(r.K_()), x));
                      return n(r, r.nabla_j_xy(x, y) - rhs);
                    }));
  out.push_back(red("dzeta-type-endomorphisms", "reduction", kS3S3, 1e-8,
                    "dzeta^(2,0) corresponds to -K and dzeta^(1,1) to 2 Jhat", [](const RP& r, Sampler&, Mean&) {
                      const auto split = type_decompose(r.v(r.dzeta()), r.Jv());
                      return mx(n(r, endomorphism_of_form(split.anti_invariant, r.ginv()) + r.v(r.K_())),
                                n(r, endomorphism_of_form(split.invariant, r.ginv()) - r.v(r.Jhat()) * 2.0));
                    }));
  out.push_back(red("dzeta-omega-orthogonal", "reduction", kS3S3, 1e-8, "<dzeta, Omega> = <dzeta^(1,1), Omega> = 0",
                    [](const RP& r, Sampler&, Mean& m) {
                      const auto dz = r.v(r.dzeta());
                      const auto split = type_decompose(dz, r.Jv());
                      const double a = form_inner(dz, r.omega_v(), r.g(), r.ginv());
                      m.add(a);
                      return mx(std::abs(a), std::abs(form_inner(split.invariant, r.omega_v(), r.g(), r.ginv())));
                    }));
  out.push_back(red("covtrans-horizontal-parallel", "reduction", kS3S3, 1e-6,
                    "<(nabla_X I)Y, Z> = <(nabla_X K)Y, Z> = 0 for X, Y, Z in H", [](const RP& r, Sampler&, Mean&) {
                      return mx(nh(r, values(r.geo().nabla(r.I()))), nh(r, values(r.geo().nabla(r.K_()))));
                    }));
  out.push_back(red("sigma-involution", "reduction", kS3S3, 1e-8,
                    "sigma^2 = Id on H, sigma = 0 on V, tr sigma = 0, sigma g-symmetric", [](const RP& r, Sampler&, Mean&) {
                      const auto sg = r.v(r.sigma());
                      const auto ph = r.v(r.pi_h());
                      const auto w = precompose(r.g(), sg);
                      return mx(n(r, compose(sg, sg) - ph), n(r, compose(sg, id6() - ph)), std::abs(trace(sg)),
                                n(r, w - permute(w, {1, 0})));
                    }));
  out.push_back(red("splitting-e-f", "reduction", kS3S3, 1e-8,
                    "TM = E + F g-orthogonally with F = J E", [](const RP& r, Sampler&, Mean&) {
                      const auto pe = r.v(r.pi_e()), pf = r.v(r.pi_f()), J = r.Jv();
                      const auto we = precompose(r.g(), pe);
                      return mx(n(r, pe + pf - id6()), n(r, compose(pe, pe) - pe), n(r, compose(pe, pf)),
                                n(r, we - permute(we, {1, 0})), n(r, pf + compose(J, compose(pe, J))),
                                std::abs(trace(pe) - 3.0));
                    }));
  out.push_back(red("g0-spectrum", "reduction", kS3S3, 1e-8, "spectrum of g0 relative to g is {1/2, 1/2, 1, 1, 3/2, 3/2}",
                    [](const RP& r, Sampler&, Mean&) {
                      auto ev = relative_spectrum(r.v(r.g0()), r.g());
                      std::sort(ev.begin(), ev.end());
                      const double expect[6] = {0.5, 0.5, 1.0, 1.0, 1.5, 1.5};
                      double res = 0.0;
                      for (int i = 0; i < 6; ++i) res = mx(res, std::abs(ev[i] - expect[i]));
                      return res;
                    }));
}

void norms(std::vector<CheckDef>& out) {
  out.push_back(red("lemma-norm-dzeta11", "reduction", kS3S3, 1e-6, "|dzeta^(1,1)|^2 = 8",
                    [](const RP& r, Sampler&, Mean& m) {
                      const auto split = type_decompose(r.v(r.dzeta()), r.Jv());
                      const double v = form_norm2(split.invariant, r.g(), r.ginv());
                      m.add(v);
                      return std::abs(v - 8.0);
                    }));
  out.push_back(red("lemma-norm-dzeta20", "reduction", kS3S3, 1e-6, "|dzeta^(2,0)|^2 = 2",
                    [](const RP& r, Sampler&, Mean& m) {
                      const auto split = type_decompose(r.v(r.dzeta()), r.Jv());
                      const double v = form_norm2(split.anti_invariant, r.g(), r.ginv());
                      m.add(v);
                      return std::abs(v - 2.0);
                    }));
  out.push_back(red("norm-jhat", "reduction", kS3S3, 1e-6, "|Jhat|^2 = 4", [](const RP& r, Sampler&, Mean& m) {
    const double v = inner(r.v(r.Jhat()), r.v(r.Jhat()), r.g(), r.ginv());
    m.add(v);
    return std::abs(v - 4.0);
  }));
  out.push_back(red("norm-djzeta", "reduction", kS3S3, 1e-6,
                    "|d Jzeta|^2 = 36 as a 2-tensor (full contraction; the 2-form norm is 18)",
                    [](const RP& r, Sampler&, Mean& m) {
    const auto dj = r.v(r.djzeta());
    const double v = inner(dj, dj, r.g(), r.ginv());
    m.add(v);
    return std::abs(v - 36.0);
  }));
  out.push_back(red("codifferential-jzeta", "reduction", kS3S3, 1e-6, "d*(Jzeta) = 0", [](const RP& r, Sampler&, Mean& m) {
    const double v = values(codifferential(r.geo(), r.jzeta()))[0];
    m.add(v);
    return std::abs(v);
  }));
  out.push_back(red("laplacian-jzeta", "reduction", kS3S3, 1e-5, "Delta(Jzeta) = 18 Jzeta",
                    [](const RP& r, Sampler&, Mean& m) {
                      return eigen_residual(r, values(form_laplacian(r.geo(), r.jzeta())), r.v(r.jzeta()), 18.0, m);
                    }));
  out.push_back(red("laplacian-zeta", "reduction", kNK, 1e-5, "Delta zeta = 10 zeta for a Killing field",
                    [](const RP& r, Sampler&, Mean& m) {
                      return eigen_residual(r, values(form_laplacian(r.geo(), r.zeta())), r.v(r.zeta()), 10.0, m);
                    }));
}

void kahler(std::vector<CheckDef>& out) {
  out.push_back(red("g0-levi-civita", "reduction", kS3S3, 1e-6,
                    "g0(nabla^g0_X Y, Z) - g0(nabla_X Y, Z) = (1/3) g0((1 - sigma/2)[(nabla_X sigma)Y + "
                    "(nabla_KX Jhat)Y], Z) on H, both sides computed independently",
                    [](const RP& r, Sampler& s, Mean&) {
                      const auto ph = r.v(r.pi_h());
                      const auto x = s.unit_in(r.g(), ph), y = s.unit_in(r.g(), ph), z = s.unit_in(r.g(), ph);
                      const auto g0 = r.v(r.g0());
                      const auto dgam = r.v(r.gamma0()) - values(r.geo().gamma());  // (a, c, b)
                      const auto diff = apply(contract_vector(dgam, 1, x), y);
                      const double lhs = pair(g0, diff, z);
                      const auto ns = values(r.geo().nabla(r.sigma()));
                      const auto nj = values(r.geo().nabla(r.Jhat()));
                      const auto kx = apply(r.v(r.K_()), x);
                      const auto v = apply(contract_vector(ns, 0, x), y) + apply(contract_vector(nj, 0, kx), y);
                      const auto w = v - apply(r.v(r.sigma()), v) * 0.5;
                      const double rhs = pair(g0, w, z) / 3.0;
                      return std::abs(lhs - rhs);
                    }));
  out.push_back(red("idh-identity", "reduction", kS3S3, 1e-8, "(id_H + sigma/2)(id_H - sigma/2) = (3/4) id_H",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto ph = r.v(r.pi_h()), sg = r.v(r.sigma());
                      return n(r, compose(ph + sg * 0.5, ph - sg * 0.5) - ph * 0.75);
                    }));
  out.push_back(red("i0-complex-structure", "reduction", kS3S3, 1e-8, "I0^2 = -Id on H and g0(I0., I0.) = g0 on H",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto I0 = r.v(r.I0()), ph = r.v(r.pi_h()), g0 = r.v(r.g0());
                      return mx(n(r, compose(I0, I0) + ph), nh(r, pullback_by(g0, I0) - g0));
                    }));
  out.push_back(red("omega-i-compatibility", "reduction", kS3S3, 1e-8, "omega_I(X,Y) = (2/sqrt3) g0(I0 X, Y) on H",
                    [](const RP& r, Sampler&, Mean&) {
                      return nh(r, r.v(r.omega_I()) - precompose(r.v(r.g0()), r.v(r.I0())) * (2.0 / kS3));
                    }));
  out.push_back(red("projectability", "reduction", kS3S3, 1e-7,
                    "L_xi and L_Jxi of omega_I, g0 and Jhat vanish", [](const RP& r, Sampler&, Mean&) {
                      double res = 0.0;
                      for (const auto* x : {&r.xi(), &r.jxi()})
                        for (const auto* t : {&r.omega_I(), &r.g0(), &r.Jhat()})
                          res = mx(res, n(r, values(r.geo().lie(*x, *t))));
                      return res;
                    }));
  out.push_back(red("kahler-i0-parallel", "reduction", kS3S3, 1e-6, "H-projected nabla^g0 I0 = 0",
                    [](const RP& r, Sampler&, Mean&) { return nh(r, values(r.nabla0(r.I0()))); }));
  out.push_back(red("kahler-k-parallel", "reduction", kS3S3, 1e-6, "H-projected nabla^g0 K = 0",
                    [](const RP& r, Sampler&, Mean&) { return nh(r, values(r.nabla0(r.K_()))); }));
  out.push_back(red("psi-parallel", "reduction", kS3S3, 1e-6, "H-projected nabla^g0 Psi = 0",
                    [](const RP& r, Sampler&, Mean&) {
                      return mx(nh(r, values(r.nabla0(r.psi_re()))), nh(r, values(r.nabla0(r.psi_im()))));
                    }));
  out.push_back(red("psi-two-forms-agree", "reduction", kS3S3, 1e-8,
                    "sqrt3 omega_K'' + 2i omega_J = (4/sqrt3) g0((K - i I0 K)., .)", [](const RP& r, Sampler&, Mean&) {
                      return mx(nh(r, r.v(r.psi_re()) - values(r.psi_t2_re())),
                                nh(r, r.v(r.psi_im()) - values(r.psi_t2_im())));
                    }));
  out.push_back(red("psi-type", "reduction", kS3S3, 1e-8, "Psi(I0., .) = -i Psi", [](const RP& r, Sampler&, Mean&) {
    const auto I0 = r.v(r.I0()), re = r.v(r.psi_re()), im = r.v(r.psi_im());
    return mx(nh(r, precompose(re, I0) - im), nh(r, precompose(im, I0) + re));
  }));
  out.push_back(red("omega-k-type-parts", "reduction", kS3S3, 1e-8,
                    "omega_K' = -(omega_K - 2 omega_Jhat)/3 and omega_K'' = 2(2 omega_K - omega_Jhat)/3",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto wk = r.v(r.omega_K()), wj = r.v(r.omega_Jhat());
                      return mx(nh(r, values(r.prime(r.omega_K())) + (wk - wj * 2.0) * (1.0 / 3.0)),
                                nh(r, values(r.double_prime(r.omega_K())) - (wk * 2.0 - wj) * (2.0 / 3.0)));
                    }));
  out.push_back(red("omega-j-anti-invariant", "reduction", kS3S3, 1e-8,
                    "omega_J = Omega - zeta ^ Jzeta is I0-anti-invariant", [](const RP& r, Sampler&, Mean&) {
                      const auto wj = r.v(r.omega_J());
                      return nh(r, pullback_by(wj, r.v(r.I0())) + wj);
                    }));
  out.push_back(red("psi-weight", "reduction", kS3S3, 1e-7, "L_xi' Psi = i Psi with xi' = Jxi/(2 sqrt3)",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto xp = r.xi_prime();
                      return mx(n(r, values(r.geo().lie(xp, r.psi_re())) + r.v(r.psi_im())),
                                n(r, values(r.geo().lie(xp, r.psi_im())) - r.v(r.psi_re())));
                    }));
  out.push_back(red("dzeta-prime", "reduction", kS3S3, 1e-7,
                    "dzeta' = -6 sqrt3 omega_I = -12 g0(I0., .), zeta'(xi') = 1", [](const RP& r, Sampler&, Mean&) {
                      const auto dz = values(exterior_derivative(r.zeta_prime()));
                      return mx(n(r, dz + r.v(r.omega_I()) * (6.0 * kS3)),
                                nh(r, dz + precompose(r.v(r.g0()), r.v(r.I0())) * 12.0),
                                std::abs(values(contract(outer(r.zeta_prime(), r.xi_prime()), 0, 1))[0] - 1.0));
                    }));
  out.push_back(red("almost-kahler-jhat", "reduction", kS3S3, 1e-7,
                    "omega0_Jhat = g0(Jhat., .) = dzeta/2, d omega0_Jhat = 0, Jhat is g0-orthogonal on H",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto w0 = r.v(r.omega0_Jhat());
                      const auto g0 = r.v(r.g0());
                      return mx(n(r, w0 - r.v(r.dzeta()) * 0.5), n(r, values(exterior_derivative(r.omega0_Jhat()))),
                                nh(r, pullback_by(g0, r.v(r.Jhat())) - g0));
                    }));
}

void lie(std::vector<CheckDef>& out) {
  auto L = [](const RP& r, const Tensor<Jet<6, 2>>& t) { return values(r.geo().lie(r.jxi(), t)); };
  out.push_back(red("lie-metric", "lie", kS3S3, 1e-7, "L_Jxi g = 2 g(J Jhat., .)", [L](const RP& r, Sampler&, Mean&) {
    return n(r, L(r, r.geo().g()) - precompose(r.g(), compose(r.Jv(), r.v(r.Jhat()))) * 2.0);
  }));
  out.push_back(red("lie-dzeta", "lie", kS3S3, 1e-7, "L_Jxi dzeta = 0",
                    [L](const RP& r, Sampler&, Mean&) { return n(r, L(r, r.dzeta())); }));
  out.push_back(red("lie-djzeta", "lie", kS3S3, 1e-7, "L_Jxi dJzeta = 0",
                    [L](const RP& r, Sampler&, Mean&) { return n(r, L(r, r.djzeta())); }));
  out.push_back(red("lie-omega", "lie", kS3S3, 1e-7, "L_Jxi Omega = Jxi _| dOmega - dzeta = 4 omega_K - 2 omega_Jhat",
                    [L](const RP& r, Sampler&, Mean&) {
                      const auto l = L(r, r.omega());
                      return mx(n(r, l - values(interior(r.jxi(), r.d_omega())) + r.v(r.dzeta())),
                                n(r, l - r.v(r.omega_K()) * 4.0 + r.v(r.omega_Jhat()) * 2.0));
                    }));
  out.push_back(red("lie-j", "lie", kS3S3, 1e-7, "L_Jxi J = 4K",
                    [L](const RP& r, Sampler&, Mean&) { return n(r, L(r, r.J()) - r.v(r.K_()) * 4.0); }));
  out.push_back(red("lie-omega-k", "lie", kS3S3, 1e-7, "L_Jxi omega_K = -4 Omega + 4 zeta ^ Jzeta = -4 omega_J",
                    [L](const RP& r, Sampler&, Mean&) {
                      const auto l = L(r, r.omega_K());
                      return mx(n(r, l + r.omega_v() * 4.0 - wedge(r.v(r.zeta()), r.v(r.jzeta())) * 4.0),
                                n(r, l + r.v(r.omega_J()) * 4.0));
                    }));
  out.push_back(red("lie-k", "lie", kS3S3, 1e-7, "L_Jxi K = -4 J|_H - 2 I Jhat with J|_H = J Pi_H",
                    [L](const RP& r, Sampler&, Mean&) {
                      return n(r, L(r, r.K_()) + compose(r.Jv(), r.v(r.pi_h())) * 4.0 +
                                      compose(r.v(r.I()), r.v(r.Jhat())) * 2.0);
                    }));
  out.push_back(red("lie-omega-jhat", "lie", kS3S3, 1e-7, "L_Jxi omega_Jhat = -2 Omega + 2 zeta ^ Jzeta",
                    [L](const RP& r, Sampler&, Mean&) {
                      return n(r, L(r, r.omega_Jhat()) + r.omega_v() * 2.0 -
                                      wedge(r.v(r.zeta()), r.v(r.jzeta())) * 2.0);
                    }));
  out.push_back(red("lie-jhat", "lie", kS3S3, 1e-7, "L_Jxi Jhat = 0",
                    [L](const RP& r, Sampler&, Mean&) { return n(r, L(r, r.Jhat())); }));
  out.push_back(red("lie-omega-i", "lie", kS3S3, 1e-7, "L_Jxi omega_I = 0",
                    [L](const RP& r, Sampler&, Mean&) { return n(r, L(r, r.omega_I())); }));
  out.push_back(red("lie-i", "lie", kS3S3, 1e-7, "L_Jxi I = 2 Jhat K", [L](const RP& r, Sampler&, Mean&) {
    return n(r, L(r, r.I()) - compose(r.v(r.Jhat()), r.v(r.K_())) * 2.0);
  }));
  out.push_back(red("lie-sigma-flat", "lie", kS3S3, 1e-7, "L_Jxi sigma^b = -4 (J Jhat)^b", [L](const RP& r, Sampler&, Mean&) {
    return n(r, L(r, precompose(r.geo().g(), r.sigma())) + precompose(r.g(), compose(r.Jv(), r.v(r.Jhat()))) * 4.0);
  }));
  out.push_back(red("lie-g0-preserved", "lie", kS3S3, 1e-7, "L_Jxi g0 = 0",
                    [L](const RP& r, Sampler&, Mean&) { return n(r, L(r, r.g0())); }));
  out.push_back(red("lie-jhat-form-sum", "lie", kS3S3, 1e-7, "2 omega_Jhat = dzeta + omega_K", [](const RP& r, Sampler&, Mean&) {
    return n(r, r.v(r.omega_Jhat()) * 2.0 - r.v(r.dzeta()) - r.v(r.omega_K()));
  }));
}

}  // namespace

void register_reduction_checks(std::vector<CheckDef>& out) {
  killing(out);
  transversal(out);
  norms(out);
  kahler(out);
  lie(out);
}

void register_canonical_checks(std::vector<CheckDef>& out) {
  out.push_back(red("canonical-metric", "canonical", kS3S3, 1e-8, "nabla-bar g = 0",
                    [](const RP& r, Sampler&, Mean&) { return n(r, values(r.nabla_bar(r.geo().g()))); }));
  out.push_back(red("canonical-j", "canonical", kS3S3, 1e-8, "nabla-bar J = 0",
                    [](const RP& r, Sampler&, Mean&) { return n(r, values(r.nabla_bar(r.J()))); }));
  out.push_back(red("canonical-xi", "canonical", kS3S3, 1e-7, "nabla-bar_U xi = (sigma + 1) Jhat U for all U",
                    [](const RP& r, Sampler&, Mean&) {
                      const auto nb = values(r.nabla_bar(r.xi()));  // (c, a)
                      const auto rhs = compose(r.v(r.sigma()) + id6(), r.v(r.Jhat()));  // (a, c)
                      return n(r, permute(nb, {1, 0}) - rhs);
                    }));
  out.push_back(red("canonical-sigma-parallel", "canonical", kS3S3, 1e-6, "H-projected nabla sigma = 0",
                    [](const RP& r, Sampler&, Mean&) { return nh(r, values(r.geo().nabla(r.sigma()))); }));
  auto split = [](bool plus) {
    return [plus](const RP& r, Sampler& s, Mean&) {
      const auto y = lift<6, 2>(s.unit_vector(r.g()));
      const auto sec = apply(plus ? r.p_plus() : r.p_minus(), y);
      const auto nb = values(r.nabla_bar(sec));  // (c, a)
      const auto other = r.v(plus ? r.pi_f() : r.pi_e());
      double res = 0.0;
      for (const auto& u : {s.unit_vector(r.g()), s.unit_in(r.g(), r.v(r.pi_h())), r.v(r.xi()), r.v(r.jxi())})
        res = mx(res, n(r, apply(other, contract_vector(nb, 0, u))));
      return res;
    };
  };
  out.push_back(red("canonical-e-parallel", "canonical", kS3S3, 1e-6,
                    "Pi_F nabla-bar_U Y+ = 0 for Y+ a section of H+ and U random, horizontal, xi, Jxi", split(true)));
  out.push_back(red("canonical-f-parallel", "canonical", kS3S3, 1e-6,
                    "Pi_E nabla-bar_U Y- = 0 for Y- a section of H- and U random, horizontal, xi, Jxi", split(false)));
  out.push_back(red("canonical-torsion-parallel", "canonical", kS3S3, 1e-6, "nabla-bar (nabla Omega) = 0 (optional)",
                    [](const RP& r, Sampler&, Mean&) { return n(r, values(r.nabla_bar(r.nabla_omega()))); }));
}

}  // namespace nkg
