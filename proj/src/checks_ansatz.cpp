// ansatz suite: the nearly Kaehler structure rebuilt over S^2 x S^2.

#include <algorithm>
#include <cmath>

#include "check_util.hpp"
#include "nkg/ansatz.hpp"
#include "nkg/linalg.hpp"

namespace nkg {

using namespace checks;

namespace {


CheckDef ans(std::string id, double tol, std::string desc, std::function<CheckOutcome(CheckInput&)> run) {
  CheckDef d;
  d.id = std::move(id);
  d.suite = "ansatz";
  d.models = {"s2s2"};
  d.tolerance = tol;
  d.description = std::move(desc);
  d.run = std::move(run);
  return d;
}

// Per-point check on the ansatz chart with an optional mean value.
CheckDef on_ansatz(std::string id, double tol, std::string desc,
                   std::function<double(const SP&, Sampler&, Mean&)> f) {
  return ans(std::move(id), tol, std::move(desc), [f = std::move(f)](CheckInput& in) {
    const MChartPtr chart = in.model.ansatz();
    Mean m;
    auto out = sample_points(in, chart->domain(), [&](const Point& p) {
      SP s(*chart, p);
      return f(s, in.sampler, m);
    });
    out.value = m.get();
    return out;
  });
}

template <class F>
CheckOutcome on_base(CheckInput& in, F&& f) {
  return sample_points(in, in.model.base()->domain(), f);
}

using J41 = Jet<4, 1>;

BaseAnsatzData<J41> base_jets(const Point& p, const TautologicalForm& t, const GaugeShift& gs = {}) {
  std::array<J41, 4> x;
  for (int i = 0; i < 4; ++i) x[i] = J41::variable(i, p[i]);
  return base_ansatz_data(x, kahler_einstein_radius(), t, gs);
}

double alpha_sample(const SP& s, Sampler& smp) {
  return constant_type_at(s, smp.unit_vector(s.g()), smp.unit_vector(s.g()));
}

// alpha, scal, |dzeta^(1,1)|^2 and the Delta(Jzeta) eigenvalue at one point
std::array<double, 4> scalar_invariants(const MChart& c, const Point& p, Sampler& smp) {
  const RP r(c, p);
  const double a = alpha_sample(r, smp);
  const double scal = value_of(r.geo().scalar_curvature());
  const auto split = type_decompose(r.v(r.dzeta()), r.Jv());
  const double n11 = form_norm2(split.invariant, r.g(), r.ginv());
  const auto jz = r.v(r.jzeta());
  const double ev = inner(values(form_laplacian(r.geo(), r.jzeta())), jz, r.g(), r.ginv()) / inner(jz, jz, r.g(), r.ginv());
  return {a, scal, n11, ev};
}

}  // namespace

void register_ansatz_checks(std::vector<CheckDef>& out) {
  out.push_back(ans("ansatz-potentials", 1e-8, "dA = -12 g0(I0., .) and dB = 2 g0(Jhat., .) on the base",
                    [](CheckInput& in) {
                      const auto t = ansatz_tautological({});
                      return on_base(in, [&](const Point& p) {
                        const auto d = base_jets(p, t);
                        const auto g0 = values(d.g0), g0i = inverse(g0);
                        const auto w0 = precompose(g0, values(d.i0)), wj = precompose(g0, values(d.jhat));
                        return std::max(norm(values(exterior_derivative(d.A)) + w0 * 12.0, g0, g0i),
                                        norm(values(exterior_derivative(d.B)) - wj * 2.0, g0, g0i));
                      });
                    }));
  out.push_back(ans("ansatz-phi-type", 1e-8, "Phi0(I0., .) = -i Phi0", [](CheckInput& in) {
    const auto t = ansatz_tautological({});
    return on_base(in, [&](const Point& p) {
      const auto d = base_jets(p, t);
      const auto g0 = values(d.g0), g0i = inverse(g0), i0 = values(d.i0);
      const auto re = values(d.phi_re), im = values(d.phi_im);
      return std::max(norm(precompose(re, i0) - im, g0, g0i), norm(precompose(im, i0) + re, g0, g0i));
    });
  }));
  out.push_back(ans("ansatz-phi-parallel", 1e-6,
                    "nabla^g0 Phi0 = i A Phi0, so Phi is parallel along horizontal lifts for the connection theta",
                    [](CheckInput& in) {
                      const auto t = ansatz_tautological({});
                      CheckOutcome o = on_base(in, [&](const Point& p) { return twisted_parallel_residual(t, {}, {p}); });
                      o.value = t.lambda;
                      return o;
                    }));
  out.push_back(ans("ansatz-phi-weight", 1e-8, "L_{d/dt1} Phi = i Phi", [](CheckInput& in) {
    const auto t = ansatz_tautological({});
    const MChartPtr chart = in.model.ansatz();
    return sample_points(in, chart->domain(), [&](const Point& p) {
      using J61 = Jet<6, 1>;
      std::array<J61, 6> x;
      for (int i = 0; i < 6; ++i) x[i] = J61::variable(i, p[i]);
      const auto a = ansatz_tensors(x, kahler_einstein_radius(), t, GaugeShift{});
      Tensor<J61> xi1 = vector_tensor<J61>(6);
      xi1[4] = J61(1.0);
      return std::max(max_abs(values(lie_derivative(xi1, a.phi_re)) + values(a.phi_im)),
                      max_abs(values(lie_derivative(xi1, a.phi_im)) - values(a.phi_re)));
    });
  }));
  out.push_back(on_ansatz("ansatz-j-squared", 1e-6, "J = g^{-1} omega satisfies J^2 = -Id; g positive definite",
                          [](const SP& s, Sampler&, Mean&) {
                            return max_abs(compose(s.Jv(), s.Jv()) + identity_endomorphism<double>(6));
                          }));
  out.push_back(on_ansatz("ansatz-unit-fiber", 1e-8,
                          "g(d/dt2, d/dt2) = 1 and omega(d/dt2, X_h) = 0 for horizontal lifts X_h",
                          [](const SP& s, Sampler&, Mean&) {
                            const auto xi = values(s.geo().vector_field("xi"));
                            double res = std::abs(s.dot(xi, xi) - 1.0);
                            // horizontal lift of d/dx_i: d_i - theta_i d/dt1 - mu_i d/dt2, with theta_i, mu_i
                            // read off from g(d/dt1, .) and g(d/dt2, .)
                            const auto& g = s.g();
                            for (int i = 0; i < 4; ++i) {
                              Tensor<double> x = basis_vector(6, i);
                              x[4] = -g(4, i) / g(4, 4);
                              x[5] = -g(5, i);
                              res = std::max(res, std::abs(eval(s.omega_v(), {xi, x})));
                            }
                            return res;
                          }));
  out.push_back(on_ansatz("ansatz-nk-condition", 1e-6, "(nabla_X J)X = 0 for unit X", [](const SP& s, Sampler& smp, Mean&) {
    const auto x = smp.unit_vector(s.g());
    return gnorm(s, s.nabla_j_xy(x, x));
  }));
  out.push_back(on_ansatz("ansatz-constant-type", 1e-5, "alpha = 1", [](const SP& s, Sampler& smp, Mean& m) {
    const double a = alpha_sample(s, smp);
    m.add(a);
    return std::abs(a - 1.0);
  }));
  out.push_back(on_ansatz("ansatz-scalar-curvature", 1e-4, "scal = 30", [](const SP& s, Sampler&, Mean& m) {
    const double v = value_of(s.geo().scalar_curvature());
    m.add(v);
    return std::abs(v - 30.0);
  }));
  out.push_back(on_ansatz("ansatz-einstein", 1e-5, "Ric = 5 g", [](const SP& s, Sampler&, Mean&) {
    return gnorm(s, values(s.geo().ricci()) - s.g() * 5.0);
  }));
  out.push_back(on_ansatz("ansatz-killing-unit", 1e-6, "the mu-dual field d/dt2 is a unit Killing field preserving J",
                          [](const SP& s, Sampler&, Mean&) {
                            const auto& xi = s.geo().vector_field("xi");
                            const auto xv = values(xi);
                            return std::max({std::abs(s.dot(xv, xv) - 1.0), gnorm(s, values(s.geo().lie(xi, s.geo().g()))),
                                             gnorm(s, values(s.geo().lie(xi, s.J())))});
                          }));
  out.push_back(ans(
      "ansatz-gauge-invariance", 1e-8,
      "A -> A + df, B -> B + dh: g, J, scal and alpha agree with the unshifted chart at (x, t1 + f, t2 + h)",
      [](CheckInput& in) {
        AnsatzConfig shifted;
        shifted.shift = {in.sampler.uniform(-0.1, 0.1), in.sampler.uniform(-0.1, 0.1), in.sampler.uniform(-0.1, 0.1),
                         in.sampler.uniform(-0.1, 0.1)};
        const MChartPtr orig = in.model.ansatz();
        const MChartPtr sh = with_engine(build_ansatz(shifted), in.model.engine());
        Box box = sh->domain();
        box.lo[4] = box.lo[5] = -1.0;
        box.hi[4] = box.hi[5] = 1.0;
        const GaugeShift& gs = shifted.shift;
        return sample_points(in, box, [&](const Point& y) {
          const std::array<double, 4> xb{y[0], y[1], y[2], y[3]};
          Point X = y;
          X[4] += gs.f(xb);
          X[5] += gs.h(xb);
          // D = dX/dy
          Tensor<double> D = identity_endomorphism<double>(6);
          const auto df = gs.df(xb), dh = gs.dh(xb);
          for (int i = 0; i < 4; ++i) {
            D(4, i) = df[i];
            D(5, i) = dh[i];
          }
          const SP a(*sh, y), b(*orig, X);
          Tensor<double> gb = bilinear_tensor<double>(6);
          for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) {
              double acc = 0.0;
              for (int k = 0; k < 6; ++k)
                for (int l = 0; l < 6; ++l) acc += D(k, i) * D(l, j) * b.g()(k, l);
              gb(i, j) = acc;
            }
          const Tensor<double> jb = compose(inverse(D), compose(b.Jv(), D));
          const auto u = in.sampler.unit_vector(a.g()), v = in.sampler.unit_vector(a.g());
          const double alpha_a = constant_type_at(a, u, v), alpha_b = constant_type_at(b, apply(D, u), apply(D, v));
          return std::max({max_abs(a.g() - gb), max_abs(a.Jv() - jb),
                           std::abs(value_of(a.geo().scalar_curvature()) - value_of(b.geo().scalar_curvature())),
                           std::abs(alpha_a - alpha_b)});
        });
      }));
  out.push_back(ans("ansatz-s3s3-agreement", 1e-4,
                    "alpha, scal, |dzeta^(1,1)|^2 and the Delta(Jzeta) eigenvalue agree with the direct S3 x S3 model",
                    [](CheckInput& in) {
                      const MChartPtr a = in.model.ansatz();
                      const MChartPtr s = with_engine(build_s3s3(), in.model.engine());
                      Mean m;
                      auto o = sample_points(in, a->domain(), [&](const Point& p) {
                        const auto va = scalar_invariants(*a, p, in.sampler);
                        const auto vs = scalar_invariants(*s, in.sampler.point(s->domain()), in.sampler);
                        m.add(va[3]);
                        double r = 0.0;
                        for (int k = 0; k < 4; ++k) r = std::max(r, std::abs(va[k] - vs[k]));
                        return r;
                      });
                      o.value = m.get();
                      return o;
                    }));
  out.push_back(ans("ansatz-recovered-base", 1e-6,
                    "reducing along d/dt2 recovers the base: g0 = pi* g0_N, g0(I0., .) = pi* omega0, "
                    "g0(Jhat., .) = pi* g0_N(Jhat., .) on H, and dzeta' = -12 g0(I0., .)",
                    [](CheckInput& in) {
                      const MChartPtr a = in.model.ansatz();
                      const auto t = ansatz_tautological({});
                      return sample_points(in, a->domain(), [&](const Point& p) {
                        const RP r(*a, p);
                        const auto b = base_jets(Point{p[0], p[1], p[2], p[3]}, t);
                        const auto g0n = detail::pad6(values(b.g0));
                        const auto w0 = detail::pad6(precompose(values(b.g0), values(b.i0)));
                        const auto wj = detail::pad6(precompose(values(b.g0), values(b.jhat)));
                        const auto ph = r.v(r.pi_h());
                        const auto g0 = r.v(r.g0());
                        auto hn = [&](const Tensor<double>& x) { return norm(project_all(x, ph), r.g(), r.ginv()); };
                        return std::max({hn(g0 - g0n), hn(precompose(g0, r.v(r.I0())) - w0),
                                         hn(r.v(r.omega0_Jhat()) - wj),
                                         hn(values(exterior_derivative(r.zeta_prime())) + precompose(g0, r.v(r.I0())) * 12.0)});
                      });
                    }));
  out.push_back(ans("ansatz-loop-closure", 1e-5,
                    "every reduction and lie check defined for s3s3 (except the left generator) holds on the ansatz; "
                    "residual = largest sub-check residual",
                    [](CheckInput& in) {
                      CheckOutcome o;
                      double worst = 0.0;
                      for (const auto& def : check_registry()) {
                        if (def.suite != "reduction" && def.suite != "lie") continue;
                        if (!def.models.count("s3s3") || def.id == "killing-left-generator") continue;
                        CheckInput si{in.model, std::max(1, in.samples / 5), in.sampler};
                        const CheckOutcome r = def.run(si);
                        for (double x : r.residuals) worst = std::max(worst, x);
                      }
                      o.residuals = {worst};
                      o.value = worst;
                      return o;
                    }));
}

}  // namespace nkg
