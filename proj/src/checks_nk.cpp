// gray and nk-core suites.

#include <algorithm>
#include <cmath>

#include "check_util.hpp"

namespace nkg {

using namespace checks;

namespace {

const std::set<std::string> kNK{"s3s3", "s6"};

Tensor<double> nj(const SP& s, const Tensor<double>& x, const Tensor<double>& y) { return s.nabla_j_xy(x, y); }

// Frame 1-forms dual to a g-orthonormal frame.
std::vector<Tensor<double>> coframe_of(const SP& s, const AdaptedFrame& f) {
  std::vector<Tensor<double>> c;
  for (const auto& e : f.e) c.push_back(s.flat(e));
  return c;
}

AdaptedFrame random_frame(const SP& s, Sampler& smp) {
  return adapted_frame_at(s, smp.unit_vector(s.g()), smp.unit_vector(s.g()));
}

CheckDef def(std::string id, std::string suite, std::set<std::string> models, double tol, std::string desc,
             std::function<CheckOutcome(CheckInput&)> run) {
  CheckDef d;
  d.id = std::move(id);
  d.suite = std::move(suite);
  d.models = std::move(models);
  d.tolerance = tol;
  d.description = std::move(desc);
  d.run = std::move(run);
  return d;
}

void gray(std::vector<CheckDef>& out) {
  out.push_back(def("gray-item1-skew", "gray", kNK, 1e-8, "(nabla_X J)Y + (nabla_Y J)X = 0", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      const auto x = in.sampler.unit_vector(s.g()), y = in.sampler.unit_vector(s.g());
      return gnorm(s, nj(s, x, y) + nj(s, y, x));
    });
  }));
  out.push_back(def("gray-item2-jx", "gray", kNK, 1e-8, "(nabla_JX J)Y = (nabla_X J)JY", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      const auto x = in.sampler.unit_vector(s.g()), y = in.sampler.unit_vector(s.g());
      return gnorm(s, nj(s, s.j(x), y) - nj(s, x, s.j(y)));
    });
  }));
  out.push_back(def("gray-item3-anti-linear", "gray", kNK, 1e-8,
                    "J((nabla_X J)Y) = -(nabla_X J)JY = -(nabla_JX J)Y", [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto x = in.sampler.unit_vector(s.g()), y = in.sampler.unit_vector(s.g());
                        const auto lhs = s.j(nj(s, x, y));
                        return std::max(gnorm(s, lhs + nj(s, x, s.j(y))), gnorm(s, lhs + nj(s, s.j(x), y)));
                      });
                    }));
  out.push_back(def("gray-item4-vector-fields", "gray", kNK, 1e-8,
                    "g(nabla_X Y, X) = g(nabla_X JY, JX) for a coordinate-constant Y", [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto x = in.sampler.unit_vector(s.g()), y = in.sampler.unit_vector(s.g());
                        const auto Y = lift<6, 2>(y);
                        const auto nY = values(s.geo().nabla(Y));                   // (c, a)
                        const auto nJY = values(s.geo().nabla(apply(s.J(), Y)));    // (c, a)
                        const auto a = contract_vector(nY, 0, x), b = contract_vector(nJY, 0, x);
                        return std::abs(s.dot(a, x) - s.dot(b, s.j(x)));
                      });
                    }));
  out.push_back(def("gray-item5-second-derivative", "gray", kNK, 1e-6,
                    "2 g((nabla^2_{W,X} J)Y, Z) = -cyclic_{XYZ} g((nabla_W J)X, (nabla_Y J)JZ)", [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        std::array<Tensor<double>, 4> v;
                        for (auto& e : v) e = in.sampler.unit_vector(s.g());
                        const auto& [w, x, y, z] = v;
                        const Tensor<double> n2 = values(s.nabla2_j());  // (d, c, a, b)
                        const auto n2wx = contract_vector(contract_vector(n2, 0, w), 0, x);
                        const double lhs = 2.0 * s.dot(apply(n2wx, y), z);
                        auto term = [&](const Tensor<double>& a, const Tensor<double>& b, const Tensor<double>& cc) {
                          return s.dot(nj(s, w, a), nj(s, b, s.j(cc)));
                        };
                        return std::abs(lhs + term(x, y, z) + term(y, z, x) + term(z, x, y));
                      });
                    }));
  out.push_back(def("gray-ortho", "gray", kNK, 1e-9, "(nabla_X J)Y is orthogonal to X, JX, Y, JY",
                    [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto x = in.sampler.unit_vector(s.g()), y = in.sampler.unit_vector(s.g());
                        const auto v = nj(s, x, y);
                        double r = 0.0;
                        for (const auto& u : {x, s.j(x), y, s.j(y)}) r = std::max(r, std::abs(s.dot(v, u)));
                        return r;
                      });
                    }));
  out.push_back(def("gray-frame-nabla-j", "gray", kNK, 1e-7,
                    "nabla J = e135 - e146 - e236 - e245 in an adapted frame", [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto f = random_frame(s, in.sampler);
                        const auto th = coframe_of(s, f);
                        const auto e = frame_form(th, {{1, {0, 2, 4}}, {-1, {0, 3, 5}}, {-1, {1, 2, 5}}, {-1, {1, 3, 4}}});
                        return gnorm(s, values(s.nabla_omega()) - e);
                      });
                    }));
  out.push_back(def("gray-frame-star-nabla-j", "gray", kNK, 1e-7,
                    "*nabla J = -e246 + e235 + e145 + e136 in an adapted frame", [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto f = random_frame(s, in.sampler);
                        const auto th = coframe_of(s, f);
                        const auto e = frame_form(th, {{-1, {1, 3, 5}}, {1, {1, 2, 4}}, {1, {0, 3, 4}}, {1, {0, 2, 5}}});
                        const auto star = hodge_star(values(s.nabla_omega()), s.g(), s.ginv(), s.orientation());
                        return gnorm(s, star - e);
                      });
                    }));
  out.push_back(def("gray-frame-omega", "gray", kNK, 1e-8, "Omega = e12 + e34 + e56 in an adapted frame",
                    [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto f = random_frame(s, in.sampler);
                        const auto th = coframe_of(s, f);
                        const auto e = frame_form(th, {{1, {0, 1}}, {1, {2, 3}}, {1, {4, 5}}});
                        return gnorm(s, s.omega_v() - e);
                      });
                    }));
  out.push_back(def("gray-frame-orthonormal", "gray", kNK, 1e-9, "the adapted frame is g-orthonormal",
                    [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto f = random_frame(s, in.sampler);
                        double r = 0.0;
                        for (int i = 0; i < 6; ++i)
                          for (int j = 0; j < 6; ++j) r = std::max(r, std::abs(s.dot(f.e[i], f.e[j]) - (i == j)));
                        return r;
                      });
                    }));
  out.push_back(def(
      "gray-elementary-forms", "gray", kNK, 1e-8,
      "X_|Omega = JX^b, X_|*Omega = JX^b ^ Omega, X_|dOmega = JX_|*dOmega, |Omega|^2 = 3, "
      "*Omega = Omega^2/2, vol = Omega^3/6 = e1..e6, Omega ^ dOmega = 0, *X^b = JX^b ^ Omega^2 / 2",
      [](CheckInput& in) {
        return sample_chart(in, [&](const MChart& c, const Point& p) {
          SP s(c, p);
          const auto& g = s.g();
          const auto& gi = s.ginv();
          const int o = s.orientation();
          const auto x = in.sampler.unit_vector(g);
          const auto& w = s.omega_v();
          const auto dw = values(s.d_omega());
          const auto jx = s.flat(s.j(x));
          const auto xf = s.flat(x);
          const auto w2 = wedge(w, w);
          const auto vol = volume_form(g, o);
          const auto f = random_frame(s, in.sampler);
          auto th = coframe_of(s, f);
          Tensor<double> frame_vol = th[0];
          for (int k = 1; k < 6; ++k) frame_vol = wedge(frame_vol, th[k]);
          std::vector<double> r{
              gnorm(s, interior(x, w) - jx),
              gnorm(s, interior(x, hodge_star(w, g, gi, o)) - wedge(jx, w)),
              gnorm(s, interior(x, dw) - interior(s.j(x), hodge_star(dw, g, gi, o))),
              std::abs(form_norm2(w, g, gi) - 3.0),
              gnorm(s, hodge_star(w, g, gi, o) - w2 * 0.5),
              gnorm(s, vol - wedge(w2, w) * (1.0 / 6.0)),
              gnorm(s, vol - frame_vol),
              gnorm(s, wedge(w, dw)),
              gnorm(s, hodge_star(xf, g, gi, o) - wedge(jx, w2) * 0.5),
          };
          return *std::max_element(r.begin(), r.end());
        });
      }));
}

double alpha_sample(const SP& s, Sampler& smp) {
  return constant_type_at(s, smp.unit_vector(s.g()), smp.unit_vector(s.g()));
}

void core(std::vector<CheckDef>& out) {
  out.push_back(def("nk-condition", "nk-core", kNK, 1e-8, "(nabla_X J)X = 0 for unit X", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      const auto x = in.sampler.unit_vector(s.g());
      return gnorm(s, nj(s, x, x));
    });
  }));
  {
    auto d = def("nk-condition-product-control", "nk-core", {"s3s3"}, 0.1,
                 "negative control: product metric and product J on S3xS3 are not nearly Kaehler",
                 [](CheckInput& in) {
                   S3S3Config cfg;
                   cfg.product_structure = true;
                   const auto chart = with_engine(build_s3s3(cfg), in.model.engine());
                   return sample_points(in, chart->domain(), [&](const Point& p) {
                     SP s(*chart, p);
                     // worst unit X among a few draws at this point
                     double r = 0.0;
                     for (int k = 0; k < 8; ++k) {
                       const auto x = in.sampler.unit_vector(s.g());
                       r = std::max(r, gnorm(s, nj(s, x, x)));
                     }
                     return r;
                   });
                 });
    d.expected_fail_models = {"s3s3"};
    out.push_back(d);
  }
  out.push_back(def("almost-hermitian", "nk-core", kNK, 1e-12, "J^2 = -Id and g(J., J.) = g", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      const auto f = c.values(p);
      const auto& J = *f.complex_structure;
      const auto gi = inverse(f.metric);
      return std::max(gnorm(compose(J, J) + identity_endomorphism<double>(6), f.metric, gi),
                      gnorm(pullback_by(f.metric, J) - f.metric, f.metric, gi));
    });
  }));
  out.push_back(def("constant-type", "nk-core", kNK, 1e-8, "alpha(p, X, Y) = 1", [](CheckInput& in) {
    Mean m;
    auto r = sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      const double a = alpha_sample(s, in.sampler);
      m.add(a);
      return std::abs(a - 1.0);
    });
    r.value = m.get();
    return r;
  }));
  out.push_back(def("constant-type-scaling", "nk-core", {"s3s3"}, 1e-8,
                    "alpha(c) c is independent of c in {0.5, 1, 2}", [](CheckInput& in) {
                      std::vector<MChartPtr> charts;
                      for (double sc : {0.5, 1.0, 2.0}) {
                        S3S3Config cfg;
                        cfg.scale = sc;
                        charts.push_back(with_engine(build_s3s3(cfg), in.model.engine()));
                      }
                      Mean m;
                      auto r = sample_points(in, charts[0]->domain(), [&](const Point& p) {
                        const auto x = in.sampler.unit_vector(charts[1]->values(p).metric);
                        const auto y = in.sampler.unit_vector(charts[1]->values(p).metric);
                        double lo = 1e300, hi = -1e300;
                        const double scales[3] = {0.5, 1.0, 2.0};
                        for (int k = 0; k < 3; ++k) {
                          SP s(*charts[k], p);
                          const double ac = constant_type_at(s, x, y) * scales[k];
                          lo = std::min(lo, ac);
                          hi = std::max(hi, ac);
                        }
                        m.add(hi);
                        return hi - lo;
                      });
                      r.value = m.get();
                      return r;
                    }));
  out.push_back(def("type-identity", "nk-core", kNK, 1e-8,
                    "g((nabla_U J)X, (nabla_Y J)Z) = g(U,Y)g(X,Z) - g(U,Z)g(X,Y) - g(U,JY)g(X,JZ) + g(U,JZ)g(X,JY)",
                    [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        std::array<Tensor<double>, 4> v;
                        for (auto& e : v) e = in.sampler.unit_vector(s.g());
                        const auto& [u, x, y, z] = v;
                        const double lhs = s.dot(nj(s, u, x), nj(s, y, z));
                        const double rhs = s.dot(u, y) * s.dot(x, z) - s.dot(u, z) * s.dot(x, y) -
                                           s.dot(u, s.j(y)) * s.dot(x, s.j(z)) + s.dot(u, s.j(z)) * s.dot(x, s.j(y));
                        return std::abs(lhs - rhs);
                      });
                    }));
  out.push_back(def("nabla-j-squared", "nk-core", kNK, 1e-8, "(nabla_X J)^2 Y = -|X|^2 Y for Y orthogonal to X, JX",
                    [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        SP s(c, p);
                        const auto x = in.sampler.unit_vector(s.g());
                        auto y = in.sampler.unit_vector(s.g());
                        y -= x * s.dot(x, y);
                        y -= s.j(x) * s.dot(s.j(x), y);
                        const double ny = std::sqrt(s.dot(y, y));
                        if (ny < 1e-6) throw DegenerateError("Y in span(X, JX)");
                        y = y * (1.0 / ny);
                        return gnorm(s, nj(s, x, nj(s, x, y)) + y * s.dot(x, x));
                      });
                    }));
  out.push_back(def("rough-laplacian-omega", "nk-core", kNK, 1e-6, "nabla* nabla Omega = 4 Omega", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      return gnorm(s, values(rough_laplacian(s.geo(), s.omega())) - s.omega_v() * 4.0);
    });
  }));
  out.push_back(def("laplacian-omega", "nk-core", kNK, 1e-6, "Delta Omega = 12 Omega", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      return gnorm(s, values(form_laplacian(s.geo(), s.omega())) - s.omega_v() * 12.0);
    });
  }));
  out.push_back(def("einstein", "nk-core", kNK, 1e-6, "Ric = 5 g", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      return gnorm(s, values(s.geo().ricci()) - s.g() * 5.0);
    });
  }));
  out.push_back(def("scalar-curvature", "nk-core", kNK, 1e-6, "scal = 30", [](CheckInput& in) {
    Mean m;
    auto r = sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      const double v = value_of(s.geo().scalar_curvature());
      m.add(v);
      return std::abs(v - 30.0);
    });
    r.value = m.get();
    return r;
  }));
  out.push_back(def("ricci-star", "nk-core", kNK, 1e-6, "Ric*(X,Y) = tr(Z -> R(X,JZ)JY) = g", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      SP s(c, p);
      return gnorm(s, ricci_star(values(s.geo().riemann()), s.Jv()) - s.g());
    });
  }));
  out.push_back(def("djxi", "nk-core", kNK, 1e-6, "d(J xi _| dOmega) = -12 Jxi^b ^ Omega for the Killing field",
                    [](CheckInput& in) {
                      return sample_chart(in, [&](const MChart& c, const Point& p) {
                        RP s(c, p);
                        const auto lhs = values(exterior_derivative(interior(s.jxi(), s.d_omega())));
                        return gnorm(s, lhs + wedge(s.v(s.jzeta()), s.omega_v()) * 12.0);
                      });
                    }));
  out.push_back(def("omega-k-from-domega", "nk-core", kNK, 1e-7, "3 omega_K = J xi _| dOmega", [](CheckInput& in) {
    return sample_chart(in, [&](const MChart& c, const Point& p) {
      RP s(c, p);
      return gnorm(s, s.v(s.omega_K()) * 3.0 - values(interior(s.jxi(), s.d_omega())));
    });
  }));
  out.push_back(def("chart-overlap-scalars", "nk-core", {"s3s3"}, 1e-8,
                    "alpha, scal and |Omega|^2 agree on two overlapping charts", [](CheckInput& in) {
                      S3S3Config a, b;
                      b.p0 = quaternion_exp<double>({0.3, -0.2, 0.1});
                      b.q0 = quaternion_exp<double>({-0.1, 0.25, 0.2});
                      const auto ca = with_engine(build_s3s3(a), in.model.engine());
                      const auto cb = with_engine(build_s3s3(b), in.model.engine());
                      return sample_points(in, ca->domain(), [&](const Point& p) {
                        const auto pq = s3s3_point(a, p);
                        const auto x = quaternion_log(b.p0.conj() * pq[0]);
                        const auto y = quaternion_log(b.q0.conj() * pq[1]);
                        const Point pb{x[0], x[1], x[2], y[0], y[1], y[2]};
                        if (!cb->domain().contains(pb)) throw DegenerateError("point outside the second chart");
                        SP sa(*ca, p), sb(*cb, pb);
                        const double s1 = value_of(sa.geo().scalar_curvature());
                        const double s2 = value_of(sb.geo().scalar_curvature());
                        const double n1 = form_norm2(sa.omega_v(), sa.g(), sa.ginv());
                        const double n2 = form_norm2(sb.omega_v(), sb.g(), sb.ginv());
                        // tangent vectors agree through their left-trivialized components
                        auto transfer = [&](const Tensor<double>& v) {
                          Tensor<double> w = vector_tensor<double>(6);
                          for (int f = 0; f < 2; ++f) {
                            const std::array<double, 3> xa{p[3 * f], p[3 * f + 1], p[3 * f + 2]};
                            const std::array<double, 3> xb{pb[3 * f], pb[3 * f + 1], pb[3 * f + 2]};
                            const auto la = dexp_left(xa);
                            const auto lb = dexp_left_inverse(xb);
                            std::array<double, 3> u{};
                            for (int i = 0; i < 3; ++i)
                              for (int k = 0; k < 3; ++k) u[i] += la[i][k] * v[3 * f + k];
                            for (int i = 0; i < 3; ++i)
                              for (int k = 0; k < 3; ++k) w[3 * f + i] += lb[i][k] * u[k];
                          }
                          return w;
                        };
                        const auto x1 = in.sampler.unit_vector(sa.g()), y1 = in.sampler.unit_vector(sa.g());
                        const double a1 = constant_type_at(sa, x1, y1);
                        const double a2 = constant_type_at(sb, transfer(x1), transfer(y1));
                        return std::max({std::abs(s1 - s2), std::abs(n1 - n2), std::abs(a1 - a2)});
                      });
                    }));
}

}  // namespace

void register_nk_checks(std::vector<CheckDef>& out) {
  gray(out);
  core(out);
}

}  // namespace nkg
