#include "nkg/ansatz.hpp"

#include <mutex>
#include <sstream>

#include "nkg/connection.hpp"
#include "nkg/errors.hpp"
#include "nkg/linalg.hpp"
#include "nkg/reduction.hpp"

namespace nkg {

namespace {

struct AnsatzFields {
  double r = 0.0;
  TautologicalForm taut;
  GaugeShift shift;

  template <class S>
  StructureFields<S> operator()(const std::array<S, 6>& x) const {
    const AnsatzTensors<S> a = ansatz_tensors(x, r, taut, shift);
    StructureFields<S> f;
    f.metric = a.g;
    f.complex_structure = endomorphism_of_form(a.omega, inverse(a.g));
    Tensor<S> xi = vector_tensor<S>(6), xi1 = vector_tensor<S>(6);
    xi[5] = S(1.0);
    xi1[4] = S(1.0);
    f.vector_fields.emplace("xi", xi);
    f.vector_fields.emplace("xi1", xi1);
    return f;
  }
};

std::vector<Point> search_points() {
  return {Point{1.1, 0.4, 1.7, -0.8}, Point{0.6, -1.9, 2.3, 1.2}, Point{2.2, 2.5, 0.9, -2.6}};
}

}  // namespace

double tautological_lambda_oracle() {
  static std::once_flag once;
  static double value = 0.0;
  std::call_once(once, [] {
    const MChartPtr chart = build_s3s3();
    const ReductionPoint<2> rp(*chart, Point{0.2, -0.1, 0.3, 0.1, 0.25, -0.2});
    const Tensor<double> g0 = rp.v(rp.g0());
    const double n2 = form_norm2(values(rp.psi_t2_re()), g0, inverse(g0));
    // |Re Phi0|^2 = 2 lambda^2 at gamma = 0
    value = std::sqrt(n2 / 2.0);
  });
  return value;
}

double twisted_parallel_residual(const TautologicalForm& t, const GaugeShift& gs,
                                 const std::vector<Point>& base_points) {
  using J1 = Jet<4, 1>;
  const double r = kahler_einstein_radius();
  double worst = 0.0;
  for (const Point& p : base_points) {
    std::array<J1, 4> x;
    for (int i = 0; i < 4; ++i) x[i] = J1::variable(i, p[i]);
    const BaseAnsatzData<J1> d = base_ansatz_data(x, r, t, gs);
    const Tensor<J1> gamma = christoffel(d.g0, inverse(d.g0));
    const Tensor<double> nre = values(covariant_derivative(d.phi_re, gamma));
    const Tensor<double> nim = values(covariant_derivative(d.phi_im, gamma));
    const Tensor<double> A = values(d.A), re = values(d.phi_re), im = values(d.phi_im);
    const Tensor<double> g0 = values(d.g0), g0i = inverse(g0);
    // nabla Phi0 = i A Phi0: nabla Re = -A Im, nabla Im = A Re
    worst = std::max({worst, norm(nre + outer(A, im), g0, g0i), norm(nim - outer(A, re), g0, g0i)});
  }
  return worst;
}

TautologicalForm build_tautological(double lambda, const GaugeShift& gs) {
  if (!(lambda > 0.0)) throw ConfigError("tautological form normalization must be positive");
  TautologicalForm best;
  best.parallel_residual = 1e300;
  const auto pts = search_points();
  for (int m1 = -2; m1 <= 2; ++m1)
    for (int m2 = -2; m2 <= 2; ++m2) {
      TautologicalForm t{m1, m2, lambda, 0.0};
      t.parallel_residual = twisted_parallel_residual(t, gs, pts);
      if (t.parallel_residual < best.parallel_residual) best = t;
    }
  if (best.parallel_residual > 1e-6) {
    std::ostringstream os;
    os << "no winding in [-2, 2]^2 makes the tautological form parallel (best residual "
       << best.parallel_residual << ")";
    throw Error(os.str());
  }
  return best;
}

TautologicalForm ansatz_tautological(const AnsatzConfig& config) {
  const double lambda = config.lambda > 0.0 ? config.lambda : tautological_lambda_oracle();
  if (config.winding) {
    TautologicalForm t{(*config.winding)[0], (*config.winding)[1], lambda, 0.0};
    t.parallel_residual = twisted_parallel_residual(t, config.shift, search_points());
    return t;
  }
  return build_tautological(lambda, config.shift);
}

MChartPtr build_ansatz(const AnsatzConfig& config) {
  AnsatzFields fields;
  fields.r = kahler_einstein_radius();
  fields.taut = ansatz_tautological(config);
  fields.shift = config.shift;
  Box box;
  const double m = 0.3, w = config.fiber_half_width;
  box.lo = {m, -3.0, m, -3.0, -w, -w};
  box.hi = {M_PI - m, 3.0, M_PI - m, 3.0, w, w};
  auto chart = make_function_chart<6, 2>("ansatz", box, fields);

  const StructureFields<double> f = chart->values(box.center());
  if (!is_positive_definite(f.metric)) throw Error("ansatz metric is not positive definite at the chart center");
  const Tensor<double>& J = *f.complex_structure;
  const Tensor<double> j2 = compose(J, J) + identity_endomorphism<double>(6);
  if (max_abs(j2) > 1e-6) {
    std::ostringstream os;
    os << "ansatz J^2 != -Id (normalization lambda = " << fields.taut.lambda << "); spectrum of J^2:";
    for (const auto& [re, im] : endomorphism_spectrum(compose(J, J))) os << ' ' << re << (im >= 0 ? "+" : "") << im << 'i';
    throw Error(os.str());
  }
  chart->set_orientation(orientation_from_omega(f));
  return chart;
}

}  // namespace nkg
