#include "nkg/models/models.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <mutex>

#include "nkg/exterior.hpp"
#include "nkg/nearly_kahler.hpp"

namespace nkg {

namespace {

struct S3S3Fields {
  double c = 1.0;
  Quaternion<double> p0, q0;
  std::array<double, 3> a_right{}, a_left{};
  bool product = false;

  template <class S>
  StructureFields<S> operator()(const std::array<S, 6>& z) const {
    const std::array<S, 3> x{z[0], z[1], z[2]}, y{z[3], z[4], z[5]};
    const std::array<Mat3T<S>, 2> L{dexp_left(x), dexp_left(y)};
    const std::array<Mat3T<S>, 2> Li{dexp_left_inverse(x), dexp_left_inverse(y)};

    const double q[2][2] = {{1.0, product ? 0.0 : -0.5}, {product ? 0.0 : -0.5, 1.0}};
    const double s3 = 1.0 / std::sqrt(3.0);
    const double m_nk[2][2] = {{-s3, 2 * s3}, {-2 * s3, s3}};
    const double m_prod[2][2] = {{0.0, -1.0}, {1.0, 0.0}};
    const auto& m = product ? m_prod : m_nk;

    StructureFields<S> f;
    f.metric = bilinear_tensor<S>(6);
    Tensor<S> J = endomorphism_tensor<S>(6);
    for (int al = 0; al < 2; ++al)
      for (int be = 0; be < 2; ++be)
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            S gij(0.0), jij(0.0);
            for (int a = 0; a < 3; ++a) {
              gij += L[al][a][i] * L[be][a][j];
              jij += Li[al][i][a] * L[be][a][j];
            }
            if (q[al][be] != 0.0) f.metric(3 * al + i, 3 * be + j) = gij * (c * q[al][be]);
            if (m[al][be] != 0.0) J(3 * al + i, 3 * be + j) = jij * m[al][be];
          }
    f.complex_structure = J;

    Tensor<S> xi = vector_tensor<S>(6);
    for (int al = 0; al < 2; ++al)
      for (int i = 0; i < 3; ++i) {
        S v(0.0);
        for (int a = 0; a < 3; ++a) v += Li[al][i][a] * a_right[a];
        xi[3 * al + i] = v;
      }
    f.vector_fields.emplace("xi", xi);

    // left multiplication on the first factor: left-trivialized generator conj(p) a p
    const Quaternion<S> p = lift_quaternion<S>(p0) * quaternion_exp(x);
    const std::array<S, 3> al{S(a_left[0]), S(a_left[1]), S(a_left[2])};
    const Quaternion<S> w = p.conj() * Quaternion<S>::pure(al) * p;
    const std::array<S, 3> wv = w.vec();
    Tensor<S> xl = vector_tensor<S>(6);
    for (int i = 0; i < 3; ++i) {
      S v(0.0);
      for (int a = 0; a < 3; ++a) v += Li[0][i][a] * wv[a];
      xl[i] = v;
    }
    f.vector_fields.emplace("xi_left", xl);
    return f;
  }
};

struct S6Fields {
  Mat7 A{};
  double xi_scale = 1.0;

  template <class S>
  StructureFields<S> operator()(const std::array<S, 6>& u) const {
    S n2(0.0);
    for (int i = 0; i < 6; ++i) n2 += u[i] * u[i];
    const S den = 1.0 + n2;
    const S inv = 1.0 / den;
    const S inv2 = inv * inv;
    std::array<S, 7> p;
    for (int i = 0; i < 6; ++i) p[i] = 2.0 * u[i] * inv;
    p[6] = (n2 - 1.0) * inv;
    // E_i = dp/du_i
    std::array<std::array<S, 7>, 6> E;
    for (int i = 0; i < 6; ++i) {
      for (int k = 0; k < 6; ++k) {
        E[i][k] = -4.0 * u[k] * u[i] * inv2;
        if (k == i) E[i][k] = E[i][k] + 2.0 * inv;
      }
      E[i][6] = 4.0 * u[i] * inv2;
    }
    const S lam2 = 4.0 * inv2;
    const S ilam2 = 1.0 / lam2;

    StructureFields<S> f;
    f.metric = bilinear_tensor<S>(6);
    for (int i = 0; i < 6; ++i) f.metric(i, i) = lam2;

    Tensor<S> J = endomorphism_tensor<S>(6);
    for (int i = 0; i < 6; ++i) {
      const std::array<S, 7> c = cross7(p, E[i]);
      for (int j = 0; j < 6; ++j) {
        S v(0.0);
        for (int k = 0; k < 7; ++k) v += c[k] * E[j][k];
        J(j, i) = v * ilam2;
      }
    }
    f.complex_structure = J;

    std::array<S, 7> ap;
    for (int k = 0; k < 7; ++k) {
      S v(0.0);
      for (int l = 0; l < 7; ++l)
        if (A[k][l] != 0.0) v += A[k][l] * p[l];
      ap[k] = v * xi_scale;
    }
    Tensor<S> xi = vector_tensor<S>(6);
    for (int j = 0; j < 6; ++j) {
      S v(0.0);
      for (int k = 0; k < 7; ++k) v += ap[k] * E[j][k];
      xi[j] = v * ilam2;
    }
    f.vector_fields.emplace("xi", xi);
    return f;
  }
};

struct S2S2Fields {
  double r1 = 1.0, r2 = 1.0;

  template <class S>
  StructureFields<S> operator()(const std::array<S, 4>& x) const {
    using std::sin;
    const S s1 = sin(x[0]), s2 = sin(x[2]);
    StructureFields<S> f;
    f.metric = bilinear_tensor<S>(4);
    f.metric(0, 0) = S(r1 * r1);
    f.metric(1, 1) = s1 * s1 * (r1 * r1);
    f.metric(2, 2) = S(r2 * r2);
    f.metric(3, 3) = s2 * s2 * (r2 * r2);
    // j d_phi = d_psi / sin(phi), j d_psi = -sin(phi) d_phi
    auto factor = [&](Tensor<S>& t, int off, const S& s, double sign) {
      t(off + 1, off) = (1.0 / s) * sign;
      t(off, off + 1) = (S(0.0) - s) * sign;
    };
    Tensor<S> i0 = endomorphism_tensor<S>(4), jh = endomorphism_tensor<S>(4);
    factor(i0, 0, s1, 1.0);
    factor(i0, 2, s2, 1.0);
    factor(jh, 0, s1, 1.0);
    factor(jh, 2, s2, -1.0);
    f.complex_structure = i0;
    f.endomorphisms.emplace("I0", i0);
    f.endomorphisms.emplace("Jhat", jh);
    return f;
  }
};

Box cube(int n, double half_width) {
  Box b;
  b.lo.assign(n, -half_width);
  b.hi.assign(n, half_width);
  return b;
}

}  // namespace

int orientation_from_omega(const StructureFields<double>& f) {
  if (!f.complex_structure) throw PreconditionError("orientation needs a complex structure");
  const Tensor<double> w = form_of_endomorphism(*f.complex_structure, f.metric);
  const Tensor<double> w3 = wedge(w, wedge(w, w));
  std::vector<int> idx(w.dim());
  for (int i = 0; i < w.dim(); ++i) idx[i] = i;
  const double top = w3[w3.flat(idx)];
  if (top == 0.0) throw DegenerateError("Omega is degenerate");
  return top > 0 ? 1 : -1;
}

std::array<Quaternion<double>, 2> s3s3_point(const S3S3Config& config, const Point& x) {
  return {config.p0 * quaternion_exp<double>({x[0], x[1], x[2]}),
          config.q0 * quaternion_exp<double>({x[3], x[4], x[5]})};
}

MChartPtr build_s3s3(const S3S3Config& config) {
  S3S3Fields f;
  f.c = config.scale > 0.0 ? config.scale : calibrate_scale();
  f.p0 = config.p0;
  f.q0 = config.q0;
  f.product = config.product_structure;
  // |xi|^2 = c |a|^2 for both generators
  auto scaled = [&](const std::array<double, 3>& a) {
    const double n = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
    if (n == 0.0) throw ConfigError("Killing direction must be nonzero");
    const double s = 1.0 / (n * std::sqrt(f.c));
    return std::array<double, 3>{a[0] * s, a[1] * s, a[2] * s};
  };
  f.a_right = scaled(config.killing_direction);
  f.a_left = scaled(config.left_direction);
  if (f.product) {
    // product metric: |xi|^2 = 2 c |a|^2
    for (auto& v : f.a_right) v /= std::sqrt(2.0);
  }
  for (auto& v : f.a_right) v *= config.killing_scale;
  auto chart = make_function_chart<6, 2>(config.product_structure ? "s3s3-product" : "s3s3",
                                         cube(6, config.half_width), f);
  chart->set_orientation(orientation_from_omega(chart->values(chart->domain().center())));
  return chart;
}

double calibrate_scale() {
  static std::once_flag once;
  static double value = 0.0;
  std::call_once(once, [] {
    S3S3Config cfg;
    cfg.scale = 1.0;
    const MChartPtr chart = build_s3s3(cfg);
    StructurePoint<6, 2> s(*chart, Point(6, 0.0));
    Tensor<double> x = vector_tensor<double>(6), y = vector_tensor<double>(6);
    x[0] = 1.0;
    y[1] = 1.0;
    value = constant_type_at(s, x, y);
  });
  return value;
}

std::vector<Mat7> g2_basis() {
  const auto& phi = detail::g2_form();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j) pairs.emplace_back(i, j);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(35, 21);
  int row = 0;
  for (int i = 0; i < 7; ++i)
    for (int j = i + 1; j < 7; ++j)
      for (int k = j + 1; k < 7; ++k, ++row)
        for (std::size_t col = 0; col < pairs.size(); ++col) {
          Mat7 A{};
          A[pairs[col].first][pairs[col].second] = 1.0;
          A[pairs[col].second][pairs[col].first] = -1.0;
          double v = 0.0;
          for (int a = 0; a < 7; ++a) v += A[a][i] * phi[a][j][k] + A[a][j] * phi[i][a][k] + A[a][k] * phi[i][j][a];
          m(row, static_cast<int>(col)) = v;
        }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  Eigen::MatrixXd ker = lu.kernel();
  // orthonormalize columns for a canonical basis
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(ker);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(ker.rows(), ker.cols());
  std::vector<Mat7> basis;
  for (int c = 0; c < q.cols(); ++c) {
    Mat7 A{};
    for (std::size_t col = 0; col < pairs.size(); ++col) {
      A[pairs[col].first][pairs[col].second] = q(static_cast<int>(col), c);
      A[pairs[col].second][pairs[col].first] = -q(static_cast<int>(col), c);
    }
    basis.push_back(A);
  }
  return basis;
}

std::array<double, 7> s6_point(const Point& u) {
  double n2 = 0.0;
  for (double v : u) n2 += v * v;
  std::array<double, 7> p{};
  for (int i = 0; i < 6; ++i) p[i] = 2 * u[i] / (1 + n2);
  p[6] = (n2 - 1) / (1 + n2);
  return p;
}

MChartPtr build_s6(const S6Config& config) {
  S6Fields f;
  f.A = config.killing_generator ? *config.killing_generator : g2_basis().front();
  // unit length at a fixed reference point
  const Point ref{0.3, -0.2, 0.5, 0.1, -0.4, 0.25};
  const auto p = s6_point(ref);
  double n2 = 0.0;
  for (int k = 0; k < 7; ++k) {
    double v = 0.0;
    for (int l = 0; l < 7; ++l) v += f.A[k][l] * p[l];
    n2 += v * v;
  }
  if (!(n2 > 1e-12)) throw DegenerateError("Killing generator vanishes at the reference point");
  f.xi_scale = 1.0 / std::sqrt(n2);
  auto chart = make_function_chart<6, 2>("s6", cube(6, config.half_width), f);
  chart->set_orientation(orientation_from_omega(chart->values(chart->domain().center())));
  return chart;
}

double kahler_einstein_radius() { return 1.0 / (2.0 * std::sqrt(3.0)); }

NChartPtr build_s2s2(double r1, double r2) {
  if (!(r1 > 0.0 && r2 > 0.0)) throw ConfigError("sphere radii must be positive");
  Box b;
  const double m = 0.3;
  b.lo = {m, -3.0, m, -3.0};
  b.hi = {M_PI - m, 3.0, M_PI - m, 3.0};
  return make_function_chart<4, 4>("s2s2", b, S2S2Fields{r1, r2});
}

}  // namespace nkg
