#pragma once

// Concrete chart manifolds: the homogeneous nearly Kaehler S^3 x S^3 with its unit
// Killing fields, the round unit S^6, and the Kaehler-Einstein product S^2 x S^2.

#include <array>
#include <vector>

#include "nkg/chart.hpp"
#include "nkg/models/octonion.hpp"
#include "nkg/models/quaternion.hpp"

namespace nkg {

// Charts on 6-manifolds carry second-order jets; base charts carry fourth-order jets.
using MJet = Jet<6, 2>;
using MChart = Chart<6, 2>;
using MChartPtr = ChartPtr<6, 2>;
using NJet = Jet<4, 4>;
using NChart = Chart<4, 4>;
using NChartPtr = ChartPtr<4, 4>;

struct S3S3Config {
  double scale = 0.0;  // 0 selects the calibrated scale
  Quaternion<double> p0 = Quaternion<double>::identity();
  Quaternion<double> q0 = Quaternion<double>::identity();
  std::array<double, 3> killing_direction{0.0, 0.0, 1.0};  // right-diagonal generator
  std::array<double, 3> left_direction{1.0, 0.0, 0.0};     // left generator on the first factor
  double killing_scale = 1.0;  // multiplies "xi" after normalization
  double half_width = 1.2;
  // Product metric |U|^2 + |V|^2 with J(U,V) = (-V, U): a negative control.
  bool product_structure = false;
};

// Chart (x, y) in R^3 x R^3 -> (p0 exp(x), q0 exp(y)).
// Fields: metric, J, vector fields "xi" (unit right-diagonal) and "xi_left".
MChartPtr build_s3s3(const S3S3Config& config = {});

// c* such that the structure at scale c* has constant type 1.
double calibrate_scale();

// Quaternion pair at chart coordinates.
std::array<Quaternion<double>, 2> s3s3_point(const S3S3Config& config, const Point& x);

using Mat7 = std::array<std::array<double, 7>, 7>;

// Basis of the Lie algebra g2 inside so(7): skew matrices annihilating the G2 3-form.
std::vector<Mat7> g2_basis();

struct S6Config {
  std::optional<Mat7> killing_generator;  // defaults to an element of g2
  double half_width = 1.2;
};

// Stereographic chart u in R^6 -> S^6 in R^7; J_p X = p x X.
// Fields: metric, J, vector field "xi" = A p scaled to unit length at the chart center.
MChartPtr build_s6(const S6Config& config = {});

// Point of S^6 at stereographic coordinates.
std::array<double, 7> s6_point(const Point& u);

// Product S^2(r1) x S^2(r2) in spherical coordinates (phi1, psi1, phi2, psi2).
// Fields: metric g0, complex structure I0 = (j1, j2), endomorphisms "I0" and
// "Jhat" = (j1, -j2).
NChartPtr build_s2s2(double r1, double r2);

// Radius of the spheres with Ric = 12 g.
double kahler_einstein_radius();

// Orientation making Omega^3 / 6 positive, from the values at one point.
int orientation_from_omega(const StructureFields<double>& f);

}  // namespace nkg
