#pragma once

#include <cmath>

#include "nkg/check.hpp"
#include "nkg/errors.hpp"
#include "nkg/reduction.hpp"

namespace nkg::checks {

using SP = StructurePoint<6, 2>;
using RP = ReductionPoint<2>;

// Run f(point) once per sample; degenerate draws (e.g. a random pair that happens
// to be complex-collinear) are redrawn a bounded number of times.
template <class F>
CheckOutcome sample_points(CheckInput& in, const Box& box, F&& f) {
  CheckOutcome out;
  for (int s = 0; s < in.samples; ++s) {
    for (int attempt = 0;; ++attempt) {
      const Point p = in.sampler.point(box);
      try {
        out.residuals.push_back(f(p));
        break;
      } catch (const DegenerateError&) {
        if (attempt >= 10) throw;
      }
    }
  }
  return out;
}

template <class F>
CheckOutcome sample_chart(CheckInput& in, F&& f) {
  const MChartPtr chart = in.model.chart();
  return sample_points(in, chart->domain(), [&](const Point& p) { return f(*chart, p); });
}

// Mean of recorded values, attached as the report value.
struct Mean {
  double sum = 0.0;
  int n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> get() const { return n ? std::optional<double>(sum / n) : std::nullopt; }
};

inline double gnorm(const Tensor<double>& t, const Tensor<double>& g, const Tensor<double>& ginv) {
  return norm(t, g, ginv);
}

template <class S>
double gnorm(const S& s, const Tensor<double>& t) {
  return norm(t, s.g(), s.ginv());
}

inline Tensor<double> basis_vector(int n, int i) {
  Tensor<double> v = vector_tensor<double>(n);
  v[i] = 1.0;
  return v;
}

// Evaluate a (Down..Down) tensor on vectors.
inline double eval(const Tensor<double>& t, std::initializer_list<Tensor<double>> vs) {
  std::vector<Tensor<double>> v(vs);
  const Tensor<double> r = insert_vectors(t, std::span<const Tensor<double>>(v));
  return r[0];
}

}  // namespace nkg::checks
