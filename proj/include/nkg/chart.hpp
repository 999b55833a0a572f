#pragma once

// Coordinate charts: an open coordinate box plus smooth evaluators for the
// metric and auxiliary structure fields.  Evaluators are written once as
// templates over the scalar type and instantiated for doubles and jets.

#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "nkg/errors.hpp"
#include "nkg/jet.hpp"
#include "nkg/tensor.hpp"

namespace nkg {

using Point = std::vector<double>;

struct Box {
  std::vector<double> lo, hi;

  int dim() const { return static_cast<int>(lo.size()); }

  bool contains(const Point& p, double margin_fraction = 0.0) const {
    if (static_cast<int>(p.size()) != dim()) return false;
    for (int i = 0; i < dim(); ++i) {
      const double m = margin_fraction * (hi[i] - lo[i]);
      if (!(p[i] > lo[i] + m && p[i] < hi[i] - m)) return false;
    }
    return true;
  }

  Point center() const {
    Point c(dim());
    for (int i = 0; i < dim(); ++i) c[i] = 0.5 * (lo[i] + hi[i]);
    return c;
  }
};

template <class S>
struct StructureFields {
  Tensor<S> metric;                              // g_ij
  std::optional<Tensor<S>> complex_structure;    // J^i_j
  std::map<std::string, Tensor<S>> endomorphisms;  // further (1,1) tensors, by name
  std::map<std::string, Tensor<S>> vector_fields;  // X^i, by name
};

enum class DerivativeMode { ExactPropagation, ExtrapolatedDifferences };

inline std::string to_string(DerivativeMode m) {
  return m == DerivativeMode::ExactPropagation ? "exact" : "differences";
}

inline DerivativeMode parse_derivative_mode(const std::string& s) {
  if (s == "exact" || s == "exact-propagation") return DerivativeMode::ExactPropagation;
  if (s == "differences" || s == "extrapolated-differences")
    return DerivativeMode::ExtrapolatedDifferences;
  throw ConfigError("unknown derivative mode: " + s);
}

// Interface shared by all charts of dimension D whose jets carry derivatives to order K.
template <int D, int K>
class Chart {
 public:
  using JetT = Jet<D, K>;
  static constexpr int kDim = D;
  static constexpr int kOrder = K;

  virtual ~Chart() = default;

  virtual std::string name() const = 0;
  virtual const Box& domain() const = 0;
  // +1 if dx^1 ^ ... ^ dx^D is positively oriented for the structure's volume form.
  virtual int orientation() const { return 1; }
  virtual DerivativeMode mode() const { return DerivativeMode::ExactPropagation; }

  virtual StructureFields<double> values(const Point& p) const = 0;
  virtual StructureFields<JetT> jets(const Point& p) const = 0;

  void require_inside(const Point& p) const {
    if (!domain().contains(p)) {
      std::ostringstream os;
      os << "point outside the domain of chart '" << name() << "'";
      throw DomainError(os.str());
    }
  }
};

template <int D, int K>
using ChartPtr = std::shared_ptr<const Chart<D, K>>;

// Chart backed by a functor with a templated call operator
//   template <class S> StructureFields<S> operator()(const std::array<S, D>& x) const;
template <int D, int K, class Fields>
class FunctionChart : public Chart<D, K> {
 public:
  using JetT = Jet<D, K>;

  FunctionChart(std::string name, Box box, Fields fields, int orientation = 1)
      : name_(std::move(name)), box_(std::move(box)), fields_(std::move(fields)),
        orientation_(orientation) {}

  std::string name() const override { return name_; }
  const Box& domain() const override { return box_; }
  int orientation() const override { return orientation_; }
  void set_orientation(int o) { orientation_ = o; }
  const Fields& fields() const { return fields_; }

  StructureFields<double> values(const Point& p) const override {
    this->require_inside(p);
    std::array<double, D> x{};
    for (int i = 0; i < D; ++i) x[i] = p[i];
    return fields_(x);
  }

  StructureFields<JetT> jets(const Point& p) const override {
    this->require_inside(p);
    std::array<JetT, D> x;
    for (int i = 0; i < D; ++i) x[i] = JetT::variable(i, p[i]);
    return fields_(x);
  }

 private:
  std::string name_;
  Box box_;
  Fields fields_;
  int orientation_;
};

template <int D, int K, class Fields>
std::shared_ptr<FunctionChart<D, K, Fields>> make_function_chart(std::string name, Box box,
                                                                  Fields fields,
                                                                  int orientation = 1) {
  return std::make_shared<FunctionChart<D, K, Fields>>(std::move(name), std::move(box),
                                                       std::move(fields), orientation);
}

// Cross-check engine: builds jets of the primitive fields from Richardson-extrapolated
// central differences of the wrapped chart's pointwise values.  Supports order <= 2.
template <int D, int K>
class DifferencedChart : public Chart<D, K> {
 public:
  using JetT = Jet<D, K>;

  explicit DifferencedChart(ChartPtr<D, K> inner, double step = 2e-3)
      : inner_(std::move(inner)), step_(step) {
    if (K > 2) throw OrderError("extrapolated differences provide derivatives up to order 2 only");
  }

  std::string name() const override { return inner_->name(); }
  const Box& domain() const override { return inner_->domain(); }
  int orientation() const override { return inner_->orientation(); }
  DerivativeMode mode() const override { return DerivativeMode::ExtrapolatedDifferences; }
  StructureFields<double> values(const Point& p) const override { return inner_->values(p); }

  StructureFields<JetT> jets(const Point& p) const override {
    this->require_inside(p);
    const StructureFields<double> f0 = inner_->values(p);

    // Flatten every field into one vector so a single stencil serves all of them.
    auto flatten = [](const StructureFields<double>& f) {
      std::vector<double> v(f.metric.data());
      if (f.complex_structure) v.insert(v.end(), f.complex_structure->data().begin(), f.complex_structure->data().end());
      for (const auto& [k, t] : f.endomorphisms) v.insert(v.end(), t.data().begin(), t.data().end());
      for (const auto& [k, t] : f.vector_fields) v.insert(v.end(), t.data().begin(), t.data().end());
      return v;
    };
    const std::vector<double> v0 = flatten(f0);
    const std::size_t n = v0.size();
    auto eval = [&](const std::vector<std::pair<int, double>>& shifts) {
      Point q = p;
      for (auto [i, s] : shifts) q[i] += s;
      return flatten(inner_->values(q));
    };

    std::vector<JetT> out(n);
    for (std::size_t c = 0; c < n; ++c) out[c] = JetT(v0[c]);

    if constexpr (K >= 1) {
      for (int i = 0; i < D; ++i) {
        // first derivatives: D(h) = (f(x+h) - f(x-h)) / 2h, Richardson with h/2
        std::vector<double> d1(n), d2(n), dd1(n), dd2(n);
        for (int level = 0; level < 2; ++level) {
          const double h = step_ / (level + 1);
          const auto fp = eval({{i, h}}), fm = eval({{i, -h}});
          for (std::size_t c = 0; c < n; ++c) {
            (level == 0 ? d1 : d2)[c] = (fp[c] - fm[c]) / (2 * h);
            (level == 0 ? dd1 : dd2)[c] = (fp[c] - 2 * v0[c] + fm[c]) / (h * h);
          }
        }
        for (std::size_t c = 0; c < n; ++c) {
          out[c].coefficient(1 + i) = (4 * d2[c] - d1[c]) / 3;
          if constexpr (K >= 2) out[c].coefficient(diag_index(i)) = 0.5 * (4 * dd2[c] - dd1[c]) / 3;
        }
      }
    }
    if constexpr (K >= 2) {
      for (int i = 0; i < D; ++i)
        for (int j = i + 1; j < D; ++j) {
          std::vector<double> m1(n), m2(n);
          for (int level = 0; level < 2; ++level) {
            const double h = step_ / (level + 1);
            const auto pp = eval({{i, h}, {j, h}}), pm = eval({{i, h}, {j, -h}});
            const auto mp = eval({{i, -h}, {j, h}}), mm = eval({{i, -h}, {j, -h}});
            for (std::size_t c = 0; c < n; ++c)
              (level == 0 ? m1 : m2)[c] = (pp[c] - pm[c] - mp[c] + mm[c]) / (4 * h * h);
          }
          for (std::size_t c = 0; c < n; ++c) out[c].coefficient(mixed_index(i, j)) = (4 * m2[c] - m1[c]) / 3;
        }
    }

    StructureFields<JetT> r;
    std::size_t pos = 0;
    auto take = [&](const Tensor<double>& shape) {
      Tensor<JetT> t(shape.dim(), shape.slots());
      for (std::size_t k = 0; k < t.size(); ++k) t[k] = out[pos++];
      return t;
    };
    r.metric = take(f0.metric);
    if (f0.complex_structure) r.complex_structure = take(*f0.complex_structure);
    for (const auto& [k, t] : f0.endomorphisms) r.endomorphisms.emplace(k, take(t));
    for (const auto& [k, t] : f0.vector_fields) r.vector_fields.emplace(k, take(t));
    return r;
  }

 private:
  static int diag_index(int i) {
    std::array<std::uint8_t, D> e{};
    e[i] = 2;
    return detail::monomial_table<D, K>().index_of(e);
  }
  static int mixed_index(int i, int j) {
    std::array<std::uint8_t, D> e{};
    e[i] = 1;
    e[j] = 1;
    return detail::monomial_table<D, K>().index_of(e);
  }

  ChartPtr<D, K> inner_;
  double step_;
};

struct DerivativeEngine {
  DerivativeMode mode = DerivativeMode::ExactPropagation;
  int order = 4;
  double step = 2e-3;
};

// Wrap a chart according to the engine's mode.
template <int D, int K>
ChartPtr<D, K> with_engine(ChartPtr<D, K> chart, const DerivativeEngine& engine) {
  if (engine.mode == DerivativeMode::ExactPropagation) return chart;
  return std::make_shared<DifferencedChart<D, K>>(std::move(chart), engine.step);
}

}  // namespace nkg
