// Acceptance run: one PASS/FAIL line per criterion, pinned tolerances.

#include <algorithm>
#include <cstdio>
#include <iostream>
#include <sstream>

#include "nkg/check.hpp"
#include "nkg/nearly_kahler.hpp"

using namespace nkg;

namespace {

constexpr std::uint64_t kSeed = 7;

struct Item {
  std::string model;
  std::string id;
  double tol;
};

struct Verdict {
  bool ok = true;
  std::string worst;
  double worst_ratio = 0.0;
  std::ostringstream notes;
};

void run_items(const std::vector<Item>& items, Verdict& v, int samples = 50) {
  std::map<std::string, std::vector<Item>> by_model;
  for (const auto& it : items) by_model[it.model].push_back(it);
  for (const auto& [model, list] : by_model) {
    RunConfig cfg;
    cfg.model = model;
    cfg.samples = samples;
    cfg.seed = kSeed;
    for (const auto& it : list) {
      cfg.only.insert(it.id);
      cfg.tolerances[it.id] = it.tol;
    }
    for (const auto& r : run(cfg)) {
      const double res = r.max_residual.value_or(1e300);
      const bool ok = r.pass && r.error.empty();
      if (!ok) {
        v.ok = false;
        v.notes << " " << model << ":" << r.id << "=" << res << (r.error.empty() ? "" : " (" + r.error + ")");
      }
      const double ratio = r.tolerance > 0 ? res / r.tolerance : (res > 0 ? 1e300 : 0.0);
      if (ratio >= v.worst_ratio) {
        v.worst_ratio = ratio;
        std::ostringstream w;
        w << model << ":" << r.id << " " << res << "/" << r.tolerance;
        v.worst = w.str();
      }
    }
  }
}

// Negative control: the residual must exceed the threshold, with no error.
void run_control(const std::string& model, const std::string& id, double threshold, Verdict& v) {
  RunConfig cfg;
  cfg.model = model;
  cfg.samples = 50;
  cfg.seed = kSeed;
  cfg.only = {id};
  const auto reps = run(cfg);
  const auto& r = reps.at(0);
  const double res = r.max_residual.value_or(0.0);
  const bool ok = r.error.empty() && res > threshold && r.outcome() == "xfail";
  if (!ok) v.ok = false;
  v.notes << " " << model << ":" << id << "=" << res << (ok ? ">" : "<=") << threshold;
}

void alpha_spread(const std::string& model, int samples, double tol, Verdict& v) {
  const ModelContext ctx(model, DerivativeEngine{});
  const MChartPtr chart = ctx.chart();
  Sampler smp(kSeed, "acceptance-alpha");
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < samples; ++i) {
    const Point p = smp.point(chart->domain());
    StructurePoint<6, 2> s(*chart, p);
    const auto x = smp.unit_vector(s.g()), y = smp.unit_vector(s.g());
    const double a = constant_type_at(s, x, y);
    lo = std::min(lo, a);
    hi = std::max(hi, a);
  }
  const double spread = hi - lo, dev = std::max(std::abs(hi - 1.0), std::abs(lo - 1.0));
  if (!(spread < tol && dev < tol)) v.ok = false;
  v.notes << " " << model << ":alpha in [" << lo << ", " << hi << "] spread " << spread;
}

std::vector<Item> on(const std::vector<std::string>& models, const std::vector<std::string>& ids, double tol) {
  std::vector<Item> out;
  for (const auto& m : models)
    for (const auto& id : ids) out.push_back({m, id, tol});
  return out;
}

void add(std::vector<Item>& a, const std::vector<Item>& b) { a.insert(a.end(), b.begin(), b.end()); }

}  // namespace

int main() {
  std::vector<std::pair<std::string, Verdict>> results;
  auto criterion = [&](const std::string& name, auto&& body) {
    Verdict v;
    try {
      body(v);
    } catch (const std::exception& e) {
      v.ok = false;
      v.notes << " exception: " << e.what();
    }
    std::printf("%s %s |%s%s\n", v.ok ? "PASS" : "FAIL", name.c_str(),
                v.worst.empty() ? "" : (" worst " + v.worst).c_str(), v.notes.str().c_str());
    std::fflush(stdout);
    results.emplace_back(name, std::move(v));
  };

  const std::vector<std::string> nk{"s3s3", "s6"};

  criterion("C1 model-curvature", [&](Verdict& v) {
    run_items({{"s6", "einstein", 1e-6}, {"s6", "scalar-curvature", 1e-6}, {"s2s2", "base-einstein", 1e-7}}, v);
  });

  criterion("C2 gray-suite", [&](Verdict& v) {
    std::vector<Item> it;
    add(it, on(nk, {"gray-item1-skew", "gray-item2-jx", "gray-item3-anti-linear", "gray-item4-vector-fields"}, 1e-8));
    add(it, on(nk, {"gray-item5-second-derivative"}, 1e-6));
    add(it, on(nk, {"gray-ortho", "gray-frame-orthonormal"}, 1e-9));
    add(it, on(nk, {"gray-frame-omega", "gray-frame-nabla-j", "gray-frame-star-nabla-j"}, 1e-7));
    add(it, on(nk, {"gray-elementary-forms"}, 1e-8));
    run_items(it, v);
  });

  criterion("C3 constant-type", [&](Verdict& v) {
    for (const auto& m : nk) alpha_spread(m, 200, 1e-7, v);
    run_items({{"s3s3", "constant-type-scaling", 1e-8}}, v);
  });

  criterion("C4 laplacians", [&](Verdict& v) {
    run_items({{"s3s3", "rough-laplacian-omega", 1e-6},
               {"s3s3", "laplacian-omega", 1e-6},
               {"s3s3", "laplacian-zeta", 1e-5},
               {"s3s3", "laplacian-jzeta", 1e-5},
               {"s3s3", "codifferential-jzeta", 1e-6}},
              v);
  });

  criterion("C5 reduction", [&](Verdict& v) {
    std::vector<Item> it;
    add(it, on({"s3s3"},
               {"killing-lie-g", "killing-lie-j", "killing-lie-omega", "killing-lie-domega", "killing-unit-length",
                "killing-left-generator", "foliation-relations", "djzeta-identities", "transversal-complex-structures",
                "transversal-relations", "acs-nabla-j-horizontal", "dzeta-type-endomorphisms", "sigma-involution",
                "splitting-e-f", "idh-identity", "i0-complex-structure", "omega-i-compatibility",
                "omega-k-type-parts", "omega-j-anti-invariant", "dzeta-omega-orthogonal", "g0-spectrum"},
               1e-8));
    add(it, on({"s3s3"}, {"covtrans-horizontal-parallel", "projectability", "g0-levi-civita"}, 1e-6));
    add(it, on({"s3s3"}, {"lemma-norm-dzeta11", "lemma-norm-dzeta20", "norm-jhat", "norm-djzeta"}, 1e-6));
    run_items(it, v);
  });

  criterion("C6 lie-formulas", [&](Verdict& v) {
    run_items(on({"s3s3"},
                 {"lie-metric", "lie-dzeta", "lie-djzeta", "lie-omega", "lie-j", "lie-omega-k",
                  "lie-k", "lie-omega-jhat", "lie-jhat", "lie-omega-i", "lie-i", "lie-sigma-flat",
                  "lie-g0-preserved", "lie-jhat-form-sum"},
                 1e-7),
              v);
  });

  criterion("C7 kaehler-base", [&](Verdict& v) {
    run_items(on({"s3s3"},
                 {"kahler-i0-parallel", "kahler-k-parallel", "psi-parallel", "psi-two-forms-agree", "psi-type",
                  "psi-weight", "dzeta-prime", "almost-kahler-jhat"},
                 1e-6),
              v);
  });

  criterion("C8 canonical-connection", [&](Verdict& v) {
    run_items({{"s3s3", "canonical-metric", 1e-8},
               {"s3s3", "canonical-j", 1e-8},
               {"s3s3", "canonical-xi", 1e-7},
               {"s3s3", "canonical-sigma-parallel", 1e-6},
               {"s3s3", "canonical-e-parallel", 1e-6},
               {"s3s3", "canonical-f-parallel", 1e-6}},
              v);
  });

  criterion("C9 sekigawa", [&](Verdict& v) {
    run_items({{"s2s2", "sekigawa-weitzenboeck", 1e-5}, {"s2s2", "sekigawa-sstar", 1e-7}}, v);
  });

  criterion("C10 ansatz", [&](Verdict& v) {
    run_items({{"s2s2", "ansatz-constant-type", 1e-5},
               {"s2s2", "ansatz-scalar-curvature", 1e-4},
               {"s2s2", "ansatz-killing-unit", 1e-6},
               {"s2s2", "ansatz-gauge-invariance", 1e-8},
               {"s2s2", "ansatz-s3s3-agreement", 1e-4},
               {"s2s2", "ansatz-j-squared", 1e-6},
               {"s2s2", "ansatz-nk-condition", 1e-6}},
              v);
  });

  criterion("C11 negative-controls", [&](Verdict& v) {
    run_control("s6", "killing-constant-length-family", 0.05, v);
    run_control("s3s3", "nk-condition-product-control", 0.1, v);
  });

  int failed = 0;
  for (const auto& [n, v] : results) failed += v.ok ? 0 : 1;
  std::printf("%d/%zu criteria passed\n", int(results.size()) - failed, results.size());
  return failed ? 1 : 0;
}
