#include "nkg/check.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "nkg/ansatz.hpp"
#include "nkg/errors.hpp"
#include "nkg/reduction.hpp"

namespace nkg {

std::string CheckReport::outcome() const {
  if (!error.empty()) return "error";
  if (expected_fail) return pass ? "xpass" : "xfail";
  return pass ? "pass" : "fail";
}

ModelContext::ModelContext(std::string model, DerivativeEngine engine)
    : model_(std::move(model)), engine_(engine) {
  const auto& m = known_models();
  if (std::find(m.begin(), m.end(), model_) == m.end()) throw ConfigError("unknown model '" + model_ + "'");
}

MChartPtr ModelContext::chart() const {
  if (!chart_) {
    if (model_ == "s3s3") chart_ = with_engine(build_s3s3(), engine_);
    else if (model_ == "s6") chart_ = with_engine(build_s6(), engine_);
    else chart_ = ansatz();
  }
  return chart_;
}

NChartPtr ModelContext::base() const {
  if (!base_) {
    const double r = kahler_einstein_radius();
    base_ = with_engine(build_s2s2(r, r), engine_);
  }
  return base_;
}

MChartPtr ModelContext::ansatz() const {
  if (model_ != "s2s2") throw PreconditionError("the ansatz is built over the s2s2 base");
  if (!ansatz_) ansatz_ = with_engine(build_ansatz(), engine_);
  return ansatz_;
}

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

Sampler::Sampler(std::uint64_t seed, const std::string& id) : rng_(seed ^ fnv1a(id)) {}

double Sampler::uniform(double lo, double hi) {
  // explicit construction keeps the stream identical across standard libraries
  const double u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

Point Sampler::point(const Box& box, double margin) {
  Point p(box.dim());
  for (int i = 0; i < box.dim(); ++i) {
    const double w = box.hi[i] - box.lo[i];
    p[i] = uniform(box.lo[i] + margin * w, box.hi[i] - margin * w);
  }
  return p;
}

Tensor<double> Sampler::unit_vector(const Tensor<double>& g) {
  return unit_in(g, identity_endomorphism<double>(g.dim()));
}

Tensor<double> Sampler::unit_in(const Tensor<double>& g, const Tensor<double>& p) {
  const int n = g.dim();
  for (int attempt = 0; attempt < 100; ++attempt) {
    Tensor<double> v = vector_tensor<double>(n);
    for (int i = 0; i < n; ++i) {
      // Box-Muller
      const double u1 = uniform(1e-300, 1.0), u2 = uniform(0.0, 1.0);
      v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    v = apply(p, v);
    const double nn = pair(g, v, v);
    if (nn > 1e-12) return v * (1.0 / std::sqrt(nn));
  }
  throw DegenerateError("projector image is empty");
}

const std::vector<std::string>& known_models() {
  static const std::vector<std::string> m{"s3s3", "s6", "s2s2"};
  return m;
}

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> s{"gray", "nk-core", "reduction", "lie", "base", "canonical", "ansatz", "all"};
  return s;
}

const std::vector<CheckDef>& check_registry() {
  static const std::vector<CheckDef> reg = [] {
    std::vector<CheckDef> r;
    register_nk_checks(r);
    register_reduction_checks(r);
    register_canonical_checks(r);
    register_base_checks(r);
    register_ansatz_checks(r);
    std::sort(r.begin(), r.end(), [](const CheckDef& a, const CheckDef& b) { return a.id < b.id; });
    return r;
  }();
  return reg;
}

std::vector<const CheckDef*> select_checks(const RunConfig& config) {
  const auto& models = known_models();
  if (std::find(models.begin(), models.end(), config.model) == models.end())
    throw ConfigError("unknown model '" + config.model + "'");
  if (config.samples < 1) throw ConfigError("sample count must be at least 1");
  if (config.suites.empty()) throw ConfigError("empty suite list");
  const auto& suites = known_suites();
  std::set<std::string> wanted;
  for (const auto& s : config.suites) {
    if (std::find(suites.begin(), suites.end(), s) == suites.end()) throw ConfigError("unknown suite '" + s + "'");
    wanted.insert(s);
  }
  std::vector<const CheckDef*> out;
  std::set<std::string> ids;
  for (const auto& def : check_registry()) {
    ids.insert(def.id);
    if (!def.models.count(config.model)) continue;
    if (!wanted.count("all") && !wanted.count(def.suite)) continue;
    if (!config.only.empty() && !config.only.count(def.id)) continue;
    out.push_back(&def);
  }
  for (const auto& [id, tol] : config.tolerances) {
    if (!ids.count(id)) throw ConfigError("tolerance override for unknown check '" + id + "'");
    if (!(tol >= 0.0)) throw ConfigError("tolerance for '" + id + "' must be nonnegative");
  }
  if (out.empty()) throw ConfigError("empty suite: no checks apply to model '" + config.model + "'");
  if (config.engine.mode == DerivativeMode::ExtrapolatedDifferences)
    for (const CheckDef* d : out)
      if (d->suite == "base")
        throw ConfigError("the base suite needs fourth derivatives; --deriv-mode differences provides two");
  return out;
}

std::map<std::string, double> residual_quantiles(std::vector<double> r) {
  std::map<std::string, double> q;
  if (r.empty()) return q;
  std::sort(r.begin(), r.end());
  auto at = [&](double f) {
    const std::size_t k = static_cast<std::size_t>(std::ceil(f * static_cast<double>(r.size()))) - 1;
    return r[std::min(k, r.size() - 1)];
  };
  q["min"] = r.front();
  q["p50"] = at(0.5);
  q["p90"] = at(0.9);
  q["max"] = r.back();
  return q;
}

CheckReport run_check(const CheckDef& def, const RunConfig& config, const ModelContext& model) {
  CheckReport rep;
  rep.id = def.id;
  rep.suite = def.suite;
  rep.model = config.model;
  rep.seed = config.seed;
  rep.samples = config.samples;
  auto it = config.tolerances.find(def.id);
  rep.tolerance = it != config.tolerances.end() ? it->second : def.tolerance;
  rep.expected_fail = def.expected_fail_models.count(config.model) > 0;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Sampler sampler(config.seed, def.id);
    CheckInput in{model, config.samples, sampler};
    CheckOutcome out = def.run(in);
    if (out.residuals.empty()) throw Error("check produced no residuals");
    double mx = 0.0;
    bool finite = true;
    for (double r : out.residuals) {
      if (!std::isfinite(r)) finite = false;
      mx = std::max(mx, r);
    }
    if (!finite) throw DegenerateError("non-finite residual");
    rep.max_residual = mx;
    rep.quantiles = residual_quantiles(out.residuals);
    rep.value = out.value;
    rep.pass = mx <= rep.tolerance;
  } catch (const std::exception& e) {
    rep.error = e.what();
    rep.pass = false;
  }
  rep.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

CheckReport verify_killing_unit(const MChart& chart, const std::string& field, int samples, std::uint64_t seed,
                                double tolerance) {
  CheckDef def;
  def.id = "verify-killing-unit";
  def.suite = "reduction";
  def.tolerance = tolerance;
  def.run = [&](CheckInput& in) {
    CheckOutcome out;
    double dev = 0.0;
    for (int s = 0; s < in.samples; ++s) {
      const ReductionPoint<2> r(chart, in.sampler.point(chart.domain()), field);
      const auto& geo = r.geo();
      const auto x = r.v(r.xi());
      const double d = std::abs(r.dot(x, x) - 1.0);
      dev = std::max(dev, d);
      out.residuals.push_back(std::max({d, geo.norm(values(geo.lie(r.xi(), geo.g()))),
                                        geo.norm(values(geo.lie(r.xi(), r.J()))),
                                        geo.norm(values(geo.lie(r.xi(), r.omega()))),
                                        geo.norm(values(geo.lie(r.xi(), r.d_omega())))}));
    }
    out.value = dev;
    return out;
  };
  RunConfig cfg;
  cfg.model = chart.name();
  cfg.samples = samples;
  cfg.seed = seed;
  const ModelContext none("s3s3", cfg.engine);
  return run_check(def, cfg, none);
}

std::vector<CheckReport> run(const RunConfig& config) {
  const auto checks = select_checks(config);
  ModelContext model(config.model, config.engine);
  std::vector<CheckReport> out;
  for (const CheckDef* def : checks) out.push_back(run_check(*def, config, model));
  return out;
}

}  // namespace nkg
