#pragma once

// Verification checks: a check samples points (and tangent vectors) of a model,
// computes one residual per sample and passes iff the largest residual is within
// its tolerance.  Negative controls are declared expected-fail.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "nkg/models/models.hpp"
#include "nkg/tensor.hpp"

namespace nkg {

inline constexpr int kReportSchemaVersion = 1;

struct CheckReport {
  std::string id;
  std::string suite;
  std::string model;
  std::uint64_t seed = 0;
  int samples = 0;
  std::optional<double> max_residual;
  std::map<std::string, double> quantiles;  // min, p50, p90, max
  double tolerance = 0.0;
  bool pass = false;
  bool expected_fail = false;
  std::optional<double> value;
  std::string error;
  double wall_ms = 0.0;

  // A check is satisfied when it passes, or fails while marked expected-fail.
  bool satisfied() const { return expected_fail ? (!pass && error.empty()) : pass; }
  std::string outcome() const;
};

// Charts for a named model, built lazily and shared by the checks of one run.
class ModelContext {
 public:
  ModelContext(std::string model, DerivativeEngine engine);

  const std::string& name() const { return model_; }
  const DerivativeEngine& engine() const { return engine_; }
  // The 6-dimensional chart of s3s3 / s6; for s2s2 the ansatz over the base.
  MChartPtr chart() const;
  // The Kaehler-Einstein S2 x S2 base.
  NChartPtr base() const;
  // The nearly Kaehler structure rebuilt over the base (s2s2 only).
  MChartPtr ansatz() const;

 private:
  std::string model_;
  DerivativeEngine engine_;
  mutable MChartPtr chart_;
  mutable NChartPtr base_;
  mutable MChartPtr ansatz_;
};

// Deterministic sampling: one generator per (seed, check id).
class Sampler {
 public:
  Sampler(std::uint64_t seed, const std::string& id);

  Point point(const Box& box, double margin = 0.05);
  // Gaussian direction normalized in g.
  Tensor<double> unit_vector(const Tensor<double>& g);
  // Unit vector in the image of the projector p.
  Tensor<double> unit_in(const Tensor<double>& g, const Tensor<double>& p);
  double uniform(double lo, double hi);
  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

struct CheckInput {
  const ModelContext& model;
  int samples;
  Sampler& sampler;
};

struct CheckOutcome {
  std::vector<double> residuals;
  std::optional<double> value;
};

struct CheckDef {
  std::string id;
  std::string suite;
  std::set<std::string> models;
  double tolerance = 1e-8;
  std::set<std::string> expected_fail_models;
  std::string description;
  std::function<CheckOutcome(CheckInput&)> run;
};

const std::vector<std::string>& known_models();
const std::vector<std::string>& known_suites();
const std::vector<CheckDef>& check_registry();

// Check registration, one function per suite family.
void register_nk_checks(std::vector<CheckDef>& out);
void register_reduction_checks(std::vector<CheckDef>& out);
void register_canonical_checks(std::vector<CheckDef>& out);
void register_base_checks(std::vector<CheckDef>& out);
void register_ansatz_checks(std::vector<CheckDef>& out);

struct RunConfig {
  std::string model;
  std::vector<std::string> suites{"all"};
  int samples = 50;
  std::uint64_t seed = 7;
  DerivativeEngine engine;
  std::map<std::string, double> tolerances;
  std::set<std::string> only;  // restrict to these check ids when nonempty
};

// Checks selected by a configuration; throws ConfigError for unknown names or an
// empty selection.
std::vector<const CheckDef*> select_checks(const RunConfig& config);

CheckReport run_check(const CheckDef& def, const RunConfig& config, const ModelContext& model);
std::vector<CheckReport> run(const RunConfig& config);

// Residual statistics helpers.
// Unit Killing field test for the vector field `field` of a chart: residual per sample is the
// largest of ||xi|^2 - 1|, |L_xi g|, |L_xi J|, |L_xi Omega|, |L_xi dOmega|; value is the largest
// ||xi|^2 - 1|.
CheckReport verify_killing_unit(const MChart& chart, const std::string& field, int samples, std::uint64_t seed,
                                double tolerance = 1e-8);

std::map<std::string, double> residual_quantiles(std::vector<double> r);

}  // namespace nkg
