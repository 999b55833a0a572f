#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "nkg/check.hpp"
#include "nkg/errors.hpp"
#include "nkg/report.hpp"

using namespace nkg;

namespace {

CheckReport sample_report() {
  CheckReport r;
  r.id = "lemma-norm-dzeta11";
  r.suite = "reduction";
  r.model = "s3s3";
  r.seed = 42;
  r.samples = 7;
  r.max_residual = 1.25e-13;
  r.quantiles = {{"min", 1e-15}, {"p50", 3e-14}, {"p90", 1e-13}, {"max", 1.25e-13}};
  r.tolerance = 1e-6;
  r.pass = true;
  r.value = 8.000000000000002;
  r.wall_ms = 12.5;
  return r;
}

}  // namespace

TEST_CASE("report lines round-trip") {
  const CheckReport r = sample_report();
  const std::string line = to_json_line(r, "exact");
  const CheckReport back = report_from_json_line(line);
  CHECK(back.id == r.id);
  CHECK(back.suite == r.suite);
  CHECK(back.model == r.model);
  CHECK(back.seed == r.seed);
  CHECK(back.samples == r.samples);
  CHECK(*back.max_residual == *r.max_residual);
  CHECK(back.quantiles == r.quantiles);
  CHECK(back.tolerance == r.tolerance);
  CHECK(back.pass == r.pass);
  CHECK(back.expected_fail == r.expected_fail);
  CHECK(*back.value == *r.value);
  CHECK(back.wall_ms == r.wall_ms);
  CHECK(to_json_line(back, "exact") == line);
}

TEST_CASE("report keys come in a fixed order") {
  const auto j = nlohmann::ordered_json::parse(to_json_line(sample_report(), "exact"));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  const std::vector<std::string> expect{"schema_version", "id",   "suite",    "model",         "seed",
                                        "samples",        "deriv_mode", "max_residual", "quantiles", "tolerance",
                                        "pass",           "expected_fail", "outcome", "value", "error", "wall_ms"};
  CHECK(keys == expect);
  CHECK(j["schema_version"] == kReportSchemaVersion);
}

TEST_CASE("writing no reports is an error") {
  std::ostringstream os;
  CHECK_THROWS_AS(write_reports(os, {}, "exact"), Error);
}

TEST_CASE("run configuration errors") {
  RunConfig c;
  c.model = "bogus";
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.model = "s3s3";
  c.suites = {};
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.suites = {"nonsense"};
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.suites = {"base"};  // no base checks on s3s3
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.suites = {"gray"};
  c.samples = 0;
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.samples = 3;
  c.tolerances["no-such-check"] = 1.0;
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.tolerances = {{"gray-ortho", -1.0}};
  CHECK_THROWS_AS(select_checks(c), ConfigError);
  c.tolerances = {};
  CHECK_NOTHROW(select_checks(c));
  RunConfig d;
  d.model = "s2s2";
  d.suites = {"base"};
  d.engine.mode = DerivativeMode::ExtrapolatedDifferences;
  CHECK_THROWS_AS(select_checks(d), ConfigError);
}

TEST_CASE("runs are deterministic in the seed and honour tolerance overrides") {
  RunConfig c;
  c.model = "s6";
  c.suites = {"nk-core"};
  c.samples = 3;
  c.seed = 99;
  c.only = {"constant-type", "nk-condition"};
  const auto a = run(c), b = run(c);
  REQUIRE(a.size() == 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].id == b[i].id);
    CHECK(*a[i].max_residual == *b[i].max_residual);
    CHECK(a[i].value == b[i].value);
  }
  c.seed = 100;
  const auto other = run(c);
  CHECK(*other[0].value != *a[0].value);
  c.tolerances = {{"constant-type", 0.0}};
  for (const auto& r : run(c))
    if (r.id == "constant-type") CHECK(r.tolerance == 0.0);
}

TEST_CASE("same seed gives byte-identical reports apart from timings") {
  RunConfig c;
  c.model = "s3s3";
  c.suites = {"gray", "reduction"};
  c.samples = 3;
  auto text = [&] {
    auto reps = run(c);
    for (auto& r : reps) r.wall_ms = 0.0;
    std::ostringstream os;
    write_reports(os, reps, "exact");
    return os.str();
  };
  CHECK(text() == text());
}

TEST_CASE("registry ids are unique and every check names its models") {
  std::set<std::string> ids;
  for (const auto& d : check_registry()) {
    CHECK_MESSAGE(ids.insert(d.id).second, d.id);
    CHECK_FALSE(d.models.empty());
    CHECK(d.run);
    for (const auto& m : d.expected_fail_models) CHECK(d.models.count(m));
  }
}
