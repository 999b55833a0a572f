#include "nkg/report.hpp"

#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "nkg/errors.hpp"

namespace nkg {

using ojson = nlohmann::ordered_json;

std::string to_json_line(const CheckReport& r, const std::string& deriv_mode) {
  ojson j;
  j["schema_version"] = kReportSchemaVersion;
  j["id"] = r.id;
  j["suite"] = r.suite;
  j["model"] = r.model;
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["deriv_mode"] = deriv_mode;
  j["max_residual"] = r.max_residual ? ojson(*r.max_residual) : ojson(nullptr);
  ojson q = ojson::object();
  for (const char* k : {"min", "p50", "p90", "max"}) {
    auto it = r.quantiles.find(k);
    if (it != r.quantiles.end()) q[k] = it->second;
  }
  j["quantiles"] = q;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["expected_fail"] = r.expected_fail;
  j["outcome"] = r.outcome();
  j["value"] = r.value ? ojson(*r.value) : ojson(nullptr);
  j["error"] = r.error.empty() ? ojson(nullptr) : ojson(r.error);
  j["wall_ms"] = r.wall_ms;
  return j.dump();
}

CheckReport report_from_json_line(const std::string& line) {
  const ojson j = ojson::parse(line);
  if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw ConfigError("unsupported report schema");
  CheckReport r;
  r.id = j.at("id").get<std::string>();
  r.suite = j.at("suite").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.samples = j.at("samples").get<int>();
  if (!j.at("max_residual").is_null()) r.max_residual = j.at("max_residual").get<double>();
  for (const auto& [k, v] : j.at("quantiles").items()) r.quantiles[k] = v.get<double>();
  r.tolerance = j.at("tolerance").get<double>();
  r.pass = j.at("pass").get<bool>();
  r.expected_fail = j.at("expected_fail").get<bool>();
  if (!j.at("value").is_null()) r.value = j.at("value").get<double>();
  if (!j.at("error").is_null()) r.error = j.at("error").get<std::string>();
  r.wall_ms = j.at("wall_ms").get<double>();
  return r;
}

void write_reports(std::ostream& os, const std::vector<CheckReport>& reports, const std::string& deriv_mode) {
  if (reports.empty()) throw ConfigError("no reports to write");
  for (const auto& r : reports) os << to_json_line(r, deriv_mode) << '\n';
}

std::string summary_line(const CheckReport& r) {
  std::string tag = r.outcome();
  for (auto& c : tag) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  char buf[256];
  if (!r.error.empty()) {
    std::snprintf(buf, sizeof buf, "%-6s %-36s error: ", tag.c_str(), r.id.c_str());
    return buf + r.error;
  }
  std::snprintf(buf, sizeof buf, "%-6s %-36s max %.3e  tol %.1e", tag.c_str(), r.id.c_str(),
                r.max_residual.value_or(0.0), r.tolerance);
  std::string s = buf;
  if (r.value) {
    std::snprintf(buf, sizeof buf, "  value %.10g", *r.value);
    s += buf;
  }
  return s;
}

}  // namespace nkg
