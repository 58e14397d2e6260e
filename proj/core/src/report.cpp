#include "biham/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "biham/error.hpp"

namespace biham {

namespace {

using nlohmann::ordered_json;

ordered_json number(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json pairs(const std::vector<std::pair<std::string, double>>& kv) {
  ordered_json o = ordered_json::object();
  for (const auto& [k, v] : kv) o[k] = number(v);
  return o;
}

}  // namespace

std::string report_json(const VerificationReport& r, int indent) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["seed"] = r.seed;
  j["params"] = {{"mu", r.params.mu()},
                 {"jsq", r.params.jsq()},
                 {"symmetric", r.params.is_symmetric()}};
  j["options"] = {{"points", r.options.points},
                  {"tol_scale", r.options.tol_scale},
                  {"threads", r.options.threads},
                  {"mutation", std::string(to_string(r.options.mutation))}};
  ordered_json checks = ordered_json::array();
  for (const auto& c : r.checks) {
    ordered_json e;
    e["name"] = c.spec.name;
    e["status"] = std::string(to_string(c.status));
    e["pass"] = c.pass();
    e["max_residual"] = number(c.max_residual);
    e["tolerance"] = c.spec.tolerance;
    e["normalization"] = std::string(to_string(c.spec.normalization));
    e["n_points"] = c.spec.n_points;
    e["n_evaluated"] = c.n_evaluated;
    e["n_skipped_degenerate"] = c.n_skipped_degenerate;
    if (!c.note.empty()) e["note"] = c.note;
    e["diagnostics"] = pairs(c.diagnostics);
    checks.push_back(std::move(e));
  }
  j["checks"] = std::move(checks);
  ordered_json res = ordered_json::array();
  for (const auto& x : r.resolutions)
    res.push_back({{"topic", x.topic}, {"finding", x.finding}, {"evidence", pairs(x.evidence)}});
  j["resolutions"] = std::move(res);
  j["summary"] = {{"passed", r.count(CheckStatus::Pass)},
                  {"failed", r.count(CheckStatus::Fail)},
                  {"skipped", r.count(CheckStatus::Skipped)},
                  {"inconclusive", r.count(CheckStatus::Inconclusive)},
                  {"diagnostic", r.count(CheckStatus::Diagnostic)}};
  j["elapsed_seconds"] = r.elapsed_seconds;
  j["overall"] = r.overall ? "pass" : "fail";
  return j.dump(indent);
}

void write_report(const VerificationReport& report, const std::string& path) {
  std::ofstream f(path);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write report to '" + path + "'");
  f << report_json(report) << '\n';
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write report to '" + path + "'");
}

std::string summary_table(const VerificationReport& r) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-32s %-12s %12s %10s %6s %5s\n", "check", "status",
                "residual", "tolerance", "n", "skip");
  out += line;
  for (const auto& c : r.checks) {
    std::snprintf(line, sizeof line, "%-32s %-12s %12.3e %10.1e %6d %5d\n", c.spec.name.c_str(),
                  std::string(to_string(c.status)).c_str(), c.max_residual, c.spec.tolerance,
                  c.n_evaluated, c.n_skipped_degenerate);
    out += line;
  }
  std::snprintf(line, sizeof line,
                "overall: %s (%d passed, %d failed, %d skipped, %d inconclusive, %d diagnostic)\n",
                r.overall ? "PASS" : "FAIL", r.count(CheckStatus::Pass),
                r.count(CheckStatus::Fail), r.count(CheckStatus::Skipped),
                r.count(CheckStatus::Inconclusive), r.count(CheckStatus::Diagnostic));
  out += line;
  return out;
}

}  // namespace biham
