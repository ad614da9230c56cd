#include "fracineq/report.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>

namespace fracineq {

namespace {

using OJson = nlohmann::ordered_json;

std::string_view kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::Inequality: return "inequality";
    case CheckKind::Identity: return "identity";
    case CheckKind::Limit: return "limit";
  }
  return "?";
}

// Non-finite values become null instead of invalid JSON.
OJson number(double v) { return std::isfinite(v) ? OJson(v) : OJson(nullptr); }

OJson case_json(const CaseRecord& rec) {
  const CheckResult& r = rec.result;
  OJson j;
  j["case_id"] = r.case_id;
  j["suite"] = r.suite;
  j["variant"] = r.variant;
  j["kind"] = kind_name(r.kind);
  j["params"] = {{"alpha", number(r.params.alpha)}, {"beta", number(r.params.beta)},
                 {"rho", number(r.params.rho)},     {"eta", number(r.params.eta)},
                 {"kappa", number(r.params.kappa)}, {"a", number(r.params.lower)}};
  j["gamma"] = r.gamma ? number(*r.gamma) : OJson(nullptr);
  j["x"] = number(r.x);
  j["seed"] = r.seed;
  j["lhs"] = number(r.lhs);
  j["rhs"] = number(r.rhs);
  j["margin"] = number(r.margin);
  j["residual"] = number(r.residual);
  j["scale"] = number(r.scale);
  j["lambda_alpha"] = number(r.lambda_alpha);
  j["lambda_gamma"] = r.lambda_gamma ? number(*r.lambda_gamma) : OJson(nullptr);
  OJson extras = OJson::object();
  for (const auto& e : r.extras) extras[e.name] = number(e.value);
  j["extras"] = extras;
  j["refinement_delta"] = number(rec.refinement_delta);
  j["excluded"] = rec.excluded;
  j["violation"] = rec.violation;
  j["identity_failure"] = rec.identity_failure;
  if (!rec.error.empty()) j["error"] = rec.error;
  return j;
}

std::string g17(double v) {
  if (!std::isfinite(v)) return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Identifiers are generated, but quote defensively if one ever holds a comma.
std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string render_json(const Report& report) {
  OJson j;
  j["artifact_version"] = report.artifact_version;
  j["report_schema_version"] = kReportSchemaVersion;
  j["config"] = config_to_json(report.config);
  OJson summary = OJson::array();
  for (const auto& s : report.summary) {
    summary.push_back({{"suite", s.suite},
                       {"cases", s.cases},
                       {"excluded_by_refinement", s.excluded},
                       {"violations", s.violations},
                       {"identity_failures", s.identity_failures},
                       {"errors", s.errors},
                       {"min_margin", number(s.min_margin)},
                       {"min_relative_margin", number(s.min_relative_margin)},
                       {"max_abs_residual", number(s.max_abs_residual)},
                       {"max_relative_residual", number(s.max_relative_residual)}});
  }
  j["summary"] = summary;
  j["exit_code"] = exit_code(report);
  OJson cases = OJson::array();
  for (const auto& rec : report.cases) cases.push_back(case_json(rec));
  j["cases"] = cases;
  j["wall_time_seconds"] = report.wall_time_seconds;
  return j.dump(1) + "\n";
}

std::string render_csv(const Report& report) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& rec : report.cases) {
    const CheckResult& r = rec.result;
    const Params& p = r.params;
    out += csv_field(r.case_id) + "," + csv_field(r.suite) + "," + csv_field(r.variant) + ",";
    for (double v : {p.alpha, p.beta, p.rho, p.eta, p.kappa, p.lower}) out += g17(v) + ",";
    out += (r.gamma ? g17(*r.gamma) : std::string()) + ",";
    out += g17(r.x) + ",";
    char seed[32];
    std::snprintf(seed, sizeof seed, "%" PRIu64, r.seed);
    out += std::string(seed) + ",";
    out += g17(r.lhs) + "," + g17(r.rhs) + "," + g17(r.margin) + "," + g17(r.residual) + "\n";
  }
  return out;
}

std::string render(const Report& report, const std::string& format) {
  return format == "csv" ? render_csv(report) : render_json(report);
}

std::string render_summary(const Report& report) {
  auto cell = [](double v) {
    char buf[32];
    if (std::isnan(v)) return std::string("-");
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return std::string(buf);
  };
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%-16s %7s %8s %10s %9s %7s %14s %14s\n", "suite", "cases", "excluded",
                "violations", "id_fail", "errors", "min_rel_margin", "max_rel_resid");
  out += line;
  for (const auto& s : report.summary) {
    std::snprintf(line, sizeof line, "%-16s %7zu %8zu %10zu %9zu %7zu %14s %14s\n", s.suite.c_str(), s.cases,
                  s.excluded, s.violations, s.identity_failures, s.errors, cell(s.min_relative_margin).c_str(),
                  cell(s.max_relative_residual).c_str());
    out += line;
  }
  return out;
}

}  // namespace fracineq
