#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fracineq/campaign.hpp"
#include "fracineq/report.hpp"

using namespace fracineq;

namespace {

const char* kSmall = R"({
  "schema_version": 1,
  "grid": {
    "alpha": [0.7, 1.9],
    "beta": [0.5],
    "rho": [1.5],
    "eta": [0.5],
    "kappa": [-0.5],
    "x": [1.2],
    "gamma": [1.0, 1.9]
  },
  "suites": ["lemma1", "lemma2", "theorem1", "young4", "polya5", "classical", "specializations"],
  "seed": 3
})";

std::string with(std::string text, const std::string& from, const std::string& to) {
  const auto pos = text.find(from);
  REQUIRE(pos != std::string::npos);
  return text.replace(pos, from.size(), to);
}

std::string config_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("config parsing fills defaults") {
  const auto c = parse_config(kSmall);
  CHECK(c.grid.alpha == std::vector<double>{0.7, 1.9});
  CHECK(c.suites.size() == 7);
  CHECK(c.cases_per_cell == 1);
  CHECK(c.seed == 3);
  CHECK(c.tolerances.identity_tol == 1e-8);
  CHECK(c.tolerances.margin_tol == 1e-9);
  CHECK(c.quadrature_order == 48);
  CHECK(c.output.format == "json");
  CHECK(c.families.size() == 3);

  // The echo parses back to the same config.
  const auto again = parse_config(config_to_json(c).dump());
  CHECK(config_to_json(again) == config_to_json(c));
}

TEST_CASE("config errors carry line numbers") {
  const std::string bad_syntax = with(kSmall, R"("beta": [0.5],)", R"("beta": [0.5])");
  CHECK(config_error(bad_syntax).find("line 6") != std::string::npos);

  const std::string neg_eta = with(kSmall, R"("eta": [0.5])", R"("eta": [-0.5])");
  const std::string msg = config_error(neg_eta);
  CHECK(msg.find("line 7") != std::string::npos);
  CHECK(msg.find("eta >= 0") != std::string::npos);

  CHECK(config_error(with(kSmall, R"("seed": 3)", R"("seed": 3, "colour": 1)")).find("colour") != std::string::npos);
  CHECK_FALSE(config_error(with(kSmall, R"("schema_version": 1)", R"("schema_version": 2)")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("alpha": [0.7, 1.9])", R"("alpha": [])")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("alpha": [0.7, 1.9])", R"("alpha": [0, 1.9])")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("lemma1", )", R"("lemma9", )")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("lemma1", )", R"("lemma2", )")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("alpha": [0.7, 1.9])", R"("alpha": ["a"])")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("seed": 3)", R"("seed": 3, "quadrature_order": 0)")).empty());
  CHECK_FALSE(config_error(with(kSmall, R"("seed": 3)", R"("seed": 3, "families": ["spline"])")).empty());
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("negative eta is allowed when only specializations run") {
  std::string text = with(kSmall, R"("eta": [0.5])", R"("eta": [-0.5])");
  text = with(text, R"(["lemma1", "lemma2", "theorem1", "young4", "polya5", "classical", "specializations"])",
              R"(["specializations"])");
  CHECK_NOTHROW(parse_config(text));
}

TEST_CASE("a lemma1 cell with five seeds gives five passing cases") {
  std::string text = with(kSmall, R"("alpha": [0.7, 1.9])", R"("alpha": [0.7])");
  text = with(text, R"(["lemma1", "lemma2", "theorem1", "young4", "polya5", "classical", "specializations"])",
              R"(["lemma1"])");
  text = with(text, R"("seed": 3)", R"("seed": 3, "cases_per_cell": 5)");
  const auto report = run_campaign(parse_config(text), 1);
  REQUIRE(report.cases.size() == 5);
  for (const auto& c : report.cases) {
    CHECK(c.result.suite == "lemma1");
    CHECK_FALSE(c.excluded);
    CHECK(std::abs(c.result.residual) <= 1e-8 * c.result.scale);
  }
  CHECK(exit_code(report) == 0);
  REQUIRE(report.summary.size() == 1);
  CHECK(report.summary[0].cases == 5);
  CHECK(report.summary[0].max_relative_residual <= 1e-8);
}

TEST_CASE("reports do not depend on the thread count") {
  const auto config = parse_config(kSmall);
  auto one = run_campaign(config, 1);
  auto four = run_campaign(config, 4);
  one.wall_time_seconds = four.wall_time_seconds = 0;
  CHECK(render_json(one) == render_json(four));
  CHECK(render_csv(one) == render_csv(four));
  CHECK(one.cases.size() > 20);
}

TEST_CASE("classification") {
  Tolerances tol;
  CaseRecord r;
  r.result.kind = CheckKind::Inequality;
  r.result.scale = 1;
  r.result.margin = -2e-9;
  classify(r, tol);
  CHECK(r.violation);
  r.result.margin = -0.5e-9;
  classify(r, tol);
  CHECK_FALSE(r.violation);
  r.result.extras.push_back({"lower_margin", -1.0});
  classify(r, tol);
  CHECK(r.violation);

  CaseRecord id;
  id.result.kind = CheckKind::Identity;
  id.result.scale = 10;
  id.result.residual = 5e-8;
  classify(id, tol);
  CHECK_FALSE(id.identity_failure);
  id.result.residual = 2e-7;
  classify(id, tol);
  CHECK(id.identity_failure);

  CaseRecord ex = id;
  ex.excluded = true;
  ex.identity_failure = false;
  classify(ex, tol);
  CHECK_FALSE(ex.identity_failure);
}

TEST_CASE("report formats") {
  std::string text = with(kSmall, R"(["lemma1", "lemma2", "theorem1", "young4", "polya5", "classical", "specializations"])",
                          R"(["lemma2", "specializations"])");
  const auto report = run_campaign(parse_config(text), 2);
  const auto csv = render_csv(report);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header == kCsvHeader);
  std::size_t rows = 0;
  for (std::string line; std::getline(in, line);) {
    ++rows;
    CHECK(std::count(line.begin(), line.end(), ',') == 15);
  }
  CHECK(rows == report.cases.size());

  const auto json = nlohmann::json::parse(render_json(report));
  CHECK(json["report_schema_version"] == kReportSchemaVersion);
  CHECK(json["cases"].size() == report.cases.size());
  CHECK(json["cases"][0]["gamma"].is_number());
  CHECK(json["summary"].size() == 2);
  CHECK(json.contains("wall_time_seconds"));
}
