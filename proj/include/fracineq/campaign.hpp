#ifndef FRACINEQ_CAMPAIGN_HPP
#define FRACINEQ_CAMPAIGN_HPP

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fracineq/inequalities.hpp"
#include "fracineq/sampler.hpp"

namespace fracineq {

inline constexpr int kConfigSchemaVersion = 1;
inline constexpr int kReportSchemaVersion = 1;

inline const std::vector<std::string> kAllSuites = {"lemma1",  "lemma2", "lemma3", "theorem1",  "theorem2",
                                                    "young3",  "young4", "polya5", "classical", "specializations"};

/// Malformed or inadmissible configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ParameterGrid {
  std::vector<double> alpha, beta, rho, eta, kappa, x, gamma;
};

struct Tolerances {
  double identity_tol = 1e-8;
  double margin_tol = 1e-9;
  double quad_tol = 1e-9;
};

struct OutputSpec {
  std::string path;  // empty: stdout
  std::string format = "json";
};

struct CampaignConfig {
  ParameterGrid grid;
  std::vector<std::string> suites;
  int cases_per_cell = 1;
  std::uint64_t seed = 0;
  Tolerances tolerances;
  int quadrature_order = 48;
  std::vector<double> young_exponents = {1.5, 2.0, 3.0};
  std::vector<FunctionFamily> families = {FunctionFamily::Polynomial, FunctionFamily::TrigSeries,
                                          FunctionFamily::PiecewiseLinear};
  int function_degree = 3;
  OutputSpec output;
};

/// Parses and validates; errors carry the line (and column) they refer to.
CampaignConfig parse_config(std::string_view text);
CampaignConfig load_config(const std::string& path);
nlohmann::ordered_json config_to_json(const CampaignConfig& config);

struct CaseRecord {
  CheckResult result;
  bool excluded = false;         // failed the n / 2n refinement gate
  double refinement_delta = 0;   // max |change| of lhs, rhs between n and 2n, over the tolerance scale
  bool violation = false;
  bool identity_failure = false;
  std::string error;             // evaluation failure, counted as a violation
};

struct SuiteSummary {
  std::string suite;
  std::size_t cases = 0;
  std::size_t excluded = 0;
  std::size_t violations = 0;
  std::size_t identity_failures = 0;
  std::size_t errors = 0;
  double min_margin = 0;           // over inequality results, raw
  double min_relative_margin = 0;  // margin / scale
  double max_abs_residual = 0;     // over identity results
  double max_relative_residual = 0;
};

struct Report {
  CampaignConfig config;
  std::vector<CaseRecord> cases;
  std::vector<SuiteSummary> summary;
  std::string artifact_version;
  double wall_time_seconds = 0;
};

/// Classifies a result against the tolerances (excluded records stay unflagged).
void classify(CaseRecord& record, const Tolerances& tol);

std::vector<SuiteSummary> summarize(const std::vector<CaseRecord>& cases, const std::vector<std::string>& suites);

/// Runs every configured suite over the grid. Cases are evaluated in parallel
/// but stored in enumeration order, so the report does not depend on `threads`.
Report run_campaign(const CampaignConfig& config, unsigned threads = 0);

/// 0 when nothing failed, 2 otherwise.
int exit_code(const Report& report);

}  // namespace fracineq

#endif  // FRACINEQ_CAMPAIGN_HPP
