#include "fracineq/campaign.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <thread>

#include "fracineq/specialization_checks.hpp"

namespace fracineq {

namespace {

using Json = nlohmann::json;

// 1-based line of the first occurrence of "key" in the source text, or 0.
std::size_t line_of_key(std::string_view text, std::string_view key) {
  const std::string quoted = "\"" + std::string(key) + "\"";
  const std::size_t pos = text.find(quoted);
  if (pos == std::string_view::npos) return 0;
  return static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n')) + 1;
}

class SchemaReader {
 public:
  explicit SchemaReader(std::string_view text) : text_(text) {}

  [[noreturn]] void fail(std::string_view key, const std::string& message) const {
    const std::size_t line = line_of_key(text_, key);
    std::string where = line ? "line " + std::to_string(line) + ": " : "";
    throw ConfigError(where + "'" + std::string(key) + "': " + message);
  }

  const Json& require(const Json& obj, std::string_view key) const {
    auto it = obj.find(std::string(key));
    if (it == obj.end()) fail(key, "missing required key");
    return *it;
  }

  double number(const Json& value, std::string_view key) const {
    if (!value.is_number()) fail(key, "expected a number");
    const double v = value.get<double>();
    if (!std::isfinite(v)) fail(key, "expected a finite number");
    return v;
  }

  long long integer(const Json& value, std::string_view key) const {
    if (!value.is_number_integer()) fail(key, "expected an integer");
    return value.get<long long>();
  }

  std::vector<double> numbers(const Json& value, std::string_view key) const {
    if (!value.is_array() || value.empty()) fail(key, "expected a non-empty array of numbers");
    std::vector<double> out;
    for (const auto& v : value) out.push_back(number(v, key));
    return out;
  }

  std::vector<std::string> strings(const Json& value, std::string_view key) const {
    if (!value.is_array() || value.empty()) fail(key, "expected a non-empty array of strings");
    std::vector<std::string> out;
    for (const auto& v : value) {
      if (!v.is_string()) fail(key, "expected a non-empty array of strings");
      out.push_back(v.get<std::string>());
    }
    return out;
  }

  void only_keys(const Json& obj, std::string_view where, std::initializer_list<std::string_view> keys) const {
    for (const auto& [k, v] : obj.items()) {
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) fail(k, "unknown key in " + std::string(where));
    }
  }

 private:
  std::string_view text_;
};

bool is_inequality_suite(const std::string& s) { return s != "specializations" && s != "classical"; }
bool is_two_order_suite(const std::string& s) { return s == "lemma2" || s == "lemma3" || s == "theorem2"; }

void validate(const CampaignConfig& c, const SchemaReader& reader) {
  auto positive = [&](const std::vector<double>& v, std::string_view key) {
    for (double d : v) {
      if (!(d > 0)) reader.fail(key, "values must be positive");
    }
  };
  positive(c.grid.alpha, "alpha");
  positive(c.grid.rho, "rho");
  positive(c.grid.x, "x");
  positive(c.grid.gamma, "gamma");
  const bool needs_eta_nonnegative =
      std::any_of(c.suites.begin(), c.suites.end(), [](const std::string& s) { return is_inequality_suite(s); });
  for (double eta : c.grid.eta) {
    if (!(eta > -1)) reader.fail("eta", "eta must exceed -1");
    if (needs_eta_nonnegative && !(eta >= 0)) {
      reader.fail("eta", "inequality suites require eta >= 0 (theorem hypothesis), got " + std::to_string(eta));
    }
  }
  std::set<std::string> seen;
  for (const auto& s : c.suites) {
    if (std::find(kAllSuites.begin(), kAllSuites.end(), s) == kAllSuites.end()) reader.fail("suites", "unknown suite " + s);
    if (!seen.insert(s).second) reader.fail("suites", "duplicate suite " + s);
  }
  if (c.cases_per_cell < 1) reader.fail("cases_per_cell", "must be >= 1");
  if (c.quadrature_order < 1 || c.quadrature_order > 128) reader.fail("quadrature_order", "must be in [1, 128]");
  if (!(c.tolerances.identity_tol > 0)) reader.fail("identity_tol", "must be positive");
  if (!(c.tolerances.margin_tol > 0)) reader.fail("margin_tol", "must be positive");
  if (!(c.tolerances.quad_tol > 0)) reader.fail("quad_tol", "must be positive");
  for (double p : c.young_exponents) {
    if (!(p > 1)) reader.fail("young_exponents", "each p must exceed 1");
  }
  if (c.function_degree < 1) reader.fail("function_degree", "must be >= 1");
  if (c.output.format != "json" && c.output.format != "csv") reader.fail("format", "must be json or csv");
}

}  // namespace

CampaignConfig parse_config(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    const std::size_t byte = std::min<std::size_t>(e.byte, text.size());
    const auto prefix = text.substr(0, byte ? byte - 1 : 0);
    const std::size_t line = static_cast<std::size_t>(std::count(prefix.begin(), prefix.end(), '\n')) + 1;
    const std::size_t nl = prefix.rfind('\n');
    const std::size_t column = nl == std::string_view::npos ? prefix.size() + 1 : prefix.size() - nl;
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                      ": malformed JSON (" + e.what() + ")");
  }
  const SchemaReader r(text);
  if (!doc.is_object()) throw ConfigError("line 1: config must be a JSON object");
  r.only_keys(doc, "config",
              {"schema_version", "grid", "suites", "cases_per_cell", "seed", "tolerances", "quadrature_order",
               "young_exponents", "families", "function_degree", "output"});

  if (r.integer(r.require(doc, "schema_version"), "schema_version") != kConfigSchemaVersion) {
    r.fail("schema_version", "unsupported version (expected " + std::to_string(kConfigSchemaVersion) + ")");
  }
  CampaignConfig c;
  const Json& grid = r.require(doc, "grid");
  if (!grid.is_object()) r.fail("grid", "expected an object");
  r.only_keys(grid, "grid", {"alpha", "beta", "rho", "eta", "kappa", "x", "gamma"});
  c.grid.alpha = r.numbers(r.require(grid, "alpha"), "alpha");
  c.grid.beta = r.numbers(r.require(grid, "beta"), "beta");
  c.grid.rho = r.numbers(r.require(grid, "rho"), "rho");
  c.grid.eta = r.numbers(r.require(grid, "eta"), "eta");
  c.grid.kappa = r.numbers(r.require(grid, "kappa"), "kappa");
  c.grid.x = r.numbers(r.require(grid, "x"), "x");
  c.grid.gamma = r.numbers(r.require(grid, "gamma"), "gamma");
  c.suites = r.strings(r.require(doc, "suites"), "suites");

  const long long seed = r.integer(r.require(doc, "seed"), "seed");
  if (seed < 0) r.fail("seed", "must be non-negative");
  c.seed = static_cast<std::uint64_t>(seed);
  if (doc.contains("cases_per_cell")) c.cases_per_cell = static_cast<int>(r.integer(doc["cases_per_cell"], "cases_per_cell"));
  if (doc.contains("quadrature_order")) {
    c.quadrature_order = static_cast<int>(r.integer(doc["quadrature_order"], "quadrature_order"));
  }
  if (doc.contains("function_degree")) {
    c.function_degree = static_cast<int>(r.integer(doc["function_degree"], "function_degree"));
  }
  if (doc.contains("young_exponents")) c.young_exponents = r.numbers(doc["young_exponents"], "young_exponents");
  if (doc.contains("families")) {
    c.families.clear();
    for (const auto& name : r.strings(doc["families"], "families")) {
      try {
        c.families.push_back(parse_family(name));
      } catch (const DomainError& e) {
        r.fail("families", e.what());
      }
    }
  }
  if (doc.contains("tolerances")) {
    const Json& tol = doc["tolerances"];
    if (!tol.is_object()) r.fail("tolerances", "expected an object");
    r.only_keys(tol, "tolerances", {"identity_tol", "margin_tol", "quad_tol"});
    if (tol.contains("identity_tol")) c.tolerances.identity_tol = r.number(tol["identity_tol"], "identity_tol");
    if (tol.contains("margin_tol")) c.tolerances.margin_tol = r.number(tol["margin_tol"], "margin_tol");
    if (tol.contains("quad_tol")) c.tolerances.quad_tol = r.number(tol["quad_tol"], "quad_tol");
  }
  if (doc.contains("output")) {
    const Json& out = doc["output"];
    if (!out.is_object()) r.fail("output", "expected an object");
    r.only_keys(out, "output", {"path", "format"});
    if (out.contains("path")) {
      if (!out["path"].is_string()) r.fail("path", "expected a string");
      c.output.path = out["path"].get<std::string>();
    }
    if (out.contains("format")) {
      if (!out["format"].is_string()) r.fail("format", "expected a string");
      c.output.format = out["format"].get<std::string>();
    }
  }
  validate(c, r);
  return c;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

nlohmann::ordered_json config_to_json(const CampaignConfig& c) {
  nlohmann::ordered_json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["grid"] = {{"alpha", c.grid.alpha}, {"beta", c.grid.beta}, {"rho", c.grid.rho}, {"eta", c.grid.eta},
               {"kappa", c.grid.kappa}, {"x", c.grid.x},       {"gamma", c.grid.gamma}};
  j["suites"] = c.suites;
  j["cases_per_cell"] = c.cases_per_cell;
  j["seed"] = c.seed;
  j["tolerances"] = {{"identity_tol", c.tolerances.identity_tol},
                     {"margin_tol", c.tolerances.margin_tol},
                     {"quad_tol", c.tolerances.quad_tol}};
  j["quadrature_order"] = c.quadrature_order;
  j["young_exponents"] = c.young_exponents;
  std::vector<std::string> families;
  for (auto f : c.families) families.emplace_back(to_string(f));
  j["families"] = families;
  j["function_degree"] = c.function_degree;
  j["output"] = {{"path", c.output.path}, {"format", c.output.format}};
  return j;
}

// ---------------------------------------------------------------------------
// Case enumeration

namespace {

struct Task {
  std::string suite;
  std::string case_id;
  std::uint64_t seed = 0;
  std::function<std::vector<CheckResult>(const QuadOptions&)> run;
};

struct Cell {
  Params params;
  double gamma = 0;
  double x = 0;
};

std::vector<Cell> one_order_cells(const ParameterGrid& g) {
  std::vector<Cell> cells;
  for (double alpha : g.alpha)
    for (double beta : g.beta)
      for (double rho : g.rho)
        for (double eta : g.eta)
          for (double kappa : g.kappa)
            for (double x : g.x) cells.push_back({Params{alpha, beta, rho, eta, kappa, 0}, 0, x});
  return cells;
}

// Both orders range over the gamma list.
std::vector<Cell> two_order_cells(const ParameterGrid& g) {
  std::vector<Cell> cells;
  for (double alpha : g.gamma)
    for (double gamma : g.gamma)
      for (double beta : g.beta)
        for (double rho : g.rho)
          for (double eta : g.eta)
            for (double kappa : g.kappa)
              for (double x : g.x) cells.push_back({Params{alpha, beta, rho, eta, kappa, 0}, gamma, x});
  return cells;
}

std::string case_name(const std::string& suite, std::size_t index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06zu", index);
  return suite + "-" + buf;
}

constexpr double kSigmas[] = {0.5, 1.0, 2.0, 3.7};
constexpr double kHadamardNus[] = {0.5, 1.5};

std::vector<Task> enumerate(const CampaignConfig& config) {
  std::vector<Task> tasks;
  const int degree = config.function_degree;
  const auto families = config.families;
  const auto exponents = config.young_exponents;

  for (const auto& suite : config.suites) {
    const auto suite_index = static_cast<std::uint64_t>(
        std::find(kAllSuites.begin(), kAllSuites.end(), suite) - kAllSuites.begin());
    const std::uint64_t suite_seed = mix_seed(config.seed, suite_index);
    std::size_t index = 0;
    auto add = [&](std::uint64_t seed, std::function<std::vector<CheckResult>(const QuadOptions&)> run) {
      tasks.push_back({suite, case_name(suite, index), seed, std::move(run)});
      ++index;
    };

    if (suite == "specializations") {
      for (double alpha : config.grid.alpha)
        for (double sigma : kSigmas)
          for (double x : config.grid.x)
            add(0, [=](const QuadOptions& o) { return std::vector{riemann_liouville_check(alpha, sigma, x, o)}; });
      for (double alpha : config.grid.alpha)
        for (double rho : config.grid.rho)
          for (double eta : config.grid.eta)
            for (double sigma : kSigmas)
              for (double x : config.grid.x)
                add(0, [=](const QuadOptions& o) {
                  return std::vector{erdelyi_kober_check(alpha, rho, eta, sigma, x, o)};
                });
      for (double alpha : config.grid.alpha)
        for (double nu : kHadamardNus)
          for (double x : config.grid.x)
            add(0, [=](const QuadOptions& o) { return std::vector{hadamard_check(alpha, nu, 1 + x, o)}; });
      continue;
    }

    const auto cells = is_two_order_suite(suite) ? two_order_cells(config.grid) : one_order_cells(config.grid);
    for (const Cell& cell : cells) {
      for (int k = 0; k < config.cases_per_cell; ++k) {
        const std::uint64_t seed = mix_seed(suite_seed, index);
        const FunctionFamily family = families[index % families.size()];
        const double p_young = exponents[(index / families.size()) % exponents.size()];
        const Params params = cell.params;
        const double x = cell.x;
        const double gamma = cell.gamma;
        auto sample = [=](std::uint64_t tag, FunctionFamily fam, std::optional<double> floor = std::nullopt) {
          return function_family_sampler(mix_seed(seed, tag), fam, degree, x, SamplerOptions{4097, floor}).spec;
        };

        if (suite == "lemma1") {
          add(seed, [=](const QuadOptions& o) {
            return std::vector{lemma1_residual(params, sample(1, FunctionFamily::Polynomial), x, o)};
          });
        } else if (suite == "lemma3") {
          add(seed, [=](const QuadOptions& o) {
            return std::vector{lemma3_residual(params, gamma, sample(1, FunctionFamily::Polynomial), x, o)};
          });
        } else if (suite == "theorem1") {
          add(seed, [=](const QuadOptions& o) {
            const auto f = sample(1, family);
            const auto g = sample(2, family);
            return std::vector{gruss_check(params, f, g, x, GrussVariant::AsPrinted, o),
                               gruss_check(params, f, g, x, GrussVariant::Quarter, o)};
          });
        } else if (suite == "lemma2") {
          add(seed, [=](const QuadOptions& o) {
            return std::vector{lemma2_check(params, gamma, sample(1, family).f, sample(2, family).f, x, o)};
          });
        } else if (suite == "theorem2") {
          add(seed, [=](const QuadOptions& o) {
            return std::vector{theorem2_check(params, gamma, sample(1, family), sample(2, family), x, o)};
          });
        } else if (suite == "young3" || suite == "young4") {
          const bool three = suite == "young3";
          add(seed, [=](const QuadOptions& o) {
            const auto f = sample(1, family, 0.1).f;
            const auto g = sample(2, family, 0.1).f;
            const auto exps = YoungExponents::from_p(p_young);
            std::vector<CheckResult> out;
            for (YoungItem item : kYoungItems) {
              if ((item <= YoungItem::T3_4) == three) out.push_back(young_suite_check(params, f, g, exps, x, item, o));
            }
            return out;
          });
        } else if (suite == "polya5") {
          add(seed, [=](const QuadOptions& o) {
            const auto pair = ratio_pair_sampler(mix_seed(seed, 1), family, degree, x, 0.5);
            std::vector<CheckResult> out;
            for (PolyaItem item : kPolyaItems) out.push_back(polya_szego_suite_check(params, pair, x, item, o));
            return out;
          });
        } else if (suite == "classical") {
          add(seed, [=](const QuadOptions& o) {
            const double a = x / 2;
            return std::vector{classical_gruss_check(sample(1, family), sample(2, family), a, a + x, 1e-13, o)};
          });
        }
      }
    }
  }
  return tasks;
}

std::vector<CaseRecord> run_task(const Task& task, int order, const Tolerances& tol) {
  std::vector<CaseRecord> out;
  try {
    const auto coarse = task.run(QuadOptions{order});
    const auto fine = task.run(QuadOptions{2 * order});
    for (std::size_t j = 0; j < coarse.size(); ++j) {
      CaseRecord rec;
      rec.result = coarse[j];
      const auto& f = fine[j];
      const double denom = std::max(rec.result.scale, std::abs(rec.result.lhs) + std::abs(rec.result.rhs));
      const double delta = std::max(std::abs(f.lhs - rec.result.lhs), std::abs(f.rhs - rec.result.rhs));
      rec.refinement_delta = denom > 0 ? delta / denom : delta;
      rec.excluded = rec.refinement_delta > tol.quad_tol;
      out.push_back(std::move(rec));
    }
  } catch (const std::exception& e) {
    CaseRecord rec;
    rec.result.suite = task.suite;
    rec.error = e.what();
    out.clear();
    out.push_back(std::move(rec));
  }
  const bool single = out.size() == 1;
  for (auto& rec : out) {
    rec.result.case_id = single ? task.case_id : task.case_id + ":" + rec.result.variant;
    rec.result.seed = task.seed;
    if (rec.result.suite.empty()) rec.result.suite = task.suite;
    classify(rec, tol);
  }
  return out;
}

}  // namespace

void classify(CaseRecord& rec, const Tolerances& tol) {
  rec.violation = false;
  rec.identity_failure = false;
  if (!rec.error.empty()) {
    rec.violation = true;
    return;
  }
  if (rec.excluded) return;
  const CheckResult& r = rec.result;
  switch (r.kind) {
    case CheckKind::Inequality: {
      const double floor = -tol.margin_tol * r.scale;
      rec.violation = !(r.margin >= floor);
      if (auto lower = r.extra("lower_margin"); lower && !(*lower >= floor)) rec.violation = true;
      break;
    }
    case CheckKind::Identity:
      rec.identity_failure = !(std::abs(r.residual) <= tol.identity_tol * r.scale);
      break;
    case CheckKind::Limit: {
      const auto decreasing = r.extra("strictly_decreasing");
      rec.identity_failure = !(std::abs(r.residual) <= r.limit_tol * r.scale) || !decreasing || *decreasing == 0;
      break;
    }
  }
}

std::vector<SuiteSummary> summarize(const std::vector<CaseRecord>& cases, const std::vector<std::string>& suites) {
  std::vector<SuiteSummary> out;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& suite : suites) {
    SuiteSummary s;
    s.suite = suite;
    s.min_margin = nan;
    s.min_relative_margin = nan;
    for (const auto& rec : cases) {
      if (rec.result.suite != suite) continue;
      ++s.cases;
      if (!rec.error.empty()) {
        ++s.errors;
        ++s.violations;
        continue;
      }
      if (rec.excluded) {
        ++s.excluded;
        continue;
      }
      s.violations += rec.violation ? 1 : 0;
      s.identity_failures += rec.identity_failure ? 1 : 0;
      const CheckResult& r = rec.result;
      if (r.kind == CheckKind::Inequality) {
        if (!(s.min_margin <= r.margin)) s.min_margin = r.margin;
        const double rel = r.scale > 0 ? r.margin / r.scale : r.margin;
        if (!(s.min_relative_margin <= rel)) s.min_relative_margin = rel;
      } else {
        s.max_abs_residual = std::max(s.max_abs_residual, std::abs(r.residual));
        const double rel = r.scale > 0 ? std::abs(r.residual) / r.scale : std::abs(r.residual);
        s.max_relative_residual = std::max(s.max_relative_residual, rel);
      }
    }
    out.push_back(s);
  }
  return out;
}

Report run_campaign(const CampaignConfig& config, unsigned threads) {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Task> tasks = enumerate(config);
  std::vector<std::vector<CaseRecord>> results(tasks.size());

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(tasks.size(), 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      results[i] = run_task(tasks[i], config.quadrature_order, config.tolerances);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  Report report;
  report.config = config;
  for (auto& group : results) {
    for (auto& rec : group) report.cases.push_back(std::move(rec));
  }
  report.summary = summarize(report.cases, config.suites);
  report.artifact_version = std::string("fracineq ") + FRACINEQ_VERSION;
  report.wall_time_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

int exit_code(const Report& report) {
  for (const auto& s : report.summary) {
    if (s.violations > 0 || s.identity_failures > 0 || s.errors > 0) return 2;
  }
  return 0;
}

}  // namespace fracineq
