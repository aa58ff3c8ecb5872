// Command-line front end: bound, sweep, means, selftest.
//
// Exit codes: 0 success / bound holds, 1 evaluation error or inconclusive
// verdict, 2 bound violation observed (or a means inequality failed),
// 3 selftest failure, 64 invalid configuration.

#include <charconv>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ostrowski/ostrowski.hpp"
#include "ostrowski/report_io.hpp"
#include "ostrowski/selftest.hpp"

namespace {

using namespace ostrowski;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitViolated = 2;
constexpr int kExitUsage = 64;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct JobOptions {
  std::optional<std::string> expr;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> p;
  std::optional<std::string> breakpoints;
  std::optional<std::string> mode;
  std::optional<long long> grid;
  std::optional<std::string> format;
  std::optional<std::string> config;
  std::optional<double> norm_tol;
  std::optional<long long> norm_max_samples;
};

// Values after merging the config file with inline flags.
struct JobConfig {
  std::optional<std::string> expr;
  std::optional<double> a;
  std::optional<double> b;
  std::optional<double> p;
  std::vector<double> breakpoints;
  std::optional<std::string> mode;
  std::optional<long long> grid;
  std::string format;
  NormConfig norm;
  std::vector<ExactNorm> exact_norms;
};

double parse_real(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ConfigError("not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> out;
  if (text.find_first_not_of(' ') == std::string_view::npos) return out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_real(text.substr(start, comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <class T>
std::optional<T> json_get(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ConfigError(std::string("config key '") + key + "' has the wrong type");
  }
}

JobConfig load_config(const JobOptions& opt, const char* default_format) {
  JobConfig cfg;
  cfg.format = default_format;
  std::optional<double> norm_tol;
  std::optional<long long> norm_max;

  if (opt.config) {
    std::ifstream in(*opt.config);
    if (!in) throw ConfigError("cannot open config file '" + *opt.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    cfg.expr = json_get<std::string>(j, "expr");
    cfg.a = json_get<double>(j, "a");
    cfg.b = json_get<double>(j, "b");
    cfg.p = json_get<double>(j, "p");
    cfg.mode = json_get<std::string>(j, "mode");
    cfg.grid = json_get<long long>(j, "grid");
    if (auto f = json_get<std::string>(j, "format")) cfg.format = *f;
    if (j.contains("norm")) {
      const auto& n = j.at("norm");
      if (!n.is_object()) throw ConfigError("norm must be an object with tol and max_samples");
      norm_tol = json_get<double>(n, "tol");
      norm_max = json_get<long long>(n, "max_samples");
    }
    for (const char* key : {"norm_tol", "norm-tol"})
      if (auto v = json_get<double>(j, key)) norm_tol = v;
    for (const char* key : {"norm_max_samples", "norm-max-samples"})
      if (auto v = json_get<long long>(j, key)) norm_max = v;
    if (j.contains("breakpoints")) {
      const auto& bp = j.at("breakpoints");
      if (bp.is_string())
        cfg.breakpoints = parse_list(bp.get<std::string>());
      else if (auto list = json_get<std::vector<double>>(j, "breakpoints"))
        cfg.breakpoints = *list;
    }
    if (j.contains("exact_norms")) {
      const auto& en = j.at("exact_norms");
      if (!en.is_array()) throw ConfigError("exact_norms must be an array of [lo, hi, value]");
      for (const auto& e : en) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number() || !e[1].is_number() ||
            !e[2].is_number())
          throw ConfigError("exact_norms entries must be [lo, hi, value]");
        cfg.exact_norms.push_back({e[0].get<double>(), e[1].get<double>(), e[2].get<double>()});
      }
    }
  }

  if (opt.expr) cfg.expr = opt.expr;
  if (opt.a) cfg.a = opt.a;
  if (opt.b) cfg.b = opt.b;
  if (opt.p) cfg.p = opt.p;
  if (opt.mode) cfg.mode = opt.mode;
  if (opt.grid) cfg.grid = opt.grid;
  if (opt.format) cfg.format = *opt.format;
  if (opt.breakpoints) cfg.breakpoints = parse_list(*opt.breakpoints);
  if (opt.norm_tol) norm_tol = opt.norm_tol;
  if (opt.norm_max_samples) norm_max = opt.norm_max_samples;

  if (norm_tol) {
    if (!(*norm_tol > 0.0)) throw ConfigError("--norm-tol must be positive");
    cfg.norm.tol = *norm_tol;
  }
  if (norm_max) {
    if (*norm_max < 2) throw ConfigError("--norm-max-samples must be at least 2");
    cfg.norm.max_samples = static_cast<std::size_t>(*norm_max);
  }
  if (cfg.format != "json" && cfg.format != "csv")
    throw ConfigError("--format must be json or csv");
  return cfg;
}

template <class T>
const T& require(const std::optional<T>& v, const char* flag) {
  if (!v) throw ConfigError(std::string("missing required ") + flag);
  return *v;
}

FunctionModel build_model(const JobConfig& cfg) {
  const std::string& text = require(cfg.expr, "--expr");
  const double a = require(cfg.a, "--a");
  const double b = require(cfg.b, "--b");
  if (!(a < b)) throw ConfigError("interval requires a < b");
  ExactNormProvider provider;
  if (!cfg.exact_norms.empty()) provider = exact_norm_table(cfg.exact_norms);
  return FunctionModel(parse(text), a, b, cfg.breakpoints, std::move(provider));
}

BoundMode resolve_mode(const JobConfig& cfg) {
  const std::string name = cfg.mode.value_or("refined");
  const auto mode = parse_mode(name);
  if (!mode)
    throw ConfigError("--mode must be one of classical, refined, piecewise, at-breakpoint; got '" +
                      name + "'");
  return *mode;
}

int status_exit(BoundStatus s) {
  switch (s) {
    case BoundStatus::Holds: return kExitOk;
    case BoundStatus::ViolatedObserved: return kExitViolated;
    case BoundStatus::Inconclusive: return kExitError;
  }
  return kExitError;
}

int cmd_bound(const JobOptions& opt) {
  const JobConfig cfg = load_config(opt, "json");
  const FunctionModel model = build_model(cfg);
  const BoundMode mode = resolve_mode(cfg);
  const double p = require(cfg.p, "--p");
  validate_request(model, p, mode);

  const BoundReport report = compute_bound({model, p, mode}, cfg.norm);
  if (cfg.format == "csv") {
    std::cout << kSweepCsvHeader << '\n' << csv_row(report) << '\n';
  } else {
    std::cout << to_json(report).dump(2) << '\n';
  }
  return status_exit(report.status);
}

int cmd_sweep(const JobOptions& opt) {
  const JobConfig cfg = load_config(opt, "csv");
  const FunctionModel model = build_model(cfg);
  const BoundMode mode = resolve_mode(cfg);
  const long long grid = require(cfg.grid, "--grid");
  if (grid < 2) throw ConfigError("--grid must be at least 2");
  if (mode == BoundMode::AtBreakpoint)
    throw ConfigError("sweep does not support at-breakpoint mode");
  for (double p : sweep_points(model, static_cast<std::size_t>(grid)))
    validate_request(model, p, mode);

  const auto reports = sweep(model, static_cast<std::size_t>(grid), mode, cfg.norm);
  if (cfg.format == "json") {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    std::cout << arr.dump(2) << '\n';
  } else {
    write_csv(std::cout, reports);
  }
  int code = kExitOk;
  for (const auto& r : reports) {
    if (r.status == BoundStatus::ViolatedObserved) return kExitViolated;
    if (r.status == BoundStatus::Inconclusive) code = kExitError;
  }
  return code;
}

int cmd_means(const JobOptions& opt) {
  const JobConfig cfg = load_config(opt, "json");
  const double a = require(cfg.a, "--a");
  const double b = require(cfg.b, "--b");
  if (!(a > 0.0 && a < b)) throw ConfigError("means need 0 < a < b");
  const MeansReport r = refined_mean_bounds(a, b);
  std::cout << to_json(r).dump(2) << '\n';
  const bool all = r.ineq_i.holds && r.ineq_ii.holds && r.ineq_iii.holds;
  return all ? kExitOk : kExitViolated;
}

void add_job_options(CLI::App* cmd, JobOptions& opt, bool function_flags) {
  cmd->add_option("--a", opt.a, "Left end of the interval");
  cmd->add_option("--b", opt.b, "Right end of the interval");
  cmd->add_option("--config", opt.config, "JSON file with the same keys as the flags");
  cmd->add_option("--format", opt.format, "Output format: json or csv");
  if (!function_flags) return;
  cmd->add_option("--expr", opt.expr, "Expression in x, e.g. \"abs(x-0.5)\"");
  cmd->add_option("--p", opt.p, "Evaluation point, a < p < b");
  cmd->add_option("--breakpoints", opt.breakpoints, "Comma-separated non-differentiable points");
  cmd->add_option("--mode", opt.mode, "classical | refined | piecewise | at-breakpoint");
  cmd->add_option("--grid", opt.grid, "Number of interior sweep points");
  cmd->add_option("--norm-tol", opt.norm_tol, "Relative stabilization tolerance for sup|f'|");
  cmd->add_option("--norm-max-samples", opt.norm_max_samples, "Sample cap for sup|f'|");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ostrowski-type bounds on |f(p) - integral mean|, checked against quadrature"};
  app.require_subcommand(1);

  JobOptions bound_opt, sweep_opt, means_opt;
  auto* bound = app.add_subcommand("bound", "Compute one bound report");
  auto* sweep_cmd = app.add_subcommand("sweep", "Bound reports over a uniform grid of p");
  auto* means = app.add_subcommand("means", "Classical means and their refined inequalities");
  auto* selftest = app.add_subcommand("selftest", "Run the bundled property suites");
  add_job_options(bound, bound_opt, true);
  add_job_options(sweep_cmd, sweep_opt, true);
  add_job_options(means, means_opt, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bound) return cmd_bound(bound_opt);
    if (*sweep_cmd) return cmd_sweep(sweep_opt);
    if (*means) return cmd_means(means_opt);
    if (*selftest) return selftest_exit_code(std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "error: expression: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
