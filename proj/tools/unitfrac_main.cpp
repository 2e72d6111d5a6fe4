#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "unitfrac/coloring.hpp"
#include "unitfrac/config.hpp"
#include "unitfrac/dickman.hpp"
#include "unitfrac/exp_sum.hpp"
#include "unitfrac/extraction.hpp"
#include "unitfrac/set_io.hpp"
#include "unitfrac/smooth_sieve.hpp"
#include "unitfrac/subset_search.hpp"

namespace {

using namespace unitfrac;

KeyValueConfig merge_params(const std::string& params_path,
                            const std::vector<std::string>& overrides) {
  KeyValueConfig cfg;
  if (!params_path.empty()) cfg = KeyValueConfig::from_file(params_path);
  for (const auto& kv : overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("override '" + kv + "' is not key=value");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

DensityParams density_from_config(const KeyValueConfig& cfg) {
  DensityParams p;
  p.scale = cfg.get_int64("scale", 1000);
  p.loglog_term = cfg.get_double("loglog_term", 0.0);
  p.nu = cfg.get_rational("nu", Rational(2));
  p.alpha = cfg.get_rational("alpha", Rational(0));
  p.mu = cfg.get_rational("mu", Rational(0));
  p.theta = cfg.get_double("theta", 0.1);
  p.delta = cfg.get_double("delta", 0.1);
  p.strict = cfg.get_int64("strict", 0) != 0;
  return p;
}

std::string json_lines(const nlohmann::json& array) {
  std::ostringstream out;
  for (const auto& entry : array) out << entry.dump() << '\n';
  return out.str();
}

int run_sieve(std::int64_t lo, std::int64_t hi, std::int64_t bound,
              std::optional<double> eps, bool as_json, std::int64_t max_segments,
              int threads, const std::string& out_path) {
  SmoothQuery query{lo, hi, bound, eps};
  SieveConfig config;
  if (max_segments > 0) config.max_segments = max_segments;
  config.threads = threads;
  const IntSet result = smooth_in_range(query, config);
  if (as_json) {
    write_output(out_path, int_set_json(result).dump());
  } else {
    std::ostringstream text;
    for (auto v : result.values()) text << v << '\n';
    write_output(out_path, text.str());
  }
  return 0;
}

int run_rho(std::optional<double> u, bool table, double max_u, double step,
            double tol, const std::string& out_path) {
  if (table) {
    const auto rho = RhoTable::build(max_u, tol, step);
    write_output(out_path, rho_table_csv(rho));
    return 0;
  }
  if (!u) throw std::runtime_error("rho needs --u or --table");
  const double max_needed = std::max(2.0, std::ceil(*u));
  const auto rho = RhoTable::build(std::min(50.0, max_needed), tol, step);
  std::ostringstream out;
  out.precision(15);
  out << rho.value(*u) << '\n';
  write_output(out_path, out.str());
  return 0;
}

int run_verify_constants(const ConstantsConfig& config, const std::string& out_path) {
  const auto report = verify_constants(config);
  write_output(out_path, constants_json(report).dump(2));
  return 0;
}

int run_find(const std::string& set_arg, std::size_t cap,
             const std::string& method_name, std::uint64_t max_nodes,
             std::int64_t period_cap, const std::string& out_path) {
  const auto values = resolve_set_argument(set_arg);
  const IntSet d = IntSet::of(values);
  SearchMethod method = SearchMethod::BranchAndBound;
  if (method_name == "bb") {
    method = SearchMethod::BranchAndBound;
  } else if (method_name == "mitm") {
    method = SearchMethod::MeetInMiddle;
  } else if (method_name == "expsum") {
    method = SearchMethod::ExpSum;
  } else {
    throw std::runtime_error("unknown method '" + method_name +
                             "' (expected bb, mitm, or expsum)");
  }
  SearchBudget budget;
  if (max_nodes > 0) budget.max_nodes = max_nodes;
  nlohmann::json out;
  if (method == SearchMethod::ExpSum) {
    const auto eval = count_by_exponential_sum(d, period_cap);
    out = search_result_json(find_unit_subsets(d, cap, method, budget));
    out["evaluation"] = exp_sum_json(eval);
  } else {
    out = search_result_json(find_unit_subsets(d, cap, method, budget));
  }
  write_output(out_path, out.dump(2));
  return 0;
}

int run_extract(const std::string& which, const std::string& input,
                const std::string& params_path,
                const std::vector<std::string>& overrides,
                const std::vector<std::int64_t>& user_h,
                const std::string& out_path) {
  const auto cfg = merge_params(params_path, overrides);
  DensityParams params = density_from_config(cfg);
  const IntSet input_set = IntSet::of(resolve_set_argument(input));

  nlohmann::json lines = nlohmann::json::array();
  if (which == "lemma4") {
    const Rational rho = cfg.get_rational("rho", input_set.recip_sum());
    const Rational mu = cfg.get_rational("mu", rho / 2);
    const auto result = prune_sparse_prime_powers(input_set, rho, mu, params);
    for (const auto& step : result.steps)
      lines.push_back({{"step", "prune"}, {"q", step.q}, {"removed", step.removed}});
    auto summary = prune_result_json(result);
    summary["step"] = "result";
    summary.erase("steps");
    lines.push_back(summary);
  } else if (which == "prop2") {
    if (params.alpha == 0) params.alpha = input_set.recip_sum();
    const auto result = extract_window_subset(input_set, params);
    for (const auto& step : result.initial_prune)
      lines.push_back(
          {{"step", "initial-prune"}, {"q", step.q}, {"removed", step.removed}});
    for (const auto& step : result.steps) {
      auto prunes = nlohmann::json::array();
      for (const auto& p : step.prune_steps)
        prunes.push_back({{"q", p.q}, {"removed", p.removed}});
      lines.push_back(
          {{"step", "window"}, {"prune", prunes}, {"removed", step.removed}});
    }
    auto summary = window_result_json(result);
    summary["step"] = "result";
    summary.erase("initial_prune");
    summary.erase("steps");
    lines.push_back(summary);
  } else if (which == "prop1") {
    PipelineConfig pipeline;
    pipeline.user_h = user_h;
    pipeline.interval_budget = cfg.get_int64("interval_budget", pipeline.interval_budget);
    pipeline.pair_search_limit =
        cfg.get_int64("pair_search_limit", pipeline.pair_search_limit);
    pipeline.max_rounds = cfg.get_int64("max_rounds", pipeline.max_rounds);
    pipeline.entry_threshold =
        cfg.get_rational("entry_threshold", pipeline.entry_threshold);
    pipeline.first_window = cfg.get_rational("first_window", pipeline.first_window);
    pipeline.second_window =
        cfg.get_rational("second_window", pipeline.second_window);
    pipeline.stop_threshold =
        cfg.get_rational("stop_threshold", pipeline.stop_threshold);
    pipeline.qd_constant = cfg.get_double("qd_constant", pipeline.qd_constant);
    pipeline.merge_sigma_constant =
        cfg.get_double("merge_sigma_constant", pipeline.merge_sigma_constant);
    const auto result = run_extraction_pipeline(input_set, params, pipeline);
    lines = result.trace;
    auto summary = pipeline_result_json(result);
    summary["step"] = "result";
    summary.erase("trace");
    lines.push_back(summary);
  } else {
    throw std::runtime_error("unknown extraction '" + which +
                             "' (expected lemma4, prop2, or prop1)");
  }
  write_output(out_path, json_lines(lines));
  return 0;
}

int run_color(std::int64_t m, int r, const std::string& strategy_arg,
              std::uint64_t seed, const std::string& assignment_path,
              std::size_t cap, std::uint64_t max_nodes,
              const std::string& out_path) {
  const auto strategy = strategy_from_name(strategy_arg);
  if (!strategy) throw std::runtime_error("unknown strategy '" + strategy_arg + "'");
  Coloring coloring;
  if (*strategy == ColoringStrategy::FromFile) {
    if (assignment_path.empty())
      throw std::runtime_error("from_file needs --assignment");
    const auto raw = load_int_values(assignment_path);
    std::vector<int> classes;
    classes.reserve(raw.size());
    for (auto v : raw) classes.push_back(static_cast<int>(v));
    coloring = coloring_from_classes(m, r, std::move(classes));
  } else {
    coloring = make_coloring(m, r, *strategy, seed);
  }
  SearchBudget budget;
  if (max_nodes > 0) budget.max_nodes = max_nodes;
  const auto report = check_coloring(coloring, cap, budget);
  write_output(out_path, experiment_report_json(report).dump(2));
  return 0;
}

int run_sweep(int r, const std::string& strategies_arg, std::int64_t m_lo,
              std::int64_t m_hi, std::uint64_t seed, std::size_t cap,
              std::uint64_t max_nodes, const std::string& out_path) {
  std::vector<ColoringStrategy> strategies;
  std::stringstream ss(strategies_arg);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto strategy = strategy_from_name(item);
    if (!strategy) throw std::runtime_error("unknown strategy '" + item + "'");
    if (*strategy == ColoringStrategy::FromFile)
      throw std::runtime_error("from_file cannot be swept");
    strategies.push_back(*strategy);
  }
  if (strategies.empty()) throw std::runtime_error("no strategies given");
  SearchBudget budget;
  if (max_nodes > 0) budget.max_nodes = max_nodes;
  const auto report = sweep_threshold(r, strategies, m_lo, m_hi, seed, cap, budget);
  write_output(out_path, sweep_report_json(report).dump(2));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unit-fraction toolkit: smooth sets, Dickman rho, subset "
               "search, extraction chains, and coloring experiments"};
  app.require_subcommand(1);
  std::string out_path;
  app.add_option("--out", out_path, "write output to this path instead of stdout")
      ->capture_default_str();

  int exit_code = 0;

  // sieve
  auto* sieve = app.add_subcommand("sieve", "enumerate smooth numbers in a range");
  std::int64_t lo = 2, hi = 100, bound = 10, max_segments = 0;
  double eps_value = -1.0;
  bool sieve_json = false;
  int threads = 1;
  sieve->add_option("--lo", lo, "range start")->required();
  sieve->add_option("--hi", hi, "range end (inclusive)")->required();
  sieve->add_option("--bound", bound, "max allowed maximal prime power")->required();
  sieve->add_option("--eps", eps_value,
                    "near-normal divisor-count window; omit to disable");
  sieve->add_option("--max-segments", max_segments, "segment budget override");
  sieve->add_option("--threads", threads, "sieve worker threads");
  sieve->add_flag("--json", sieve_json, "emit a JSON array instead of lines");
  sieve->callback([&] {
    std::optional<double> eps;
    if (sieve->count("--eps") > 0) eps = eps_value;
    exit_code = run_sieve(lo, hi, bound, eps, sieve_json, max_segments, threads,
                          out_path);
  });

  // rho
  auto* rho = app.add_subcommand("rho", "evaluate or tabulate Dickman rho");
  double rho_u = 0.0, rho_max_u = 10.0, rho_step = 1e-4, rho_tol = 1e-8;
  bool rho_table = false;
  rho->add_option("--u", rho_u, "evaluation point");
  rho->add_flag("--table", rho_table, "emit the whole grid as CSV");
  rho->add_option("--max-u", rho_max_u, "table upper end")->capture_default_str();
  rho->add_option("--step", rho_step, "grid step")->capture_default_str();
  rho->add_option("--tol", rho_tol, "identity residual tolerance")
      ->capture_default_str();
  rho->callback([&] {
    std::optional<double> u;
    if (rho->count("--u") > 0) u = rho_u;
    exit_code = run_rho(u, rho_table, rho_max_u, rho_step, rho_tol, out_path);
  });

  // verify-constants
  auto* verify = app.add_subcommand(
      "verify-constants", "check the reciprocal-sum estimate constants");
  ConstantsConfig constants;
  verify->add_option("--log-n", constants.log_n, "log N per unit r")
      ->capture_default_str();
  verify->add_option("--u", constants.u, "smoothness parameter")
      ->capture_default_str();
  verify->add_option("--delta", constants.delta, "range widening")
      ->capture_default_str();
  verify->add_option("--target", constants.target, "estimate must exceed this")
      ->capture_default_str();
  verify->add_option("--expected-rounded", constants.expected_rounded,
                     "expected rounded widened exponent")
      ->capture_default_str();
  verify->add_option("--cap", constants.exponent_cap, "exponent cap")
      ->capture_default_str();
  verify->callback(
      [&] { exit_code = run_verify_constants(constants, out_path); });

  // find
  auto* find = app.add_subcommand("find", "find subsets with reciprocal sum 1");
  std::string find_set, find_method = "bb";
  std::size_t find_cap = 16;
  std::uint64_t find_nodes = 0;
  std::int64_t find_period_cap = 1'000'000;
  find->add_option("--set", find_set, "set file, '-', or inline literal")
      ->required();
  find->add_option("--cap", find_cap, "max witnesses to return")
      ->capture_default_str();
  find->add_option("--method", find_method, "bb, mitm, or expsum")
      ->capture_default_str();
  find->add_option("--max-nodes", find_nodes, "search node budget override");
  find->add_option("--period-cap", find_period_cap,
                   "lcm budget for the expsum method")
      ->capture_default_str();
  find->callback([&] {
    exit_code = run_find(find_set, find_cap, find_method, find_nodes,
                         find_period_cap, out_path);
  });

  // extract
  auto* extract = app.add_subcommand(
      "extract", "run an extraction chain; trace as JSON lines");
  extract->require_subcommand(1);
  std::string extract_input, extract_params;
  std::vector<std::string> extract_overrides;
  std::vector<std::int64_t> extract_h;
  for (const std::string which : {"lemma4", "prop2", "prop1"}) {
    auto* sub = extract->add_subcommand(which);
    sub->add_option("--input", extract_input, "set file, '-', or inline literal")
        ->required();
    sub->add_option("--params", extract_params, "key=value parameter file");
    sub->add_option("--param", extract_overrides,
                    "key=value override (repeatable; wins over --params)");
    if (which == "prop1")
      sub->add_option("--center", extract_h,
                      "extra interval centers (repeatable)");
    sub->callback([&, which] {
      exit_code = run_extract(which, extract_input, extract_params,
                              extract_overrides, extract_h, out_path);
    });
  }

  // color
  auto* color = app.add_subcommand("color", "build and check one coloring");
  std::int64_t color_m = 6;
  int color_r = 1;
  std::string color_strategy = "round_robin", color_assignment;
  std::uint64_t color_seed = 0, color_nodes = 0;
  std::size_t color_cap = 4;
  color->add_option("--M", color_m, "color the integers in [2, M]")->required();
  color->add_option("--r", color_r, "number of classes")->required();
  color->add_option("--strategy", color_strategy,
                    "random, round_robin, greedy_adversarial, or from_file")
      ->capture_default_str();
  color->add_option("--seed", color_seed, "seed for the random strategy")
      ->capture_default_str();
  color->add_option("--assignment", color_assignment,
                    "class labels for n = 2..M (from_file strategy)");
  color->add_option("--cap", color_cap, "witnesses per class")
      ->capture_default_str();
  color->add_option("--max-nodes", color_nodes, "per-class search budget");
  color->callback([&] {
    exit_code = run_color(color_m, color_r, color_strategy, color_seed,
                          color_assignment, color_cap, color_nodes, out_path);
  });

  // sweep
  auto* sweep = app.add_subcommand("sweep", "sweep colorings over a range of M");
  int sweep_r = 1;
  std::string sweep_strategies = "greedy_adversarial";
  std::int64_t sweep_lo = 2, sweep_hi = 12;
  std::uint64_t sweep_seed = 0, sweep_nodes = 0;
  std::size_t sweep_cap = 4;
  sweep->add_option("--r", sweep_r, "number of classes")->required();
  sweep->add_option("--strategies", sweep_strategies,
                    "comma-separated strategy list")
      ->capture_default_str();
  sweep->add_option("--m-lo", sweep_lo, "first M")->required();
  sweep->add_option("--m-hi", sweep_hi, "last M")->required();
  sweep->add_option("--seed", sweep_seed, "seed for random strategies")
      ->capture_default_str();
  sweep->add_option("--cap", sweep_cap, "witnesses per class")
      ->capture_default_str();
  sweep->add_option("--max-nodes", sweep_nodes, "per-class search budget");
  sweep->callback([&] {
    exit_code = run_sweep(sweep_r, sweep_strategies, sweep_lo, sweep_hi,
                          sweep_seed, sweep_cap, sweep_nodes, out_path);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}
