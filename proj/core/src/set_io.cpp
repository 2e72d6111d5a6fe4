#include "unitfrac/set_io.hpp"

#include <cctype>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace unitfrac {

std::vector<std::int64_t> parse_int_values(const std::string& text) {
  std::size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  if (text[first] == '[') {
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& err) {
      throw std::runtime_error(std::string("bad JSON set: ") + err.what());
    }
    if (!parsed.is_array()) throw std::runtime_error("set JSON must be an array");
    std::vector<std::int64_t> out;
    for (const auto& v : parsed) {
      if (!v.is_number_integer())
        throw std::runtime_error("set JSON must contain only integers");
      out.push_back(v.get<std::int64_t>());
    }
    return out;
  }

  std::vector<std::int64_t> out;
  std::size_t pos = first;
  while (pos < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ',') {
      ++pos;
      continue;
    }
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
           text[end] != ',')
      ++end;
    std::int64_t value = 0;
    const auto [ptr, ec] =
        std::from_chars(text.data() + pos, text.data() + end, value);
    if (ec != std::errc() || ptr != text.data() + end)
      throw std::runtime_error("bad integer '" + text.substr(pos, end - pos) +
                               "' at offset " + std::to_string(pos));
    out.push_back(value);
    pos = end;
  }
  return out;
}

std::vector<std::int64_t> load_int_values(const std::string& path) {
  std::ostringstream buf;
  if (path == "-") {
    buf << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    buf << in.rdbuf();
  }
  return parse_int_values(buf.str());
}

std::vector<std::int64_t> resolve_set_argument(const std::string& arg) {
  if (arg == "-" || std::filesystem::exists(arg)) return load_int_values(arg);
  return parse_int_values(arg);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::string rho_table_csv(const RhoTable& table) {
  std::ostringstream out;
  out << "u,rho\n";
  out.precision(17);
  const auto& values = table.grid_values();
  for (std::size_t k = 0; k < values.size(); ++k)
    out << static_cast<double>(k) * table.step() << ',' << values[k] << '\n';
  return out.str();
}

nlohmann::json rational_json(const Rational& r) { return to_string(r); }

nlohmann::json int_set_json(const IntSet& s) {
  auto arr = nlohmann::json::array();
  for (auto v : s.values()) arr.push_back(v);
  return arr;
}

namespace {

const char* method_name(SearchMethod m) {
  switch (m) {
    case SearchMethod::BranchAndBound: return "branch_and_bound";
    case SearchMethod::MeetInMiddle: return "meet_in_middle";
    case SearchMethod::ExpSum: return "exp_sum";
  }
  return "unknown";
}

nlohmann::json witnesses_json(const std::vector<std::vector<std::int64_t>>& ws) {
  auto arr = nlohmann::json::array();
  for (const auto& w : ws) arr.push_back(w);
  return arr;
}

nlohmann::json prune_steps_json(const std::vector<PruneStep>& steps) {
  auto arr = nlohmann::json::array();
  for (const auto& s : steps)
    arr.push_back({{"q", s.q}, {"removed", s.removed}});
  return arr;
}

}  // namespace

nlohmann::json search_result_json(const UnitSubsetResult& r) {
  return {{"count", r.count},
          {"witnesses", witnesses_json(r.witnesses)},
          {"method", method_name(r.method)},
          {"exact", r.exact},
          {"nodes", r.nodes}};
}

nlohmann::json exp_sum_json(const ExpSumEvaluation& e) {
  auto samples = nlohmann::json::array();
  for (const auto& [h, value] : e.samples)
    samples.push_back({{"h", h}, {"re", value.real()}, {"im", value.imag()}});
  return {{"period", e.period},
          {"total", e.total},
          {"rounded_count", e.rounded_count},
          {"rounding_gap", e.rounding_gap},
          {"trusted", e.trusted},
          {"samples", samples}};
}

nlohmann::json positivity_json(const PositivityReport& r) {
  return {{"precondition_ok", r.precondition_ok},
          {"precondition_note", r.precondition_note},
          {"checked", r.checked},
          {"all_positive", r.all_positive},
          {"first_violation", r.first_violation},
          {"min_real_part", r.min_real_part}};
}

nlohmann::json constants_json(const ConstantsReport& r) {
  return {{"log_n", r.config.log_n},
          {"u", r.config.u},
          {"delta", r.config.delta},
          {"target", r.config.target},
          {"estimate", r.estimate},
          {"margin", r.margin},
          {"estimate_exceeds_target", r.estimate_exceeds_target},
          {"rounded_exponent", r.rounded_exponent},
          {"expected_rounded", r.config.expected_rounded},
          {"rounded_matches_expected", r.rounded_matches_expected},
          {"exponent_cap", r.config.exponent_cap},
          {"exponent_under_cap", r.exponent_under_cap},
          {"all_passed", r.all_passed}};
}

nlohmann::json prune_result_json(const PruneResult& r) {
  return {{"kept", int_set_json(r.kept)},
          {"kept_sum", rational_json(r.kept.recip_sum())},
          {"steps", prune_steps_json(r.steps)},
          {"ok", r.ok},
          {"status", r.status}};
}

nlohmann::json window_result_json(const WindowResult& r) {
  auto steps = nlohmann::json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"prune", prune_steps_json(s.prune_steps)},
                     {"removed", s.removed}});
  return {{"kept", int_set_json(r.kept)},
          {"kept_sum", rational_json(r.kept.recip_sum())},
          {"initial_prune", prune_steps_json(r.initial_prune)},
          {"steps", steps},
          {"ok", r.ok},
          {"status", r.status}};
}

nlohmann::json interval_outcome_json(const IntervalOutcome& o) {
  return {{"kind", o.kind == IntervalCase::Single   ? "single"
                   : o.kind == IntervalCase::Pair ? "pair"
                                                  : "neither"},
          {"hypothesis_ok", o.hypothesis_ok},
          {"non_divisor_count", o.non_divisor_count},
          {"w", o.w},
          {"w1", o.w1},
          {"w2", o.w2},
          {"note", o.note}};
}

nlohmann::json pipeline_result_json(const PipelineResult& r) {
  auto removed = nlohmann::json::array();
  for (const auto& s : r.removed_sets) removed.push_back(int_set_json(s));
  return {{"d", int_set_json(r.d)},
          {"ok", r.ok},
          {"status", r.status},
          {"intervals_tested", r.intervals_tested},
          {"intervals_hypothesis_ok", r.intervals_hypothesis_ok},
          {"removed_sets", removed},
          {"trace", r.trace}};
}

nlohmann::json experiment_report_json(const ExperimentReport& r) {
  auto classes = nlohmann::json::array();
  for (const auto& c : r.classes)
    classes.push_back({{"class", c.class_id},
                       {"size", c.size},
                       {"recip_sum", rational_json(c.recip_sum)},
                       {"searched", c.searched},
                       {"exact", c.exact},
                       {"count", c.count},
                       {"witnesses", witnesses_json(c.witnesses)}});
  return {{"inputs",
           {{"m", r.m},
            {"r", r.r},
            {"strategy", strategy_name(r.strategy)},
            {"seed", r.seed}}},
          {"classes", classes},
          {"verdict", r.verdict},
          {"exact", r.exact},
          {"run", {{"timestamp", r.timestamp}, {"elapsed_seconds", r.elapsed_seconds}}}};
}

nlohmann::json sweep_report_json(const SweepReport& r) {
  auto strategies = nlohmann::json::array();
  for (const auto& s : r.strategies) {
    auto points = nlohmann::json::array();
    for (const auto& p : s.points) {
      nlohmann::json point = {{"m", p.m},
                              {"infeasible", p.infeasible},
                              {"verdict", p.verdict},
                              {"exact", p.exact}};
      if (p.infeasible) point["first_unplaceable"] = p.first_unplaceable;
      points.push_back(std::move(point));
    }
    nlohmann::json entry = {{"strategy", strategy_name(s.strategy)},
                            {"points", points}};
    if (s.greedy_cutover) entry["greedy_cutover"] = *s.greedy_cutover;
    strategies.push_back(std::move(entry));
  }
  return {{"inputs",
           {{"r", r.r}, {"m_lo", r.m_lo}, {"m_hi", r.m_hi}, {"seed", r.seed}}},
          {"strategies", strategies},
          {"run", {{"timestamp", r.timestamp}, {"elapsed_seconds", r.elapsed_seconds}}}};
}

}  // namespace unitfrac
