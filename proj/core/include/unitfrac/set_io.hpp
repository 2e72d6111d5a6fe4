#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "unitfrac/coloring.hpp"
#include "unitfrac/dickman.hpp"
#include "unitfrac/exp_sum.hpp"
#include "unitfrac/extraction.hpp"
#include "unitfrac/int_set.hpp"
#include "unitfrac/subset_search.hpp"

namespace unitfrac {

/// Parses a set literal: a JSON array of integers, or integers separated
/// by whitespace (newlines included) or commas. Throws std::runtime_error
/// with a position hint on malformed input.
std::vector<std::int64_t> parse_int_values(const std::string& text);

/// Reads path as a set literal; "-" reads standard input.
std::vector<std::int64_t> load_int_values(const std::string& path);

/// Resolves a CLI set argument: an existing file path (or "-") is loaded,
/// anything else is parsed inline.
std::vector<std::int64_t> resolve_set_argument(const std::string& arg);

/// Writes text to the path, or to stdout when the path is empty.
void write_output(const std::string& path, const std::string& text);

std::string rho_table_csv(const RhoTable& table);

nlohmann::json rational_json(const Rational& r);  // "p/q" string
nlohmann::json int_set_json(const IntSet& s);
nlohmann::json search_result_json(const UnitSubsetResult& r);
nlohmann::json exp_sum_json(const ExpSumEvaluation& e);
nlohmann::json positivity_json(const PositivityReport& r);
nlohmann::json constants_json(const ConstantsReport& r);
nlohmann::json prune_result_json(const PruneResult& r);
nlohmann::json window_result_json(const WindowResult& r);
nlohmann::json interval_outcome_json(const IntervalOutcome& o);
nlohmann::json pipeline_result_json(const PipelineResult& r);
nlohmann::json experiment_report_json(const ExperimentReport& r);
nlohmann::json sweep_report_json(const SweepReport& r);

}  // namespace unitfrac
