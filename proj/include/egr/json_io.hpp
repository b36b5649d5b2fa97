#pragma once

// JSON schemas for configurations, colourings, coloured point sets and the
// reports produced by each module.

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "egr/colorings.hpp"
#include "egr/patterns.hpp"
#include "egr/propagate.hpp"
#include "egr/q5_lemma.hpp"
#include "egr/sampling.hpp"
#include "egr/triples.hpp"

namespace egr {

using json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kVersion = "0.1.0";

/// Malformed or invalid input; `what()` is prefixed with file:line:col for
/// syntax errors and with the JSON path for schema errors.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json load_json_file(const std::filesystem::path& path);
json parse_json_text(const std::string& text, const std::string& source = "<input>");

/// {"dim": n, "points": [[..], ..], "label": str, "degenerate": bool}; a
/// point may instead be a Q5 position string such as "123".
Configuration configuration_from_json(const json& j, const Tolerance& tol = {});
json to_json(const Configuration& c);

ColoringRule rule_from_json(const json& j);
json to_json(const ColoringRule& r);

/// {"points": [...], "colors": [...]}, points as in configuration_from_json.
ColoredPointSet colored_set_from_json(const json& j, const Tolerance& tol = {});
json to_json(const ColoredPointSet& s);

json to_json(const Point& p);
json to_json(const Match& m);
json to_json(const ViolationReport& r);
json to_json(const SetPartition& p);
json to_json(const Q5LemmaReport& r);
json to_json(const AllowedSetMap& m);
json to_json(const ForcingReport& r);
json to_json(const WidthResult& w);
json to_json(const ProjectionResult& p);

/// Versioned envelope shared by every CLI command.
json make_report(const std::string& command, json config, json result, double elapsed_ms);

}  // namespace egr
