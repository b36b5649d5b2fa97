#include "egr/json_io.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <sstream>

#include "egr/hamming.hpp"

namespace egr {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void schema_error(const std::string& path, const std::string& msg) {
  throw InputError(path + ": " + msg);
}

const json& require(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing key \"") + key + "\"");
  return *it;
}

double number_at(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

int int_at(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<int>();
}

Point point_from_json(const json& j, const std::string& path) {
  if (j.is_string()) {
    try {
      return ExactHammingPoint::parse(j.get<std::string>()).to_point();
    } catch (const std::invalid_argument& e) {
      schema_error(path, e.what());
    }
  }
  if (!j.is_array()) schema_error(path, "expected a coordinate array or Q5 position string");
  std::vector<double> c;
  for (std::size_t i = 0; i < j.size(); ++i) c.push_back(number_at(j[i], path + "/" + std::to_string(i)));
  try {
    return Point(std::move(c));
  } catch (const std::invalid_argument& e) {
    schema_error(path, e.what());
  }
}

json vec_json(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

}  // namespace

json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    // Map the byte offset to line:column.
    std::size_t line = 1, col = 1;
    const std::size_t end = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path.string() + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path.string());
}

Configuration configuration_from_json(const json& j, const Tolerance& tol) {
  const json& pts = require(j, "points", "");
  if (!pts.is_array() || pts.empty()) schema_error("/points", "expected a non-empty array");
  std::vector<Point> points;
  for (std::size_t i = 0; i < pts.size(); ++i) points.push_back(point_from_json(pts[i], "/points/" + std::to_string(i)));
  if (j.contains("dim")) {
    const int dim = int_at(j["dim"], "/dim");
    for (std::size_t i = 0; i < points.size(); ++i)
      if (points[i].dim() != static_cast<std::size_t>(dim))
        schema_error("/points/" + std::to_string(i), "dimension differs from \"dim\" = " + std::to_string(dim));
  }
  const std::string label = j.value("label", std::string{});
  const bool degenerate = j.value("degenerate", false);
  try {
    return Configuration(std::move(points), label, degenerate, tol);
  } catch (const std::invalid_argument& e) {
    schema_error("/points", e.what());
  }
}

json to_json(const Point& p) {
  json a = json::array();
  for (double x : p.coords()) a.push_back(x);
  return a;
}

json to_json(const Configuration& c) {
  json j;
  j["dim"] = c.dim();
  json pts = json::array();
  for (const auto& p : c.points()) pts.push_back(to_json(p));
  j["points"] = std::move(pts);
  j["label"] = c.label();
  if (c.degenerate()) j["degenerate"] = true;
  return j;
}

ColoringRule rule_from_json(const json& j) {
  const json& v = require(j, "variant", "");
  if (!v.is_string()) schema_error("/variant", "expected a string");
  const std::string variant = v.get<std::string>();
  try {
    if (variant == "Block")
      return ColoringRule(BlockRule{number_at(require(j, "a", ""), "/a"),
                                    int_at(require(j, "num_colors", ""), "/num_colors")});
    if (variant == "GridBlock")
      return ColoringRule(GridBlockRule{number_at(require(j, "h", ""), "/h"),
                                        int_at(require(j, "colors_per_axis", ""), "/colors_per_axis"),
                                        int_at(require(j, "num_axes", ""), "/num_axes")});
    if (variant == "SphericalFloorMod")
      return ColoringRule(SphericalFloorModRule{int_at(require(j, "m", ""), "/m")});
    if (variant == "Constant") {
      const int c = j.contains("color") ? int_at(j["color"], "/color") : 0;
      if (c < 0) schema_error("/color", "colour must be non-negative");
      return ColoringRule(ConstantRule{static_cast<ColorId>(c)});
    }
    if (variant == "Table") {
      TableRule t;
      const json& entries = require(j, "entries", "");
      if (!entries.is_array()) schema_error("/entries", "expected an array");
      for (std::size_t i = 0; i < entries.size(); ++i) {
        const std::string path = "/entries/" + std::to_string(i);
        const int c = int_at(require(entries[i], "color", path), path + "/color");
        if (c < 0) schema_error(path + "/color", "colour must be non-negative");
        t.entries.emplace_back(point_from_json(require(entries[i], "point", path), path + "/point"),
                               static_cast<ColorId>(c));
      }
      if (j.contains("fallback")) t.fallback = static_cast<ColorId>(int_at(j["fallback"], "/fallback"));
      return ColoringRule(std::move(t));
    }
  } catch (const std::invalid_argument& e) {
    schema_error("", e.what());
  }
  schema_error("/variant", "unknown variant \"" + variant + "\"");
}

json to_json(const ColoringRule& r) {
  json j;
  j["variant"] = r.name();
  std::visit(overloaded{
                 [&](const BlockRule& b) {
                   j["a"] = b.a;
                   j["num_colors"] = b.num_colors;
                 },
                 [&](const GridBlockRule& g) {
                   j["h"] = g.h;
                   j["colors_per_axis"] = g.colors_per_axis;
                   j["num_axes"] = g.num_axes;
                 },
                 [&](const SphericalFloorModRule& s) { j["m"] = s.m; },
                 [&](const ConstantRule& c) { j["color"] = c.color; },
                 [&](const TableRule& t) {
                   json entries = json::array();
                   for (const auto& [p, c] : t.entries) entries.push_back({{"point", to_json(p)}, {"color", c}});
                   j["entries"] = std::move(entries);
                   j["fallback"] = t.fallback;
                 },
             },
             r.variant());
  return j;
}

ColoredPointSet colored_set_from_json(const json& j, const Tolerance& tol) {
  Configuration pts = configuration_from_json(j, tol);
  const json& cols = require(j, "colors", "");
  if (!cols.is_array()) schema_error("/colors", "expected an array");
  std::vector<ColorId> colors;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    const int c = int_at(cols[i], "/colors/" + std::to_string(i));
    if (c < 0) schema_error("/colors/" + std::to_string(i), "colour must be non-negative");
    colors.push_back(static_cast<ColorId>(c));
  }
  if (colors.size() != pts.size())
    schema_error("/colors", "expected " + std::to_string(pts.size()) + " colours, got " +
                                std::to_string(colors.size()));
  return ColoredPointSet(std::move(pts), std::move(colors));
}

json to_json(const ColoredPointSet& s) {
  json j = to_json(s.points);
  j["colors"] = s.colors;
  return j;
}

json to_json(const Match& m) {
  return {{"indices", m.indices}, {"assignment", m.assignment}, {"max_deviation", m.max_deviation}};
}

json to_json(const ViolationReport& r) {
  json j;
  j["rule"] = to_json(r.rule);
  j["pattern_kind"] = std::string(to_string(r.kind));
  j["pattern"] = to_json(r.pattern);
  j["trials"] = r.trials_run;
  j["seed"] = r.seed;
  j["clean"] = r.clean();
  if (r.witness) {
    j["witness"] = {{"trial", r.witness->trial},
                    {"points", to_json(r.witness->placed)["points"]},
                    {"colors", r.witness->colors}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

json to_json(const SetPartition& p) { return p.rgs(); }

json to_json(const Q5LemmaReport& r) {
  json j;
  j["ground"] = r.full_q5 ? "Q5" : "Q5(3)";
  j["checked"] = r.partitions_checked;
  j["case1"] = r.case1_hits;
  j["case2"] = r.case2_hits;
  if (r.full_q5) j["nodes"] = r.nodes;
  json ce = json::array();
  for (const auto& p : r.counterexamples) ce.push_back(to_json(p));
  j["counterexamples"] = std::move(ce);
  return j;
}

json to_json(const AllowedSetMap& m) {
  json j;
  j["r"] = m.r;
  j["allowed"] = m.allowed;
  return j;
}

json to_json(const ForcingReport& r) {
  json j;
  j["points"] = r.points;
  j["r"] = r.r;
  j["rounds"] = r.rounds;
  j["contradiction"] = r.contradiction;
  j["by_cardinality"] = r.by_cardinality;
  j["singleton_fraction"] = r.singleton_fraction;
  j["full_fraction"] = r.full_fraction;
  j["slab_axis"] = r.slab_axis;
  json slabs = json::array();
  for (const auto& s : r.slabs)
    slabs.push_back({{"coordinate", s.coordinate}, {"points", s.points}, {"by_cardinality", s.by_cardinality}});
  j["slabs"] = std::move(slabs);
  return j;
}

json to_json(const WidthResult& w) {
  return {{"value", w.width}, {"exact", w.exact}, {"bound", w.exact ? "exact" : "upper bound"},
          {"direction", vec_json(w.direction)}, {"restarts", w.restarts}};
}

json to_json(const ProjectionResult& p) {
  json frame = json::array();
  for (Eigen::Index c = 0; c < p.frame.cols(); ++c) frame.push_back(vec_json(p.frame.col(c)));
  return {{"value", p.bound}, {"exact", p.exact}, {"bound", p.exact ? "exact" : "upper bound"},
          {"frame", std::move(frame)}, {"restarts", p.restarts}};
}

json make_report(const std::string& command, json config, json result, double elapsed_ms) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["result"] = std::move(result);
  j["elapsed_ms"] = elapsed_ms;
  return j;
}

}  // namespace egr
