#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <functional>
#include <fstream>

#include "egr/json_io.hpp"
#include "egr/svg.hpp"

using namespace egr;

namespace {

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const InputError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_CASE("configuration JSON round trip") {
  const Configuration c({Point{0, 0}, Point{1, 0.25}, Point{-3, 1e-7}}, "tri");
  const auto back = configuration_from_json(to_json(c));
  REQUIRE(back.size() == 3);
  CHECK(back.label() == "tri");
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t k = 0; k < 2; ++k) CHECK(back[i][k] == c[i][k]);
  // Text round trip keeps doubles exactly.
  const auto text = to_json(c).dump();
  CHECK(configuration_from_json(parse_json_text(text))[2][1] == 1e-7);
}

TEST_CASE("Q5 position strings") {
  const auto c = configuration_from_json(parse_json_text(R"({"points": ["123", "124"]})"));
  CHECK(c.dim() == 5);
  CHECK(diameter(c) == doctest::Approx(1.0));
}

TEST_CASE("configuration schema errors name the JSON path") {
  CHECK(error_of([] { configuration_from_json(parse_json_text(R"({"pts": []})")); }).find("points") !=
        std::string::npos);
  CHECK(error_of([] { configuration_from_json(parse_json_text(R"({"points": [[0, 0], [1, "x"]]})")); })
            .find("/points/1/1") != std::string::npos);
  CHECK(error_of([] { configuration_from_json(parse_json_text(R"({"dim": 3, "points": [[0, 0]]})")); })
            .find("/points/0") != std::string::npos);
  CHECK(error_of([] { configuration_from_json(parse_json_text(R"({"points": ["129"]})")); })
            .find("/points/0") != std::string::npos);
  // Repeated points are rejected unless marked degenerate.
  CHECK_FALSE(error_of([] { configuration_from_json(parse_json_text(R"({"points": [[0], [0]]})")); }).empty());
  CHECK_NOTHROW(configuration_from_json(parse_json_text(R"({"points": [[0], [0]], "degenerate": true})")));
}

TEST_CASE("syntax errors carry line and column") {
  const std::string bad = "{\n  \"points\": [\n    [0, 0],\n    [1, 0,]\n  ]\n}";
  const auto msg = error_of([&] { parse_json_text(bad, "in.json"); });
  CHECK(msg.rfind("in.json:4:", 0) == 0);
}

TEST_CASE("files") {
  const auto dir = std::filesystem::temp_directory_path() / "egr_test_io";
  std::filesystem::create_directories(dir);
  const auto path = dir / "c.json";
  std::ofstream(path) << R"({"points": [[0, 0], [3, 4]]})";
  CHECK(diameter(configuration_from_json(load_json_file(path))) == doctest::Approx(5));
  CHECK(error_of([&] { load_json_file(dir / "missing.json"); }).find("cannot open") != std::string::npos);
}

TEST_CASE("colouring rule JSON round trip") {
  TableRule t;
  t.entries = {{Point{1, 0}, 2}, {Point{0, 1}, 5}};
  t.fallback = 1;
  const std::vector<ColoringRule> rules = {ColoringRule::block(0.5, 4), ColoringRule::grid_block(1.5, 2, 3),
                                           ColoringRule::spherical_floor_mod(4), ColoringRule::constant(3),
                                           ColoringRule(t)};
  for (const auto& r : rules) {
    const auto j = to_json(r);
    const auto back = rule_from_json(parse_json_text(j.dump()));
    CHECK(back.name() == r.name());
    CHECK(to_json(back) == j);
    for (const Point& p : {Point{0.3, 0.7, 2}, Point{1, 0, 0}, Point{-4.2, 3.3, 0}})
      CHECK(back.color(p) == r.color(p));
  }
  CHECK(error_of([] { rule_from_json(parse_json_text(R"({"variant": "Stripes"})")); }).find("/variant") !=
        std::string::npos);
  CHECK(error_of([] { rule_from_json(parse_json_text(R"({"variant": "Block", "a": 1})")); }).find("num_colors") !=
        std::string::npos);
  CHECK_FALSE(error_of([] { rule_from_json(parse_json_text(R"({"variant": "Block", "a": -1, "num_colors": 2})")); })
                  .empty());
}

TEST_CASE("coloured point sets") {
  const auto s = colored_set_from_json(parse_json_text(R"({"points": ["123", "124"], "colors": [0, 3]})"));
  CHECK(s.colors == std::vector<ColorId>{0, 3});
  CHECK(to_json(s)["colors"] == json::array({0, 3}));
  CHECK(error_of([] { colored_set_from_json(parse_json_text(R"({"points": ["123"], "colors": [0, 1]})")); })
            .find("/colors") != std::string::npos);
  CHECK(error_of([] { colored_set_from_json(parse_json_text(R"({"points": ["123"], "colors": [-1]})")); })
            .find("/colors/0") != std::string::npos);
}

TEST_CASE("reports") {
  const auto q5 = verify_q5_lemma();
  const auto j = make_report("verify q5", {{"full_q5", false}}, to_json(q5), 1.5);
  CHECK(j["schema_version"] == kReportSchemaVersion);
  CHECK(j["command"] == "verify q5");
  CHECK(j["result"]["checked"] == 115975);
  CHECK(j["result"]["counterexamples"].empty());
  CHECK(parse_json_text(j.dump()) == j);

  WidthResult w;
  w.width = 1;
  w.exact = false;
  w.direction = Eigen::VectorXd::Unit(2, 0);
  CHECK(to_json(w)["bound"] == "upper bound");
}

TEST_CASE("SVG rendering") {
  RenderOptions opts;
  opts.window = {-3, 3, -3, 3};
  opts.pixels_per_unit = 4;
  const auto rule = ColoringRule::block(1, 3);
  const auto a = render_svg(rule, opts);
  const auto b = render_svg(rule, opts);
  CHECK(a == b);
  CHECK(a.find("<svg") != std::string::npos);
  // Six vertical stripes of width one unit per row, 24 rows.
  std::size_t rects = 0;
  for (auto pos = a.find("<rect"); pos != std::string::npos; pos = a.find("<rect", pos + 1)) ++rects;
  CHECK(rects == 6 * 24);
  CHECK(a.find("</svg>") != std::string::npos);
  const auto& pal = default_palette();
  for (int c = 0; c < 3; ++c) CHECK(a.find(pal[c]) != std::string::npos);
  CHECK(a.find(pal[3]) == std::string::npos);

  const auto with_overlay = render_svg(rule, opts, {{Point{0, 0}, Point{1, 0}, Point{1, 1}}});
  CHECK(with_overlay.find("<polygon") != std::string::npos);

  // Slicing a rule on E^3 needs the tail coordinate.
  opts.slice_tail = {0.5};
  CHECK(render_svg(ColoringRule::grid_block(1, 2, 3), opts).find("<svg") != std::string::npos);

  opts.window = {1, 0, 0, 1};
  CHECK_THROWS(render_svg(rule, opts));
}
