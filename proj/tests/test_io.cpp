#include <doctest.h>

#include <functional>

#include "gstatics/fixtures.hpp"
#include "gstatics/io.hpp"
#include "gstatics/reciprocal.hpp"
#include "gstatics/render.hpp"
#include "gstatics/statics.hpp"

using namespace gstatics;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const StaticsError& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("diagram files round-trip exactly") {
    for (const auto& [name, dg] : fixtures::all()) {
      CAPTURE(name);
      const auto text = dump(diagram_to_json(dg, {{0, 2.5}}));
      const auto back = parse_diagram(text);
      CHECK(dump(diagram_to_json(back.diagram, back.springs)) == text);
      CHECK(back.diagram.positions() == dg.positions());
      CHECK(back.springs.at(0) == 2.5);
    }
  }

  TEST_CASE("awkward doubles survive") {
    DiagramBuilder b(false);
    b.vertex("a", 0.1, 1.0 / 3.0).vertex("b", 1e-17, -123456.789012345678).edge("ab", "a", "b");
    const auto dg = b.build();
    const auto back = parse_diagram(dump(diagram_to_json(dg)));
    CHECK(back.diagram.positions() == dg.positions());
  }

  TEST_CASE("shipped fixture files match the library") {
    for (const auto& [name, dg] : fixtures::all()) {
      CAPTURE(name);
      const auto file = read_diagram(std::string(FIXTURE_DIR) + "/" + name + ".json");
      CHECK(dump(diagram_to_json(file.diagram)) == dump(diagram_to_json(dg)));
    }
  }

  TEST_CASE("schema errors") {
    auto doc = diagram_to_json(fixtures::triangle());
    auto with = [&](auto edit) {
      auto d = doc;
      edit(d);
      return code_of([&] { (void)parse_diagram(d); });
    };
    CHECK(with([](Json& d) { d["extra"] = 1; }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d["cells"]["ridges"] = Json::array(); }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d.erase("realization"); }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d["incidence"][0][2] = 2; }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d["incidence"][0][1] = "nowhere"; }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d["realization"]["ghost"] = Json::array({0, 0}); }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d["realization"].erase(d["realization"].begin().key()); }) == ErrorCode::SchemaError);
    CHECK(with([](Json& d) { d["closed"] = "yes"; }) == ErrorCode::SchemaError);
    CHECK(code_of([] { (void)parse_diagram(std::string("{not json")); }) == ErrorCode::SchemaError);
  }

  TEST_CASE("analysis of the boxed fixture") {
    const auto r = analyze(fixtures::boxed());
    CHECK(r["H1F"] == 1);
    CHECK(r["H0F"] == 3);
    CHECK(r["H0J"] == 3);
    CHECK(r["H1J"] == 1);
    CHECK(r["maxwell"]["lhs"] == 2);
    CHECK(r["maxwell"]["rhs"] == 2);
    CHECK(r["maxwell"]["holds"] == true);
    CHECK(r["genus_bounds"]["reciprocal"]["bound"] == 0);
    CHECK(r["genus_bounds"]["lift"]["bound"] == 0);
    CHECK(dump(r) == dump(analyze(fixtures::boxed())));
  }

  TEST_CASE("zero-stress render has no force layer") {
    const auto svg = render_svg(fixtures::square(), {Vector::Zero(4), std::nullopt, std::nullopt});
    CHECK(svg.find("id=\"form\"") != std::string::npos);
    CHECK(svg.find("id=\"forces\"") == std::string::npos);
  }

  TEST_CASE("stressed render has force and dual layers") {
    const auto dg = fixtures::boxed();
    const Vector w = self_stresses(dg)[0].values;
    const auto svg = render_svg(dg, {w, reciprocal_diagram(dg, w), std::nullopt});
    CHECK(svg.find("id=\"forces\"") != std::string::npos);
    CHECK(svg.find("id=\"dual\"") != std::string::npos);
    CHECK(svg.find("#d62728") != std::string::npos);
    CHECK(svg.find("#1f77b4") != std::string::npos);
  }
}
