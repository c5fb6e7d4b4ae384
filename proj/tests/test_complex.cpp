#include <doctest.h>

#include "gstatics/complex.hpp"
#include "gstatics/fixtures.hpp"

using namespace gstatics;

TEST_SUITE("complex") {
  TEST_CASE("square complex is a closed surface") {
    const auto dg = fixtures::square();
    CHECK(dg.complex().count(0) == 4);
    CHECK(dg.complex().count(1) == 4);
    CHECK(dg.complex().count(2) == 2);
    CHECK(validate(dg.complex()).passed());
  }

  TEST_CASE("edge with two positive ends is rejected") {
    CellComplex cx({{"a", 0}, {"b", 0}, {"e", 1}}, {{"a", "e", 1}, {"b", "e", 1}}, false);
    const auto r = validate(cx);
    CHECK_FALSE(r.passed());
    CHECK(r.violates("directed edges"));
  }

  TEST_CASE("every fixture validates") {
    for (const auto& [name, dg] : fixtures::all()) {
      CAPTURE(name);
      const auto r = validate(dg);
      CHECK_MESSAGE(r.passed(), r.summary());
    }
  }

  TEST_CASE("boxed counts, Euler characteristic and genus") {
    const auto dg = fixtures::boxed();
    const auto& cx = dg.complex();
    CHECK(cx.count(0) == 5);
    CHECK(cx.count(1) == 8);
    CHECK(cx.count(2) == 5);
    CHECK(euler_characteristic(cx) == 2);
    CHECK(genus(cx) == 0);
  }

  TEST_CASE("torus grid is a torus") {
    const auto dg = fixtures::torus_grid();
    const auto& cx = dg.complex();
    CHECK(cx.count(0) == 9);
    CHECK(cx.count(1) == 18);
    CHECK(cx.count(2) == 9);
    CHECK(euler_characteristic(cx) == 0);
    CHECK(genus(cx) == 1);
  }

  TEST_CASE("genus two box") {
    const auto dg = fixtures::genus_two();
    const auto& cx = dg.complex();
    CHECK(cx.count(0) == 24);
    CHECK(cx.count(1) == 48);
    CHECK(euler_characteristic(cx) == -2);
    CHECK(genus(cx) == 2);
  }

  TEST_CASE("open truss counts only the cells present") {
    const auto dg = fixtures::open_truss();
    const auto& cx = dg.complex();
    CHECK_FALSE(cx.closed());
    CHECK(cx.count(0) == 5);
    CHECK(cx.count(1) == 10);
    CHECK(cx.count(2) == 6);
    CHECK(euler_characteristic(cx) == 1);
  }

  TEST_CASE("Poincare dual swaps counts and is an involution") {
    const auto dg = fixtures::boxed();
    const auto& cx = dg.complex();
    const auto d = poincare_dual(cx);
    CHECK(d.count(0) == 5);
    CHECK(d.count(1) == 8);
    CHECK(d.count(2) == 5);
    CHECK(validate(d).passed());
    const auto dd = poincare_dual(d);
    for (int k = 0; k < 3; ++k) CHECK(dd.ids(k) == cx.ids(k));
    for (Index e = 0; e < cx.count(1); ++e)
      for (Index v = 0; v < cx.count(0); ++v) CHECK(dd.sign(0, v, e) == cx.sign(0, v, e));

    const auto t = poincare_dual(fixtures::torus_grid().complex());
    CHECK(t.count(0) == 9);
    CHECK(t.count(1) == 18);
    CHECK(t.count(2) == 9);
  }

  TEST_CASE("Poincare dual of an open complex is refused") {
    try {
      (void)poincare_dual(fixtures::open_truss().complex());
      FAIL("expected NotClosedSurface");
    } catch (const StaticsError& e) {
      CHECK(e.code() == ErrorCode::NotClosedSurface);
    }
  }

  TEST_CASE("schema errors") {
    CHECK_THROWS_AS(CellComplex({{"a", 0}, {"a", 0}}, {}, true), StaticsError);
    CHECK_THROWS_AS(CellComplex({{"a", 0}}, {{"a", "zz", 1}}, true), StaticsError);
    CHECK_THROWS_AS(CellComplex({{"a", 3}}, {}, true), StaticsError);
  }

  TEST_CASE("non-injective realization and zero-length edge") {
    DiagramBuilder b(false);
    b.vertex("a", 0, 0).vertex("b", 0, 0).edge("ab", "a", "b");
    const auto r = validate(b.build());
    CHECK(r.violates("injective realization"));
    CHECK(r.violates("edge length"));
  }

  TEST_CASE("face cycles follow the orientation") {
    const auto dg = fixtures::triangle();
    const auto& cx = dg.complex();
    const auto cyc = face_cycle(cx, cx.index_of(2, "inner"));
    REQUIRE(cyc);
    double area = 0;
    for (std::size_t k = 0; k < cyc->size(); ++k) {
      const Vec2 p = dg.position((*cyc)[k]), q = dg.position((*cyc)[(k + 1) % cyc->size()]);
      area += p.x() * q.y() - p.y() * q.x();
    }
    CHECK(area > 0);
  }
}
