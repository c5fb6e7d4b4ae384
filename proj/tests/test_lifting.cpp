#include <doctest.h>

#include <cmath>

#include "gstatics/fixtures.hpp"
#include "gstatics/lifting.hpp"
#include "gstatics/statics.hpp"
#include "support.hpp"

using namespace gstatics;

TEST_SUITE("lifting") {
  TEST_CASE("zero locus of a single vertex") {
    DiagramBuilder b(false);
    b.vertex("o", 0, 0);
    const auto z = zero_locus_cosheaf(b.build());
    CHECK(z.stalk_dim(0, 0) == 2);
  }

  TEST_CASE("zero locus stalk dimensions") {
    const auto z = zero_locus_cosheaf(fixtures::boxed());
    for (Index v = 0; v < 5; ++v) CHECK(z.stalk_dim(0, v) == 2);
    for (Index e = 0; e < 8; ++e) CHECK(z.stalk_dim(1, e) == 1);
    for (Index f = 0; f < 5; ++f) CHECK(z.stalk_dim(2, f) == 0);
  }

  TEST_CASE("edge functional of a horizontal unit edge") {
    DiagramBuilder b(false);
    b.vertex("u", 0, 0).vertex("v", 1, 0).edge("uv", "u", "v");
    const Vec3 t = edge_functional(b.build(), 0);
    // the function -y, up to the orientation convention
    CHECK(std::abs(t.x()) < 1e-15);
    CHECK(std::abs(std::abs(t.y()) - 1) < 1e-15);
    CHECK(std::abs(t.z()) < 1e-15);
  }

  TEST_CASE("tau is an isomorphism of cosheaves") {
    for (const auto& [name, dg] : fixtures::all()) {
      CAPTURE(name);
      const auto tau = tau_isomorphism(dg);
      CHECK(tau.commutativity_residual() <= 1e-9);
      CHECK(betti(tau.source()) == betti(tau.target()));
    }
  }

  TEST_CASE("zero stress lifts flat") {
    const auto dg = fixtures::boxed();
    const auto lift = polyhedral_lift(dg, Vector::Zero(8));
    for (const auto& h : lift.faces) CHECK(h.norm() == 0.0);
    CHECK(verify_lift(dg, lift).norm() == 0.0);
  }

  TEST_CASE("boxed lift is a pyramid") {
    const auto dg = fixtures::boxed();
    const auto& cx = dg.complex();
    const Vector w = self_stresses(dg)[0].values;
    const auto lift = polyhedral_lift(dg, w);
    const Index outer = cx.index_of(2, "outer");
    // pinned face is the lowest id, so compare relative to the outer face
    const Vec3 flat = lift.faces[outer];
    for (Index f = 0; f < 5; ++f) {
      if (f == outer) continue;
      CHECK((lift.faces[f] - flat).head<2>().norm() > 1e-6);
    }
    const Index o = cx.index_of(0, "o");
    const double apex = lift.heights[o] - homogeneous(dg.position(o)).dot(flat);
    for (Index v = 0; v < 4; ++v)
      CHECK(std::abs(lift.heights[v] - homogeneous(dg.position(v)).dot(flat)) < 1e-12);
    CHECK(std::abs(apex) > 1e-6);
    CHECK(test::abs_cosine(verify_lift(dg, lift), w) >= 1 - 1e-8);
  }

  TEST_CASE("lift round trip on closed fixtures") {
    for (const auto& [name, dg] : fixtures::closed_surfaces()) {
      CAPTURE(name);
      const Matrix basis = liftable_stresses(dg);
      CHECK(basis.cols() == lift_space(dg).lift_dim - 3);
      if (genus(dg.complex()) == 0) CHECK(basis.cols() == Index(self_stresses(dg).size()));
      for (Index j = 0; j < basis.cols(); ++j) {
        const Vector w = basis.col(j);
        const auto lift = polyhedral_lift(dg, w);
        CHECK(lift.gluing_residual <= 1e-9);
        CHECK((verify_lift(dg, lift) - w).norm() <= 1e-8);
      }
    }
  }

  TEST_CASE("lift force does not depend on the probe") {
    const auto dg = fixtures::reciprocal_pair();
    const Vector w = self_stresses(dg)[0].values;
    const auto lift = polyhedral_lift(dg, w);
    for (Index e = 0; e < dg.complex().count(1); ++e) {
      const Vec2 mid = dg.midpoint(e);
      const Vec2 n = quarter_turn(edge_direction(dg, e));
      const double a = lift_force(dg, lift.faces, e, mid + 0.7 * n);
      const double b = lift_force(dg, lift.faces, e, mid - 2.3 * n + Vec2(0.4, 0.1));
      CHECK(std::abs(a - b) <= 1e-9);
      CHECK(std::abs(a - w(e)) <= 1e-9);
    }
  }

  TEST_CASE("probe on the edge line is refused") {
    const auto dg = fixtures::boxed();
    const auto lift = polyhedral_lift(dg, self_stresses(dg)[0].values);
    try {
      (void)lift_force(dg, lift.faces, 0, dg.midpoint(0));
      FAIL("expected CollinearProbePoint");
    } catch (const StaticsError& e) {
      CHECK(e.code() == ErrorCode::CollinearProbePoint);
    }
  }

  TEST_CASE("sphere bookkeeping") {
    for (const auto& name : {"boxed", "square", "triangle", "reciprocal_pair", "triangulated_sphere"}) {
      CAPTURE(name);
      const auto dg = fixtures::by_name(name);
      const auto l = lift_genus_check(dg);
      CHECK(l.lift_dim == 3 + l.self_stress_dim);
      CHECK(l.lift_dim_mod_affine == l.self_stress_dim);
      CHECK(l.bound == 0);
      CHECK(l.guaranteed == (l.self_stress_dim > 0));
    }
  }

  TEST_CASE("torus lift space") {
    const auto dg = fixtures::torus_lift();
    CHECK(dg.complex().count(0) == 9);
    CHECK(dg.complex().count(1) == 24);
    const auto l = lift_genus_check(dg);
    CHECK(l.self_stress_dim == 9);
    CHECK(l.bound == 6);
    CHECK(l.guaranteed);
    CHECK(l.lift_dim_mod_affine == 4);
    REQUIRE(l.witness);
    CHECK(l.witness_stress.norm() > 1e-6);
  }

  TEST_CASE("triangulated surfaces lift in |V| dimensions") {
    for (const auto& name : {"triangulated_sphere", "triangulated_torus"}) {
      CAPTURE(name);
      const auto dg = fixtures::by_name(name);
      CHECK(lift_space(dg).lift_dim == dg.complex().count(0));
    }
  }

  TEST_CASE("OBJ export") {
    const auto dg = fixtures::boxed();
    const auto obj = lift_to_obj(dg, polyhedral_lift(dg, self_stresses(dg)[0].values));
    long vs = 0, fs = 0;
    std::size_t pos = 0;
    while (pos < obj.size()) {
      const auto end = obj.find('\n', pos);
      const auto line = obj.substr(pos, end - pos);
      vs += line.rfind("v ", 0) == 0;
      fs += line.rfind("f ", 0) == 0;
      pos = end == std::string::npos ? obj.size() : end + 1;
    }
    CHECK(vs == 5);
    CHECK(fs == 4 + 2);
  }
}
