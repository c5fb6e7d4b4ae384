// Prints one PASS/FAIL line per acceptance criterion; exits non-zero on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "gstatics/dynamics.hpp"
#include "gstatics/fixtures.hpp"
#include "gstatics/lifting.hpp"
#include "gstatics/reciprocal.hpp"
#include "gstatics/statics.hpp"

using namespace gstatics;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double abs_cosine(const Vector& a, const Vector& b) { return std::abs(a.dot(b)) / (a.norm() * b.norm()); }

Index dim_of(const CosheafData& c, int k) {
  return c.is_sheaf() ? cohomology(c, k).dimension() : homology(c, k).dimension();
}

bool is_sphere(const Diagram& dg) { return dg.complex().closed() && genus(dg.complex()) == 0; }

void boxed_stress(Outcome& o) {
  const auto dg = fixtures::boxed();
  const auto f = force_cosheaf(dg);
  const Index h1 = homology(f, 1).dimension(), h0 = homology(f, 0).dimension();
  o.require(h1 == 1 && h0 == 3, "H1F = 1 and H0F = 3");
  const double r = std::sqrt(2.0);
  Vector target(8);
  target << 1, 1, 1, 1, -r, -r, -r, -r;
  const auto s = self_stresses(dg);
  const double c = s.empty() ? 0.0 : abs_cosine(s[0].values, target);
  o.require(c >= 1 - 1e-8, "generator matches (1,1,1,1,-r2,-r2,-r2,-r2)");
  o.detail << " H1F=" << h1 << " H0F=" << h0 << " 1-cos=" << 1 - c;
}

void maxwell(Outcome& o) {
  int n = 0;
  for (const auto& [name, dg] : fixtures::all()) {
    const auto m = maxwell_rule_report(dg);
    o.require(m.holds && m.lhs == m.rhs, name);
    ++n;
  }
  const auto b = maxwell_rule_report(fixtures::boxed());
  const auto s = maxwell_rule_report(fixtures::square());
  const auto t = maxwell_rule_report(fixtures::triangle());
  o.require(b.lhs == 2 && b.rigid_motions == 3 && b.mechanisms == 0 && b.self_stresses == 1, "boxed 10-8 = 3+0-1");
  o.require(s.lhs == 4 && s.rigid_motions == 3 && s.mechanisms == 1 && s.self_stresses == 0, "four-bar 8-4 = 3+1-0");
  o.require(t.lhs == 3 && t.rigid_motions == 3 && t.mechanisms == 0 && t.self_stresses == 0, "triangle 6-3 = 3+0-0");
  o.detail << " fixtures=" << n;
}

void position_dims(Outcome& o) {
  const auto sq = position_sheaf(fixtures::square());
  const auto bx = position_sheaf(fixtures::boxed());
  const Index a = cohomology(sq, 0).dimension(), b = cohomology(sq, 1).dimension();
  const Index c = cohomology(bx, 0).dimension(), d = cohomology(bx, 1).dimension();
  o.require(a == 4 && b == 0, "square H0 = 4, H1 = 0");
  o.require(c == 3 && d == 1, "boxed H0 = 3, H1 = 1");
  o.detail << " square=(" << a << "," << b << ") boxed=(" << c << "," << d << ")";
}

void dualities(Outcome& o) {
  int pairs = 0;
  for (const auto& [name, dg] : fixtures::all()) {
    const auto emb = force_embedding(dg);
    const auto aff = affine_cosheaf(dg);
    std::vector<CosheafData> all{constant_cosheaf(dg.complex_ptr(), 1), constant_cosheaf(dg.complex_ptr(), 2),
                                 force_cosheaf(dg), linkage_sheaf(dg), position_sheaf(dg),
                                 position_dual_cosheaf(dg), *emb.quotient.quotient, zero_locus_cosheaf(dg),
                                 *aff.quotient.quotient};
    for (const auto& c : all) {
      const auto lin = linear_dual(c);
      for (int k = 0; k < 3; ++k) o.require(dim_of(c, k) == dim_of(lin, k), name + " linear dual");
      if (dg.complex().closed()) {
        const auto pd = poincare_dual_cosheaf(c);
        for (int k = 0; k < 3; ++k) o.require(dim_of(c, k) == dim_of(pd, 2 - k), name + " Poincare dual");
      }
      ++pairs;
    }
  }
  o.detail << " pairs=" << pairs;
}

void reciprocity(Outcome& o) {
  const auto dg = fixtures::boxed();
  const auto& cx = dg.complex();
  const Vector w = self_stresses(dg)[0].values;
  const auto q = reciprocal_diagram(dg, w);
  double law = 0;
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto fs = cx.cofaces_of(1, e);
    const Vec2 jump = q.points[fs[0].cell] - q.points[fs[1].cell];
    law = std::max(law, std::abs(fs[0].sign * jump.dot(edge_direction(dg, e)) - w(e)));
    law = std::max(law, std::abs(jump.norm() - std::abs(w(e))));
  }
  o.require(law <= 1e-8, "oriented-length law");
  const Vector back = stress_via_connecting_map(force_embedding(dg), q);
  const double c = abs_cosine(back, w);
  o.require(c >= 1 - 1e-8, "connecting map recovers the stress");
  o.detail << " law=" << law << " 1-cos=" << 1 - c;
}

void five_way(Outcome& o) {
  for (const auto& name : {"boxed", "reciprocal_pair"}) {
    const auto dg = fixtures::by_name(name);
    const auto r = reciprocity_report(dg, reciprocal_diagram(dg, self_stresses(dg)[0].values));
    o.require(r.all_equal() && r.mechanisms_and_rotations >= 1, name);
    o.detail << " " << name << "=(" << r.mechanisms_and_rotations << "," << r.parallel_deformations << ","
             << r.impossible_rotations << "," << r.self_shear << "," << r.dual_self_stress << ")";
  }
}

void lifting(Outcome& o) {
  double worst = 0, glue = 0, probe = 0;
  int vectors = 0;
  for (const auto& [name, dg] : fixtures::closed_surfaces()) {
    const Matrix basis = liftable_stresses(dg);
    if (is_sphere(dg)) o.require(basis.cols() == Index(self_stresses(dg).size()), name + " lifts every stress");
    for (Index j = 0; j < basis.cols(); ++j) {
      const Vector w = basis.col(j);
      const auto lift = polyhedral_lift(dg, w);
      glue = std::max(glue, lift.gluing_residual);
      worst = std::max(worst, (verify_lift(dg, lift) - w).cwiseAbs().maxCoeff());
      for (Index e = 0; e < dg.complex().count(1); ++e) {
        const Vec2 m = dg.midpoint(e), n = quarter_turn(edge_direction(dg, e));
        const double a = lift_force(dg, lift.faces, e, m + 0.5 * n);
        const double b = lift_force(dg, lift.faces, e, m - 3.0 * n + 0.25 * edge_direction(dg, e));
        probe = std::max(probe, std::abs(a - b));
      }
      ++vectors;
    }
  }
  o.require(worst <= 1e-8, "round trip");
  o.require(glue <= 1e-9, "gluing residual");
  o.require(probe <= 1e-9, "probe independence");
  o.detail << " vectors=" << vectors << " roundtrip=" << worst << " glue=" << glue << " probe=" << probe;
}

void exactness(Outcome& o) {
  int n = 0;
  for (const auto& [name, dg] : fixtures::closed_surfaces()) {
    if (!is_sphere(dg)) continue;
    const Index f1 = homology(force_cosheaf(dg), 1).dimension();
    const Index g2 = homology(*force_embedding(dg).quotient.quotient, 2).dimension();
    const Index a2 = homology(*affine_cosheaf(dg).quotient.quotient, 2).dimension();
    o.require(g2 == 2 + f1, name + " H2G");
    o.require(a2 == 3 + f1, name + " H2A");
    ++n;
  }
  o.detail << " spheres=" << n;
}

Diagram random_truss(std::mt19937_64& rng, int vertices, int edges) {
  std::uniform_real_distribution<double> u(-5, 5);
  DiagramBuilder b(false);
  for (int v = 0; v < vertices; ++v) b.vertex("v" + std::to_string(v), u(rng), u(rng));
  std::uniform_int_distribution<int> pick(0, vertices - 1);
  std::set<std::pair<int, int>> used;
  while (int(used.size()) < edges) {
    int a = pick(rng), c = pick(rng);
    if (a == c || used.count({a, c}) || used.count({c, a})) continue;
    used.insert({a, c});
    b.edge("e" + std::to_string(used.size()), "v" + std::to_string(a), "v" + std::to_string(c));
  }
  return b.build();
}

void stiffness(Outcome& o) {
  std::mt19937_64 rng(20240229);
  std::uniform_real_distribution<double> angle(0, 2 * M_PI), kappa(0.1, 10);
  double single = 0, multi = 0;
  for (int i = 0; i < 100; ++i) {
    const double th = angle(rng), k = kappa(rng);
    DiagramBuilder b(false);
    b.vertex("u", 1.5, -2).vertex("v", 1.5 + 2 * std::cos(th), -2 + 2 * std::sin(th)).edge("uv", "u", "v");
    const double c = std::cos(th), s = std::sin(th);
    Matrix ke(4, 4);
    ke << c * c, c * s, -c * c, -c * s, c * s, s * s, -c * s, -s * s, -c * c, -c * s, c * c, c * s, -c * s, -s * s,
        c * s, s * s;
    single = std::max(single, (stiffness_matrix(b.build(), {{0, k}}) - k * ke).cwiseAbs().maxCoeff());
  }
  for (int i = 0; i < 10; ++i) {
    const auto dg = random_truss(rng, 6 + i % 3, 9 + i % 4);
    SpringConstants k;
    for (Index e = 0; e < dg.complex().count(1); ++e) k[e] = kappa(rng);
    multi = std::max(multi, (stiffness_matrix(dg, k) - sheaf_laplacian(linkage_sheaf(dg), k)).cwiseAbs().maxCoeff());
  }
  o.require(single <= 1e-12, "single-edge element matrices");
  o.require(multi <= 1e-12, "multi-edge assembly");

  const auto dg = fixtures::boxed();
  const Matrix k = stiffness_matrix(dg);
  std::uniform_real_distribution<double> u(-1, 1);
  Vector xi(k.rows());
  for (Index i = 0; i < xi.size(); ++i) xi(i) = u(rng);
  const Matrix n = kernel_basis(k);
  const Vector projection = n * (n.transpose() * xi);
  const auto spectral = diffuse(k, xi);
  DiffusionOptions euler;
  euler.scheme = Scheme::Euler;
  euler.steps = 3000;
  const auto stepped = diffuse(k, xi, euler);
  const double e1 = (spectral.states.back() - projection).norm();
  const double e2 = (stepped.states.back() - projection).norm();
  const double forces = (assemble_chain_complex(linkage_sheaf(dg)).maps[0] * spectral.states.back()).norm();
  o.require(e1 <= 1e-6 && e2 <= 1e-6, "diffusion limit is the projection onto ker");
  o.require(forces <= 1e-6, "limit carries no member forces");
  o.detail << " single=" << single << " multi=" << multi << " spectral=" << e1 << " euler=" << e2
           << " member_forces=" << forces;
}

void genus_bounds(Outcome& o) {
  const auto t = fixtures::torus_lift();
  const auto lg = lift_genus_check(t);
  o.require(t.complex().count(0) == 9 && t.complex().count(1) == 24 && lg.self_stress_dim == 9,
            "torus counts |V|=9 |E|=24 H1F=9");
  o.require(lg.guaranteed && lg.witness && lg.witness_stress.norm() > 1e-6, "nontrivial lift");
  o.require(lg.lift_dim_mod_affine == 4, "four lift dimensions mod affine");

  const auto p = fixtures::torus_pentagon();
  const auto g = genus_existence_check(p);
  const auto pl = lift_space(p);
  o.require(g.self_stress_dim == 5 && g.guaranteed, "pentagon torus S = 5 > 4");
  o.require(g.witness && max_dual_edge_length(p.complex(), *g.witness) > 1e-6, "nontrivial reciprocal");
  o.require(pl.lift_dim_mod_affine == 0, "no lifts mod affine");
  o.detail << " torus: S=" << lg.self_stress_dim << " lifts/affine=" << lg.lift_dim_mod_affine
           << "; pentagon: S=" << g.self_stress_dim << " duals=" << g.nontrivial_dual_dim
           << " lifts/affine=" << pl.lift_dim_mod_affine;
}

void triangulated(Outcome& o) {
  for (const auto& name : {"triangulated_sphere", "triangulated_torus"}) {
    const auto dg = fixtures::by_name(name);
    const Index a = lift_space(dg).lift_dim, v = dg.complex().count(0);
    o.require(a == v, name);
    o.detail << " " << name << ": H2A=" << a << " |V|=" << v;
  }
}

void boundary(Outcome& o) {
  const auto dg = fixtures::open_truss();
  const auto& cx = dg.complex();
  const auto sol = solve_equilibrium(dg, {{cx.index_of(1, "rB"), 1.0}});
  o.require(sol.residual <= 1e-9, "equilibrium residual");
  const auto q = reciprocal_diagram(dg, sol.forces);
  const double back = (stress_from_dual(dg, q) - sol.forces).norm();
  o.require(back <= 1e-9, "dual diagram reproduces the forces");
  const auto lift = polyhedral_lift(dg, sol.forces);
  const double lifted = (verify_lift(dg, lift) - sol.forces).norm();
  o.require(lift.gluing_residual <= 1e-9 && lifted <= 1e-8, "lift reproduces the forces");
  o.detail << " residual=" << sol.residual << " dual=" << back << " lift=" << lifted;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"boxed self stress and freedom", boxed_stress},
      {"Maxwell counting rule", maxwell},
      {"position sheaf dimensions", position_dims},
      {"linear and Poincare duality", dualities},
      {"reciprocal diagram and connecting map", reciprocity},
      {"five reciprocal spaces", five_way},
      {"lift round trip", lifting},
      {"exact sequence bookkeeping", exactness},
      {"stiffness and diffusion", stiffness},
      {"genus bounds", genus_bounds},
      {"triangulated lift dimension", triangulated},
      {"boundary conditions", boundary},
  };
  const auto start = std::chrono::steady_clock::now();
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.detail << " [exception: " << e.what() << "]";
    }
    failures += o.ok ? 0 : 1;
    std::cout << (o.ok ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ":" << o.detail.str() << "\n";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << criteria.size() - failures << "/" << criteria.size() << " criteria passed in " << secs << " s\n";
  return failures == 0 ? 0 : 1;
}
