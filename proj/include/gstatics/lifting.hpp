#pragma once

// Polyhedral lifts. The plane is the affine chart x3 = 1 of R^3 and an affine
// function h(x, y) = l1 x + l2 y + l3 is the covector (l1, l2, l3) evaluated
// on (x, y, 1). Open-ended edges contribute their point at infinity (d, 0).

#include <optional>
#include <string>
#include <vector>

#include "gstatics/complex.hpp"
#include "gstatics/sheaf.hpp"

namespace gstatics {

inline Vec3 homogeneous(const Vec2& p) { return {p.x(), p.y(), 1.0}; }

// Affine functions vanishing on every point of the cell: vertex 2, edge 1, face 0.
CosheafData zero_locus_cosheaf(const Diagram& diagram, const Tolerance& tol = {});

// 0 -> Z -> A R^2 -> A -> 0, the affine cosheaf A being the quotient.
struct AffineEmbedding {
  std::shared_ptr<const CosheafData> zero_locus;
  std::shared_ptr<const CosheafData> ambient;
  CosheafMapData phi;
  QuotientCosheaf quotient;
};

AffineEmbedding affine_cosheaf(const Diagram& diagram, const Tolerance& tol = {});

// Functional t_e with h_f - h_g = [e:f] w_e t_e across edge e; equals
// (p_head x p_tail) / length for a closed edge.
Vec3 edge_functional(const Diagram& diagram, Index e);

// The isomorphism F -> Z: tau_v(b) = (b, 0) x p_v, tau_e(w) = w t_e, in the
// orthonormal stalk bases of the zero-locus cosheaf.
CosheafMapData tau_isomorphism(const Diagram& diagram, const Tolerance& tol = {});

struct LiftFunctionSet {
  std::vector<Vec3> faces;     // affine function per face
  std::vector<double> heights;  // z_v = h_f(p_v) for any face at v
  double gluing_residual = 0;
};

// Integrates h_f - h_g = [e:f] w_e t_e over a spanning tree of the dual graph
// from the face with the lowest id, pinned to the zero function.
LiftFunctionSet polyhedral_lift(const Diagram& diagram, const Vector& stress, const Tolerance& tol = {});

// Largest gluing mismatch |h_f(p_v) - h_g(p_v)| over edges and endpoints.
double gluing_residual(const Diagram& diagram, const std::vector<Vec3>& faces);

// Force across edge e read from the lift at a probe point off the edge's line.
double lift_force(const Diagram& diagram, const std::vector<Vec3>& faces, Index e, const Vec2& probe);

// Recovers the stress from the gradient jumps, probing each edge at the
// centroid of the face (not containing it) that is furthest from its line.
Vector verify_lift(const Diagram& diagram, const LiftFunctionSet& lift, const Tolerance& tol = {});

struct LiftGenusCheck {
  long genus = 0;
  Index self_stress_dim = 0;
  long bound = 0;
  bool guaranteed = false;
  Index lift_dim = 0;         // dim H_2 of the affine cosheaf
  Index lift_dim_mod_affine = 0;
  std::optional<LiftFunctionSet> witness;
  Vector witness_stress;
};

// Lift-space dimensions for any diagram; the genus bound only for closed surfaces.
LiftGenusCheck lift_space(const Diagram& diagram, const Tolerance& tol = {});
LiftGenusCheck lift_genus_check(const Diagram& diagram, const Tolerance& tol = {});

// Orthonormal basis of the self stresses that admit a lift (all of them on a sphere).
Matrix liftable_stresses(const Diagram& diagram, const Tolerance& tol = {});

// Wavefront OBJ text: one "v x y z" line per vertex, faces fanned from the
// vertex with the lowest id. Faces without a closed boundary are skipped.
std::string lift_to_obj(const Diagram& diagram, const LiftFunctionSet& lift);

}  // namespace gstatics
