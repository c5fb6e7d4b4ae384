#pragma once

// Statics of planar trusses: the force cosheaf and its dual sheaves, self
// stresses, mechanisms, Maxwell's counting rule and boundary-value problems.
//
// Sign convention: tension is positive. A closed edge e with endpoints u, v
// contributes w_e * unit(p_v - p_u) at v, so a cycle of the force cosheaf is a
// set of axial forces in equilibrium at every joint.

#include <map>
#include <string>
#include <vector>

#include "gstatics/complex.hpp"
#include "gstatics/sheaf.hpp"

namespace gstatics {

// Vector spanning the extension map of edge e: unit(p_head - p_tail) for a
// closed edge, the normalized line of action for an open-ended edge.
Vec2 edge_direction(const Diagram& diagram, Index e);

// Counterclockwise quarter turn.
inline Vec2 quarter_turn(const Vec2& v) { return {-v.y(), v.x()}; }

CosheafData force_cosheaf(const Diagram& diagram);
CosheafData linkage_sheaf(const Diagram& diagram);
// Restriction to an edge is the covector n_e^T with n_e the quarter-turned
// edge direction; H^0 holds parallel redrawings, H^1 impossible rotations.
CosheafData position_sheaf(const Diagram& diagram);
CosheafData position_dual_cosheaf(const Diagram& diagram);

// The same constructions from one prescribed direction per edge (used over
// dual diagrams, where an edge may have zero length).
CosheafData force_cosheaf(std::shared_ptr<const CellComplex> complex, const std::vector<Vec2>& directions);
CosheafData position_sheaf(std::shared_ptr<const CellComplex> complex, const std::vector<Vec2>& directions);

struct SelfStress {
  Vector values;  // one force per edge, tension positive
  Index class_index = 0;
};

enum class ModeKind { Translation, Rotation, Mechanism };
std::string to_string(ModeKind kind);

struct FreedomMode {
  Vector displacement;  // (x, y) per vertex
  ModeKind kind = ModeKind::Mechanism;
};

std::vector<SelfStress> self_stresses(const Diagram& diagram, const Tolerance& tol = {});
// Basis of H_0 of the force cosheaf: free rigid motions first (translations,
// then rotation), followed by an orthonormal basis of mechanisms.
std::vector<FreedomMode> freedom_modes(const Diagram& diagram, const Tolerance& tol = {});
std::vector<FreedomMode> mechanisms(const Diagram& diagram, const Tolerance& tol = {});
bool is_rigid(const Diagram& diagram, const Tolerance& tol = {});

// Columns: x-translation, y-translation, infinitesimal rotation about the centroid.
Matrix rigid_motions(const Diagram& diagram);

struct MaxwellReport {
  Index vertices = 0;
  Index edges = 0;       // closed and open-ended
  Index open_edges = 0;
  Index rigid_motions = 0;
  Index mechanisms = 0;
  Index self_stresses = 0;
  long lhs = 0;  // 2|V| - |E|
  long rhs = 0;  // rigid + |M| - |S|
  bool holds = false;
};

MaxwellReport maxwell_rule_report(const Diagram& diagram, const Tolerance& tol = {});

struct EquilibriumSolution {
  Vector forces;               // all edges; prescribed edges carry their prescribed values
  std::map<Index, double> internal;   // closed edges
  std::map<Index, double> reactions;  // open-ended edges that were not prescribed
  Matrix self_stress_basis;    // free part of the solution space
  double residual = 0;         // |d w| at the joints
  std::string note;
};

// Finds the minimum-norm cycle of the force cosheaf matching the prescribed
// values on open-ended edges. Throws Infeasible when none exists.
EquilibriumSolution solve_equilibrium(const Diagram& diagram, const std::map<Index, double>& prescribed,
                                      const Tolerance& tol = {});

}  // namespace gstatics
