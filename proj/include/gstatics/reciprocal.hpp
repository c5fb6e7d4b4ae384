#pragma once

// Reciprocal force diagrams: integration of a self stress over the dual
// graph, the force embedding F -> R^2 whose quotient G carries dual
// realizations in H_2, mechanism transfer and the reciprocity dimensions.

#include <optional>
#include <vector>

#include "gstatics/complex.hpp"
#include "gstatics/sheaf.hpp"
#include "gstatics/statics.hpp"

namespace gstatics {

enum class Convention { Cremona, Maxwell };
std::string to_string(Convention c);
Convention parse_convention(const std::string& s);

// One point per face of the primal complex (= dual vertex "~face").
struct DualRealization {
  Convention convention = Convention::Cremona;
  std::vector<Vec2> points;
};

// Largest dual edge length.
double max_dual_edge_length(const CellComplex& complex, const DualRealization& dual);

// The dual realization as a Diagram over the Poincare dual complex.
Diagram dual_diagram(const Diagram& diagram, const DualRealization& dual);

// Integrates q_f - q_g = [e:f] w_e E_e over a spanning tree of the dual graph,
// starting from the face with the lowest id at the origin. E_e is the edge
// direction (Cremona) or its quarter turn (Maxwell). Throws NotACycle when the
// closure residual exceeds 1e-9 * scale.
DualRealization reciprocal_diagram(const Diagram& diagram, const Vector& stress,
                                   Convention convention = Convention::Cremona, const Tolerance& tol = {});

// Stress whose reciprocal is the given realization: w_e = E_e . sum_f [e:f] q_f.
Vector stress_from_dual(const Diagram& diagram, const DualRealization& dual);

// 0 -> F -> R^2 -> G -> 0 with phi_v = I, phi_e = edge direction.
struct ForceEmbedding {
  std::shared_ptr<const CosheafData> force;
  std::shared_ptr<const CosheafData> ambient;
  CosheafMapData phi;
  QuotientCosheaf quotient;
};

ForceEmbedding force_embedding(const Diagram& diagram, const Tolerance& tol = {});

// Stress obtained by running the connecting homomorphism on the class of a
// Cremona realization in H_2(G).
Vector stress_via_connecting_map(const ForceEmbedding& emb, const DualRealization& dual, const Tolerance& tol = {});

struct GenusCheck {
  long genus = 0;
  Index self_stress_dim = 0;
  long bound = 0;
  bool guaranteed = false;
  Index nontrivial_dual_dim = 0;  // dim H_2(G) - 2
  std::optional<DualRealization> witness;
  Vector witness_stress;
};

GenusCheck genus_existence_check(const Diagram& diagram, const Tolerance& tol = {});

// Orthonormal basis of the self stresses that admit a reciprocal diagram.
Matrix reciprocal_stresses(const Diagram& diagram, const Tolerance& tol = {});

struct EdgeRotationCochain {
  Vector values;            // one value per dual edge, relative to the dual edge normal
  Vector harmonic;          // class in H^1 of the dual position sheaf
  double harmonic_norm = 0;
};

EdgeRotationCochain transfer_mechanism(const Diagram& diagram, const DualRealization& dual, const FreedomMode& mode,
                                       const Tolerance& tol = {});

// Rotates every consecutive (x, y) pair counterclockwise by a quarter turn.
Vector quarter_turn(const Vector& pointwise);
DualRealization quarter_turn(const DualRealization& dual);

struct ReciprocityReport {
  Index mechanisms_and_rotations = 0;  // dim H_0 F - 2
  Index parallel_deformations = 0;     // dim H^0 J - 2
  Index impossible_rotations = 0;      // dim H^1 over the dual diagram
  Index self_shear = 0;                // dim H_1 of the dual position cosheaf over the dual diagram
  Index dual_self_stress = 0;          // dim H_1 of the force cosheaf over the dual diagram
  bool all_equal() const;
};

ReciprocityReport reciprocity_report(const Diagram& diagram, const DualRealization& dual, const Tolerance& tol = {});

}  // namespace gstatics
