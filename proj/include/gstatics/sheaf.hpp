#pragma once

// Cellular cosheaves and sheaves over a CellComplex, their (co)chain
// complexes, homology with harmonic representatives, duals, quotients and the
// connecting homomorphism of a short exact sequence.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gstatics/complex.hpp"
#include "gstatics/numerics.hpp"

namespace gstatics {

enum class Variance { Cosheaf, Sheaf };

// A cosheaf stores extension maps K_{d>c} : K_d -> K_c (shape dim K_c x dim K_d);
// a sheaf stores restriction maps J_{c<d} : J_c -> J_d (shape dim J_d x dim J_c).
// Either way the map is indexed by the incident pair (lower c, upper d).
class CosheafData {
 public:
  using MapFn = std::function<Matrix(int upper_dim, Index upper, Index lower)>;

  CosheafData(std::shared_ptr<const CellComplex> base, Variance variance,
              std::array<std::vector<Index>, 3> stalk_dims, const MapFn& maps);

  const CellComplex& base() const { return *base_; }
  const std::shared_ptr<const CellComplex>& base_ptr() const { return base_; }
  Variance variance() const { return variance_; }
  bool is_sheaf() const { return variance_ == Variance::Sheaf; }

  Index stalk_dim(int dim, Index cell) const { return stalks_.at(dim).at(cell); }
  const std::vector<Index>& stalk_dims(int dim) const { return stalks_.at(dim); }
  Index offset(int dim, Index cell) const { return offsets_.at(dim).at(cell); }
  Index chain_dim(int dim) const { return totals_.at(dim); }

  // Map attached to the incident pair lower < upper (upper has dimension upper_dim).
  const Matrix& map(int upper_dim, Index upper, Index lower) const;
  // Maps in the order of base().faces_of(upper_dim, upper).
  const std::vector<Matrix>& maps_of(int upper_dim, Index upper) const { return maps_.at(upper_dim).at(upper); }

 private:
  std::shared_ptr<const CellComplex> base_;
  Variance variance_;
  std::array<std::vector<Index>, 3> stalks_;
  std::array<std::vector<Index>, 3> offsets_;
  std::array<Index, 3> totals_{};
  std::array<std::vector<std::vector<Matrix>>, 3> maps_;
};

// Boundary matrices of a cosheaf (boundary[i] : C_i -> C_{i-1}) or coboundary
// matrices of a sheaf (coboundary[i] : C^i -> C^{i+1}).
struct ChainComplexData {
  Variance variance = Variance::Cosheaf;
  std::array<Index, 3> dims{};
  std::array<Matrix, 3> maps;  // cosheaf: maps[i] = d_i, maps[0] empty; sheaf: maps[i] = delta^i, maps[2] empty

  // Map leaving degree i / arriving at degree i.
  Matrix outgoing(int degree) const;
  Matrix incoming(int degree) const;
};

ChainComplexData assemble_chain_complex(const CosheafData& cosheaf, const Tolerance& tol = {});

struct HomologySpace {
  int degree = 0;
  Variance variance = Variance::Cosheaf;
  Matrix basis;  // orthonormal harmonic representatives, one per column
  Index dimension() const { return basis.cols(); }
  // Coordinates of the class of a cycle: the harmonic projection of the cycle.
  Vector coordinates(const Vector& cycle) const { return basis.transpose() * cycle; }
};

HomologySpace homology(const ChainComplexData& chains, int degree, const Tolerance& tol = {});
HomologySpace homology(const CosheafData& cosheaf, int degree, const Tolerance& tol = {});
HomologySpace cohomology(const CosheafData& sheaf, int degree, const Tolerance& tol = {});
// Dimensions of degrees 0,1,2 (homology or cohomology by variance).
std::array<Index, 3> betti(const CosheafData& cosheaf, const Tolerance& tol = {});

CosheafData constant_cosheaf(std::shared_ptr<const CellComplex> base, Index dim);
CosheafData linear_dual(const CosheafData& cosheaf);
// Identical stalks over the Poincare dual complex, variance flipped.
CosheafData poincare_dual_cosheaf(const CosheafData& cosheaf);

// Componentwise map phi_c : source_c -> target_c (shape dim target_c x dim source_c).
class CosheafMapData {
 public:
  using ComponentFn = std::function<Matrix(int dim, Index cell)>;

  // Throws InvalidArgument when shapes do not match or the squares fail to commute.
  CosheafMapData(std::shared_ptr<const CosheafData> source, std::shared_ptr<const CosheafData> target,
                 const ComponentFn& components, const Tolerance& tol = {});

  const CosheafData& source() const { return *source_; }
  const CosheafData& target() const { return *target_; }
  const std::shared_ptr<const CosheafData>& source_ptr() const { return source_; }
  const std::shared_ptr<const CosheafData>& target_ptr() const { return target_; }
  const Matrix& component(int dim, Index cell) const { return components_.at(dim).at(cell); }

  // Block-diagonal map on chains of the given degree.
  Matrix chain_map(int degree) const;
  double commutativity_residual() const;

 private:
  std::shared_ptr<const CosheafData> source_;
  std::shared_ptr<const CosheafData> target_;
  std::array<std::vector<Matrix>, 3> components_;
};

struct QuotientCosheaf {
  std::shared_ptr<const CosheafData> quotient;
  CosheafMapData projection;  // target of the input map -> quotient
};

// Quotient of the target by the image of an injective cosheaf map, with
// stalks realized as orthogonal complements of the image.
QuotientCosheaf quotient_cosheaf(const CosheafMapData& map, const Tolerance& tol = {});

struct ConnectingResult {
  Vector chain;        // a cycle of the sub-cosheaf in degree i-1
  Vector coordinates;  // its class in the harmonic basis of H_{i-1}
  HomologySpace target_homology;
};

// Zig-zag through 0 -> K -(phi)-> L -(pi)-> M -> 0 sending a degree-i cycle
// of M to a degree-(i-1) cycle of K.
ConnectingResult connecting_homomorphism(const CosheafMapData& phi, const CosheafMapData& pi, int degree,
                                         const Vector& cycle, const Tolerance& tol = {});

// Checks im phi_c = ker pi_c with phi_c injective and pi_c surjective on every stalk.
void require_short_exact(const CosheafMapData& phi, const CosheafMapData& pi, const Tolerance& tol = {});

struct SequenceNode {
  std::string name;  // e.g. "H1(L)"
  Index dimension = 0;
  Index incoming_rank = 0;
  Index outgoing_nullity = 0;
  bool exact() const { return incoming_rank == outgoing_nullity; }
};

struct LongExactSequence {
  std::vector<SequenceNode> nodes;  // from H2(K) down to H0(M)
  bool exact() const;
};

LongExactSequence long_exact_sequence(const CosheafMapData& phi, const CosheafMapData& pi,
                                      const Tolerance& tol = {});

}  // namespace gstatics
