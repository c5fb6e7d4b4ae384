#pragma once

// Regular cell complexes of dimension <= 2 with a signed incidence relation,
// and their planar realizations (diagrams).

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "gstatics/numerics.hpp"

namespace gstatics {

struct Cell {
  std::string id;
  int dim = 0;
};

struct Incidence {
  std::string lower;
  std::string upper;
  int sign = 1;
};

struct CellRef {
  int dim = 0;
  Index index = 0;
  friend bool operator==(const CellRef&, const CellRef&) = default;
};

// One side of a signed incidence, seen from a cell.
struct Link {
  Index cell = 0;  // index of the neighbouring cell in its own dimension
  int sign = 0;    // [lower : upper]
};

class CellComplex {
 public:
  // Throws SchemaError for duplicate ids, unknown ids in the incidence list, or
  // dimensions outside {0,1,2}. Rule violations (signs, regularity, surface
  // conditions) are accepted here and reported by validate().
  CellComplex(std::vector<Cell> cells, std::vector<Incidence> incidence, bool closed);

  bool closed() const { return closed_; }
  Index count(int dim) const { return static_cast<Index>(ids_.at(dim).size()); }
  Index total_cells() const { return count(0) + count(1) + count(2); }
  const std::string& id(int dim, Index i) const { return ids_.at(dim).at(i); }
  const std::vector<std::string>& ids(int dim) const { return ids_.at(dim); }

  std::optional<CellRef> find(std::string_view id) const;
  Index index_of(int dim, std::string_view id) const;

  // Incident cells one dimension down / up, in incidence-list order.
  std::span<const Link> faces_of(int dim, Index i) const { return down_.at(dim).at(i); }
  std::span<const Link> cofaces_of(int dim, Index i) const { return up_.at(dim).at(i); }

  // [lower : upper] for cells of consecutive dimension (0 when not incident).
  int sign(int lower_dim, Index lower, Index upper) const;

  const std::vector<Incidence>& incidence() const { return incidence_; }
  std::vector<Cell> cells() const;

  // The two vertices of an edge as (tail, head) with [tail:e] = -1, [head:e] = +1.
  // An open-ended edge returns its single vertex as tail or head and nullopt for the other.
  std::pair<std::optional<Index>, std::optional<Index>> edge_ends(Index e) const;

  // Lexicographically smallest cell id of a dimension (-1 when there is none).
  Index lowest_id(int dim) const;

 private:
  bool closed_;
  std::array<std::vector<std::string>, 3> ids_;
  std::unordered_map<std::string, CellRef> lookup_;
  std::vector<Incidence> incidence_;
  std::array<std::vector<std::vector<Link>>, 3> down_;
  std::array<std::vector<std::vector<Link>>, 3> up_;
};

struct Violation {
  std::string rule;
  std::vector<std::string> cells;
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool passed() const { return violations.empty(); }
  bool violates(std::string_view rule) const;
  std::string summary() const;
};

ValidationReport validate(const CellComplex& complex);

// Dual cell structure of a closed oriented surface: vertices <-> faces, with
// [~d : ~c] = [c : d]. Dual ids prepend "~" (or strip a leading "~"), so
// dualizing twice reproduces the original ids exactly.
CellComplex poincare_dual(const CellComplex& complex);
std::string dual_id(std::string_view id);

long euler_characteristic(const CellComplex& complex);
long genus(const CellComplex& complex);

// Vertices around a face in the direction of its orientation; nullopt when the
// boundary is not a single closed loop of closed edges (e.g. unbounded faces).
std::optional<std::vector<Index>> face_cycle(const CellComplex& complex, Index face);

// Connected components of the 1-skeleton (open-ended edges join nothing).
Index vertex_components(const CellComplex& complex);

// A cell complex with vertex coordinates in the plane. Open-ended edges carry
// a line of action: the direction from their vertex towards the open end.
class Diagram {
 public:
  Diagram(std::shared_ptr<const CellComplex> complex, std::vector<Vec2> positions,
          std::map<Index, Vec2> open_directions = {});

  const CellComplex& complex() const { return *complex_; }
  const std::shared_ptr<const CellComplex>& complex_ptr() const { return complex_; }
  const std::vector<Vec2>& positions() const { return positions_; }
  const Vec2& position(Index v) const { return positions_.at(v); }
  const std::map<Index, Vec2>& open_directions() const { return open_directions_; }

  bool is_open_edge(Index e) const;
  Vec2 midpoint(Index e) const;
  // Largest coordinate magnitude, at least 1.
  double scale() const;
  Vec2 centroid() const;

 private:
  std::shared_ptr<const CellComplex> complex_;
  std::vector<Vec2> positions_;
  std::map<Index, Vec2> open_directions_;
};

// Geometric checks: injective realization, nonzero edge lengths, valid lines
// of action; includes the combinatorial report of the underlying complex.
ValidationReport validate(const Diagram& diagram);

// Convenience construction from vertex cycles. Faces are listed as cycles in
// the orientation of the surface; edges are created on demand (id "u-v",
// oriented u -> v) or declared explicitly to fix their order.
class DiagramBuilder {
 public:
  explicit DiagramBuilder(bool closed) : closed_(closed) {}

  DiagramBuilder& vertex(std::string id, double x, double y);
  DiagramBuilder& edge(std::string id, std::string tail, std::string head);
  DiagramBuilder& open_edge(std::string id, std::string vertex, Vec2 direction);
  DiagramBuilder& face(std::string id, std::vector<std::string> cycle);
  // Unbounded face of an open complex: enters through one open edge, follows
  // a vertex path and leaves through another open edge.
  DiagramBuilder& open_face(std::string id, std::string entering, std::vector<std::string> path,
                            std::string leaving);

  Diagram build() const;

 private:
  struct EdgeRec {
    std::string id;
    std::string tail;
    std::string head;  // empty for open edges
  };
  const EdgeRec& edge_between(const std::string& a, const std::string& b);
  int traverse_sign(const std::string& edge, const std::string& from) const;

  bool closed_;
  std::vector<std::pair<std::string, Vec2>> vertices_;
  std::vector<EdgeRec> edges_;
  std::map<std::string, Vec2> open_dirs_;
  std::vector<std::pair<std::string, std::vector<std::pair<std::string, int>>>> faces_;
};

}  // namespace gstatics
