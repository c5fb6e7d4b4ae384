#include "gstatics/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

namespace gstatics {

CellComplex::CellComplex(std::vector<Cell> cells, std::vector<Incidence> incidence, bool closed)
    : closed_(closed), incidence_(std::move(incidence)) {
  for (auto& c : cells) {
    if (c.dim < 0 || c.dim > 2)
      throw StaticsError(ErrorCode::SchemaError, "cell '" + c.id + "' has dimension outside 0..2");
    if (c.id.empty()) throw StaticsError(ErrorCode::SchemaError, "empty cell id");
    const CellRef ref{c.dim, static_cast<Index>(ids_[c.dim].size())};
    if (!lookup_.emplace(c.id, ref).second)
      throw StaticsError(ErrorCode::SchemaError, "duplicate cell id '" + c.id + "'");
    ids_[c.dim].push_back(std::move(c.id));
  }
  for (int d = 0; d < 3; ++d) {
    down_[d].resize(ids_[d].size());
    up_[d].resize(ids_[d].size());
  }
  for (const auto& inc : incidence_) {
    auto lo = find(inc.lower);
    auto hi = find(inc.upper);
    if (!lo || !hi)
      throw StaticsError(ErrorCode::SchemaError,
                         "incidence references unknown cell '" + (lo ? inc.upper : inc.lower) + "'");
    if (hi->dim != lo->dim + 1) continue;  // reported by validate()
    down_[hi->dim][hi->index].push_back({lo->index, inc.sign});
    up_[lo->dim][lo->index].push_back({hi->index, inc.sign});
  }
}

std::optional<CellRef> CellComplex::find(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

Index CellComplex::index_of(int dim, std::string_view id) const {
  auto ref = find(id);
  if (!ref || ref->dim != dim)
    throw StaticsError(ErrorCode::InvalidArgument,
                       "no cell '" + std::string(id) + "' of dimension " + std::to_string(dim));
  return ref->index;
}

int CellComplex::sign(int lower_dim, Index lower, Index upper) const {
  for (const auto& l : up_.at(lower_dim).at(lower))
    if (l.cell == upper) return l.sign;
  return 0;
}

std::vector<Cell> CellComplex::cells() const {
  std::vector<Cell> out;
  for (int d = 0; d < 3; ++d)
    for (const auto& id : ids_[d]) out.push_back({id, d});
  return out;
}

std::pair<std::optional<Index>, std::optional<Index>> CellComplex::edge_ends(Index e) const {
  std::optional<Index> tail, head;
  for (const auto& l : faces_of(1, e)) {
    if (l.sign < 0)
      tail = l.cell;
    else
      head = l.cell;
  }
  return {tail, head};
}

Index CellComplex::lowest_id(int dim) const {
  const auto& v = ids_.at(dim);
  if (v.empty()) return -1;
  return std::distance(v.begin(), std::min_element(v.begin(), v.end()));
}

bool ValidationReport::violates(std::string_view rule) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.rule == rule; });
}

std::string ValidationReport::summary() const {
  if (passed()) return "pass";
  std::ostringstream os;
  for (const auto& v : violations) {
    os << v.rule << ": " << v.message;
    if (!v.cells.empty()) {
      os << " [";
      for (std::size_t i = 0; i < v.cells.size(); ++i) os << (i ? ", " : "") << v.cells[i];
      os << "]";
    }
    os << "\n";
  }
  return os.str();
}

namespace {

// Faces around a vertex must form a single cycle through its edges (no pinch
// points, no boundary) for the star of the vertex to be a disk.
bool vertex_link_is_cycle(const CellComplex& cx, Index v) {
  const auto edges = cx.cofaces_of(0, v);
  if (edges.empty()) return false;
  std::map<Index, std::vector<Index>> face_edges;  // face -> incident edges at v
  for (const auto& e : edges) {
    if (cx.cofaces_of(1, e.cell).size() != 2) return false;
    for (const auto& f : cx.cofaces_of(1, e.cell)) face_edges[f.cell].push_back(e.cell);
  }
  for (const auto& [f, es] : face_edges)
    if (es.size() != 2) return false;
  // Walk edge -> face -> edge and count the length of the orbit.
  std::set<Index> seen_edges;
  Index start = edges.front().cell, cur = start, prev_face = -1;
  do {
    seen_edges.insert(cur);
    Index next_face = -1;
    for (const auto& f : cx.cofaces_of(1, cur))
      if (f.cell != prev_face) {
        next_face = f.cell;
        break;
      }
    const auto& es = face_edges[next_face];
    cur = es[0] == cur ? es[1] : es[0];
    prev_face = next_face;
  } while (cur != start && seen_edges.size() <= edges.size());
  return seen_edges.size() == edges.size() && cur == start;
}

}  // namespace

ValidationReport validate(const CellComplex& cx) {
  ValidationReport report;
  auto add = [&](std::string rule, std::vector<std::string> cells, std::string msg) {
    report.violations.push_back({std::move(rule), std::move(cells), std::move(msg)});
  };

  std::set<std::pair<std::string, std::string>> pairs;
  for (const auto& inc : cx.incidence()) {
    const auto lo = cx.find(inc.lower);
    const auto hi = cx.find(inc.upper);
    if (hi->dim != lo->dim + 1)
      add("adjacency", {inc.lower, inc.upper}, "incidence between non-consecutive dimensions");
    if (inc.sign != 1 && inc.sign != -1)
      add("adjacency", {inc.lower, inc.upper}, "incidence sign must be +1 or -1");
    if (!pairs.emplace(inc.lower, inc.upper).second)
      add("adjacency", {inc.lower, inc.upper}, "duplicate incidence pair");
  }

  for (Index e = 0; e < cx.count(1); ++e) {
    const auto verts = cx.faces_of(1, e);
    const auto& id = cx.id(1, e);
    if (verts.size() == 2) {
      if (verts[0].sign * verts[1].sign != -1)
        add("directed edges", {id, cx.id(0, verts[0].cell), cx.id(0, verts[1].cell)},
            "[u:e][v:e] must equal -1");
    } else if (verts.size() == 1) {
      if (cx.closed()) add("directed edges", {id}, "open-ended edge in a closed complex");
    } else {
      add("directed edges", {id}, "edge must have two vertices (one if open-ended)");
    }
  }

  // Regularity: sum over edges c of [b:c][c:d] vanishes for every vertex b of a face d.
  for (Index f = 0; f < cx.count(2); ++f) {
    std::map<Index, int> sums;
    for (const auto& e : cx.faces_of(2, f))
      for (const auto& v : cx.faces_of(1, e.cell)) sums[v.cell] += v.sign * e.sign;
    for (const auto& [v, s] : sums)
      if (s != 0)
        add("regularity", {cx.id(0, v), cx.id(2, f)}, "sum of [b:c][c:d] is " + std::to_string(s));
  }

  if (cx.closed()) {
    for (Index e = 0; e < cx.count(1); ++e) {
      const auto faces = cx.cofaces_of(1, e);
      if (faces.size() != 2)
        add("closed surface", {cx.id(1, e)}, "edge must bound exactly two faces");
      else if (faces[0].sign + faces[1].sign != 0)
        add("closed surface", {cx.id(1, e), cx.id(2, faces[0].cell), cx.id(2, faces[1].cell)},
            "faces on both sides of an edge must induce opposite orientations");
    }
    if (!report.violates("closed surface"))
      for (Index v = 0; v < cx.count(0); ++v)
        if (!vertex_link_is_cycle(cx, v))
          add("closed surface", {cx.id(0, v)}, "faces around the vertex do not form a disk");
    const long chi = euler_characteristic(cx);
    if (chi > 2 || chi % 2 != 0)
      add("closed surface", {}, "Euler characteristic " + std::to_string(chi) +
                                    " is not that of a closed oriented surface");
  } else {
    for (Index e = 0; e < cx.count(1); ++e) {
      const auto faces = cx.cofaces_of(1, e);
      if (faces.size() > 2)
        add("surface", {cx.id(1, e)}, "edge bounds more than two faces");
      else if (faces.size() == 2 && faces[0].sign + faces[1].sign != 0)
        add("surface", {cx.id(1, e)}, "faces on both sides of an edge must induce opposite orientations");
    }
  }
  return report;
}

std::string dual_id(std::string_view id) {
  if (!id.empty() && id.front() == '~') return std::string(id.substr(1));
  return "~" + std::string(id);
}

CellComplex poincare_dual(const CellComplex& cx) {
  if (!cx.closed())
    throw StaticsError(ErrorCode::NotClosedSurface, "Poincare dual requires a closed surface");
  const auto report = validate(cx);
  if (!report.passed()) throw StaticsError(ErrorCode::NotClosedSurface, report.summary());
  std::vector<Cell> cells;
  for (int d = 2; d >= 0; --d)
    for (const auto& id : cx.ids(d)) cells.push_back({dual_id(id), 2 - d});
  std::vector<Incidence> inc;
  inc.reserve(cx.incidence().size());
  for (const auto& i : cx.incidence()) inc.push_back({dual_id(i.upper), dual_id(i.lower), i.sign});
  return CellComplex(std::move(cells), std::move(inc), true);
}

long euler_characteristic(const CellComplex& cx) {
  return static_cast<long>(cx.count(0)) - static_cast<long>(cx.count(1)) + static_cast<long>(cx.count(2));
}

long genus(const CellComplex& cx) {
  if (!cx.closed()) throw StaticsError(ErrorCode::NotClosedSurface, "genus requires a closed surface");
  const auto report = validate(cx);
  if (!report.passed()) throw StaticsError(ErrorCode::NotClosedSurface, report.summary());
  return (2 - euler_characteristic(cx)) / 2;
}

std::optional<std::vector<Index>> face_cycle(const CellComplex& cx, Index f) {
  std::map<Index, Index> next;  // vertex -> following vertex
  for (const auto& e : cx.faces_of(2, f)) {
    const auto [tail, head] = cx.edge_ends(e.cell);
    if (!tail || !head) return std::nullopt;
    const Index from = e.sign > 0 ? *tail : *head;
    const Index to = e.sign > 0 ? *head : *tail;
    if (!next.emplace(from, to).second) return std::nullopt;
  }
  if (next.empty()) return std::nullopt;
  std::vector<Index> cycle;
  Index cur = next.begin()->first;
  do {
    cycle.push_back(cur);
    auto it = next.find(cur);
    if (it == next.end() || cycle.size() > next.size()) return std::nullopt;
    cur = it->second;
  } while (cur != cycle.front());
  if (cycle.size() != next.size()) return std::nullopt;
  return cycle;
}

Index vertex_components(const CellComplex& cx) {
  std::vector<Index> parent(cx.count(0));
  std::iota(parent.begin(), parent.end(), Index{0});
  std::function<Index(Index)> root = [&](Index a) { return parent[a] == a ? a : parent[a] = root(parent[a]); };
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto vs = cx.faces_of(1, e);
    if (vs.size() == 2) parent[root(vs[0].cell)] = root(vs[1].cell);
  }
  Index n = 0;
  for (Index v = 0; v < cx.count(0); ++v) n += root(v) == v;
  return n;
}

// ---------------------------------------------------------------------------

Diagram::Diagram(std::shared_ptr<const CellComplex> complex, std::vector<Vec2> positions,
                 std::map<Index, Vec2> open_directions)
    : complex_(std::move(complex)), positions_(std::move(positions)), open_directions_(std::move(open_directions)) {
  if (!complex_) throw StaticsError(ErrorCode::InvalidArgument, "diagram without complex");
  if (static_cast<Index>(positions_.size()) != complex_->count(0))
    throw StaticsError(ErrorCode::InvalidArgument, "one position per vertex required");
  for (const auto& p : positions_) require_finite(p);
  for (const auto& [e, d] : open_directions_) {
    if (e < 0 || e >= complex_->count(1))
      throw StaticsError(ErrorCode::InvalidArgument, "open direction for unknown edge");
    require_finite(d);
  }
}

bool Diagram::is_open_edge(Index e) const { return complex_->faces_of(1, e).size() == 1; }

Vec2 Diagram::midpoint(Index e) const {
  const auto vs = complex_->faces_of(1, e);
  if (vs.size() == 2) return 0.5 * (positions_[vs[0].cell] + positions_[vs[1].cell]);
  return positions_[vs[0].cell];
}

double Diagram::scale() const {
  double s = 1.0;
  for (const auto& p : positions_) s = std::max(s, p.cwiseAbs().maxCoeff());
  return s;
}

Vec2 Diagram::centroid() const {
  Vec2 c = Vec2::Zero();
  for (const auto& p : positions_) c += p;
  return positions_.empty() ? c : Vec2(c / double(positions_.size()));
}

ValidationReport validate(const Diagram& dg) {
  ValidationReport report = validate(dg.complex());
  const auto& cx = dg.complex();
  const double eps = 1e-12 * dg.scale();
  for (Index a = 0; a < cx.count(0); ++a)
    for (Index b = a + 1; b < cx.count(0); ++b)
      if ((dg.position(a) - dg.position(b)).norm() <= eps)
        report.violations.push_back({"injective realization", {cx.id(0, a), cx.id(0, b)},
                                     "two vertices share a position"});
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto vs = cx.faces_of(1, e);
    if (vs.size() == 2 && (dg.position(vs[0].cell) - dg.position(vs[1].cell)).norm() <= eps)
      report.violations.push_back({"edge length", {cx.id(1, e)}, "edge has zero length"});
    if (vs.size() == 1) {
      auto it = dg.open_directions().find(e);
      if (it == dg.open_directions().end() || it->second.norm() <= 1e-12)
        report.violations.push_back({"line of action", {cx.id(1, e)},
                                     "open-ended edge needs a nonzero direction"});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

DiagramBuilder& DiagramBuilder::vertex(std::string id, double x, double y) {
  vertices_.emplace_back(std::move(id), Vec2(x, y));
  return *this;
}

DiagramBuilder& DiagramBuilder::edge(std::string id, std::string tail, std::string head) {
  edges_.push_back({std::move(id), std::move(tail), std::move(head)});
  return *this;
}

DiagramBuilder& DiagramBuilder::open_edge(std::string id, std::string vertex, Vec2 direction) {
  open_dirs_[id] = direction;
  edges_.push_back({std::move(id), std::move(vertex), ""});
  return *this;
}

const DiagramBuilder::EdgeRec& DiagramBuilder::edge_between(const std::string& a, const std::string& b) {
  for (const auto& e : edges_)
    if (!e.head.empty() && ((e.tail == a && e.head == b) || (e.tail == b && e.head == a))) return e;
  edges_.push_back({a + "-" + b, a, b});
  return edges_.back();
}

int DiagramBuilder::traverse_sign(const std::string& edge, const std::string& from) const {
  for (const auto& e : edges_)
    if (e.id == edge) return e.tail == from ? 1 : -1;
  throw StaticsError(ErrorCode::InvalidArgument, "unknown edge '" + edge + "'");
}

DiagramBuilder& DiagramBuilder::face(std::string id, std::vector<std::string> cycle) {
  std::vector<std::pair<std::string, int>> boundary;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    const auto& a = cycle[k];
    const auto& b = cycle[(k + 1) % cycle.size()];
    const std::string eid = edge_between(a, b).id;
    boundary.emplace_back(eid, traverse_sign(eid, a));
  }
  faces_.emplace_back(std::move(id), std::move(boundary));
  return *this;
}

DiagramBuilder& DiagramBuilder::open_face(std::string id, std::string entering, std::vector<std::string> path,
                                          std::string leaving) {
  // Open edges are oriented from their vertex towards the open end.
  std::vector<std::pair<std::string, int>> boundary;
  boundary.emplace_back(entering, -1);
  for (std::size_t k = 0; k + 1 < path.size(); ++k) {
    const std::string eid = edge_between(path[k], path[k + 1]).id;
    boundary.emplace_back(eid, traverse_sign(eid, path[k]));
  }
  boundary.emplace_back(leaving, +1);
  faces_.emplace_back(std::move(id), std::move(boundary));
  return *this;
}

Diagram DiagramBuilder::build() const {
  std::vector<Cell> cells;
  std::vector<Incidence> inc;
  std::vector<Vec2> pos;
  for (const auto& [id, p] : vertices_) {
    cells.push_back({id, 0});
    pos.push_back(p);
  }
  for (const auto& e : edges_) {
    cells.push_back({e.id, 1});
    inc.push_back({e.tail, e.id, -1});
    if (!e.head.empty()) inc.push_back({e.head, e.id, +1});
  }
  for (const auto& [id, boundary] : faces_) {
    cells.push_back({id, 2});
    for (const auto& [eid, s] : boundary) inc.push_back({eid, id, s});
  }
  auto cx = std::make_shared<const CellComplex>(std::move(cells), std::move(inc), closed_);
  std::map<Index, Vec2> dirs;
  for (const auto& [id, d] : open_dirs_) dirs[cx->index_of(1, id)] = d;
  return Diagram(cx, std::move(pos), std::move(dirs));
}

}  // namespace gstatics
