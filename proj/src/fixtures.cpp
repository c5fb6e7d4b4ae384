#include "gstatics/fixtures.hpp"

#include <algorithm>
#include <set>

namespace gstatics::fixtures {

namespace {

std::string vid(int i) { return "v" + std::to_string(i); }

DiagramBuilder with_vertices(const std::vector<Vec2>& pts) {
  DiagramBuilder b(true);
  for (std::size_t i = 0; i < pts.size(); ++i) b.vertex(vid(int(i)), pts[i].x(), pts[i].y());
  return b;
}

// 3x3 grid of squares on the torus; squares listed in `split` become two triangles.
Diagram torus(const std::vector<Vec2>& pts, const std::set<std::pair<int, int>>& split) {
  auto b = with_vertices(pts);
  auto idx = [](int i, int j) { return vid((i % 3) * 3 + (j % 3)); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const auto a = idx(i, j), bb = idx(i, j + 1), c = idx(i + 1, j + 1), d = idx(i + 1, j);
      const std::string id = "f" + std::to_string(i) + std::to_string(j);
      if (split.count({i, j})) {
        b.face(id + "a", {a, bb, c});
        b.face(id + "b", {a, c, d});
      } else {
        b.face(id, {a, bb, c, d});
      }
    }
  return b.build();
}

}  // namespace

Diagram boxed() {
  DiagramBuilder b(true);
  b.vertex("a", 0, 0).vertex("b", 1, 0).vertex("c", 1, 1).vertex("d", 0, 1).vertex("o", 0.5, 0.5);
  b.edge("ab", "a", "b").edge("bc", "b", "c").edge("cd", "c", "d").edge("da", "d", "a");
  b.edge("ao", "a", "o").edge("bo", "b", "o").edge("co", "c", "o").edge("do", "d", "o");
  b.face("t1", {"a", "b", "o"}).face("t2", {"b", "c", "o"}).face("t3", {"c", "d", "o"}).face("t4", {"d", "a", "o"});
  b.face("outer", {"a", "d", "c", "b"});
  return b.build();
}

Diagram square() {
  DiagramBuilder b(true);
  b.vertex("a", 0, 0).vertex("b", 1, 0).vertex("c", 1, 1).vertex("d", 0, 1);
  b.face("inner", {"a", "b", "c", "d"}).face("outer", {"a", "d", "c", "b"});
  return b.build();
}

Diagram triangle() {
  DiagramBuilder b(true);
  b.vertex("a", 0, 0).vertex("b", 4, 1).vertex("c", 1, 3);
  b.face("inner", {"a", "b", "c"}).face("outer", {"a", "c", "b"});
  return b.build();
}

Diagram single_edge() {
  DiagramBuilder b(false);
  b.vertex("a", 0, 0).vertex("b", 1, 0).edge("ab", "a", "b");
  return b.build();
}

Diagram reciprocal_pair() {
  DiagramBuilder b(true);
  b.vertex("A", 0, 0).vertex("B", 3, 0).vertex("C", 3, 2).vertex("D", 0, 2).vertex("P", 1, 1).vertex("Q", 2, 1);
  b.edge("AB", "A", "B").edge("BC", "B", "C").edge("CD", "C", "D").edge("DA", "D", "A");
  b.edge("AP", "A", "P").edge("DP", "D", "P").edge("PQ", "P", "Q").edge("QB", "Q", "B").edge("QC", "Q", "C");
  b.face("f1", {"A", "B", "Q", "P"}).face("f2", {"B", "C", "Q"}).face("f3", {"C", "D", "P", "Q"});
  b.face("f4", {"D", "A", "P"}).face("outer", {"A", "D", "C", "B"});
  return b.build();
}

Diagram open_truss() {
  DiagramBuilder b(false);
  b.vertex("A", 0, 0).vertex("B", 2, 0).vertex("C", 4, 0).vertex("D", 1, 1).vertex("E", 3, 1);
  b.edge("AB", "A", "B").edge("BC", "B", "C").edge("AD", "A", "D").edge("DB", "D", "B");
  b.edge("BE", "B", "E").edge("EC", "E", "C").edge("DE", "D", "E");
  const Vec2 down(0, -1);
  b.open_edge("rA", "A", down).open_edge("rB", "B", down).open_edge("rC", "C", down);
  b.face("ABD", {"A", "B", "D"}).face("BED", {"B", "E", "D"}).face("BCE", {"B", "C", "E"});
  b.open_face("sAB", "rB", {"B", "A"}, "rA");
  b.open_face("sBC", "rC", {"C", "B"}, "rB");
  b.open_face("top", "rA", {"A", "D", "E", "C"}, "rC");
  return b.build();
}

Diagram triangulated_sphere() {
  DiagramBuilder b(true);
  b.vertex("A", 0, 0).vertex("B", 8, 0).vertex("C", 3, 7).vertex("D", 3, 2).vertex("E", 5, 3);
  b.face("t1", {"A", "B", "D"}).face("t2", {"B", "E", "D"}).face("t3", {"B", "C", "E"});
  b.face("t4", {"C", "D", "E"}).face("t5", {"C", "A", "D"}).face("outer", {"A", "C", "B"});
  return b.build();
}

Diagram torus_grid() {
  return torus({{1, 4}, {2, 5}, {5, 1}, {2, 1}, {4, 3}, {5, 4}, {5, 5}, {5, 0}, {0, 2}}, {});
}

Diagram torus_lift() {
  return torus({{3, 3}, {0, 4}, {4, 1}, {1, 1}, {4, 0}, {0, 3}, {2, 2}, {4, 3}, {0, 1}},
               {{1, 0}, {1, 1}, {1, 2}, {2, 0}, {2, 1}, {2, 2}});
}

Diagram torus_pentagon() {
  return torus({{1, 0}, {4, 5}, {4, 3}, {5, 0}, {0, 1}, {0, 3}, {0, 2}, {3, 2}, {3, 4}}, {{0, 0}, {1, 1}});
}

Diagram triangulated_torus() {
  std::set<std::pair<int, int>> all;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) all.insert({i, j});
  return torus({{3, 5}, {0, 1}, {3, 3}, {2, 2}, {0, 3}, {5, 1}, {4, 1}, {0, 4}, {1, 4}}, all);
}

Diagram torus_k33() {
  auto b = with_vertices({{4, 4}, {0, 0}, {3, 2}, {0, 4}, {1, 0}, {4, 2}});
  const std::vector<std::vector<int>> faces{{0, 3, 1}, {1, 4, 2, 5, 0}, {4, 1, 5, 2, 3}, {3, 0, 4},
                                            {1, 3, 2}, {4, 0, 5}, {5, 1, 2, 4}};
  for (std::size_t f = 0; f < faces.size(); ++f) {
    std::vector<std::string> cycle;
    for (int v : faces[f]) cycle.push_back(vid(v));
    b.face("f" + std::to_string(f), cycle);
  }
  return b.build();
}

Diagram genus_two() {
  // Top sheet T (outer rim), bottom sheet B (outer rim), and the top/bottom
  // rims of the two tunnels; each rim is a rectangle listed counterclockwise.
  const std::vector<std::pair<std::string, std::vector<Vec2>>> rims{
      {"T", {{1, 1}, {11, 1}, {11, 7}, {1, 7}}},   {"B", {{0, 0.5}, {12, 0.5}, {12, 8}, {0, 8}}},
      {"P", {{2, 2}, {5, 2}, {5, 6}, {2, 6}}},     {"p", {{3, 3}, {4, 3}, {4, 5}, {3, 5}}},
      {"Q", {{7, 2}, {10, 2}, {10, 6}, {7, 6}}},   {"q", {{8, 3}, {9, 3}, {9, 5}, {8, 5}}}};
  DiagramBuilder b(true);
  for (const auto& [name, pts] : rims)
    for (int k = 0; k < 4; ++k) b.vertex(name + std::to_string(k), pts[k].x(), pts[k].y());
  auto v = [](const std::string& rim, int k) { return rim + std::to_string(k); };
  auto sheet = [&](const std::string& tag, const std::string& o, const std::string& a, const std::string& c, bool up) {
    std::vector<std::vector<std::string>> fs{
        {v(o, 0), v(a, 0), v(a, 3), v(o, 3)},
        {v(o, 0), v(o, 1), v(c, 1), v(c, 0), v(a, 1), v(a, 0)},
        {v(o, 3), v(a, 3), v(a, 2), v(c, 3), v(c, 2), v(o, 2)},
        {v(a, 1), v(c, 0), v(c, 3), v(a, 2)},
        {v(c, 1), v(o, 1), v(o, 2), v(c, 2)}};
    for (std::size_t k = 0; k < fs.size(); ++k) {
      if (!up) std::reverse(fs[k].begin(), fs[k].end());
      b.face(tag + std::to_string(k), fs[k]);
    }
  };
  sheet("top", "T", "P", "Q", true);
  sheet("bottom", "B", "p", "q", false);
  for (int k = 0; k < 4; ++k) {
    const int n = (k + 1) % 4;
    b.face("wall" + std::to_string(k), {v("B", k), v("B", n), v("T", n), v("T", k)});
    b.face("tunnelP" + std::to_string(k), {v("P", k), v("P", n), v("p", n), v("p", k)});
    b.face("tunnelQ" + std::to_string(k), {v("Q", k), v("Q", n), v("q", n), v("q", k)});
  }
  return b.build();
}

std::vector<std::pair<std::string, Diagram>> closed_surfaces() {
  return {{"boxed", boxed()},
          {"square", square()},
          {"triangle", triangle()},
          {"reciprocal_pair", reciprocal_pair()},
          {"triangulated_sphere", triangulated_sphere()},
          {"torus_grid", torus_grid()},
          {"torus_lift", torus_lift()},
          {"torus_pentagon", torus_pentagon()},
          {"torus_k33", torus_k33()},
          {"triangulated_torus", triangulated_torus()},
          {"genus_two", genus_two()}};
}

std::vector<std::pair<std::string, Diagram>> all() {
  auto out = closed_surfaces();
  out.emplace_back("single_edge", single_edge());
  out.emplace_back("open_truss", open_truss());
  return out;
}

Diagram by_name(const std::string& name) {
  for (auto& [n, d] : all())
    if (n == name) return d;
  throw StaticsError(ErrorCode::InvalidArgument, "unknown fixture '" + name + "'");
}

}  // namespace gstatics::fixtures
