#pragma once

#include <deque>
#include <functional>
#include <vector>

#include "gstatics/complex.hpp"

namespace gstatics::detail {

// Assigns a value to every face so that value_f - value_g = [e:f] jump(e)
// along the edges of a breadth-first spanning tree of the dual graph. The
// face with the lowest id (and the first face of every further component)
// gets `zero`. Only edges bounding exactly two faces are used.
template <typename V>
std::vector<V> integrate_over_dual_tree(const CellComplex& cx, const std::function<V(Index)>& jump, const V& zero) {
  const Index nf = cx.count(2);
  std::vector<V> out(nf, zero);
  if (nf == 0) return out;
  std::vector<std::vector<std::pair<Index, Index>>> adj(nf);
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto faces = cx.cofaces_of(1, e);
    if (faces.size() != 2) continue;
    adj[faces[0].cell].emplace_back(e, faces[1].cell);
    adj[faces[1].cell].emplace_back(e, faces[0].cell);
  }
  std::vector<bool> seen(nf, false);
  auto sweep = [&](Index root) {
    std::deque<Index> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      const Index f = queue.front();
      queue.pop_front();
      for (const auto& [e, g] : adj[f]) {
        if (seen[g]) continue;
        seen[g] = true;
        out[g] = out[f] - double(cx.sign(1, e, f)) * jump(e);
        queue.push_back(g);
      }
    }
  };
  sweep(cx.lowest_id(2));
  for (Index f = 0; f < nf; ++f)
    if (!seen[f]) sweep(f);
  return out;
}

// Largest |value_f - value_g - [e:f] jump(e)| over edges bounding two faces.
template <typename V>
double closure_residual(const CellComplex& cx, const std::vector<V>& values, const std::function<V(Index)>& jump) {
  double worst = 0;
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto faces = cx.cofaces_of(1, e);
    if (faces.size() != 2) continue;
    const V r = values[faces[0].cell] - values[faces[1].cell] - double(faces[0].sign) * jump(e);
    worst = std::max(worst, r.norm());
  }
  return worst;
}

}  // namespace gstatics::detail
