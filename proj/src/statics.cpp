#include "gstatics/statics.hpp"

namespace gstatics {

Vec2 edge_direction(const Diagram& dg, Index e) {
  const auto& cx = dg.complex();
  const auto [tail, head] = cx.edge_ends(e);
  if (tail && head) {
    const Vec2 v = dg.position(*head) - dg.position(*tail);
    if (v.norm() <= 1e-12 * dg.scale())
      throw StaticsError(ErrorCode::DegenerateEdge, "edge " + cx.id(1, e) + " has zero length");
    return v.normalized();
  }
  if (!tail && !head) throw StaticsError(ErrorCode::DegenerateEdge, "edge " + cx.id(1, e) + " has no vertex");
  auto it = dg.open_directions().find(e);
  if (it == dg.open_directions().end() || it->second.norm() <= 1e-12)
    throw StaticsError(ErrorCode::DegenerateEdge, "open edge " + cx.id(1, e) + " has no line of action");
  return it->second.normalized();
}

namespace {

std::array<std::vector<Index>, 3> point_stalks(const CellComplex& cx) {
  return {std::vector<Index>(cx.count(0), 2), std::vector<Index>(cx.count(1), 1),
          std::vector<Index>(cx.count(2), 0)};
}

std::vector<Vec2> all_directions(const Diagram& dg) {
  std::vector<Vec2> dirs;
  for (Index e = 0; e < dg.complex().count(1); ++e) dirs.push_back(edge_direction(dg, e));
  return dirs;
}

}  // namespace

CosheafData force_cosheaf(std::shared_ptr<const CellComplex> cx, const std::vector<Vec2>& dirs) {
  if (static_cast<Index>(dirs.size()) != cx->count(1))
    throw StaticsError(ErrorCode::InvalidArgument, "one direction per edge required");
  auto stalks = point_stalks(*cx);
  return CosheafData(std::move(cx), Variance::Cosheaf, std::move(stalks),
                     [&](int, Index e, Index) { return Matrix(dirs[e]); });
}

CosheafData position_sheaf(std::shared_ptr<const CellComplex> cx, const std::vector<Vec2>& dirs) {
  if (static_cast<Index>(dirs.size()) != cx->count(1))
    throw StaticsError(ErrorCode::InvalidArgument, "one direction per edge required");
  auto stalks = point_stalks(*cx);
  return CosheafData(std::move(cx), Variance::Sheaf, std::move(stalks),
                     [&](int, Index e, Index) { return Matrix(quarter_turn(dirs[e]).transpose()); });
}

CosheafData force_cosheaf(const Diagram& dg) { return force_cosheaf(dg.complex_ptr(), all_directions(dg)); }

CosheafData linkage_sheaf(const Diagram& dg) { return linear_dual(force_cosheaf(dg)); }

CosheafData position_sheaf(const Diagram& dg) { return position_sheaf(dg.complex_ptr(), all_directions(dg)); }

CosheafData position_dual_cosheaf(const Diagram& dg) { return linear_dual(position_sheaf(dg)); }

std::string to_string(ModeKind kind) {
  switch (kind) {
    case ModeKind::Translation: return "translation";
    case ModeKind::Rotation: return "rotation";
    case ModeKind::Mechanism: return "mechanism";
  }
  return "unknown";
}

std::vector<SelfStress> self_stresses(const Diagram& dg, const Tolerance& tol) {
  const auto h = homology(force_cosheaf(dg), 1, tol);
  std::vector<SelfStress> out;
  for (Index j = 0; j < h.dimension(); ++j) out.push_back({h.basis.col(j), j});
  return out;
}

Matrix rigid_motions(const Diagram& dg) {
  const Index n = dg.complex().count(0);
  Matrix r = Matrix::Zero(2 * n, 3);
  const Vec2 c = dg.centroid();
  for (Index v = 0; v < n; ++v) {
    r(2 * v, 0) = 1;
    r(2 * v + 1, 1) = 1;
    r.block<2, 1>(2 * v, 2) = quarter_turn(dg.position(v) - c);
  }
  return r;
}

std::vector<FreedomMode> freedom_modes(const Diagram& dg, const Tolerance& tol) {
  const auto chains = assemble_chain_complex(force_cosheaf(dg), tol);
  const Matrix h0 = homology(chains, 0, tol).basis;
  const Matrix r = rigid_motions(dg);
  const Matrix bt = chains.maps[1].transpose();

  // Rigid motions that stay free: span(r) intersected with ker d1^T.
  const Matrix coeffs = bt.rows() == 0 ? Matrix(Matrix::Identity(3, 3)) : kernel_basis(Matrix(bt * r), tol);
  std::vector<FreedomMode> out;
  Matrix free_rigid(r.rows(), 0);
  if (coeffs.cols() > 0) {
    const Matrix trans = kernel_basis(Matrix(coeffs.row(2)), tol);  // combinations without rotation
    Matrix t = range_basis(Matrix(r * coeffs * trans), tol);
    Matrix rot = quotient_basis(range_basis(Matrix(r * coeffs), tol), t, tol);
    for (Index j = 0; j < t.cols(); ++j) out.push_back({t.col(j), ModeKind::Translation});
    for (Index j = 0; j < rot.cols(); ++j) out.push_back({rot.col(j), ModeKind::Rotation});
    free_rigid.resize(r.rows(), t.cols() + rot.cols());
    free_rigid << t, rot;
  }
  const Matrix mech = quotient_basis(h0, free_rigid, tol);
  for (Index j = 0; j < mech.cols(); ++j) out.push_back({mech.col(j), ModeKind::Mechanism});
  return out;
}

std::vector<FreedomMode> mechanisms(const Diagram& dg, const Tolerance& tol) {
  std::vector<FreedomMode> out;
  for (auto& m : freedom_modes(dg, tol))
    if (m.kind == ModeKind::Mechanism) out.push_back(std::move(m));
  return out;
}

bool is_rigid(const Diagram& dg, const Tolerance& tol) {
  return mechanisms(dg, tol).empty() && vertex_components(dg.complex()) <= 1;
}

MaxwellReport maxwell_rule_report(const Diagram& dg, const Tolerance& tol) {
  MaxwellReport rep;
  const auto& cx = dg.complex();
  rep.vertices = cx.count(0);
  rep.edges = cx.count(1);
  for (Index e = 0; e < cx.count(1); ++e) rep.open_edges += dg.is_open_edge(e);
  for (const auto& m : freedom_modes(dg, tol)) {
    if (m.kind == ModeKind::Mechanism)
      ++rep.mechanisms;
    else
      ++rep.rigid_motions;
  }
  rep.self_stresses = static_cast<Index>(self_stresses(dg, tol).size());
  rep.lhs = 2 * static_cast<long>(rep.vertices) - static_cast<long>(rep.edges);
  rep.rhs = static_cast<long>(rep.rigid_motions + rep.mechanisms) - static_cast<long>(rep.self_stresses);
  rep.holds = rep.lhs == rep.rhs;
  return rep;
}

EquilibriumSolution solve_equilibrium(const Diagram& dg, const std::map<Index, double>& prescribed,
                                      const Tolerance& tol) {
  const auto& cx = dg.complex();
  if (cx.closed()) throw StaticsError(ErrorCode::InvalidArgument, "boundary-value problems need an open diagram");
  for (const auto& [e, value] : prescribed) {
    if (e < 0 || e >= cx.count(1) || !dg.is_open_edge(e))
      throw StaticsError(ErrorCode::InvalidArgument, "prescribed values are allowed on open-ended edges only");
    if (!std::isfinite(value)) throw StaticsError(ErrorCode::NonFiniteInput, "prescribed value is not finite");
  }
  const auto chains = assemble_chain_complex(force_cosheaf(dg), tol);
  const Matrix k = homology(chains, 1, tol).basis;

  Matrix rows(static_cast<Index>(prescribed.size()), k.cols());
  Vector target(static_cast<Index>(prescribed.size()));
  Index i = 0;
  for (const auto& [e, value] : prescribed) {
    rows.row(i) = k.row(e);
    target(i++) = value;
  }
  EquilibriumSolution sol;
  Vector c = Vector::Zero(k.cols());
  if (rows.rows() > 0 && k.cols() > 0) {
    const auto ls = least_squares_solve(rows, target, tol);
    c = ls.x;
  }
  sol.forces = k * c;
  const double mismatch = rows.rows() > 0 ? (rows * c - target).norm() : 0.0;
  if (mismatch > 1e-9 * std::max(1.0, target.norm()))
    throw StaticsError(ErrorCode::Infeasible,
                       "prescribed loads are not compatible with equilibrium (mismatch " + std::to_string(mismatch) + ")");
  for (const auto& [e, value] : prescribed) sol.forces(e) = value;
  sol.residual = (chains.maps[1] * sol.forces).norm();

  const Matrix free = rows.rows() > 0 && k.cols() > 0 ? Matrix(k * kernel_basis(rows, tol)) : k;
  sol.self_stress_basis = free;
  for (Index e = 0; e < cx.count(1); ++e) {
    if (prescribed.count(e)) continue;
    (dg.is_open_edge(e) ? sol.reactions : sol.internal)[e] = sol.forces(e);
  }
  sol.note = free.cols() == 0 ? "unique solution"
                              : "minimum-norm solution; " + std::to_string(free.cols()) +
                                    " self-stress direction(s) may be added";
  return sol;
}

}  // namespace gstatics
