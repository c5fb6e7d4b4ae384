#include "gstatics/lifting.hpp"

#include <iomanip>
#include <sstream>

#include "detail/dual_tree.hpp"
#include "gstatics/statics.hpp"

namespace gstatics {

namespace {

// Homogeneous points spanning the cell: its vertices plus the points at
// infinity of any open-ended edges.
Matrix cell_points(const Diagram& dg, int dim, Index c) {
  const auto& cx = dg.complex();
  std::vector<Vec3> pts;
  auto add_edge = [&](Index e) {
    for (const auto& v : cx.faces_of(1, e)) pts.push_back(homogeneous(dg.position(v.cell)));
    if (dg.is_open_edge(e)) {
      const Vec2 d = edge_direction(dg, e);
      pts.emplace_back(d.x(), d.y(), 0.0);
    }
  };
  if (dim == 0) pts.push_back(homogeneous(dg.position(c)));
  if (dim == 1) add_edge(c);
  if (dim == 2)
    for (const auto& e : cx.faces_of(2, c)) add_edge(e.cell);
  Matrix m(3, static_cast<Index>(pts.size()));
  for (std::size_t j = 0; j < pts.size(); ++j) m.col(static_cast<Index>(j)) = pts[j];
  return m;
}

// Orthonormal basis of the zero locus of every cell.
std::array<std::vector<Matrix>, 3> zero_locus_bases(const Diagram& dg, const Tolerance& tol) {
  const auto& cx = dg.complex();
  std::array<std::vector<Matrix>, 3> out;
  for (int d = 0; d < 3; ++d)
    for (Index c = 0; c < cx.count(d); ++c) {
      const Matrix pts = cell_points(dg, d, c);
      if (pts.cols() == 0 || rank(pts, tol) < d + 1)
        throw StaticsError(ErrorCode::DegenerateCell, "cell " + cx.id(d, c) + " is degenerate");
      out[d].push_back(complement_basis(pts, tol));
    }
  return out;
}

std::array<std::vector<Index>, 3> stalks_of(const std::array<std::vector<Matrix>, 3>& bases) {
  std::array<std::vector<Index>, 3> s;
  for (int d = 0; d < 3; ++d)
    for (const auto& b : bases[d]) s[d].push_back(b.cols());
  return s;
}

Vec3 lateral(const Vec2& b) { return {b.x(), b.y(), 0.0}; }

double lift_scale(const Diagram& dg, const std::vector<Vec3>& faces) {
  double s = 1.0;
  for (const auto& h : faces) s = std::max(s, h.cwiseAbs().maxCoeff());
  return s * dg.scale();
}

}  // namespace

CosheafData zero_locus_cosheaf(const Diagram& dg, const Tolerance& tol) {
  const auto bases = zero_locus_bases(dg, tol);
  return CosheafData(dg.complex_ptr(), Variance::Cosheaf, stalks_of(bases), [&](int d, Index u, Index l) {
    return Matrix(bases[d - 1][l].transpose() * bases[d][u]);
  });
}

AffineEmbedding affine_cosheaf(const Diagram& dg, const Tolerance& tol) {
  const auto bases = zero_locus_bases(dg, tol);
  auto zero = std::make_shared<const CosheafData>(
      dg.complex_ptr(), Variance::Cosheaf, stalks_of(bases),
      [&](int d, Index u, Index l) { return Matrix(bases[d - 1][l].transpose() * bases[d][u]); });
  auto ambient = std::make_shared<const CosheafData>(constant_cosheaf(dg.complex_ptr(), 3));
  CosheafMapData phi(zero, ambient, [&](int d, Index c) { return bases[d][c]; }, tol);
  auto quotient = quotient_cosheaf(phi, tol);
  return AffineEmbedding{std::move(zero), std::move(ambient), std::move(phi), std::move(quotient)};
}

Vec3 edge_functional(const Diagram& dg, Index e) {
  const Index v = dg.complex().faces_of(1, e).front().cell;
  return lateral(edge_direction(dg, e)).cross(homogeneous(dg.position(v)));
}

CosheafMapData tau_isomorphism(const Diagram& dg, const Tolerance& tol) {
  const auto bases = zero_locus_bases(dg, tol);
  auto force = std::make_shared<const CosheafData>(force_cosheaf(dg));
  auto zero = std::make_shared<const CosheafData>(
      dg.complex_ptr(), Variance::Cosheaf, stalks_of(bases),
      [&](int d, Index u, Index l) { return Matrix(bases[d - 1][l].transpose() * bases[d][u]); });
  CosheafMapData tau(
      force, zero,
      [&](int d, Index c) -> Matrix {
        if (d == 0) {
          const Vec3 p = homogeneous(dg.position(c));
          Eigen::Matrix<double, 3, 2> m;
          m.col(0) = Vec3::UnitX().cross(p);
          m.col(1) = Vec3::UnitY().cross(p);
          return bases[0][c].transpose() * m;
        }
        return bases[1][c].transpose() * edge_functional(dg, c);
      },
      tol);
  for (int d = 0; d < 2; ++d)
    for (Index c = 0; c < dg.complex().count(d); ++c) {
      const Matrix& m = tau.component(d, c);
      if (m.rows() != m.cols() || rank(m, tol) < m.rows())
        throw StaticsError(ErrorCode::DegenerateCell, "tau is not invertible at " + dg.complex().id(d, c));
    }
  return tau;
}

double gluing_residual(const Diagram& dg, const std::vector<Vec3>& faces) {
  const auto& cx = dg.complex();
  double worst = 0;
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto fs = cx.cofaces_of(1, e);
    if (fs.size() != 2) continue;
    const Vec3 diff = faces.at(fs[0].cell) - faces.at(fs[1].cell);
    for (const auto& v : cx.faces_of(1, e))
      worst = std::max(worst, std::abs(diff.dot(homogeneous(dg.position(v.cell)))));
    if (dg.is_open_edge(e)) worst = std::max(worst, std::abs(diff.dot(lateral(edge_direction(dg, e)))));
  }
  return worst;
}

LiftFunctionSet polyhedral_lift(const Diagram& dg, const Vector& w, const Tolerance& tol) {
  const auto& cx = dg.complex();
  if (cx.closed()) {
    const auto report = validate(cx);
    if (!report.passed()) throw StaticsError(ErrorCode::NotClosedSurface, report.summary());
  }
  if (w.size() != cx.count(1)) throw StaticsError(ErrorCode::InvalidArgument, "one stress value per edge required");
  require_finite(w);
  zero_locus_bases(dg, tol);  // rejects degenerate cells

  std::vector<Vec3> t;
  for (Index e = 0; e < cx.count(1); ++e) t.push_back(edge_functional(dg, e));
  const std::function<Vec3(Index)> jump = [&](Index e) { return Vec3(w(e) * t[e]); };

  LiftFunctionSet lift;
  lift.faces = detail::integrate_over_dual_tree<Vec3>(cx, jump, Vec3::Zero());
  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff()) * dg.scale();
  const double closure = detail::closure_residual<Vec3>(cx, lift.faces, jump);
  if (closure > 1e-9 * scale)
    throw StaticsError(ErrorCode::NotACycle, "lift does not close (residual " + std::to_string(closure) + ")");

  lift.heights.assign(cx.count(0), 0.0);
  for (Index v = 0; v < cx.count(0); ++v) {
    const Vec3 p = homogeneous(dg.position(v));
    bool first = true;
    for (const auto& e : cx.cofaces_of(0, v))
      for (const auto& f : cx.cofaces_of(1, e.cell)) {
        const double z = lift.faces[f.cell].dot(p);
        if (first) lift.heights[v] = z;
        first = false;
      }
  }
  lift.gluing_residual = gluing_residual(dg, lift.faces);
  if (lift.gluing_residual > 1e-9 * lift_scale(dg, lift.faces))
    throw StaticsError(ErrorCode::GluingViolated, "lift faces do not glue");
  return lift;
}

double lift_force(const Diagram& dg, const std::vector<Vec3>& faces, Index e, const Vec2& probe) {
  const auto& cx = dg.complex();
  const auto fs = cx.cofaces_of(1, e);
  if (fs.size() != 2) return 0.0;
  const Vec3 p = homogeneous(probe);
  // t_e . p is the signed distance of the probe from the line of e; for a
  // closed edge it is det[p_head, p_tail, p] divided by the edge length.
  const double det = edge_functional(dg, e).dot(p);
  if (std::abs(det) < 1e-10 * dg.scale())
    throw StaticsError(ErrorCode::CollinearProbePoint, "probe point lies on the line of edge " + cx.id(1, e));
  return fs[0].sign * (faces.at(fs[0].cell) - faces.at(fs[1].cell)).dot(p) / det;
}

Vector verify_lift(const Diagram& dg, const LiftFunctionSet& lift, const Tolerance&) {
  const auto& cx = dg.complex();
  if (static_cast<Index>(lift.faces.size()) != cx.count(2))
    throw StaticsError(ErrorCode::InvalidArgument, "one affine function per face required");
  const double residual = gluing_residual(dg, lift.faces);
  if (residual > 1e-9 * lift_scale(dg, lift.faces))
    throw StaticsError(ErrorCode::GluingViolated, "lift faces do not glue (residual " + std::to_string(residual) + ")");

  std::vector<std::optional<Vec2>> centroids(cx.count(2));
  for (Index f = 0; f < cx.count(2); ++f) {
    std::vector<Index> verts;
    for (const auto& e : cx.faces_of(2, f))
      for (const auto& v : cx.faces_of(1, e.cell))
        if (std::find(verts.begin(), verts.end(), v.cell) == verts.end()) verts.push_back(v.cell);
    if (verts.empty()) continue;
    Vec2 c = Vec2::Zero();
    for (Index v : verts) c += dg.position(v);
    centroids[f] = c / double(verts.size());
  }

  Vector w = Vector::Zero(cx.count(1));
  for (Index e = 0; e < cx.count(1); ++e) {
    const auto fs = cx.cofaces_of(1, e);
    if (fs.size() != 2) continue;
    const Vec3 t = edge_functional(dg, e);
    std::optional<Vec2> best;
    double best_det = 0;
    auto consider = [&](const Vec2& p) {
      const double det = std::abs(t.dot(homogeneous(p)));
      if (det > best_det) {
        best_det = det;
        best = p;
      }
    };
    for (Index f = 0; f < cx.count(2); ++f)
      if (centroids[f] && f != fs[0].cell && f != fs[1].cell) consider(*centroids[f]);
    if (best_det < 1e-10 * dg.scale())
      for (Index v = 0; v < cx.count(0); ++v) consider(dg.position(v));
    if (!best || best_det < 1e-10 * dg.scale())
      throw StaticsError(ErrorCode::CollinearProbePoint, "no probe point off the line of edge " + cx.id(1, e));
    w(e) = lift_force(dg, lift.faces, e, *best);
  }
  return w;
}

LiftGenusCheck lift_space(const Diagram& dg, const Tolerance& tol) {
  const auto& cx = dg.complex();
  LiftGenusCheck out;
  out.self_stress_dim = homology(force_cosheaf(dg), 1, tol).dimension();
  const auto emb = affine_cosheaf(dg, tol);
  const auto& a = *emb.quotient.quotient;
  const auto h2 = homology(a, 2, tol);
  out.lift_dim = h2.dimension();

  // Image of the global affine functions (the same function on every face).
  const Index nf = cx.count(2);
  Matrix constant = Matrix::Zero(3 * nf, 3);
  for (Index f = 0; f < nf; ++f) constant.block<3, 3>(3 * f, 0).setIdentity();
  const Matrix affine = h2.basis.transpose() * emb.quotient.projection.chain_map(2) * constant;
  const Index affine_rank = affine.size() == 0 ? 0 : rank(affine, tol);
  out.lift_dim_mod_affine = out.lift_dim - affine_rank;

  if (out.lift_dim_mod_affine > 0) {
    const Matrix coords = quotient_basis(Matrix(Matrix::Identity(h2.dimension(), h2.dimension())), affine, tol);
    const Vector chain = h2.basis * coords.col(0);
    LiftFunctionSet raw;
    for (Index f = 0; f < nf; ++f)
      raw.faces.push_back(emb.quotient.projection.component(2, f).transpose() * chain.segment(a.offset(2, f), 3));
    out.witness_stress = verify_lift(dg, raw, tol);
    out.witness = polyhedral_lift(dg, out.witness_stress, tol);
  }
  return out;
}

Matrix liftable_stresses(const Diagram& dg, const Tolerance& tol) {
  const auto& cx = dg.complex();
  const auto emb = affine_cosheaf(dg, tol);
  const auto& a = *emb.quotient.quotient;
  const auto h2 = homology(a, 2, tol);
  Matrix stresses(cx.count(1), h2.dimension());
  for (Index j = 0; j < h2.dimension(); ++j) {
    LiftFunctionSet raw;
    for (Index f = 0; f < cx.count(2); ++f)
      raw.faces.push_back(emb.quotient.projection.component(2, f).transpose() * h2.basis.col(j).segment(a.offset(2, f), 3));
    stresses.col(j) = verify_lift(dg, raw, tol);
  }
  return range_basis(stresses, tol);
}

LiftGenusCheck lift_genus_check(const Diagram& dg, const Tolerance& tol) {
  const long g = genus(dg.complex());
  LiftGenusCheck out = lift_space(dg, tol);
  out.genus = g;
  out.bound = 6 * g;
  out.guaranteed = out.self_stress_dim > out.bound;
  return out;
}

std::string lift_to_obj(const Diagram& dg, const LiftFunctionSet& lift) {
  const auto& cx = dg.complex();
  std::ostringstream os;
  os << std::setprecision(17);
  for (Index v = 0; v < cx.count(0); ++v)
    os << "v " << dg.position(v).x() << " " << dg.position(v).y() << " " << lift.heights.at(v) << "\n";
  for (Index f = 0; f < cx.count(2); ++f) {
    auto cycle = face_cycle(cx, f);
    if (!cycle || cycle->size() < 3) continue;
    auto lowest = std::min_element(cycle->begin(), cycle->end(),
                                   [&](Index a, Index b) { return cx.id(0, a) < cx.id(0, b); });
    std::rotate(cycle->begin(), lowest, cycle->end());
    for (std::size_t k = 1; k + 1 < cycle->size(); ++k)
      os << "f " << (*cycle)[0] + 1 << " " << (*cycle)[k] + 1 << " " << (*cycle)[k + 1] + 1 << "\n";
  }
  return os.str();
}

}  // namespace gstatics
